#include "locpovm/geometry.hpp"

#include <cmath>

#include "locpovm/errors.hpp"

namespace locpovm {

double Ten3::max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double Ten4::max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& p, double h) {
    const int dim = static_cast<int>(p.size());
    auto at_step = [&](double step) {
        Mat J(dim, dim);
        for (int nu = 0; nu < dim; ++nu) {
            Vec hi = p, lo = p;
            hi[nu] += step;
            lo[nu] -= step;
            J.col(nu) = (f(hi) - f(lo)) / (2.0 * step);
        }
        return J;
    };
    const Mat J1 = at_step(h), J2 = at_step(h / 2.0);
    return (4.0 * J2 - J1) / 3.0;
}

Ten3 fd_hessian(const std::function<Vec(const Vec&)>& f, const Vec& p, double h) {
    const int dim = static_cast<int>(p.size());
    auto at_step = [&](double step) {
        Ten3 H(dim);
        const Vec f0 = f(p);
        for (int mu = 0; mu < dim; ++mu) {
            Vec hi = p, lo = p;
            hi[mu] += step;
            lo[mu] -= step;
            const Vec second = (f(hi) - 2.0 * f0 + f(lo)) / (step * step);
            for (int a = 0; a < dim; ++a) H(a, mu, mu) = second[a];
            for (int nu = mu + 1; nu < dim; ++nu) {
                Vec pp = p, pm = p, mp = p, mm = p;
                pp[mu] += step; pp[nu] += step;
                pm[mu] += step; pm[nu] -= step;
                mp[mu] -= step; mp[nu] += step;
                mm[mu] -= step; mm[nu] -= step;
                const Vec mixed = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * step * step);
                for (int a = 0; a < dim; ++a) {
                    H(a, mu, nu) = mixed[a];
                    H(a, nu, mu) = mixed[a];
                }
            }
        }
        return H;
    };
    const Ten3 H1 = at_step(h), H2 = at_step(h / 2.0);
    Ten3 H(dim);
    for (size_t i = 0; i < H.v.size(); ++i) H.v[i] = (4.0 * H2.v[i] - H1.v[i]) / 3.0;
    return H;
}

Mat Chart::jac_forward(const Vec& x) const {
    return jacobian ? jacobian(x) : fd_jacobian(forward, x, fd_step);
}

Mat Chart::jac_inverse(const Vec& xp) const {
    return inverse_jacobian ? inverse_jacobian(xp) : fd_jacobian(inverse, xp, fd_step);
}

Ten3 Chart::hess_inverse(const Vec& xp) const {
    return inverse_hessian ? inverse_hessian(xp) : fd_hessian(inverse, xp, fd_step);
}

Chart identity_chart(int dim) {
    Chart c;
    c.kind = "identity";
    c.dim = dim;
    c.forward = [](const Vec& p) { return p; };
    c.inverse = [](const Vec& p) { return p; };
    c.jacobian = [dim](const Vec&) { return Mat::Identity(dim, dim); };
    c.inverse_jacobian = c.jacobian;
    c.inverse_hessian = [dim](const Vec&) { return Ten3(dim); };
    return c;
}

Chart dilation_chart(double lambda, int dim) {
    Chart c;
    c.kind = "dilation";
    c.dim = dim;
    c.params["lambda"] = lambda;
    c.forward = [lambda, dim](const Vec& p) {
        Vec out(dim);
        out[0] = p[0];
        const double s = std::exp(lambda * p[0]);
        for (int i = 1; i < dim; ++i) out[i] = s * p[i];
        return out;
    };
    c.inverse = [lambda, dim](const Vec& pp) {
        Vec out(dim);
        out[0] = pp[0];
        const double s = std::exp(-lambda * pp[0]);
        for (int i = 1; i < dim; ++i) out[i] = s * pp[i];
        return out;
    };
    c.jacobian = [lambda, dim](const Vec& p) {
        Mat J = Mat::Zero(dim, dim);
        J(0, 0) = 1.0;
        const double s = std::exp(lambda * p[0]);
        for (int i = 1; i < dim; ++i) {
            J(i, 0) = lambda * s * p[i];
            J(i, i) = s;
        }
        return J;
    };
    c.inverse_jacobian = [lambda, dim](const Vec& pp) {
        Mat B = Mat::Zero(dim, dim);
        B(0, 0) = 1.0;
        const double s = std::exp(-lambda * pp[0]);
        for (int i = 1; i < dim; ++i) {
            B(i, 0) = -lambda * s * pp[i];
            B(i, i) = s;
        }
        return B;
    };
    c.inverse_hessian = [lambda, dim](const Vec& pp) {
        Ten3 H(dim);
        const double s = std::exp(-lambda * pp[0]);
        for (int i = 1; i < dim; ++i) {
            H(i, 0, 0) = lambda * lambda * s * pp[i];
            H(i, 0, i) = -lambda * s;
            H(i, i, 0) = -lambda * s;
        }
        return H;
    };
    c.in_domain = [lambda](const Vec& pp) { return std::abs(lambda * pp[0]) <= 2.0; };
    return c;
}

Chart rindler_chart(double alpha) {
    if (!(alpha > 0.0)) throw ConfigError("chart.alpha must be > 0");
    Chart c;
    c.kind = "rindler";
    c.dim = 2;
    c.params["alpha"] = alpha;
    c.forward = [alpha](const Vec& p) {
        const double X = p[1] + 1.0 / alpha;
        if (!(X > std::abs(p[0])))
            throw ComputeError("point outside the rindler wedge");
        const double rho = std::sqrt(X * X - p[0] * p[0]);
        Vec out(2);
        out[0] = 0.5 / alpha * std::log((X + p[0]) / (X - p[0]));
        out[1] = rho - 1.0 / alpha;
        return out;
    };
    c.inverse = [alpha](const Vec& pp) {
        const double R = 1.0 + alpha * pp[1];
        Vec out(2);
        out[0] = (R / alpha) * std::sinh(alpha * pp[0]);
        out[1] = (R / alpha) * std::cosh(alpha * pp[0]) - 1.0 / alpha;
        return out;
    };
    c.jacobian = [alpha](const Vec& p) {
        const double X = p[1] + 1.0 / alpha;
        const double rho2 = X * X - p[0] * p[0];
        if (!(rho2 > 0.0)) throw ComputeError("point outside the rindler wedge");
        Mat J(2, 2);
        J(0, 0) = X / (alpha * rho2);
        J(0, 1) = -p[0] / (alpha * rho2);
        J(1, 0) = -p[0] / std::sqrt(rho2);
        J(1, 1) = X / std::sqrt(rho2);
        return J;
    };
    c.inverse_jacobian = [alpha](const Vec& pp) {
        const double R = 1.0 + alpha * pp[1];
        const double ch = std::cosh(alpha * pp[0]), sh = std::sinh(alpha * pp[0]);
        Mat B(2, 2);
        B(0, 0) = R * ch;
        B(0, 1) = sh;
        B(1, 0) = R * sh;
        B(1, 1) = ch;
        return B;
    };
    c.inverse_hessian = [alpha](const Vec& pp) {
        const double R = 1.0 + alpha * pp[1];
        const double ch = std::cosh(alpha * pp[0]), sh = std::sinh(alpha * pp[0]);
        Ten3 H(2);
        H(0, 0, 0) = alpha * R * sh;
        H(0, 0, 1) = alpha * ch;
        H(0, 1, 0) = alpha * ch;
        H(1, 0, 0) = alpha * R * ch;
        H(1, 0, 1) = alpha * sh;
        H(1, 1, 0) = alpha * sh;
        return H;
    };
    c.in_domain = [alpha](const Vec& pp) { return 1.0 + alpha * pp[1] > 0.1; };
    return c;
}

Chart custom_chart(const std::vector<std::string>& forward_exprs,
                   const std::vector<std::string>& inverse_exprs,
                   const std::map<std::string, double>& params) {
    if (forward_exprs.size() != 2 || inverse_exprs.size() != 2)
        throw ConfigError("custom charts take exactly two expressions per direction "
                          "(components t, x)");
    std::vector<Expr> fwd, inv;
    for (const auto& e : forward_exprs) fwd.push_back(Expr::parse(e));
    for (const auto& e : inverse_exprs) inv.push_back(Expr::parse(e));
    auto eval_map = [params](const std::vector<Expr>& exprs, const Vec& p) {
        std::map<std::string, double> vars = params;
        vars["t"] = p[0];
        vars["x"] = p[1];
        Vec out(2);
        for (int i = 0; i < 2; ++i) out[i] = exprs[i].eval(vars);
        return out;
    };
    Chart c;
    c.kind = "custom";
    c.dim = 2;
    c.params = params;
    c.forward = [fwd, eval_map](const Vec& p) { return eval_map(fwd, p); };
    c.inverse = [inv, eval_map](const Vec& pp) { return eval_map(inv, pp); };
    return c;
}

Chart compose_charts(const Chart& first, const Chart& second) {
    if (first.dim != second.dim)
        throw ConfigError("cannot compose charts of different dimension");
    Chart a = first, b = second;  // own copies inside the closures
    Chart c;
    c.kind = "composite";
    c.dim = a.dim;
    c.fd_step = std::min(a.fd_step, b.fd_step);
    c.forward = [a, b](const Vec& x) { return b.forward(a.forward(x)); };
    c.inverse = [a, b](const Vec& pp) { return a.inverse(b.inverse(pp)); };
    if (a.jacobian && b.jacobian)
        c.jacobian = [a, b](const Vec& x) {
            return b.jacobian(a.forward(x)) * a.jacobian(x);
        };
    if (a.inverse_jacobian && b.inverse_jacobian)
        c.inverse_jacobian = [a, b](const Vec& pp) {
            return a.inverse_jacobian(b.inverse(pp)) * b.inverse_jacobian(pp);
        };
    if (a.has_analytic_derivatives() && b.has_analytic_derivatives())
        c.inverse_hessian = [a, b](const Vec& pp) {
            const Vec mid = b.inverse(pp);
            const Mat BB = b.inverse_jacobian(pp);
            const Mat BA = a.inverse_jacobian(mid);
            const Ten3 HA = a.inverse_hessian(mid);
            const Ten3 HB = b.inverse_hessian(pp);
            const int d = a.dim;
            Ten3 H(d);
            for (int i = 0; i < d; ++i)
                for (int mu = 0; mu < d; ++mu)
                    for (int nu = 0; nu < d; ++nu) {
                        double acc = 0.0;
                        for (int p = 0; p < d; ++p) {
                            for (int q = 0; q < d; ++q)
                                acc += HA(i, p, q) * BB(p, mu) * BB(q, nu);
                            acc += BA(i, p) * HB(p, mu, nu);
                        }
                        H(i, mu, nu) = acc;
                    }
            return H;
        };
    if (a.in_domain || b.in_domain)
        c.in_domain = [a, b](const Vec& pp) {
            return b.contains(pp) && a.contains(b.inverse(pp));
        };
    return c;
}

Chart inverse_chart(const Chart& chart) {
    Chart c;
    c.kind = chart.kind + "_inverse";
    c.dim = chart.dim;
    c.fd_step = chart.fd_step;
    c.params = chart.params;
    c.forward = chart.inverse;
    c.inverse = chart.forward;
    c.jacobian = chart.inverse_jacobian;
    c.inverse_jacobian = chart.jacobian;
    return c;
}

namespace {

Mat eta_matrix(int dim) {
    Mat eta = Mat::Identity(dim, dim);
    eta(0, 0) = -1.0;
    return eta;
}

}  // namespace

MetricField::MetricField(Chart chart, DerivMode mode)
    : chart_(std::move(chart)), mode_(mode) {
    if (mode_ == DerivMode::Analytic && !chart_.has_analytic_derivatives())
        throw ConfigError(
            "chart has no analytic derivatives; use finite-difference mode");
}

MetricField MetricField::minkowski(int dim) {
    return MetricField(identity_chart(dim), DerivMode::Analytic);
}

Mat MetricField::chart_jacobian_inverse(const Vec& p) const {
    if (!chart_.contains(p)) throw ComputeError("point outside chart domain");
    return mode_ == DerivMode::Analytic
               ? chart_.inverse_jacobian(p)
               : fd_jacobian(chart_.inverse, p, chart_.fd_step);
}

Mat MetricField::g(const Vec& p) const {
    const Mat B = chart_jacobian_inverse(p);
    if (std::abs(B.determinant()) < 1e-12)
        throw ComputeError("singular jacobian in metric pullback");
    return B.transpose() * eta_matrix(chart_.dim) * B;
}

Mat MetricField::ginv(const Vec& p) const {
    const Mat gm = g(p);
    if (std::abs(gm.determinant()) < 1e-12)
        throw ComputeError("metric not invertible at sample point");
    return gm.inverse();
}

Ten3 MetricField::dg(const Vec& p) const {
    const int d = chart_.dim;
    const Mat B = chart_jacobian_inverse(p);
    const Ten3 H = mode_ == DerivMode::Analytic ? chart_.inverse_hessian(p)
                                                : fd_hessian(chart_.inverse, p,
                                                             chart_.fd_step);
    Ten3 out(d);
    for (int rho = 0; rho < d; ++rho)
        for (int mu = 0; mu < d; ++mu)
            for (int nu = 0; nu < d; ++nu) {
                double acc = 0.0;
                for (int a = 0; a < d; ++a) {
                    const double sign = a == 0 ? -1.0 : 1.0;
                    acc += sign * (H(a, rho, mu) * B(a, nu) + B(a, mu) * H(a, rho, nu));
                }
                out(rho, mu, nu) = acc;
            }
    return out;
}

MetricField pullback_metric(const Chart& chart) {
    return MetricField(chart, chart.has_analytic_derivatives()
                                  ? DerivMode::Analytic
                                  : DerivMode::FiniteDifference);
}

Ten3 christoffel(const MetricField& metric, const Vec& p) {
    const int d = metric.dim();
    const Mat gi = metric.ginv(p);
    const Ten3 dgp = metric.dg(p);
    Ten3 gamma(d);
    for (int al = 0; al < d; ++al)
        for (int mu = 0; mu < d; ++mu)
            for (int nu = 0; nu < d; ++nu) {
                double acc = 0.0;
                for (int be = 0; be < d; ++be)
                    acc += gi(al, be) *
                           (dgp(mu, be, nu) + dgp(nu, be, mu) - dgp(be, mu, nu));
                gamma(al, mu, nu) = 0.5 * acc;
            }
    return gamma;
}

double metric_compatibility_max(const MetricField& metric, const Vec& p) {
    const int d = metric.dim();
    const Mat gm = metric.g(p);
    const Ten3 dgp = metric.dg(p);
    const Ten3 gamma = christoffel(metric, p);
    double worst = 0.0;
    for (int rho = 0; rho < d; ++rho)
        for (int mu = 0; mu < d; ++mu)
            for (int nu = 0; nu < d; ++nu) {
                double val = dgp(rho, mu, nu);
                for (int si = 0; si < d; ++si)
                    val -= gamma(si, rho, mu) * gm(si, nu) +
                           gamma(si, rho, nu) * gm(mu, si);
                worst = std::max(worst, std::abs(val));
            }
    return worst;
}

Ten4 riemann(const MetricField& metric, const Vec& p) {
    const int d = metric.dim();
    // The Gamma samples already carry the noise of one (analytic mode) or
    // three (finite-difference mode) derivative levels, so the step for the
    // outermost derivative is larger than the chart's base step.
    const double h = metric.mode() == DerivMode::Analytic ? 1e-3 : 2e-2;
    // dGamma(rho; alpha, mu, nu) by central differences with one halving
    auto dgamma_at = [&](double step) {
        std::vector<Ten3> out;
        for (int rho = 0; rho < d; ++rho) {
            Vec hi = p, lo = p;
            hi[rho] += step;
            lo[rho] -= step;
            const Ten3 gh = christoffel(metric, hi), gl = christoffel(metric, lo);
            Ten3 dG(d);
            for (size_t i = 0; i < dG.v.size(); ++i)
                dG.v[i] = (gh.v[i] - gl.v[i]) / (2.0 * step);
            out.push_back(std::move(dG));
        }
        return out;
    };
    const auto d1 = dgamma_at(h), d2 = dgamma_at(h / 2.0);
    std::vector<Ten3> dTen;
    for (int rho = 0; rho < d; ++rho) {
        Ten3 dG(d);
        for (size_t i = 0; i < dG.v.size(); ++i)
            dG.v[i] = (4.0 * d2[rho].v[i] - d1[rho].v[i]) / 3.0;
        dTen.push_back(std::move(dG));
    }
    const Ten3 gamma = christoffel(metric, p);
    Ten4 R(d);
    for (int al = 0; al < d; ++al)
        for (int be = 0; be < d; ++be)
            for (int mu = 0; mu < d; ++mu)
                for (int nu = 0; nu < d; ++nu) {
                    double val = dTen[mu](al, nu, be) - dTen[nu](al, mu, be);
                    for (int rho = 0; rho < d; ++rho)
                        val += gamma(al, mu, rho) * gamma(rho, nu, be) -
                               gamma(al, nu, rho) * gamma(rho, mu, be);
                    R(al, be, mu, nu) = val;
                }
    return R;
}

DensityConnection density_connection(const Ten3& gamma, double weight) {
    const int d = gamma.dim;
    DensityConnection out{weight, Ten3(d)};
    for (int mu = 0; mu < d; ++mu) {
        double trace = 0.0;
        for (int rho = 0; rho < d; ++rho) trace += gamma(rho, rho, mu);
        for (int al = 0; al < d; ++al)
            for (int be = 0; be < d; ++be)
                out.comp(mu, al, be) =
                    gamma(al, mu, be) - (al == be ? weight * trace : 0.0);
    }
    return out;
}

DensityVector canonical_normal_density(const MetricField& metric, const Vec& p) {
    const Mat gm = metric.g(p);
    const Mat gi = metric.ginv(p);
    if (!(gi(0, 0) < 0.0))
        throw ComputeError("foliation error: constant-time slice is not spacelike");
    const double lapse = 1.0 / std::sqrt(-gi(0, 0));
    const Vec u = -lapse * gi.col(0);
    const double q = std::pow(std::abs(gm.determinant()), 0.25);
    return {q * u, 0.5};
}

Mat canonical_normal_partials(const MetricField& metric, const Vec& p) {
    const int d = metric.dim();
    const Mat gm = metric.g(p);
    const Mat gi = metric.ginv(p);
    if (!(gi(0, 0) < 0.0))
        throw ComputeError("foliation error: constant-time slice is not spacelike");
    const Ten3 dgp = metric.dg(p);
    const double det = gm.determinant();
    const double q = std::pow(std::abs(det), 0.25);
    const double f = -gi(0, 0);
    const double lapse = 1.0 / std::sqrt(f);
    const Vec u = -lapse * gi.col(0);

    Mat dn(d, d);  // dn(mu, nu) = d_nu n^mu
    for (int nu = 0; nu < d; ++nu) {
        Mat dgnu(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) dgnu(r, c) = dgp(nu, r, c);
        const Mat dgi = -gi * dgnu * gi;
        const double dlogdet = (gi * dgnu).trace();
        const double dq = 0.25 * q * dlogdet;
        const double df = -dgi(0, 0);
        const double dlapse = -0.5 * std::pow(f, -1.5) * df;
        const Vec du = -dlapse * gi.col(0) - lapse * dgi.col(0);
        for (int mu = 0; mu < d; ++mu) dn(mu, nu) = dq * u[mu] + q * du[mu];
    }
    return dn;
}

DensityVectorField constant_density_field(Vec components, double weight) {
    const int d = static_cast<int>(components.size());
    return {weight, d, [n = std::move(components)](const Vec&) { return n; }};
}

DensityVectorField transform_density_vector(const Chart& chart,
                                            const DensityVectorField& field) {
    if (chart.dim != field.dim)
        throw ConfigError("chart and density field dimensions differ");
    DensityVectorField out;
    out.weight = field.weight;
    out.dim = field.dim;
    out.eval = [chart, field](const Vec& pp) {
        if (!chart.contains(pp))
            throw ComputeError("point outside chart domain");
        const Vec x = chart.inverse(pp);
        const Mat B = chart.jac_inverse(pp);
        const double detB = B.determinant();
        if (std::abs(detB) < 1e-12)
            throw ComputeError("singular jacobian in density transform");
        const Mat A = chart.jacobian ? chart.jacobian(x) : Mat(B.inverse());
        return Vec(std::pow(std::abs(detB), field.weight) * (A * field.eval(x)));
    };
    return out;
}

Mat density_covariant_derivative(const DensityVectorField& field,
                                 const MetricField& metric, const Vec& p) {
    const int d = metric.dim();
    const Vec n = field.eval(p);
    const Mat dn = fd_jacobian(field.eval, p, metric.chart().fd_step);
    const Ten3 gamma = christoffel(metric, p);
    Mat out(d, d);
    for (int nu = 0; nu < d; ++nu) {
        double trace = 0.0;
        for (int rho = 0; rho < d; ++rho) trace += gamma(rho, rho, nu);
        for (int mu = 0; mu < d; ++mu) {
            double val = dn(mu, nu) - field.weight * trace * n[mu];
            for (int rho = 0; rho < d; ++rho) val += gamma(mu, nu, rho) * n[rho];
            out(mu, nu) = val;
        }
    }
    return out;
}

double connection_transform_check(const Chart& chart,
                                  const std::function<Ten3(const Vec&)>& gamma_unprimed,
                                  double weight, const std::vector<Vec>& points) {
    const MetricField metric = pullback_metric(chart);
    const int d = chart.dim;
    double worst = 0.0;
    for (const Vec& pp : points) {
        const DensityConnection direct =
            density_connection(christoffel(metric, pp), weight);

        const Vec x = chart.inverse(pp);
        const Mat B = chart.jac_inverse(pp);
        const Mat A = chart.jacobian ? chart.jacobian(x) : Mat(B.inverse());
        const Ten3 H = chart.hess_inverse(pp);
        const DensityConnection source =
            density_connection(gamma_unprimed(x), weight);

        const Mat gi = metric.ginv(pp);
        const Ten3 dgp = metric.dg(pp);

        for (int mu = 0; mu < d; ++mu) {
            Mat dgmu(d, d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) dgmu(r, c) = dgp(mu, r, c);
            const double dlogdetB = 0.5 * (gi * dgmu).trace();
            for (int al = 0; al < d; ++al)
                for (int be = 0; be < d; ++be) {
                    double law = -(al == be ? weight * dlogdetB : 0.0);
                    for (int a = 0; a < d; ++a) {
                        law += A(al, a) * H(a, mu, be);
                        for (int b = 0; b < d; ++b)
                            for (int cc = 0; cc < d; ++cc)
                                law += A(al, a) * B(cc, mu) * B(b, be) *
                                       source.comp(cc, a, b);
                    }
                    worst = std::max(worst,
                                     std::abs(direct.comp(mu, al, be) - law));
                }
        }
    }
    return worst;
}

}  // namespace locpovm
