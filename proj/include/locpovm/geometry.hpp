#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "locpovm/expr.hpp"

namespace locpovm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Dense rank-3 array, square in a runtime dimension.
struct Ten3 {
    int dim = 0;
    std::vector<double> v;
    explicit Ten3(int d = 0) : dim(d), v(size_t(d) * d * d, 0.0) {}
    double& operator()(int a, int b, int c) { return v[(size_t(a) * dim + b) * dim + c]; }
    double operator()(int a, int b, int c) const {
        return v[(size_t(a) * dim + b) * dim + c];
    }
    double max_abs() const;
};

struct Ten4 {
    int dim = 0;
    std::vector<double> v;
    explicit Ten4(int d = 0) : dim(d), v(size_t(d) * d * d * d, 0.0) {}
    double& operator()(int a, int b, int c, int e) {
        return v[((size_t(a) * dim + b) * dim + c) * dim + e];
    }
    double operator()(int a, int b, int c, int e) const {
        return v[((size_t(a) * dim + b) * dim + c) * dim + e];
    }
    double max_abs() const;
};

// Invertible coordinate map on flat spacetime, component 0 timelike.
// forward: x -> x'; inverse: x' -> x.  Analytic derivative members may be
// null; consumers fall back to central differences with one Richardson
// halving (step h below).
struct Chart {
    std::string kind = "custom";
    int dim = 2;
    std::map<std::string, double> params;
    double fd_step = 1e-4;

    std::function<Vec(const Vec&)> forward;
    std::function<Vec(const Vec&)> inverse;
    std::function<Mat(const Vec&)> jacobian;          // d x'/d x at unprimed x
    std::function<Mat(const Vec&)> inverse_jacobian;  // d x/d x' at primed x'
    std::function<Ten3(const Vec&)> inverse_hessian;  // d2 x^a/dx'^mu dx'^nu
    std::function<bool(const Vec&)> in_domain;        // primed-coordinate domain

    bool has_analytic_derivatives() const {
        return static_cast<bool>(inverse_jacobian) && static_cast<bool>(inverse_hessian);
    }

    Vec map_forward(const Vec& x) const { return forward(x); }
    Vec map_inverse(const Vec& xp) const { return inverse(xp); }
    // analytic if available, else finite differences
    Mat jac_forward(const Vec& x) const;
    Mat jac_inverse(const Vec& xp) const;
    Ten3 hess_inverse(const Vec& xp) const;
    bool contains(const Vec& xp) const { return !in_domain || in_domain(xp); }
};

Chart identity_chart(int dim = 2);
// t' = t, x'_i = e^{lambda t} x_i; domain |lambda t'| <= 2
Chart dilation_chart(double lambda, int dim = 2);
// t = (1/alpha + x') sinh(alpha t'), x = (1/alpha + x') cosh(alpha t') - 1/alpha;
// domain 1 + alpha x' > 0.1 (d = 1 only)
Chart rindler_chart(double alpha);
// expression-defined chart; derivatives by finite differences
Chart custom_chart(const std::vector<std::string>& forward_exprs,
                   const std::vector<std::string>& inverse_exprs,
                   const std::map<std::string, double>& params);
// apply `first`, then `second`
Chart compose_charts(const Chart& first, const Chart& second);
Chart inverse_chart(const Chart& chart);

// Finite-difference helpers (central, one Richardson halving).
Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& p, double h);
Ten3 fd_hessian(const std::function<Vec(const Vec&)>& f, const Vec& p, double h);

enum class DerivMode { Analytic, FiniteDifference };

// Flat Minkowski metric expressed in chart coordinates: g = B^T eta B with
// B = d x/d x'.  DerivMode selects how metric derivatives are produced:
// Analytic requires the chart's analytic jacobian/hessian, FiniteDifference
// differentiates the inverse map numerically.
class MetricField {
  public:
    MetricField(Chart chart, DerivMode mode);
    static MetricField minkowski(int dim);

    int dim() const { return chart_.dim; }
    const Chart& chart() const { return chart_; }
    DerivMode mode() const { return mode_; }

    Mat g(const Vec& p) const;
    Mat ginv(const Vec& p) const;  // throws ComputeError if singular
    Ten3 dg(const Vec& p) const;   // dg(rho, mu, nu) = d_rho g_{mu nu}
    // d x/d x' produced the same way this field's g is (mode-consistent)
    Mat chart_jacobian_inverse(const Vec& p) const;

  private:
    Chart chart_;
    DerivMode mode_;
};

MetricField pullback_metric(const Chart& chart);  // picks the natural mode

// Levi-Civita connection: gamma(alpha, mu, nu) = Gamma^alpha_{mu nu}.
Ten3 christoffel(const MetricField& metric, const Vec& p);

// max |nabla_rho g_{mu nu}| at p (should vanish for Levi-Civita).
double metric_compatibility_max(const MetricField& metric, const Vec& p);

// R^alpha_{beta mu nu}; derivative of Gamma by finite differences.
Ten4 riemann(const MetricField& metric, const Vec& p);

// Connection on the weight-w vector-density bundle:
//   (G_mu)^alpha_beta = Gamma^alpha_{mu beta} - w delta^alpha_beta Gamma^rho_{rho mu}
// stored as conn(mu, alpha, beta).
struct DensityConnection {
    double weight = 0.0;
    Ten3 comp;
};
DensityConnection density_connection(const Ten3& gamma, double weight);

struct DensityVector {
    Vec n;
    double weight = 0.5;
};

// n^mu = |det g|^{1/4} u^mu with u the future-directed unit normal of the
// constant-time slice (u_mu proportional to -delta^0_mu); weight 1/2.
// Throws ComputeError when the slice is not spacelike (g^{00} >= 0).
DensityVector canonical_normal_density(const MetricField& metric, const Vec& p);

// dn(mu, nu) = d_nu n^mu of the canonical normal, assembled from dg by the
// chain rule (no finite differences beyond those already in dg).
Mat canonical_normal_partials(const MetricField& metric, const Vec& p);

struct DensityVectorField {
    double weight = 0.5;
    int dim = 2;
    std::function<Vec(const Vec&)> eval;
};

DensityVectorField constant_density_field(Vec components, double weight);

// n'^mu(x') = |det dx/dx'|^w (dx'^mu/dx^nu) n^nu(x), evaluated at x = inverse(x').
DensityVectorField transform_density_vector(const Chart& chart,
                                            const DensityVectorField& field);

// n^mu_{;nu} = d_nu n^mu + Gamma^mu_{nu rho} n^rho - w Gamma^rho_{rho nu} n^mu,
// returned as D(mu, nu); the field derivative is finite-difference.
Mat density_covariant_derivative(const DensityVectorField& field,
                                 const MetricField& metric, const Vec& p);

// Max deviation between the density connection computed directly from the
// pulled-back metric and the pushforward of `gamma_unprimed` under the
// inhomogeneous transformation law (Jacobian-hessian term plus the
// -w delta d_mu log|det dx/dx'| weight term), over the sample points.
double connection_transform_check(const Chart& chart,
                                  const std::function<Ten3(const Vec&)>& gamma_unprimed,
                                  double weight, const std::vector<Vec>& points);

}  // namespace locpovm
