#include "locpovm/covariance.hpp"

#include <cmath>

#include "locpovm/errors.hpp"

namespace locpovm {

namespace {

// Cartesian operator slots on the shared surface.
const FieldCoeffs kPi{1.0, 0.0, 0.0};
const FieldCoeffs kDx{0.0, 1.0, 0.0};
const FieldCoeffs kPhi{0.0, 0.0, 1.0};

// d'_mu phi expressed through Cartesian operators: chain rule with B = dx/dx'
FieldCoeffs chart_derivative(const GeoSample& gs, int mu) {
    return {gs.B(0, mu), gs.B(1, mu), 0.0};
}

FieldCoeffs scale(const FieldCoeffs& c, double s) {
    return {c.pi * s, c.dphi * s, c.phi * s};
}

FieldCoeffs add(const FieldCoeffs& a, const FieldCoeffs& b) {
    return {a.pi + b.pi, a.dphi + b.dphi, a.phi + b.phi};
}

struct SurfaceEval {
    PairEvaluator pe;
    const ModeBasis& basis;
    double mass;

    explicit SurfaceEval(const SingleParticleState& s)
        : pe(s.sandwiched ? s : apply_inverse_sqrt_hamiltonian(s)),
          basis(*s.basis),
          mass(s.basis->spec().mass) {}

    double t00(int j) const {
        return 0.5 * (pe.pair(j, kPi, kPi) + pe.pair(j, kDx, kDx) +
                      mass * mass * pe.pair(j, kPhi, kPhi));
    }
};

LocalizationField empty_field(const ModeBasis& b) {
    LocalizationField f;
    f.time = 0.0;
    f.grid.resize(b.size());
    f.values.resize(b.size());
    for (int j = 0; j < b.size(); ++j) f.grid[j] = b.site(j);
    return f;
}

double integrate_cells(const LocalizationField& f, const std::vector<int>& cells,
                       double spacing) {
    double acc = 0.0;
    for (int j : cells) acc += f.values[j];
    return acc * spacing;
}

}  // namespace

LocalizationField pi00_linear(const SingleParticleState& s,
                              const FoliationScenario& scenario) {
    SurfaceEval ev(s);
    LocalizationField out = empty_field(ev.basis);
    for (int j = 0; j < ev.basis.size(); ++j) {
        const GeoSample gs = scenario.sample(ev.basis.site(j));
        const double n0 = gs.n[0];
        double acc = 0.5 * ev.mass * ev.mass * n0 * n0 * ev.pe.pair(j, kPhi, kPhi);
        // d_mu acting on the product n^0 phi: operator slot mu plus the
        // derivative of n^0 riding on plain phi
        const FieldCoeffs slots[2] = {kPi, kDx};
        for (int mu = 0; mu < 2; ++mu) {
            const FieldCoeffs A =
                add(scale(slots[mu], n0), scale(kPhi, gs.dn(0, mu)));
            acc += 0.5 * ev.pe.pair(j, A, A);
        }
        out.values[j] = acc;
    }
    return out;
}

LocalizationField naive00_density(const SingleParticleState& s,
                                  const FoliationScenario& scenario) {
    SurfaceEval ev(s);
    LocalizationField out = empty_field(ev.basis);
    for (int j = 0; j < ev.basis.size(); ++j) {
        const GeoSample gs = scenario.sample(ev.basis.site(j));
        out.values[j] = gs.n[0] * gs.n[0] * ev.t00(j);
    }
    return out;
}

DiscrepancyReport discrepancy_field(const SingleParticleState& s,
                                    const FoliationScenario& scenario) {
    SurfaceEval ev(s);
    DiscrepancyReport rep{empty_field(ev.basis), empty_field(ev.basis),
                          empty_field(ev.basis), empty_field(ev.basis),
                          empty_field(ev.basis), empty_field(ev.basis)};
    rep.linear_form = pi00_linear(s, scenario);
    rep.naive_form = naive00_density(s, scenario);
    for (int j = 0; j < ev.basis.size(); ++j) {
        const GeoSample gs = scenario.sample(ev.basis.site(j));
        const double n0 = gs.n[0];
        const double dn0t = gs.dn(0, 0), dn0x = gs.dn(0, 1);
        rep.term_phi2.values[j] =
            0.5 * (dn0t * dn0t + dn0x * dn0x) * ev.pe.pair(j, kPhi, kPhi);
        rep.term_piphi.values[j] = n0 * dn0t * ev.pe.pair(j, kPi, kPhi);
        rep.term_dphiphi.values[j] = n0 * dn0x * ev.pe.pair(j, kDx, kPhi);
        rep.discrepancy.values[j] =
            rep.linear_form.values[j] - rep.naive_form.values[j];
    }
    return rep;
}

LocalizationField modified_localization_density(const SingleParticleState& s,
                                                const FoliationScenario& scenario) {
    SurfaceEval ev(s);
    LocalizationField out = empty_field(ev.basis);
    for (int j = 0; j < ev.basis.size(); ++j) {
        const GeoSample gs = scenario.sample(ev.basis.site(j));

        // L = n^mu d'_mu phi + n^mu_{;mu} phi
        FieldCoeffs L{0.0, 0.0, gs.ncd(0, 0) + gs.ncd(1, 1)};
        for (int mu = 0; mu < 2; ++mu)
            L = add(L, scale(chart_derivative(gs, mu), gs.n[mu]));

        // D^alpha_rho = n^alpha d'_rho phi + n^alpha_{;rho} phi
        FieldCoeffs D[2][2];
        for (int al = 0; al < 2; ++al)
            for (int rho = 0; rho < 2; ++rho)
                D[al][rho] = add(scale(chart_derivative(gs, rho), gs.n[al]),
                                 scale(kPhi, gs.ncd(al, rho)));

        double val = ev.pe.pair(j, L, L);
        for (int al = 0; al < 2; ++al)
            for (int be = 0; be < 2; ++be)
                for (int rho = 0; rho < 2; ++rho)
                    for (int si = 0; si < 2; ++si)
                        val -= 0.5 * gs.g(al, be) * gs.gi(rho, si) *
                               ev.pe.pair(j, D[al][rho], D[be][si]);
        const double ngn = gs.n.dot(gs.g * gs.n);
        val -= 0.5 * ngn * ev.mass * ev.mass * ev.pe.pair(j, kPhi, kPhi);
        out.values[j] = val;
    }
    return out;
}

LocalizationField naive_contraction_density(const SingleParticleState& s,
                                            const FoliationScenario& scenario) {
    SurfaceEval ev(s);
    LocalizationField lin = pi00_linear(s, scenario);
    LocalizationField out = empty_field(ev.basis);
    for (int j = 0; j < ev.basis.size(); ++j) {
        const GeoSample gs = scenario.sample(ev.basis.site(j));
        // plain chart stress tensor T'_{mu nu} for the completion pieces
        auto tprime = [&](int mu, int nu) {
            double q = 0.0;
            for (int r = 0; r < 2; ++r)
                for (int ss = 0; ss < 2; ++ss)
                    q += gs.gi(r, ss) * ev.pe.pair(j, chart_derivative(gs, r),
                                                   chart_derivative(gs, ss));
            return ev.pe.pair(j, chart_derivative(gs, mu), chart_derivative(gs, nu)) -
                   0.5 * gs.g(mu, nu) *
                       (q + ev.mass * ev.mass * ev.pe.pair(j, kPhi, kPhi));
        };
        const double n0 = gs.n[0], n1 = gs.n[1];
        double completion = 0.0;
        if (n1 != 0.0)
            completion = 2.0 * n0 * n1 * tprime(0, 1) + n1 * n1 * tprime(1, 1);
        out.values[j] = lin.values[j] + completion;
    }
    return out;
}

CovarianceRow covariance_check(const SingleParticleState& s,
                               const FoliationScenario& scenario,
                               const QueryInterval& interval) {
    const LatticeSpec& spec = s.basis->spec();
    const auto cells = interval_cells(spec, interval);

    CovarianceRow row;
    row.lo = interval.lo;
    row.hi = interval.hi;
    row.prob_cartesian =
        localization_probability(s, interval, scenario.surface_time);
    row.prob_naive = integrate_cells(naive_contraction_density(s, scenario), cells,
                                     spec.spacing);
    row.prob_modified = integrate_cells(modified_localization_density(s, scenario),
                                        cells, spec.spacing);
    row.dev_naive = std::abs(row.prob_naive - row.prob_cartesian);
    row.dev_modified = std::abs(row.prob_modified - row.prob_cartesian);
    return row;
}

std::vector<ScanRow> metric_condition_scan(ChartFamily family,
                                           const std::vector<double>& values,
                                           const SingleParticleState& s) {
    const LatticeSpec& spec = s.basis->spec();
    const double L = spec.length();
    std::vector<ScanRow> rows;
    for (double v : values) {
        const Chart chart =
            family == ChartFamily::Dilation ? dilation_chart(v) : rindler_chart(v);
        const FoliationScenario scenario = build_scenario(chart);

        ScanRow row;
        row.parameter = v;
        row.non_inertial = scenario.non_inertial;
        const DiscrepancyReport rep = discrepancy_field(s, scenario);
        for (double d : rep.discrepancy.values)
            row.max_abs_discrepancy = std::max(row.max_abs_discrepancy, std::abs(d));
        for (int oct = 0; oct < 8; ++oct) {
            QueryInterval iv{oct * L / 8.0, (oct + 1) * L / 8.0};
            const CovarianceRow cr = covariance_check(s, scenario, iv);
            row.max_dev_modified = std::max(row.max_dev_modified, cr.dev_modified);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace locpovm
