#include "locpovm/covariance.hpp"

#include <cmath>

#include "locpovm/errors.hpp"

namespace locpovm {

GeoSample FoliationScenario::sample(double x) const {
    Vec pp(2);
    pp << surface_time, x;
    GeoSample s;
    const DensityVector nd = canonical_normal_density(metric, pp);
    s.n = nd.n;
    s.dn = canonical_normal_partials(metric, pp);
    s.g = metric.g(pp);
    s.gi = metric.ginv(pp);
    s.B = metric.chart_jacobian_inverse(pp);
    s.detB = s.B.determinant();
    s.conn = density_connection(christoffel(metric, pp), nd.weight);
    s.ncd = Mat(2, 2);
    for (int al = 0; al < 2; ++al)
        for (int rho = 0; rho < 2; ++rho) {
            double val = s.dn(al, rho);
            for (int be = 0; be < 2; ++be) val += s.conn.comp(rho, al, be) * s.n[be];
            s.ncd(al, rho) = val;
        }
    return s;
}

FoliationScenario build_scenario(const Chart& chart) {
    if (chart.dim != 2)
        throw ConfigError("foliation scenarios are 1+1 dimensional");
    FoliationScenario sc{chart, pullback_metric(chart), false, 0.0};

    // the shared Cauchy surface: t' = 0 must be t = 0 with the same spatial
    // coordinate, otherwise chart and Cartesian probabilities compare
    // different regions
    for (double x : {0.0, 0.7, 2.9}) {
        Vec pp(2);
        pp << 0.0, x;
        if (!chart.contains(pp))
            throw ComputeError("chart domain does not cover the shared surface");
        const Vec back = chart.inverse(pp);
        if (std::abs(back[0]) > 1e-8 || std::abs(back[1] - x) > 1e-8)
            throw ComputeError(
                "foliation error: chart does not share the t = 0 surface with "
                "coinciding spatial coordinates");
    }

    // flag foliations whose canonical normal is not covariantly constant
    double worst = 0.0;
    for (double x : {0.3, 1.9}) {
        const GeoSample s = sc.sample(x);
        worst = std::max(worst, s.ncd.cwiseAbs().maxCoeff());
    }
    sc.non_inertial = worst > 1e-6;
    return sc;
}

}  // namespace locpovm
