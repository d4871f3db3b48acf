#pragma once

#include "locpovm/geometry.hpp"
#include "locpovm/localization.hpp"

namespace locpovm {

// Geometric data of a chart at one point of the shared t = t' = 0 surface.
struct GeoSample {
    Vec n;                    // canonical weight-1/2 normal density n^mu
    Mat dn;                   // dn(mu, nu) = d'_nu n^mu (primed partials)
    Mat g, gi;                // chart metric and inverse
    Mat B;                    // d x/d x'
    double detB = 1.0;
    DensityConnection conn;   // weight-1/2 bundle connection
    Mat ncd;                  // ncd(alpha, rho) = n^alpha_{;rho}
};

// A chart sharing the t = 0 Cauchy surface with coinciding spatial
// coordinates, packaged with its pullback metric.  non_inertial records
// whether the canonical normal fails to be covariantly constant.
struct FoliationScenario {
    Chart chart;
    MetricField metric;
    bool non_inertial = false;
    double surface_time = 0.0;

    GeoSample sample(double x) const;
};

// Validates the shared-surface property (inverse of (0, x) must be (0, x))
// and spacelikeness of the slice; throws ComputeError otherwise.
FoliationScenario build_scenario(const Chart& chart);

// Localization density with the chart's n^0 folded into the derivative
// arguments: 1/2 sum_mu E[: d_mu(n^0 phi) d_mu(n^0 phi) :] plus the mass
// term, in the sandwiched state.  Cartesian operator content, primed n^0.
LocalizationField pi00_linear(const SingleParticleState& s,
                              const FoliationScenario& scenario);

// (n^0)^2 E[:T00:]: what a chart user would naively call the density.
LocalizationField naive00_density(const SingleParticleState& s,
                                  const FoliationScenario& scenario);

struct DiscrepancyReport {
    LocalizationField naive_form;
    LocalizationField linear_form;
    LocalizationField discrepancy;   // linear - naive, pointwise
    LocalizationField term_phi2;     // 1/2 sum_mu (n^0_{,mu})^2 <:phi^2:>
    LocalizationField term_piphi;    // n^0 n^0_{,0} <1/2 :{pi, phi}:>
    LocalizationField term_dphiphi;  // n^0 n^0_{,x} <1/2 :{d_x phi, phi}:>
};

DiscrepancyReport discrepancy_field(const SingleParticleState& s,
                                    const FoliationScenario& scenario);

// Density from the connection-modified stress tensor, contracted with the
// normal on both sides: E[:L^2:] - 1/2 g_{ab} g^{rs} E[:D^a_r D^b_s:]
// - 1/2 (n.g.n) m^2 <:phi^2:> with L = n^mu d'_mu phi + n^mu_{;mu} phi and
// D^a_r = n^a d'_r phi + n^a_{;r} phi.  Transforms as a weight-1 scalar
// density across charts sharing the surface.
LocalizationField modified_localization_density(const SingleParticleState& s,
                                                const FoliationScenario& scenario);

// pi00_linear completed to the full n^mu T'_{mu nu} n^nu contraction with
// plain (unmodified) chart derivatives; the integrand of prob_naive.
LocalizationField naive_contraction_density(const SingleParticleState& s,
                                            const FoliationScenario& scenario);

struct CovarianceRow {
    double lo = 0.0, hi = 0.0;
    double prob_cartesian = 0.0;
    double prob_naive = 0.0;
    double prob_modified = 0.0;
    double dev_naive = 0.0;
    double dev_modified = 0.0;
};

CovarianceRow covariance_check(const SingleParticleState& s,
                               const FoliationScenario& scenario,
                               const QueryInterval& interval);

enum class ChartFamily { Dilation, Rindler };

struct ScanRow {
    double parameter = 0.0;
    double max_abs_discrepancy = 0.0;
    double max_dev_modified = 0.0;
    bool non_inertial = false;
};

// Per parameter value: the grid maximum of |discrepancy| and the worst
// modified-probability deviation over the eight octant intervals.
std::vector<ScanRow> metric_condition_scan(ChartFamily family,
                                           const std::vector<double>& values,
                                           const SingleParticleState& s);

}  // namespace locpovm
