#pragma once

#include <vector>

#include "locpovm/kernel.hpp"

namespace locpovm {

// Half-open coordinate interval on the periodic circle; lo > hi wraps.
struct QueryInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct LocalizationField {
    std::vector<double> grid;    // site coordinates
    std::vector<double> values;  // density samples, units 1/length
    double time = 0.0;
};

// Pi(x_j) = <psi~| :T00(x_j): |psi~> with |psi~> the sandwiched state.
// Integrates to 1: a * sum Pi = 1 up to roundoff.
LocalizationField localization_density(const SingleParticleState& s, double t);

// (J0, J1); J0 coincides with localization_density.
std::pair<LocalizationField, LocalizationField> localization_current(
    const SingleParticleState& s, double t);

// r(x) = dt J0 + dx J1 with the time derivative taken exactly through
// dc_n/dt = -i omega_n c_n and the space derivative spectrally.
// Vanishes identically for continuum dispersion; for lattice dispersion the
// residual is a genuine discretization effect (no smallness contract) and
// `contract_waived` is set on the result.
struct ContinuityResult {
    LocalizationField residual;
    bool contract_waived = false;
};
ContinuityResult continuity_residual(const SingleParticleState& s, double t);

// a * sum of whole-cell masses inside the interval.  Endpoints snap outward
// to cell boundaries; interval length must be in (0, L].  Clamped to [0,1];
// the clamped-away amount (float noise) is added to *clipped when given.
double localization_probability(const SingleParticleState& s, const QueryInterval& iv,
                                double t, double* clipped = nullptr);

// Cell membership shared by probability and the chart-side integrations:
// indices j whose cell [x_j, x_j + a) lies inside the snapped interval.
std::vector<int> interval_cells(const LatticeSpec& spec, const QueryInterval& iv);

}  // namespace locpovm
