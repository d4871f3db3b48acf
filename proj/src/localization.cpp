#include "locpovm/localization.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "locpovm/errors.hpp"

namespace locpovm {

namespace {

std::vector<double> grid_coordinates(const ModeBasis& b) {
    std::vector<double> g(b.size());
    for (int j = 0; j < b.size(); ++j) g[j] = b.site(j);
    return g;
}

}  // namespace

LocalizationField localization_density(const SingleParticleState& s, double t) {
    const SingleParticleState tilde =
        s.sandwiched ? s : apply_inverse_sqrt_hamiltonian(s);
    const QuadraticKernel k = build_kernel(s.basis, KernelKind::T00);
    LocalizationField f;
    f.grid = grid_coordinates(*s.basis);
    f.time = t;
    f.values.resize(s.basis->size());
    for (int j = 0; j < s.basis->size(); ++j)
        f.values[j] = expectation(tilde, k, j, t);
    return f;
}

std::pair<LocalizationField, LocalizationField> localization_current(
    const SingleParticleState& s, double t) {
    const SingleParticleState tilde =
        s.sandwiched ? s : apply_inverse_sqrt_hamiltonian(s);
    const QuadraticKernel k10 = build_kernel(s.basis, KernelKind::T10);
    LocalizationField j0 = localization_density(s, t);
    LocalizationField j1;
    j1.grid = j0.grid;
    j1.time = t;
    j1.values.resize(s.basis->size());
    for (int j = 0; j < s.basis->size(); ++j)
        j1.values[j] = expectation(tilde, k10, j, t);
    return {std::move(j0), std::move(j1)};
}

ContinuityResult continuity_residual(const SingleParticleState& s, double t) {
    const ModeBasis& b = *s.basis;
    const int N = b.size();
    const cd I(0.0, 1.0);

    const SingleParticleState tilde =
        evolve(s.sandwiched ? s : apply_inverse_sqrt_hamiltonian(s), t);

    // frequency- and wavenumber-weighted companions of the amplitudes; the
    // time derivative is exact (dc_n/dt = -i omega_n c_n), the space
    // derivative is spectral (every alpha below is a trig polynomial in x)
    Eigen::VectorXcd ct = tilde.c, cdot(N), cgrad(N);
    for (int n = 0; n < N; ++n) {
        cdot[n] = -I * b.frequency(n) * ct[n];
        cgrad[n] = I * b.wave_number(n) * ct[n];
    }
    const Eigen::VectorXcd aU = b.U().transpose() * ct, aV = b.V().transpose() * ct,
                           aW = b.W().transpose() * ct;
    const Eigen::VectorXcd dU = b.U().transpose() * cdot,
                           dV = b.V().transpose() * cdot,
                           dW = b.W().transpose() * cdot;
    const Eigen::VectorXcd gV = b.V().transpose() * cgrad,
                           gW = b.W().transpose() * cgrad;

    const double m = b.spec().mass;
    ContinuityResult out;
    out.residual.grid = grid_coordinates(b);
    out.residual.time = t;
    out.residual.values.resize(N);
    for (int j = 0; j < N; ++j) {
        // J0 = |aV|^2 + |aW|^2 + m^2 |aU|^2, J1 = -2 Re(conj(aV) aW)
        const double dt_j0 = 2.0 * (std::conj(dV[j]) * aV[j] + std::conj(dW[j]) * aW[j] +
                                    m * m * std::conj(dU[j]) * aU[j])
                                       .real();
        const double dx_j1 =
            -2.0 * (std::conj(gV[j]) * aW[j] + std::conj(aV[j]) * gW[j]).real();
        out.residual.values[j] = dt_j0 + dx_j1;
    }
    out.contract_waived = b.spec().dispersion == Dispersion::Lattice;
    return out;
}

std::vector<int> interval_cells(const LatticeSpec& spec, const QueryInterval& iv) {
    const double a = spec.spacing;
    const double L = spec.sites * a;
    const double tol = 1e-9;

    double len = iv.hi - iv.lo;
    if (std::abs(len) < tol * a)
        throw ConfigError("interval has zero length (full circle is lo, lo + L)");
    if (len < 0.0) len += L;
    if (len <= 0.0 || len > L + tol * a)
        throw ConfigError("interval longer than the spatial circle");

    // snap outward to cell boundaries; near-boundary endpoints (within tol)
    // count as the boundary itself
    const double slo = iv.lo / a;
    const double shi = (iv.lo + len) / a;
    const long j0 = static_cast<long>(std::floor(slo + tol));
    const long j1 = static_cast<long>(std::ceil(shi - tol));

    std::set<int> cells;
    for (long j = j0; j < j1; ++j) {
        long r = j % spec.sites;
        if (r < 0) r += spec.sites;
        cells.insert(static_cast<int>(r));
    }
    return {cells.begin(), cells.end()};
}

double localization_probability(const SingleParticleState& s, const QueryInterval& iv,
                                double t, double* clipped) {
    const LocalizationField f = localization_density(s, t);
    const auto cells = interval_cells(s.basis->spec(), iv);
    double raw = 0.0;
    for (int j : cells) raw += f.values[j];
    raw *= s.basis->spec().spacing;
    if (raw < -1e-9 || raw > 1.0 + 1e-9)
        throw ComputeError("probability outside [0,1] beyond tolerance");
    const double value = std::clamp(raw, 0.0, 1.0);
    if (clipped) *clipped += std::abs(raw - value);
    return value;
}

}  // namespace locpovm
