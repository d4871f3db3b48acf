#include "locpovm/lattice.hpp"

#include <cmath>
#include <numbers>

#include "locpovm/errors.hpp"

namespace locpovm {

ModeBasis::ModeBasis(const LatticeSpec& spec) : spec_(spec) {
    const int N = spec.sites;
    const double a = spec.spacing;
    const double L = spec.length();
    const double m = spec.mass;
    const cd I(0.0, 1.0);

    k_.resize(N);
    omega_.resize(N);
    d_.resize(N);
    U_.resize(N, N);
    V_.resize(N, N);
    W_.resize(N, N);

    const int nlo = -((N - 1) / 2);
    for (int idx = 0; idx < N; ++idx) {
        const int n = nlo + idx;
        const double k = 2.0 * std::numbers::pi * n / L;
        k_[idx] = k;
        if (spec.dispersion == Dispersion::Continuum) {
            omega_[idx] = std::sqrt(m * m + k * k);
            d_[idx] = I * k;
        } else {
            const double s = (2.0 / a) * std::sin(0.5 * k * a);
            omega_[idx] = std::sqrt(m * m + s * s);
            d_[idx] = (std::exp(I * k * a) - 1.0) / a;
        }
    }

    for (int n = 0; n < N; ++n) {
        const double om = omega_[n];
        // excluded zero modes keep placeholder coefficients; states never
        // populate them so the NaN-free guarantee holds downstream
        const double unorm = om > 0.0 ? 1.0 / std::sqrt(2.0 * L * om) : 0.0;
        const double vnorm = std::sqrt(om / (2.0 * L));
        for (int j = 0; j < N; ++j) {
            const cd phase = std::exp(I * k_[n] * site(j));
            U_(n, j) = unorm * phase;
            V_(n, j) = -I * vnorm * phase;
            W_(n, j) = d_[n] * U_(n, j);
        }
    }
}

BasisPtr build_mode_basis(const LatticeSpec& spec) {
    if (spec.sites < 2) throw ConfigError("model.N must be >= 2");
    if (!(spec.spacing > 0.0)) throw ConfigError("model.a must be > 0");
    if (!(spec.mass >= 0.0)) throw ConfigError("model.m must be >= 0");
    return std::make_shared<ModeBasis>(spec);
}

}  // namespace locpovm
