#include "locpovm/state.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "locpovm/errors.hpp"

namespace locpovm {

namespace {

void zero_excluded(const ModeBasis& basis, Eigen::VectorXcd& c) {
    for (int n = 0; n < basis.size(); ++n)
        if (basis.mode_excluded(n)) c[n] = 0.0;
}

Eigen::VectorXcd normalized_or_throw(Eigen::VectorXcd c, const char* what) {
    const double norm = c.norm();
    if (!(norm > 1e-150)) throw ComputeError(what);
    return c / norm;
}

}  // namespace

SingleParticleState make_state(BasisPtr basis, Eigen::VectorXcd amplitudes) {
    if (amplitudes.size() != basis->size())
        throw ConfigError("amplitude count does not match mode count");
    for (int n = 0; n < basis->size(); ++n)
        if (basis->mode_excluded(n) && std::abs(amplitudes[n]) > 0.0)
            throw ConfigError("amplitude on excluded zero-frequency mode");
    return {std::move(basis),
            normalized_or_throw(std::move(amplitudes), "state has zero norm"), false};
}

SingleParticleState make_mode_state(BasisPtr basis, int n) {
    if (n < 0 || n >= basis->size()) throw ConfigError("mode index out of range");
    if (basis->mode_excluded(n)) throw ConfigError("mode is excluded (zero frequency)");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(basis->size());
    c[n] = 1.0;
    return {std::move(basis), std::move(c), false};
}

SingleParticleState make_wave_packet(BasisPtr basis, double center, double width,
                                     double mean_momentum) {
    if (!(width > 0.0)) throw ConfigError("state.packet.width must be > 0");
    const cd I(0.0, 1.0);
    Eigen::VectorXcd c(basis->size());
    for (int n = 0; n < basis->size(); ++n) {
        const double k = basis->wave_number(n);
        const double dk = k - mean_momentum;
        c[n] = std::exp(-dk * dk * width * width / 4.0) * std::exp(-I * k * center);
    }
    zero_excluded(*basis, c);
    return {std::move(basis),
            normalized_or_throw(std::move(c), "degenerate packet: all amplitudes underflow"),
            false};
}

SingleParticleState make_random_state(BasisPtr basis, std::uint64_t seed) {
    // Box-Muller on raw mt19937_64 draws; std::normal_distribution output is
    // implementation-defined and would break cross-platform determinism.
    std::mt19937_64 gen(seed);
    auto uniform = [&] {
        return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
    };
    Eigen::VectorXcd c(basis->size());
    for (int n = 0; n < basis->size(); ++n) {
        const double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        c[n] = cd(r * std::cos(2.0 * std::numbers::pi * u2),
                  r * std::sin(2.0 * std::numbers::pi * u2));
    }
    zero_excluded(*basis, c);
    return {std::move(basis),
            normalized_or_throw(std::move(c), "random state has zero norm"), false};
}

SingleParticleState evolve(const SingleParticleState& s, double t) {
    const cd I(0.0, 1.0);
    SingleParticleState out = s;
    for (int n = 0; n < s.basis->size(); ++n)
        out.c[n] = std::exp(-I * s.basis->frequency(n) * t) * s.c[n];
    return out;
}

SingleParticleState apply_inverse_sqrt_hamiltonian(const SingleParticleState& s) {
    SingleParticleState out = s;
    for (int n = 0; n < s.basis->size(); ++n) {
        if (s.basis->mode_excluded(n)) {
            if (std::abs(s.c[n]) > 0.0)
                throw ComputeError("inverse sqrt Hamiltonian is singular on a zero mode");
            out.c[n] = 0.0;
        } else {
            out.c[n] = s.c[n] / std::sqrt(s.basis->frequency(n));
        }
    }
    out.sandwiched = true;
    return out;
}

}  // namespace locpovm
