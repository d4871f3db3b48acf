#pragma once

#include <cstdint>

#include "locpovm/lattice.hpp"

namespace locpovm {

// Single-excitation state: amplitudes c_n over the mode basis.
// Invariant unless sandwiched: sum |c_n|^2 = 1 and c_n = 0 on excluded
// (zero-frequency) modes.  A sandwiched state carries c_n / sqrt(omega_n)
// and is deliberately not renormalized.
struct SingleParticleState {
    BasisPtr basis;
    Eigen::VectorXcd c;
    bool sandwiched = false;
};

// Normalizes and validates the amplitude vector.
SingleParticleState make_state(BasisPtr basis, Eigen::VectorXcd amplitudes);

// Single mode |1_n> by basis index.
SingleParticleState make_mode_state(BasisPtr basis, int n);

// Gaussian packet: c_n ~ exp(-(k_n - kbar)^2 w^2 / 4) e^{-i k_n center}.
// Throws ComputeError when every coefficient underflows (degenerate packet).
SingleParticleState make_wave_packet(BasisPtr basis, double center, double width,
                                     double mean_momentum);

// Deterministic complex-gaussian amplitudes from the seed; the draw sequence
// is fixed by this library, not by the platform's distribution objects.
SingleParticleState make_random_state(BasisPtr basis, std::uint64_t seed);

// Free evolution: c_n -> e^{-i omega_n t} c_n.  Norm preserved exactly.
SingleParticleState evolve(const SingleParticleState& s, double t);

// c_n -> c_n / sqrt(omega_n), marked sandwiched (not renormalized).
// Throws ComputeError if the state touches a zero-frequency mode.
SingleParticleState apply_inverse_sqrt_hamiltonian(const SingleParticleState& s);

}  // namespace locpovm
