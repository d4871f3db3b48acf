#pragma once

#include "locpovm/kernel.hpp"

namespace locpovm {

// Brute-force cross-check for the analytic kernels.  Builds phi and pi at
// every site as dense matrices in the occupation-number basis truncated at
// total particle number <= 2, forms each normal-ordered quadratic operator
// positionally (normal ordering = vacuum subtraction, exact for a product
// of two field-linear operators), and reads off <1_n| O |1_n'>.
//
// The positional derivative matches the basis dispersion: forward difference
// for lattice (exact for every N), spectral differentiation matrix for
// continuum.  With continuum dispersion and even N the k = pi/a mode is its
// own conjugate on the grid, so no positional matrix reproduces the
// mode-wise i*k rule there; continuum comparisons use odd N.
class FockOracle {
  public:
    explicit FockOracle(const LatticeSpec& spec);  // throws for N > 6

    const LatticeSpec& spec() const { return spec_; }

    // Matrix of <1_n| :O(x_j): |1_n'>, same index order as the kernels.
    Eigen::MatrixXcd kernel_matrix(KernelKind kind, int j) const;

    // max |[phi_j, a*pi_j'] - i delta_jj'| over the <=1 particle sector.
    double commutator_deviation() const;

    // <0| :O(x_j): |0>; zero by construction, kept as an explicit check.
    cd vacuum_expectation(KernelKind kind, int j) const;

  private:
    Eigen::MatrixXcd positional_product(KernelKind kind, int j) const;

    LatticeSpec spec_;
    BasisPtr basis_;
    std::vector<Eigen::MatrixXcd> phi_, pi_, dphi_;
    std::vector<int> one_particle_;  // basis index of |1_n>
    int dim_ = 0;
};

// One-shot convenience wrapper around FockOracle::kernel_matrix.
Eigen::MatrixXcd fock_oracle(const LatticeSpec& spec, KernelKind kind, int j);

}  // namespace locpovm
