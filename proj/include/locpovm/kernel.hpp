#pragma once

#include <functional>

#include "locpovm/state.hpp"

namespace locpovm {

// Normal-ordered quadratic operators.  Single-excitation expectations see
// only the a^dag a block, so that block is the whole kernel:
//   K_{nn'}(x_j, t) = [A*_n B_{n'} + B*_n A_{n'}] e^{i (omega_n - omega_n') t}
// with (A, B) drawn from the field/momentum/gradient coefficient rows.
enum class KernelKind {
    T00,          // 1/2 : pi^2 + (d_x phi)^2 + m^2 phi^2 :
    T10,          // -1/2 : {pi, d_x phi} :     (current component, T^{10})
    PhiSq,        // : phi^2 :
    PiPhiSym,     // 1/2 : {pi, phi} :
    DPhiPhiSym,   // 1/2 : {d_x phi, phi} :
};

class QuadraticKernel {
  public:
    QuadraticKernel(BasisPtr basis, KernelKind kind);

    // Test hook: arbitrary entry function (used to exercise the
    // hermiticity-violation error path).
    QuadraticKernel(BasisPtr basis,
                    std::function<cd(int n, int np, int j, double t)> entry);

    const BasisPtr& basis() const { return basis_; }
    cd entry(int n, int np, int j, double t) const;
    Eigen::MatrixXcd matrix(int j, double t) const;

  private:
    BasisPtr basis_;
    KernelKind kind_;
    std::function<cd(int, int, int, double)> custom_;
};

QuadraticKernel build_kernel(BasisPtr basis, KernelKind kind);

// sum_{nn'} c*_n K_{nn'}(x_j,t) c_{n'}.  The imaginary residual must stay
// below 1e-12 for the built-in kernels; above 1e-10 it is treated as a
// hermiticity violation and throws.
double expectation(const SingleParticleState& s, const QuadraticKernel& kernel,
                   int j, double t);

// Field-linear operator sum_mu coeff_mu * op_mu with real coefficients on
// {pi, d_x phi, phi}.  The expectation of the normal-ordered product of two
// such operators in a single-excitation state is
//   E[:A B:] = 2 Re( conj(alpha_A) alpha_B ),   alpha_X = sum_n X_n(j) c_n,
// which is what the quadratic kernels compute, factorized per operator.
struct FieldCoeffs {
    double pi = 0.0;
    double dphi = 0.0;
    double phi = 0.0;
};

// Per-site amplitudes alpha_U, alpha_V, alpha_W for one state; lets callers
// evaluate many bilinear pairings without touching N x N matrices.
class PairEvaluator {
  public:
    explicit PairEvaluator(const SingleParticleState& s);

    int size() const { return static_cast<int>(aU_.size()); }
    double pair(int j, const FieldCoeffs& A, const FieldCoeffs& B) const;

  private:
    Eigen::VectorXcd aU_, aV_, aW_;
};

}  // namespace locpovm
