#include "locpovm/kernel.hpp"

#include <cmath>

#include "locpovm/errors.hpp"

namespace locpovm {

namespace {

// A*_n B_{n'} + B*_n A_{n'} for coefficient rows A, B evaluated at site j.
cd sym_entry(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, int n, int np,
             int j) {
    return std::conj(A(n, j)) * B(np, j) + std::conj(B(n, j)) * A(np, j);
}

}  // namespace

QuadraticKernel::QuadraticKernel(BasisPtr basis, KernelKind kind)
    : basis_(std::move(basis)), kind_(kind) {}

QuadraticKernel::QuadraticKernel(BasisPtr basis,
                                 std::function<cd(int, int, int, double)> entry)
    : basis_(std::move(basis)), kind_(KernelKind::T00), custom_(std::move(entry)) {}

cd QuadraticKernel::entry(int n, int np, int j, double t) const {
    if (custom_) return custom_(n, np, j, t);
    const ModeBasis& b = *basis_;
    cd v;
    switch (kind_) {
        case KernelKind::T00: {
            const double m = b.spec().mass;
            v = 0.5 * (sym_entry(b.V(), b.V(), n, np, j) +
                       sym_entry(b.W(), b.W(), n, np, j) +
                       m * m * sym_entry(b.U(), b.U(), n, np, j));
            break;
        }
        // the a^dag a block of 1/2 :{A,B}: is sym(A,B) itself (both
        // orderings contribute the same block), so no extra 1/2 here
        case KernelKind::T10:
            v = -sym_entry(b.V(), b.W(), n, np, j);
            break;
        case KernelKind::PhiSq:
            v = sym_entry(b.U(), b.U(), n, np, j);
            break;
        case KernelKind::PiPhiSym:
            v = sym_entry(b.V(), b.U(), n, np, j);
            break;
        case KernelKind::DPhiPhiSym:
            v = sym_entry(b.W(), b.U(), n, np, j);
            break;
    }
    if (t != 0.0) {
        const cd I(0.0, 1.0);
        v *= std::exp(I * (b.frequency(n) - b.frequency(np)) * t);
    }
    return v;
}

Eigen::MatrixXcd QuadraticKernel::matrix(int j, double t) const {
    const int N = basis_->size();
    Eigen::MatrixXcd K(N, N);
    for (int n = 0; n < N; ++n)
        for (int np = 0; np < N; ++np) K(n, np) = entry(n, np, j, t);
    return K;
}

QuadraticKernel build_kernel(BasisPtr basis, KernelKind kind) {
    return QuadraticKernel(std::move(basis), kind);
}

double expectation(const SingleParticleState& s, const QuadraticKernel& kernel,
                   int j, double t) {
    if (!(s.basis->spec() == kernel.basis()->spec()))
        throw ConfigError("state and kernel use different lattices");
    const int N = s.basis->size();
    cd acc = 0.0;
    for (int n = 0; n < N; ++n)
        for (int np = 0; np < N; ++np)
            acc += std::conj(s.c[n]) * kernel.entry(n, np, j, t) * s.c[np];
    if (std::abs(acc.imag()) > 1e-10)
        throw ComputeError("kernel hermiticity violation: imaginary residual " +
                           std::to_string(acc.imag()));
    return acc.real();
}

PairEvaluator::PairEvaluator(const SingleParticleState& s) {
    const ModeBasis& b = *s.basis;
    aU_ = b.U().transpose() * s.c;
    aV_ = b.V().transpose() * s.c;
    aW_ = b.W().transpose() * s.c;
}

double PairEvaluator::pair(int j, const FieldCoeffs& A, const FieldCoeffs& B) const {
    const cd a = A.pi * aV_[j] + A.dphi * aW_[j] + A.phi * aU_[j];
    const cd bb = B.pi * aV_[j] + B.dphi * aW_[j] + B.phi * aU_[j];
    return 2.0 * (std::conj(a) * bb).real();
}

}  // namespace locpovm
