#include "locpovm/fock_oracle.hpp"

#include <map>
#include <numbers>

#include "locpovm/errors.hpp"

namespace locpovm {

namespace {

std::vector<std::vector<int>> occupation_states(int N) {
    std::vector<std::vector<int>> states;
    states.emplace_back(N, 0);  // vacuum first: index 0
    for (int n = 0; n < N; ++n) {
        std::vector<int> s(N, 0);
        s[n] = 1;
        states.push_back(s);
    }
    for (int n = 0; n < N; ++n)
        for (int m = n; m < N; ++m) {
            std::vector<int> s(N, 0);
            s[n] += 1;
            s[m] += 1;
            states.push_back(s);
        }
    return states;
}

}  // namespace

FockOracle::FockOracle(const LatticeSpec& spec) : spec_(spec) {
    if (spec.sites > 6)
        throw ComputeError("fock oracle refuses N > 6 (dense truncated basis)");
    basis_ = build_mode_basis(spec);
    const int N = spec.sites;

    const auto states = occupation_states(N);
    dim_ = static_cast<int>(states.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < dim_; ++i) index[states[i]] = i;
    one_particle_.resize(N);
    for (int n = 0; n < N; ++n) {
        std::vector<int> s(N, 0);
        s[n] = 1;
        one_particle_[n] = index.at(s);
    }

    // ladder operators, then field operators per site
    std::vector<Eigen::MatrixXcd> a(N, Eigen::MatrixXcd::Zero(dim_, dim_));
    for (int i = 0; i < dim_; ++i)
        for (int n = 0; n < N; ++n)
            if (states[i][n] > 0) {
                std::vector<int> lowered = states[i];
                lowered[n] -= 1;
                a[n](index.at(lowered), i) = std::sqrt(double(states[i][n]));
            }

    phi_.assign(N, Eigen::MatrixXcd::Zero(dim_, dim_));
    pi_.assign(N, Eigen::MatrixXcd::Zero(dim_, dim_));
    for (int j = 0; j < N; ++j)
        for (int n = 0; n < N; ++n) {
            phi_[j] += basis_->U()(n, j) * a[n] +
                       std::conj(basis_->U()(n, j)) * a[n].adjoint();
            pi_[j] += basis_->V()(n, j) * a[n] +
                      std::conj(basis_->V()(n, j)) * a[n].adjoint();
        }

    dphi_.assign(N, Eigen::MatrixXcd::Zero(dim_, dim_));
    if (spec.dispersion == Dispersion::Lattice) {
        for (int j = 0; j < N; ++j)
            dphi_[j] = (phi_[(j + 1) % N] - phi_[j]) / spec.spacing;
    } else {
        const cd I(0.0, 1.0);
        for (int j = 0; j < N; ++j)
            for (int jp = 0; jp < N; ++jp) {
                cd d = 0.0;
                for (int n = 0; n < N; ++n) {
                    const double k = basis_->wave_number(n);
                    d += I * k * std::exp(I * k * (basis_->site(j) - basis_->site(jp)));
                }
                dphi_[j] += (d / double(N)) * phi_[jp];
            }
    }
}

Eigen::MatrixXcd FockOracle::positional_product(KernelKind kind, int j) const {
    switch (kind) {
        case KernelKind::T00:
            return 0.5 * (pi_[j] * pi_[j] + dphi_[j] * dphi_[j] +
                          spec_.mass * spec_.mass * phi_[j] * phi_[j]);
        case KernelKind::T10:
            return -0.5 * (pi_[j] * dphi_[j] + dphi_[j] * pi_[j]);
        case KernelKind::PhiSq:
            return phi_[j] * phi_[j];
        case KernelKind::PiPhiSym:
            return 0.5 * (pi_[j] * phi_[j] + phi_[j] * pi_[j]);
        case KernelKind::DPhiPhiSym:
            return 0.5 * (dphi_[j] * phi_[j] + phi_[j] * dphi_[j]);
    }
    throw std::logic_error("unreachable kernel kind");
}

Eigen::MatrixXcd FockOracle::kernel_matrix(KernelKind kind, int j) const {
    Eigen::MatrixXcd prod = positional_product(kind, j);
    prod -= prod(0, 0) * Eigen::MatrixXcd::Identity(dim_, dim_);
    const int N = spec_.sites;
    Eigen::MatrixXcd block(N, N);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m)
            block(n, m) = prod(one_particle_[n], one_particle_[m]);
    return block;
}

cd FockOracle::vacuum_expectation(KernelKind kind, int j) const {
    Eigen::MatrixXcd prod = positional_product(kind, j);
    Eigen::MatrixXcd ordered =
        prod - prod(0, 0) * Eigen::MatrixXcd::Identity(dim_, dim_);
    return ordered(0, 0);
}

double FockOracle::commutator_deviation() const {
    const int N = spec_.sites;
    const cd I(0.0, 1.0);
    double worst = 0.0;
    // restrict to the <=1 particle sector; the truncation artifact lives in
    // the top occupation sector only
    std::vector<int> sector;
    sector.push_back(0);
    for (int n = 0; n < N; ++n) sector.push_back(one_particle_[n]);
    for (int j = 0; j < N; ++j)
        for (int jp = 0; jp < N; ++jp) {
            Eigen::MatrixXcd comm =
                spec_.spacing * (phi_[j] * pi_[jp] - pi_[jp] * phi_[j]);
            const cd expect = (j == jp) ? I : cd(0.0, 0.0);
            for (int r : sector)
                for (int c : sector) {
                    const cd want = (r == c) ? expect : cd(0.0, 0.0);
                    worst = std::max(worst, std::abs(comm(r, c) - want));
                }
        }
    return worst;
}

Eigen::MatrixXcd fock_oracle(const LatticeSpec& spec, KernelKind kind, int j) {
    return FockOracle(spec).kernel_matrix(kind, j);
}

}  // namespace locpovm
