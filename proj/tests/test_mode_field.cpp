#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "locpovm/errors.hpp"
#include "locpovm/fock_oracle.hpp"
#include "locpovm/kernel.hpp"
#include "locpovm/state.hpp"

using namespace locpovm;
namespace {

constexpr double kPi = std::numbers::pi;

BasisPtr basis64() {
    return build_mode_basis({64, 2.0 * kPi / 64.0, 1.0, Dispersion::Continuum});
}

}  // namespace

TEST_CASE("mode layout and dispersion") {
    const auto b = build_mode_basis({4, 1.0, 1.0, Dispersion::Lattice});
    // N=4, a=1: wave numbers ascend {-pi/2, 0, pi/2, pi}
    CHECK(b->wave_number(0) == doctest::Approx(-kPi / 2));
    CHECK(b->wave_number(1) == doctest::Approx(0.0));
    CHECK(b->wave_number(2) == doctest::Approx(kPi / 2));
    CHECK(b->wave_number(3) == doctest::Approx(kPi));
    CHECK(b->frequency(1) == doctest::Approx(1.0));         // omega(0) = m
    CHECK(b->frequency(3) == doctest::Approx(std::sqrt(5.0)));  // lattice edge

    const auto c = build_mode_basis({4, 1.0, 1.0, Dispersion::Continuum});
    CHECK(c->frequency(3) == doctest::Approx(std::sqrt(1.0 + kPi * kPi)));

    // lattice derivative symbol squares to the dispersion
    for (int n = 0; n < 4; ++n) {
        const double w2 = std::norm(b->derivative_symbol(n)) + 1.0;
        CHECK(b->frequency(n) * b->frequency(n) == doctest::Approx(w2));
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS((void)build_mode_basis({1, 1.0, 1.0, Dispersion::Continuum}),
                    ConfigError);
    CHECK_THROWS_AS((void)build_mode_basis({8, 0.0, 1.0, Dispersion::Continuum}),
                    ConfigError);
    CHECK_THROWS_AS((void)build_mode_basis({8, 1.0, -1.0, Dispersion::Continuum}),
                    ConfigError);
}

TEST_CASE("massless zero mode is excluded") {
    const auto b = build_mode_basis({8, 1.0, 0.0, Dispersion::Continuum});
    int excluded = 0;
    for (int n = 0; n < 8; ++n) excluded += b->mode_excluded(n);
    CHECK(excluded == 1);

    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(8);
    for (int n = 0; n < 8; ++n)
        if (b->mode_excluded(n)) c[n] = 1.0;
    CHECK_THROWS_AS((void)make_state(b, c), ConfigError);

    // packets silently drop the excluded mode and stay normalized
    const auto s = make_wave_packet(b, 4.0, 2.0, 0.0);
    for (int n = 0; n < 8; ++n)
        if (b->mode_excluded(n)) CHECK(std::abs(s.c[n]) == 0.0);
    CHECK(s.c.squaredNorm() == doctest::Approx(1.0));
}

TEST_CASE("state constructors normalize") {
    const auto b = basis64();
    const auto r = make_random_state(b, 7);
    CHECK(r.c.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(r.sandwiched);

    const auto r2 = make_random_state(b, 7);
    CHECK((r.c - r2.c).norm() == 0.0);  // same seed, same draw
    const auto r3 = make_random_state(b, 8);
    CHECK((r.c - r3.c).norm() > 1e-3);

    const auto m = make_mode_state(b, 5);
    CHECK(std::abs(m.c[5]) == doctest::Approx(1.0));
    CHECK(m.c.squaredNorm() == doctest::Approx(1.0));
}

TEST_CASE("wave packet shape") {
    const auto b = basis64();
    const double L = b->spec().length();

    CHECK_THROWS_AS((void)make_wave_packet(b, L / 2, 0.0, 0.0), ConfigError);
    CHECK_THROWS_AS((void)make_wave_packet(b, L / 2, -1.0, 0.0), ConfigError);
    // every coefficient underflows: degenerate packet
    CHECK_THROWS_AS((void)make_wave_packet(b, L / 2, 1e4, 1e8), ComputeError);

    // very wide packet concentrates on the mean-momentum mode
    const auto s = make_wave_packet(b, L / 2, 1e6, 1.0);
    int nk = -1;
    for (int n = 0; n < 64; ++n)
        if (std::abs(b->wave_number(n) - 1.0) < 1e-12) nk = n;
    REQUIRE(nk >= 0);
    CHECK(std::abs(s.c[nk]) == doctest::Approx(1.0).epsilon(1e-12));

    // packet coefficients peak at the mean momentum and decay away from it
    const auto p = make_wave_packet(b, L / 2, L / 8, 1.0);
    CHECK(p.c.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
    double peak = 0.0;
    int npeak = -1;
    for (int n = 0; n < 64; ++n)
        if (std::abs(p.c[n]) > peak) peak = std::abs(p.c[n]), npeak = n;
    CHECK(b->wave_number(npeak) == doctest::Approx(1.0));
}

TEST_CASE("evolution is a mode-wise phase") {
    const auto b = basis64();
    const auto s = make_random_state(b, 3);
    const auto e = evolve(s, 0.7);
    CHECK(e.c.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
    for (int n = 0; n < 8; ++n) {
        const cd expect = s.c[n] * std::exp(cd(0, -b->frequency(n) * 0.7));
        CHECK(std::abs(e.c[n] - expect) < 1e-14);
    }
}

TEST_CASE("inverse sqrt hamiltonian sandwich") {
    const auto b = basis64();
    const auto s = make_random_state(b, 11);
    const auto t = apply_inverse_sqrt_hamiltonian(s);
    CHECK(t.sandwiched);
    for (int n = 0; n < 64; ++n)
        CHECK(std::abs(t.c[n] - s.c[n] / std::sqrt(b->frequency(n))) < 1e-15);

    // applying it to a state with weight on a zero-frequency mode is singular
    const auto b0 = build_mode_basis({8, 1.0, 0.0, Dispersion::Continuum});
    SingleParticleState bad{b0, Eigen::VectorXcd::Zero(8), false};
    for (int n = 0; n < 8; ++n)
        if (b0->mode_excluded(n)) bad.c[n] = 1.0;
    CHECK_THROWS_AS((void)apply_inverse_sqrt_hamiltonian(bad), ComputeError);
}

TEST_CASE("kernel hermiticity and fixed entries") {
    for (const auto disp : {Dispersion::Continuum, Dispersion::Lattice}) {
        const auto b = build_mode_basis({16, 0.5, 1.0, disp});
        const double L = b->spec().length();
        for (const auto kind : {KernelKind::T00, KernelKind::T10, KernelKind::PhiSq,
                                KernelKind::PiPhiSym, KernelKind::DPhiPhiSym}) {
            const auto kern = build_kernel(b, kind);
            const auto M = kern.matrix(3, 0.7);
            CHECK((M - M.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
            if (kind == KernelKind::T00)
                for (int n = 0; n < 16; ++n)
                    CHECK(M(n, n).real() ==
                          doctest::Approx(b->frequency(n) / L).epsilon(1e-12));
            if (kind == KernelKind::PiPhiSym)
                for (int n = 0; n < 16; ++n) CHECK(std::abs(M(n, n)) < 1e-15);
        }
    }
}

TEST_CASE("T00 kernel is positive semidefinite") {
    const auto b = build_mode_basis({16, 0.5, 1.0, Dispersion::Continuum});
    const auto M = build_kernel(b, KernelKind::T00).matrix(5, 0.3);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("expectation routes agree and respect time") {
    const auto b = basis64();
    const auto s = make_wave_packet(b, kPi, kPi / 4, 1.0);
    const auto kern = build_kernel(b, KernelKind::T00);

    const double direct = expectation(s, kern, 9, 0.4);
    Eigen::VectorXcd c = s.c;
    const auto M = kern.matrix(9, 0.4);
    const double manual = (c.adjoint() * M * c)(0, 0).real();
    CHECK(direct == doctest::Approx(manual).epsilon(1e-13));

    // moving the phase into the state equals evaluating the kernel at t
    const auto es = evolve(s, 0.4);
    CHECK(expectation(es, kern, 9, 0.0) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("pair evaluator factorizes quadratic expectations") {
    const auto b = basis64();
    const auto s = make_random_state(b, 21);
    const PairEvaluator pe(s);
    const double m = b->spec().mass;

    const FieldCoeffs Pi{1, 0, 0}, Dx{0, 1, 0}, Phi{0, 0, 1};
    for (int j : {0, 7, 40}) {
        const double t00 = 0.5 * (pe.pair(j, Pi, Pi) + pe.pair(j, Dx, Dx) +
                                  m * m * pe.pair(j, Phi, Phi));
        CHECK(t00 == doctest::Approx(expectation(s, build_kernel(b, KernelKind::T00),
                                                 j, 0.0))
                         .epsilon(1e-12));
        CHECK(-pe.pair(j, Pi, Dx) ==
              doctest::Approx(expectation(s, build_kernel(b, KernelKind::T10), j, 0.0))
                  .epsilon(1e-12));
        CHECK(pe.pair(j, Pi, Phi) ==
              doctest::Approx(expectation(s, build_kernel(b, KernelKind::PiPhiSym), j,
                                          0.0))
                  .epsilon(1e-12));
    }
}

TEST_CASE("hermiticity violation detection") {
    const auto b = build_mode_basis({4, 1.0, 1.0, Dispersion::Lattice});
    const auto s = make_random_state(b, 2);
    // deliberately non-hermitian entries: constant i
    const QuadraticKernel broken(b, [](int, int, int, double) { return cd(0, 1); });
    CHECK_THROWS_AS((void)expectation(s, broken, 0, 0.0), ComputeError);
}

TEST_CASE("occupation oracle matches every analytic kernel") {
    for (const int N : {2, 3, 4}) {
        for (const double m : {0.5, 1.0}) {
            const LatticeSpec spec{N, 1.0, m, Dispersion::Lattice};
            const auto b = build_mode_basis(spec);
            for (const auto kind :
                 {KernelKind::T00, KernelKind::T10, KernelKind::PhiSq,
                  KernelKind::PiPhiSym, KernelKind::DPhiPhiSym}) {
                const auto kern = build_kernel(b, kind);
                for (int j = 0; j < N; ++j) {
                    const auto A = kern.matrix(j, 0.0);
                    const auto B = fock_oracle(spec, kind, j);
                    CHECK((A - B).cwiseAbs().maxCoeff() < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("occupation oracle, continuum dispersion (odd N)") {
    // even N continuum has a self-conjugate edge mode; see fock_oracle.hpp
    const LatticeSpec spec{3, 1.0, 1.0, Dispersion::Continuum};
    const auto b = build_mode_basis(spec);
    for (const auto kind : {KernelKind::T00, KernelKind::T10, KernelKind::PhiSq,
                            KernelKind::PiPhiSym, KernelKind::DPhiPhiSym}) {
        const auto kern = build_kernel(b, kind);
        for (int j = 0; j < 3; ++j)
            CHECK((kern.matrix(j, 0.0) - fock_oracle(spec, kind, j))
                      .cwiseAbs()
                      .maxCoeff() < 1e-10);
    }
}

TEST_CASE("oracle internals") {
    const FockOracle lat({4, 1.0, 1.0, Dispersion::Lattice});
    CHECK(lat.commutator_deviation() < 1e-10);
    const FockOracle cont({3, 1.0, 0.7, Dispersion::Continuum});
    CHECK(cont.commutator_deviation() < 1e-10);
    for (int j = 0; j < 4; ++j)
        CHECK(std::abs(lat.vacuum_expectation(KernelKind::T00, j)) < 1e-12);
    CHECK_THROWS_AS(FockOracle({8, 1.0, 1.0, Dispersion::Lattice}), ComputeError);
}
