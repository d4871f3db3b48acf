#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace locpovm {

using cd = std::complex<double>;

enum class Dispersion { Continuum, Lattice };

struct LatticeSpec {
    int sites = 0;          // N
    double spacing = 1.0;   // a
    double mass = 1.0;      // m >= 0
    Dispersion dispersion = Dispersion::Continuum;

    double length() const { return sites * spacing; }
    bool operator==(const LatticeSpec&) const = default;
};

// Plane-wave mode basis on a periodic grid of N sites.
//
// Wave numbers are 2*pi*n/L for integer n in [-(N-1)/2, N/2], sorted
// ascending, so N=4, a=1 gives {-pi/2, 0, pi/2, pi}.  omega is
// sqrt(m^2 + k^2) for continuum dispersion and
// sqrt(m^2 + (2/a)^2 sin^2(ka/2)) for lattice dispersion.
//
// Rows of U, V, W are modes, columns are sites:
//   U(n,j) = e^{i k_n x_j} / sqrt(2 L omega_n)      field coefficient
//   V(n,j) = -i sqrt(omega_n / 2L) e^{i k_n x_j}    momentum coefficient
//   W(n,j) = d_n U(n,j)                             gradient coefficient
// with d_n = i k_n (continuum) or (e^{i k_n a} - 1)/a (lattice); the lattice
// derivative symbol is the forward difference, which is what squares to the
// lattice dispersion.
class ModeBasis {
  public:
    explicit ModeBasis(const LatticeSpec& spec);

    const LatticeSpec& spec() const { return spec_; }
    int size() const { return spec_.sites; }
    double site(int j) const { return spec_.spacing * j; }

    double wave_number(int n) const { return k_[n]; }
    double frequency(int n) const { return omega_[n]; }
    cd derivative_symbol(int n) const { return d_[n]; }

    // true when the mode has exactly zero frequency (massless zero mode);
    // such modes are excluded from physical states.
    bool mode_excluded(int n) const { return omega_[n] == 0.0; }

    const Eigen::MatrixXcd& U() const { return U_; }
    const Eigen::MatrixXcd& V() const { return V_; }
    const Eigen::MatrixXcd& W() const { return W_; }

  private:
    LatticeSpec spec_;
    std::vector<double> k_, omega_;
    std::vector<cd> d_;
    Eigen::MatrixXcd U_, V_, W_;
};

using BasisPtr = std::shared_ptr<const ModeBasis>;

// Validates the spec (N >= 2, a > 0, m >= 0) and builds the basis.
BasisPtr build_mode_basis(const LatticeSpec& spec);

}  // namespace locpovm
