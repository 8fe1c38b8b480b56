#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "sphscat/kernels.hpp"

namespace sphscat {

// Axisymmetric scale-discretized wavelet filter bank.
//
// psi_hat_j(l) = sqrt((2l+1)/4pi) kappa_alpha(alpha^-j l), support
// l in [alpha^(j-1), alpha^(j+1)]; phi_hat(l) = sqrt((2l+1)/4pi)
// sqrt(k_alpha(alpha^-J0 l)), support l in [0, alpha^J0]. Together they tile
// the harmonic line: 4pi/(2l+1) [phi^2 + sum_j psi_j^2] = 1 for all l < L.
struct FilterBank {
  KernelConfig config;
  int J = 0;    // maximum scale, ceil(log_alpha L)
  int L0 = 0;   // scaling-coefficient bandlimit, min(ceil(alpha^J0), L)
  std::vector<std::vector<double>> psi;   // psi[j - J0][l], length L each
  std::vector<double> phi;                // length L
  std::vector<int> bandlimits;            // L_j = min(ceil(alpha^(j+1)), L)

  int scale_min() const { return config.J0; }
  int scale_max() const { return J; }
  int n_scales() const { return J - config.J0 + 1; }

  std::span<const double> psi_hat(int j) const;
  int storage_bandlimit(int j) const;
};

FilterBank build_filter_bank(const KernelConfig& config);

// max_l | 4pi/(2l+1) [ |phi_l|^2 + sum_j |psi_jl|^2 ] - 1 | over l < L.
double check_admissibility(const FilterBank& bank);

// Columns: l, phi_hat, psi_hat_J0 .. psi_hat_J (for plotting the tiling).
void write_filter_bank_csv(const FilterBank& bank, std::ostream& out);

}  // namespace sphscat
