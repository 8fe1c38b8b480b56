#include "sphscat/filter_bank.hpp"

#include <cmath>
#include <ostream>

#include "sphscat/io.hpp"

namespace sphscat {

std::span<const double> FilterBank::psi_hat(int j) const {
  if (j < config.J0 || j > J)
    throw InvalidScaleError("filter bank: scale " + std::to_string(j) + " out of range");
  return psi[j - config.J0];
}

int FilterBank::storage_bandlimit(int j) const {
  if (j < config.J0 || j > J)
    throw InvalidScaleError("filter bank: scale " + std::to_string(j) + " out of range");
  return bandlimits[j - config.J0];
}

FilterBank build_filter_bank(const KernelConfig& config) {
  config.validate();
  FilterBank bank;
  bank.config = config;
  bank.J = config.max_scale();
  auto table = KAlphaTable::get(config.alpha, config.quadrature_nodes);

  const int L = config.L;
  const int J0 = config.J0;
  const int n_scales = bank.J - J0 + 1;

  // One k-value table u[j][l] = k(l * alpha^-j), j in [J0, J+1]; building every
  // kernel from it makes the admissibility sum telescope to k(l * alpha^-(J+1))
  // = 1 exactly, up to rounding in the sqrt/square pairs.
  std::vector<std::vector<double>> u(n_scales + 1, std::vector<double>(L));
  for (int js = 0; js <= n_scales; ++js) {
    const double scale = std::pow(config.alpha, -(J0 + js));
    for (int l = 0; l < L; ++l) u[js][l] = table->k(l * scale);
  }

  bank.phi.resize(L);
  for (int l = 0; l < L; ++l)
    bank.phi[l] = std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI)) * std::sqrt(u[0][l]);

  bank.psi.assign(n_scales, std::vector<double>(L, 0.0));
  bank.bandlimits.resize(n_scales);
  for (int js = 0; js < n_scales; ++js) {
    for (int l = 0; l < L; ++l) {
      const double diff = u[js + 1][l] - u[js][l];
      bank.psi[js][l] =
          std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI)) * (diff > 0.0 ? std::sqrt(diff) : 0.0);
    }
    const double lim = std::pow(config.alpha, J0 + js + 1);
    bank.bandlimits[js] = static_cast<int>(std::min<double>(std::ceil(lim), L));
  }
  bank.L0 = static_cast<int>(std::min<double>(std::ceil(std::pow(config.alpha, J0)), L));
  return bank;
}

double check_admissibility(const FilterBank& bank) {
  const int L = bank.config.L;
  double worst = 0.0;
  for (int l = 0; l < L; ++l) {
    double acc = bank.phi[l] * bank.phi[l];
    for (const auto& psi : bank.psi) acc += psi[l] * psi[l];
    const double residual = std::abs(4.0 * M_PI / (2.0 * l + 1.0) * acc - 1.0);
    worst = std::max(worst, residual);
  }
  return worst;
}

void write_filter_bank_csv(const FilterBank& bank, std::ostream& out) {
  out << "# filter bank: L=" << bank.config.L << " alpha=" << format_double(bank.config.alpha)
      << " J0=" << bank.config.J0 << " J=" << bank.J << " L0=" << bank.L0
      << " quadrature_nodes=" << bank.config.quadrature_nodes << "\n";
  out << "l,phi";
  for (int j = bank.config.J0; j <= bank.J; ++j) out << ",psi_" << j;
  out << "\n";
  for (int l = 0; l < bank.config.L; ++l) {
    out << l << ',' << format_double(bank.phi[l]);
    for (const auto& psi : bank.psi) out << ',' << format_double(psi[l]);
    out << "\n";
  }
}

}  // namespace sphscat
