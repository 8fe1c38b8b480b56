#include "sphscat/wavelet_transform.hpp"

#include <cmath>

namespace sphscat {

HarmonicCoefficients axisym_convolve(const HarmonicCoefficients& f,
                                     std::span<const double> kernel,
                                     int out_bandlimit) {
  if (static_cast<int>(kernel.size()) < f.bandlimit)
    throw DimensionError("axisym_convolve: kernel shorter than signal bandlimit");
  const int Lout = out_bandlimit > 0 ? out_bandlimit : f.bandlimit;
  HarmonicCoefficients out(Lout, f.real_signal);
  const int Lc = std::min(Lout, f.bandlimit);
  for (int l = 0; l < Lc; ++l) {
    const double w = std::sqrt(4.0 * M_PI / (2.0 * l + 1.0)) * kernel[l];
    if (w == 0.0) continue;
    for (int m = -l; m <= l; ++m) out.at(l, m) = w * f.at(l, m);
  }
  return out;
}

WaveletCoefficients analyze(const HarmonicCoefficients& f, const FilterBank& bank,
                            bool multires) {
  if (f.bandlimit != bank.config.L)
    throw DimensionError("analyze: signal bandlimit does not match filter bank");
  WaveletCoefficients wc;
  wc.multires = multires;
  wc.scaling = axisym_convolve(f, bank.phi, multires ? bank.L0 : bank.config.L);
  for (int j = bank.scale_min(); j <= bank.scale_max(); ++j) {
    const int Lj = multires ? bank.storage_bandlimit(j) : bank.config.L;
    wc.wavelet.emplace(j, axisym_convolve(f, bank.psi_hat(j), Lj));
  }
  return wc;
}

HarmonicCoefficients synthesize(const WaveletCoefficients& wc, const FilterBank& bank) {
  if (static_cast<int>(wc.wavelet.size()) != bank.n_scales() ||
      wc.wavelet.begin()->first != bank.scale_min() ||
      wc.wavelet.rbegin()->first != bank.scale_max())
    throw IncompatibleError("synthesize: scale set does not match filter bank");
  const int L = bank.config.L;
  HarmonicCoefficients out(L, wc.scaling.real_signal);

  auto accumulate = [&](const HarmonicCoefficients& w, std::span<const double> kernel) {
    const int Lc = std::min(L, w.bandlimit);
    for (int l = 0; l < Lc; ++l) {
      const double g = std::sqrt(4.0 * M_PI / (2.0 * l + 1.0)) * kernel[l];
      if (g == 0.0) continue;
      for (int m = -l; m <= l; ++m) out.at(l, m) += g * w.at(l, m);
    }
    if (!w.real_signal) out.real_signal = false;
  };

  accumulate(wc.scaling, bank.phi);
  for (const auto& [j, w] : wc.wavelet) accumulate(w, bank.psi_hat(j));
  return out;
}

}  // namespace sphscat
