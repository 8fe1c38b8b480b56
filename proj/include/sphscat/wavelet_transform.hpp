#pragma once

#include <map>

#include "sphscat/filter_bank.hpp"
#include "sphscat/types.hpp"

namespace sphscat {

// Wavelet + scaling coefficients of one signal. In the multi-resolution
// setting each scale is stored at its own bandlimit L_j; otherwise at L.
struct WaveletCoefficients {
  HarmonicCoefficients scaling;            // bandlimit L0
  std::map<int, HarmonicCoefficients> wavelet;  // scale j -> coefficients
  bool multires = false;
};

// Harmonic-space convolution with an axisymmetric real kernel:
//   h_lm = sqrt(4pi/(2l+1)) f_lm kernel_l.
// out_bandlimit = 0 keeps the input bandlimit; otherwise the result is
// truncated (or zero-padded) to the requested bandlimit.
HarmonicCoefficients axisym_convolve(const HarmonicCoefficients& f,
                                     std::span<const double> kernel,
                                     int out_bandlimit = 0);

WaveletCoefficients analyze(const HarmonicCoefficients& f, const FilterBank& bank,
                            bool multires);

// Perfect reconstruction:
//   f_lm = sqrt(4pi/(2l+1)) [ phi_l w_lm + sum_j psi_jl (w_j)_lm ].
HarmonicCoefficients synthesize(const WaveletCoefficients& wc, const FilterBank& bank);

}  // namespace sphscat
