#pragma once

#include <span>

#include "sphscat/types.hpp"

namespace sphscat::fft {

// Unnormalized complex DFTs of arbitrary length:
//   forward:  out[k] = sum_j in[j] exp(-2 pi i j k / n)
//   backward: out[k] = sum_j in[j] exp(+2 pi i j k / n)
// in and out must have equal size and may alias. Thread-safe.
void forward(std::span<const cdouble> in, std::span<cdouble> out);
void backward(std::span<const cdouble> in, std::span<cdouble> out);

}  // namespace sphscat::fft
