#include <cmath>
#include <vector>

#include "doctest.h"
#include "sphscat/fft.hpp"
#include "sphscat/random.hpp"

using namespace sphscat;

namespace {

std::vector<cdouble> naive_dft(const std::vector<cdouble>& in, int sign) {
  const std::size_t n = in.size();
  std::vector<cdouble> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cdouble acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double a = sign * 2.0 * M_PI * static_cast<double>(j * k % n) / n;
      acc += in[j] * cdouble{std::cos(a), std::sin(a)};
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("fft matches a naive DFT on odd and prime sizes") {
  Rng rng(77);
  for (std::size_t n : {1u, 3u, 15u, 127u, 255u}) {
    std::vector<cdouble> in(n);
    for (auto& v : in) v = {rng.gaussian(), rng.gaussian()};
    std::vector<cdouble> out(n);
    fft::forward(in, out);
    auto ref = naive_dft(in, -1);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(out[k] - ref[k]));
    CHECK(worst < 1e-9);

    fft::backward(in, out);
    ref = naive_dft(in, +1);
    worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(out[k] - ref[k]));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("fft backward(forward(x)) = n x, also in place") {
  Rng rng(78);
  const std::size_t n = 101;
  std::vector<cdouble> x(n), y(n);
  for (auto& v : x) v = {rng.gaussian(), rng.gaussian()};
  fft::forward(x, y);
  std::vector<cdouble> z(n);
  fft::backward(y, z);
  for (std::size_t k = 0; k < n; ++k)
    CHECK(std::abs(z[k] / static_cast<double>(n) - x[k]) < 1e-12);

  // in-place call gives the same result
  std::vector<cdouble> w = x;
  fft::forward(w, w);
  for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(w[k] - y[k]) < 1e-12);
}
