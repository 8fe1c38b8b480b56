#include <cmath>

#include "doctest.h"
#include "sphscat/kernels.hpp"

using namespace sphscat;

TEST_CASE("schwartz bump values") {
  CHECK(schwartz_s(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(schwartz_s(1.0) == 0.0);
  CHECK(schwartz_s(-1.0) == 0.0);
  CHECK(schwartz_s(2.0) == 0.0);
  CHECK(schwartz_s(-3.5) == 0.0);
  CHECK(schwartz_s(0.999) > 0.0);
}

TEST_CASE("k_alpha plateau, support, and reference quadrature") {
  KernelConfig c{64, 2.0, 0};
  CHECK(k_alpha(0.4, c) == 1.0);
  CHECK(k_alpha(0.5, c) == 1.0);
  CHECK(k_alpha(1.5, c) == 0.0);
  CHECK(k_alpha(1.0, c) == 0.0);

  // interior value against a 10^6-node reference
  auto ref = KAlphaTable::get(2.0, 1000000);
  const double got = k_alpha(0.75, c);
  CHECK(got > 0.0);
  CHECK(got < 1.0);
  CHECK(std::abs(got - ref->k(0.75)) < 1e-8);

  // monotone nonincreasing
  double prev = 1.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = 0.4 + i * (1.2 - 0.4) / 2000;
    const double v = k_alpha(t, c);
    CHECK(v <= prev + 1e-14);
    prev = v;
  }
}

TEST_CASE("kappa_alpha support boundaries and peak") {
  for (double alpha : {2.0, 3.0}) {
    KernelConfig c{64, alpha, 0};
    CHECK(kappa_alpha(1.0 / alpha, c) == 0.0);
    CHECK(kappa_alpha(alpha, c) == 0.0);
    CHECK(kappa_alpha(1.0, c) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kappa_alpha(0.1, c) == 0.0);
    CHECK(kappa_alpha(alpha * 1.5, c) == 0.0);
  }
}

TEST_CASE("kappa_alpha is nonnegative with a single interior maximum") {
  KernelConfig c{64, 2.0, 0};
  const int n = 10000;
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = 0.4 + i * (2.2 - 0.4) / n;
    v[i] = kappa_alpha(t, c);
    CHECK(v[i] >= 0.0);
  }
  // count strict direction changes of the nonzero part
  int changes = 0;
  int dir = 0;
  for (int i = 1; i <= n; ++i) {
    const double d = v[i] - v[i - 1];
    if (std::abs(d) < 1e-15) continue;
    const int s = d > 0 ? 1 : -1;
    if (dir != 0 && s != dir) ++changes;
    dir = s;
  }
  CHECK(changes == 1);
}

TEST_CASE("kernel config validation") {
  CHECK_THROWS_AS((KernelConfig{64, 1.0, 0}).validate(), InvalidScaleRangeError);
  CHECK_THROWS_AS((KernelConfig{64, 0.5, 0}).validate(), InvalidScaleRangeError);
  CHECK_THROWS_AS((KernelConfig{0, 2.0, 0}).validate(), InvalidBandlimitError);
  CHECK_THROWS_AS((KernelConfig{64, 2.0, 6}).validate(), InvalidScaleRangeError);  // J0 = J
  CHECK_THROWS_AS((KernelConfig{64, 2.0, -1}).validate(), InvalidScaleRangeError);
  CHECK_NOTHROW((KernelConfig{64, 2.0, 5}).validate());

  CHECK(KernelConfig{64, 2.0, 0}.max_scale() == 6);
  CHECK(KernelConfig{128, 2.0, 0}.max_scale() == 7);
  CHECK(KernelConfig{100, 2.0, 0}.max_scale() == 7);
  CHECK(KernelConfig{27, 3.0, 0}.max_scale() == 3);

  CHECK(scale_from_l0(2.0, 32) == 5);
  CHECK(scale_from_l0(2.0, 33) == 6);
  CHECK(KernelConfig::from_l0(256, 2.0, 32).J0 == 5);
}
