#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sphscat/filter_bank.hpp"

using namespace sphscat;

TEST_CASE("scale ranges follow the dilation parameter") {
  const FilterBank b = build_filter_bank({128, 2.0, 2});
  CHECK(b.J == 7);
  CHECK(b.scale_min() == 2);
  CHECK(b.scale_max() == 7);
  CHECK(b.n_scales() == 6);

  const FilterBank b2 = build_filter_bank(KernelConfig::from_l0(256, 2.0, 32));
  CHECK(b2.config.J0 == 5);
  CHECK(b2.J == 8);
  CHECK(b2.L0 == 32);
}

TEST_CASE("admissibility holds to 1e-12") {
  CHECK(check_admissibility(build_filter_bank({16, 2.0, 0})) <= 1e-12);
  CHECK(check_admissibility(build_filter_bank({128, 2.0, 2})) <= 1e-12);
  CHECK(check_admissibility(build_filter_bank({64, 3.0, 1})) <= 1e-12);
}

TEST_CASE("corrupted bank fails admissibility") {
  FilterBank b = build_filter_bank({64, 2.0, 1});
  std::fill(b.psi[2].begin(), b.psi[2].end(), 0.0);
  CHECK(check_admissibility(b) > 0.1);
}

TEST_CASE("kernel supports and peaks") {
  const double alpha = 2.0;
  const FilterBank b = build_filter_bank({128, alpha, 2});
  for (int j = b.scale_min(); j <= b.scale_max(); ++j) {
    const auto psi = b.psi_hat(j);
    const double lo = std::pow(alpha, j - 1);
    const double hi = std::pow(alpha, j + 1);
    double peak = 0.0;
    for (int l = 0; l < 128; ++l) {
      const double scaled = psi[l] / std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI));
      if (l <= lo || l >= hi) CHECK(psi[l] == 0.0);
      peak = std::max(peak, scaled);
    }
    if (hi <= 128) CHECK(peak == doctest::Approx(1.0).epsilon(1e-10));
  }
  const double phi_hi = std::pow(alpha, 2);
  for (int l = 0; l < 128; ++l) {
    if (l > phi_hi) CHECK(b.phi[l] == 0.0);
  }
  CHECK(b.phi[0] > 0.0);
}

TEST_CASE("storage bandlimits") {
  const FilterBank b = build_filter_bank({128, 2.0, 2});
  CHECK(b.L0 == 4);
  CHECK(b.storage_bandlimit(2) == 8);
  CHECK(b.storage_bandlimit(3) == 16);
  CHECK(b.storage_bandlimit(6) == 128);
  CHECK(b.storage_bandlimit(7) == 128);
  CHECK_THROWS_AS(b.storage_bandlimit(1), InvalidScaleError);
  CHECK_THROWS_AS(b.psi_hat(8), InvalidScaleError);

  const FilterBank b3 = build_filter_bank({64, 3.0, 1});
  CHECK(b3.L0 == 3);
  CHECK(b3.storage_bandlimit(1) == 9);
  CHECK(b3.storage_bandlimit(2) == 27);
  CHECK(b3.storage_bandlimit(3) == 64);
}

TEST_CASE("invalid scale range rejected") {
  CHECK_THROWS_AS(build_filter_bank({128, 2.0, 7}), InvalidScaleRangeError);
  CHECK_THROWS_AS(build_filter_bank({128, 2.0, 9}), InvalidScaleRangeError);
}

TEST_CASE("csv export shape") {
  const FilterBank b = build_filter_bank({32, 2.0, 1});
  std::ostringstream out;
  write_filter_bank_csv(b, out);
  const std::string text = out.str();
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 2 + 32);  // comment, header, L rows
  CHECK(text.find("l,phi,psi_1,psi_2,psi_3,psi_4,psi_5") != std::string::npos);
}
