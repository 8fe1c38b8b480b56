#include <cmath>
#include <vector>

#include "doctest.h"
#include "sphscat/legendre.hpp"

using namespace sphscat;

TEST_CASE("legendre_column matches closed forms at low degree") {
  const double x = 0.42;
  const double st = std::sqrt(1.0 - x * x);
  std::vector<double> col(8);

  legendre_column(8, 0, x, col.data());
  CHECK(std::abs(col[0] - std::sqrt(1.0 / (4.0 * M_PI))) < 1e-15);            // Y00
  CHECK(std::abs(col[1] - std::sqrt(3.0 / (4.0 * M_PI)) * x) < 1e-15);        // Y10
  CHECK(std::abs(col[2] - std::sqrt(5.0 / (16.0 * M_PI)) * (3 * x * x - 1)) < 1e-14);

  legendre_column(8, 1, x, col.data());
  CHECK(std::abs(col[0] - (-std::sqrt(3.0 / (8.0 * M_PI)) * st)) < 1e-15);    // Y11
  CHECK(std::abs(col[1] - (-std::sqrt(15.0 / (8.0 * M_PI)) * st * x)) < 1e-14);  // Y21

  legendre_column(8, 2, x, col.data());
  CHECK(std::abs(col[0] - std::sqrt(15.0 / (32.0 * M_PI)) * st * st) < 1e-14);   // Y22
}

TEST_CASE("legendre columns are orthonormal under GL quadrature") {
  const int L = 48;
  std::vector<double> x, w;
  gauss_legendre(L, x, w);
  std::vector<double> col(L);
  for (int m : {0, 1, 5, 20}) {
    std::vector<std::vector<double>> vals(L);
    for (int i = 0; i < L; ++i) {
      vals[i].resize(L - m);
      legendre_column(L, m, x[i], vals[i].data());
    }
    for (int la = m; la < L; la += 7) {
      for (int lb = m; lb < L; lb += 5) {
        double acc = 0.0;
        for (int i = 0; i < L; ++i) acc += w[i] * vals[i][la - m] * vals[i][lb - m];
        acc *= 2.0 * M_PI;
        CHECK(std::abs(acc - (la == lb ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("legendre_column survives large m without underflow artifacts") {
  const int L = 300;
  std::vector<double> col(L);
  // near-polar point: sin(theta) small, lambda_mm underflows badly unscaled
  const double x = std::cos(0.01);
  legendre_column(L, 250, x, col.data());
  for (int i = 0; i < L - 250; ++i) CHECK(std::isfinite(col[i]));
  legendre_column(L, 299, x, col.data());
  CHECK(std::isfinite(col[0]));
}

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  for (int n : {1, 2, 5, 16, 64}) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    double total = 0.0;
    for (double v : w) total += v;
    CHECK(std::abs(total - 2.0) < 1e-13);
    // exactness for x^k up to degree 2n-1
    for (int k = 1; k <= 2 * n - 1; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += w[i] * std::pow(x[i], k);
      const double exact = (k % 2 == 0) ? 2.0 / (k + 1.0) : 0.0;
      CHECK(std::abs(acc - exact) < 1e-12);
    }
    for (int i = 1; i < n; ++i) CHECK(x[i] > x[i - 1]);
  }
}
