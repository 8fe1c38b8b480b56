#include "sphscat/legendre.hpp"

#include <cmath>

namespace sphscat {

void legendre_column(int L, int m, double x, double* out) {
  if (m >= L) return;
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - x * x));

  // lambda_mm = (-1)^m sqrt((2m+1)/4pi) sqrt((2m-1)!!/(2m)!!) sin^m(theta),
  // built as a product with exponent tracking so sin^m never underflows.
  constexpr double kRescale = 0x1.0p-900;
  constexpr double kRescaleInv = 0x1.0p+900;
  double v = std::sqrt(1.0 / (4.0 * M_PI));
  int exp_count = 0;
  for (int k = 1; k <= m; ++k) {
    v *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * sin_theta;
    if (std::fabs(v) < kRescale && v != 0.0) {
      v *= kRescaleInv;
      --exp_count;
    }
  }

  auto emit = [&](double val) {
    if (exp_count == 0) return val;
    double r = val;
    for (int e = exp_count; e < 0; ++e) r *= kRescale;
    return r;
  };

  double lam_prev = v;  // l = m
  out[0] = emit(lam_prev);
  if (m + 1 >= L) return;
  double lam = x * std::sqrt(2.0 * m + 3.0) * lam_prev;  // l = m + 1
  out[1] = emit(lam);

  for (int l = m + 1; l + 1 < L; ++l) {
    const double a = std::sqrt((2.0 * l + 1.0) * (2.0 * l + 3.0) /
                               ((l + 1.0 - m) * (l + 1.0 + m)));
    const double b = -std::sqrt((2.0 * l + 3.0) / (2.0 * l - 1.0) * (l - m) *
                                (l + m) / ((l + 1.0 - m) * (l + 1.0 + m)));
    double next = a * x * lam + b * lam_prev;
    lam_prev = lam;
    lam = next;
    if (exp_count < 0 && std::fabs(lam) > kRescaleInv * 1e-30) {
      lam *= kRescale;
      lam_prev *= kRescale;
      ++exp_count;
    }
    out[l + 1 - m] = emit(lam);
  }
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th root (descending), then Newton.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    // one clean evaluation at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[n - 1 - i] = x;  // ascending order
    weights[n - 1 - i] = w;
    nodes[i] = -x;
    weights[i] = w;
  }
  if (n % 2 == 1) {
    nodes[n / 2] = 0.0;
    // weight at x=0 already set by the loop (i = half-1 gives x ~ 0)
  }
}

}  // namespace sphscat
