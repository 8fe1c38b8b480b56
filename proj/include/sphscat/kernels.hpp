#pragma once

#include <memory>

#include "sphscat/types.hpp"

namespace sphscat {

// Infinitely differentiable bump: exp(-(1-t^2)^-1) on (-1, 1), else 0.
double schwartz_s(double t);

// Parameters of a scale-discretized wavelet family on a band-limited signal.
struct KernelConfig {
  int L = 0;                   // signal bandlimit
  double alpha = 2.0;          // dilation parameter, > 1
  int J0 = 0;                  // minimum wavelet scale
  int quadrature_nodes = 5000; // uniform trapezoid nodes for the k_alpha integral

  // J = ceil(log_alpha L): smallest J with alpha^J >= L.
  int max_scale() const;

  // Throws InvalidBandlimitError / InvalidScaleRangeError on bad parameters.
  void validate() const;

  // Alternative parameterization via the scaling-coefficient bandlimit:
  // J0 = ceil(log_alpha L0).
  static KernelConfig from_l0(int L, double alpha, int L0, int quadrature_nodes = 5000);
};

int scale_from_l0(double alpha, int L0);

// Cached table for k_alpha(t): the normalized tail integral of s_alpha^2(t)/t
// over [t, 1], equal to 1 for t <= 1/alpha and 0 for t >= 1. One table per
// (alpha, nodes) pair, shared process-wide.
class KAlphaTable {
 public:
  static std::shared_ptr<const KAlphaTable> get(double alpha, int nodes);

  double k(double t) const;

  // kappa_alpha(t) = sqrt(k(t/alpha) - k(t)); negative round-off clamped at 0.
  double kappa(double t) const;

  double alpha() const { return alpha_; }

 private:
  KAlphaTable(double alpha, int nodes);

  double alpha_;
  double t_lo_, dt_;
  std::vector<double> integrand_;  // s_alpha^2(x)/x at the nodes
  std::vector<double> tail_;       // right cumulative trapezoid, tail_[i] = int_{x_i}^1
  double total_;
};

double k_alpha(double t, const KernelConfig& config);
double kappa_alpha(double t, const KernelConfig& config);

}  // namespace sphscat
