#include "sphscat/kernels.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace sphscat {

double schwartz_s(double t) {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

int KernelConfig::max_scale() const {
  // smallest J with alpha^J >= L
  int J = static_cast<int>(std::ceil(std::log(static_cast<double>(L)) / std::log(alpha)));
  while (std::pow(alpha, J) < L) ++J;
  while (J > 0 && std::pow(alpha, J - 1) >= L) --J;
  return J;
}

void KernelConfig::validate() const {
  if (L < 1) throw InvalidBandlimitError("kernel config: bandlimit must be >= 1");
  if (!(alpha > 1.0)) throw InvalidScaleRangeError("kernel config: alpha must be > 1");
  if (quadrature_nodes < 2)
    throw InvalidScaleRangeError("kernel config: quadrature_nodes must be >= 2");
  const int J = max_scale();
  if (J0 < 0 || J0 >= J)
    throw InvalidScaleRangeError("kernel config: need 0 <= J0 < J = " + std::to_string(J));
}

int scale_from_l0(double alpha, int L0) {
  if (L0 < 1) throw InvalidBandlimitError("scale_from_l0: L0 must be >= 1");
  int J0 = static_cast<int>(std::ceil(std::log(static_cast<double>(L0)) / std::log(alpha)));
  while (std::pow(alpha, J0) < L0) ++J0;
  while (J0 > 0 && std::pow(alpha, J0 - 1) >= L0) --J0;
  return J0;
}

KernelConfig KernelConfig::from_l0(int L, double alpha, int L0, int quadrature_nodes) {
  KernelConfig c;
  c.L = L;
  c.alpha = alpha;
  c.J0 = scale_from_l0(alpha, L0);
  c.quadrature_nodes = quadrature_nodes;
  return c;
}

// ---------------------------------------------------------------------------
// k_alpha table: composite trapezoid on a uniform grid over [1/alpha, 1].
// The integrand s_alpha^2(t)/t vanishes with all derivatives at both ends, so
// the full-range trapezoid is superalgebraically accurate; interior cut points
// add an O(h^2) local term, within the contracted tolerance at 5000 nodes.
// ---------------------------------------------------------------------------

namespace {

double s_alpha(double t, double alpha) {
  return schwartz_s(2.0 * alpha / (alpha - 1.0) * (t - 1.0 / alpha) - 1.0);
}

}  // namespace

KAlphaTable::KAlphaTable(double alpha, int nodes) : alpha_(alpha) {
  t_lo_ = 1.0 / alpha;
  const int N = nodes;
  dt_ = (1.0 - t_lo_) / N;
  integrand_.resize(N + 1);
  for (int i = 0; i <= N; ++i) {
    const double t = t_lo_ + i * dt_;
    const double s = s_alpha(t, alpha);
    integrand_[i] = s * s / t;
  }
  tail_.assign(N + 1, 0.0);
  for (int i = N - 1; i >= 0; --i)
    tail_[i] = tail_[i + 1] + 0.5 * dt_ * (integrand_[i] + integrand_[i + 1]);
  total_ = tail_[0];
}

double KAlphaTable::k(double t) const {
  if (t <= t_lo_) return 1.0;
  if (t >= 1.0) return 0.0;
  const int N = static_cast<int>(integrand_.size()) - 1;
  int i = static_cast<int>((t - t_lo_) / dt_);
  if (i > N - 1) i = N - 1;
  const double t_next = t_lo_ + (i + 1) * dt_;
  const double s = s_alpha(t, alpha_);
  const double part = tail_[i + 1] + 0.5 * (t_next - t) * (s * s / t + integrand_[i + 1]);
  return part / total_;
}

double KAlphaTable::kappa(double t) const {
  const double diff = k(t / alpha_) - k(t);
  return diff > 0.0 ? std::sqrt(diff) : 0.0;
}

std::shared_ptr<const KAlphaTable> KAlphaTable::get(double alpha, int nodes) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, std::shared_ptr<const KAlphaTable>> cache;
  if (!(alpha > 1.0)) throw InvalidScaleRangeError("k_alpha: alpha must be > 1");
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(alpha, nodes);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::shared_ptr<const KAlphaTable>(new KAlphaTable(alpha, nodes));
  cache.emplace(key, table);
  return table;
}

double k_alpha(double t, const KernelConfig& config) {
  return KAlphaTable::get(config.alpha, config.quadrature_nodes)->k(t);
}

double kappa_alpha(double t, const KernelConfig& config) {
  return KAlphaTable::get(config.alpha, config.quadrature_nodes)->kappa(t);
}

}  // namespace sphscat
