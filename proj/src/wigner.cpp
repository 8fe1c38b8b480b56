#include "sphscat/wigner.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace sphscat {

// ---------------------------------------------------------------------------
// Risbo recursion
// ---------------------------------------------------------------------------

WignerRecursion::WignerRecursion(double beta)
    : cos_half_(std::cos(beta / 2.0)), sin_half_(std::sin(beta / 2.0)) {
  plane_.assign(1, 1.0);
}

// One half-integer step: consumes the j x j plane of degree (j-1)/2 in plane_
// and leaves the (j+1) x (j+1) plane of degree j/2 there.
void WignerRecursion::half_step(int j) {
  const std::size_t out_n = static_cast<std::size_t>(j + 1) * (j + 1);
  work_.assign(out_n, 0.0);
  const double c = cos_half_;
  const double s = sin_half_;
  for (int i = 0; i < j; ++i) {
    const double sqrt_jmi = std::sqrt(static_cast<double>(j - i));
    const double sqrt_ip1 = std::sqrt(static_cast<double>(i + 1));
    const double* src = plane_.data() + static_cast<std::size_t>(i) * j;
    double* dst0 = work_.data() + static_cast<std::size_t>(i) * (j + 1);
    double* dst1 = work_.data() + static_cast<std::size_t>(i + 1) * (j + 1);
    for (int k = 0; k < j; ++k) {
      const double sqrt_jmk = std::sqrt(static_cast<double>(j - k));
      const double sqrt_kp1 = std::sqrt(static_cast<double>(k + 1));
      const double v = src[k] / j;
      dst0[k] += sqrt_jmi * sqrt_jmk * v * c;
      dst1[k] -= sqrt_ip1 * sqrt_jmk * v * s;
      dst0[k + 1] += sqrt_jmi * sqrt_kp1 * v * s;
      dst1[k + 1] += sqrt_ip1 * sqrt_kp1 * v * c;
    }
  }
  plane_.swap(work_);
}

void WignerRecursion::advance() {
  half_step(2 * degree_ + 1);
  half_step(2 * degree_ + 2);
  ++degree_;
}

// ---------------------------------------------------------------------------
// Factorial-sum reference (small l)
// ---------------------------------------------------------------------------

double wigner_d_explicit(int l, int mp, int m, double beta) {
  auto fact = [](int n) {
    long double f = 1.0L;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  };
  const long double num = std::sqrt(fact(l + m) * fact(l - m) * fact(l + mp) * fact(l - mp));
  const double ch = std::cos(beta / 2.0);
  const double sh = std::sin(beta / 2.0);
  long double total = 0.0L;
  const int smin = std::max(0, m - mp);
  const int smax = std::min(l + m, l - mp);
  for (int s = smin; s <= smax; ++s) {
    const long double den =
        fact(l + m - s) * fact(s) * fact(mp - m + s) * fact(l - mp - s);
    const int sign = ((mp - m + s) % 2 == 0) ? 1 : -1;
    total += sign * (num / den) *
             static_cast<long double>(std::pow(ch, 2 * l + m - mp - 2 * s)) *
             static_cast<long double>(std::pow(sh, mp - m + 2 * s));
  }
  return static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Eighth-packed pi/2 table
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kBudgetBytes = 512ull * 1024 * 1024;

std::size_t packed_doubles(int L) {
  // sum over l < L of (l+1)(l+2)/2
  const std::size_t n = static_cast<std::size_t>(L);
  return n * (n + 1) * (n + 2) / 6;
}

}  // namespace

bool HalfPiWignerTable::fits_budget(int L) {
  return packed_doubles(L) * sizeof(double) <= kBudgetBytes;
}

HalfPiWignerTable::HalfPiWignerTable(int L) : L_(L) {
  offsets_.resize(L);
  std::size_t off = 0;
  for (int l = 0; l < L; ++l) {
    offsets_[l] = off;
    off += static_cast<std::size_t>(l + 1) * (l + 2) / 2;
  }
  data_.resize(off);
  WignerRecursion rec(M_PI / 2.0);
  for (int l = 0; l < L; ++l) {
    if (l > 0) rec.advance();
    const double* plane = rec.plane().data();
    const int stride = 2 * l + 1;
    double* tri = data_.data() + offsets_[l];
    for (int mp = 0; mp <= l; ++mp) {
      const double* row = plane + static_cast<std::size_t>(mp + l) * stride + l;
      double* dst = tri + static_cast<std::size_t>(mp) * (mp + 1) / 2;
      for (int m = 0; m <= mp; ++m) dst[m] = row[m];
    }
  }
}

void HalfPiWignerTable::expand_row(int l, int mp, double* out) const {
  const double* tri = triangle(l);
  const double* row = tri + static_cast<std::size_t>(mp) * (mp + 1) / 2;
  double* o = out + l;  // o[m] = d_{mp, m}
  for (int m = 0; m <= mp; ++m) o[m] = row[m];
  // transpose part: d_{mp, m} = (-1)^{m - mp} d_{m, mp}
  double sign = -1.0;
  for (int m = mp + 1; m <= l; ++m) {
    o[m] = sign * tri[static_cast<std::size_t>(m) * (m + 1) / 2 + mp];
    sign = -sign;
  }
  // negative m: d_{mp, -m} = (-1)^{l + mp} d_{mp, m}
  const double parity = ((l + mp) % 2 == 0) ? 1.0 : -1.0;
  for (int m = 1; m <= l; ++m) o[-m] = parity * o[m];
}

double HalfPiWignerTable::element(int l, int mp, int m) const {
  double sign = 1.0;
  if (mp < 0) {  // d_{-mp, m} = (-1)^{l - m} d_{mp, m}
    mp = -mp;
    if ((l - m) % 2 != 0) sign = -sign;
  }
  if (m < 0) {  // d_{mp, -m} = (-1)^{l + mp} d_{mp, m}
    m = -m;
    if ((l + mp) % 2 != 0) sign = -sign;
  }
  if (m > mp) {
    std::swap(m, mp);
    if ((mp - m) % 2 != 0) sign = -sign;
  }
  return sign * data_[offsets_[l] + static_cast<std::size_t>(mp) * (mp + 1) / 2 + m];
}

std::shared_ptr<const HalfPiWignerTable> HalfPiWignerTable::get(int L) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const HalfPiWignerTable>> registry;
  if (L < 1) throw InvalidBandlimitError("wigner table: bandlimit must be >= 1");
  // round up so nearby bandlimits share one table
  int Lr = ((L + 63) / 64) * 64;
  if (!fits_budget(Lr)) Lr = L;
  if (!fits_budget(Lr)) return nullptr;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = registry.lower_bound(Lr);
  if (it != registry.end()) return it->second;
  auto table = std::shared_ptr<const HalfPiWignerTable>(new HalfPiWignerTable(Lr));
  registry.emplace(Lr, table);
  return table;
}

}  // namespace sphscat
