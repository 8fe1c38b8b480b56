#pragma once

#include <memory>
#include <span>
#include <vector>

#include "sphscat/types.hpp"

namespace sphscat {

// -----------------------------------------------------------------------------
// Wigner d-matrices d^l_{m',m}(beta) = <l m'| exp(-i beta J_y) |l m>.
//
// A full plane for degree l is a (2l+1) x (2l+1) row-major array with element
// (m', m) at index (m' + l) * (2l + 1) + (m + l).
// -----------------------------------------------------------------------------

// Streaming Risbo recursion: two half-integer steps advance degree l -> l+1.
// Stable to l of a few thousand.
class WignerRecursion {
 public:
  explicit WignerRecursion(double beta);

  int degree() const { return degree_; }
  std::span<const double> plane() const {
    return {plane_.data(), static_cast<std::size_t>(2 * degree_ + 1) *
                               static_cast<std::size_t>(2 * degree_ + 1)};
  }
  void advance();

 private:
  void half_step(int j);

  double cos_half_;
  double sin_half_;
  int degree_ = 0;
  std::vector<double> plane_;
  std::vector<double> work_;
};

// Direct factorial-sum evaluation; reference implementation for small l.
double wigner_d_explicit(int l, int mp, int m, double beta);

// -----------------------------------------------------------------------------
// Cached d^l(pi/2) planes for the MW transform core.
//
// Stored as eighth triangles (0 <= m <= m' <= l) and expanded row-by-row via
// the pi/2 symmetries
//   d_{m',m} = (-1)^{m'-m} d_{m,m'}
//   d_{m',-m} = (-1)^{l+m'} d_{m',m}
//   d_{-m',m} = (-1)^{l-m}  d_{m',m}
// -----------------------------------------------------------------------------

class HalfPiWignerTable {
 public:
  // Process-wide cache; tables above the memory budget are not cached and the
  // caller falls back to a streaming recursion.
  static std::shared_ptr<const HalfPiWignerTable> get(int L);
  static bool fits_budget(int L);

  int bandlimit() const { return L_; }

  // Row m' of d^l(pi/2) for m in [-l, l]; out must hold 2l+1 values, indexed
  // by m + l.
  void expand_row(int l, int mp, double* out) const;

  // Element access (any sign combination).
  double element(int l, int mp, int m) const;

 private:
  explicit HalfPiWignerTable(int L);

  const double* triangle(int l) const { return data_.data() + offsets_[l]; }

  int L_;
  std::vector<std::size_t> offsets_;
  std::vector<double> data_;
};

}  // namespace sphscat
