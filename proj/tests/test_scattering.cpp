#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "sphscat/scattering.hpp"
#include "sphscat/sht.hpp"

using namespace sphscat;

namespace {

// brute-force path enumeration oracle: generate all digit strings, filter
std::vector<Path> brute_force_paths(int J0, int J, int D, PathPolicy policy) {
  std::set<Path> out;
  out.insert(Path{});
  const int base = J - J0 + 1;
  for (int d = 1; d <= D; ++d) {
    std::vector<int> digits(d, 0);
    for (;;) {
      Path p(d);
      for (int i = 0; i < d; ++i) p[i] = J0 + digits[i];
      bool ok = true;
      for (int i = 0; i + 1 < d && ok; ++i) {
        if (policy == PathPolicy::descending && p[i + 1] > p[i]) ok = false;
        if (policy == PathPolicy::adjacent_descending && p[i + 1] != p[i] - 1) ok = false;
      }
      if (ok) out.insert(p);
      int pos = d - 1;
      while (pos >= 0 && ++digits[pos] == base) digits[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("path enumeration counts for the three policies") {
  CHECK(enumerate_paths(2, 4, 2, PathPolicy::general).paths.size() == 13);
  CHECK(enumerate_paths(2, 4, 2, PathPolicy::descending).paths.size() == 10);
  const PathSet adj = enumerate_paths(2, 4, 2, PathPolicy::adjacent_descending);
  CHECK(adj.paths.size() == 6);
  const std::vector<Path> expect = {{}, {2}, {3}, {3, 2}, {4}, {4, 3}};
  CHECK(adj.paths == expect);
}

TEST_CASE("path enumeration matches brute force for all small cases") {
  for (int J0 = 0; J0 <= 2; ++J0) {
    for (int J = J0; J <= 6; ++J) {
      for (int D = 0; D <= 3; ++D) {
        for (PathPolicy policy : {PathPolicy::general, PathPolicy::descending,
                                  PathPolicy::adjacent_descending}) {
          const PathSet got = enumerate_paths(J0, J, D, policy);
          const std::vector<Path> want = brute_force_paths(J0, J, D, policy);
          CHECK(got.paths == want);  // set equality + lexicographic order
          CHECK(std::is_sorted(got.paths.begin(), got.paths.end()));
          CHECK(!got.paths.empty());
          CHECK(got.paths.front().empty());
        }
      }
    }
  }
}

TEST_CASE("path enumeration errors") {
  CHECK_THROWS_AS(enumerate_paths(2, 4, -1, PathPolicy::general), InvalidDepthError);
  CHECK_THROWS_AS(enumerate_paths(5, 4, 2, PathPolicy::general), InvalidScaleRangeError);
}

TEST_CASE("propagate basics") {
  const int L = 32;
  const FilterBank bank = build_filter_bank({L, 2.0, 2});

  CHECK(norm(propagate(HarmonicCoefficients(L, true), 3, bank)) == 0.0);

  // signal entirely below the wavelet band
  HarmonicCoefficients low(L, true);
  low.at(0, 0) = 1.0;
  low.at(1, 0) = 0.5;
  CHECK(norm(propagate(low, 4, bank)) == 0.0);  // psi_4 band starts at l = 8

  CHECK_THROWS_AS(propagate(low, 1, bank), InvalidScaleError);
  CHECK_THROWS_AS(propagate(low, 6, bank), InvalidScaleError);
}

TEST_CASE("modulus preserves pointwise energy on the grid") {
  const int L = 64;
  const FilterBank bank = build_filter_bank({L, 2.0, 2});
  const HarmonicCoefficients f = random_bandlimited(L, 3);
  const int j = 5;
  const HarmonicCoefficients w = axisym_convolve(f, bank.psi_hat(j));
  const SampleGrid grid = make_grid(L, GridScheme::MW);
  const SphericalSignal ws = inverse_sht(w, grid);
  SphericalSignal mod = ws;
  for (auto& v : mod.samples) v = cdouble{std::abs(v), 0.0};

  const auto q = theta_quadrature_weights(grid);
  auto energy = [&](const SphericalSignal& s) {
    double acc = 0.0;
    for (std::size_t t = 0; t < grid.n_theta(); ++t) {
      double ring = 0.0;
      for (std::size_t p = 0; p < grid.n_phi(); ++p)
        ring += std::norm(s.samples[t * grid.n_phi() + p]);
      acc += q[t] * ring;
    }
    return acc;
  };
  const double ew = energy(ws);
  const double em = energy(mod);
  CHECK(std::abs(ew - em) < 1e-6 * ew);
}

TEST_CASE("scatter_path conventions") {
  const int L = 32;
  const FilterBank bank = build_filter_bank({L, 2.0, 2});

  // empty path on a constant signal: only the mean survives
  HarmonicCoefficients c(L, true);
  c.at(0, 0) = 3.0;
  const HarmonicCoefficients s0 = scatter_path(c, {}, bank);
  CHECK(s0.bandlimit == bank.L0);
  CHECK(std::abs(s0.at(0, 0) - cdouble{3.0, 0.0}) < 1e-14);
  for (std::size_t i = 1; i < s0.values.size(); ++i) CHECK(std::abs(s0.values[i]) == 0.0);

  // single scale with the signal outside the band
  HarmonicCoefficients low(L, true);
  low.at(1, 0) = 1.0;
  CHECK(norm(scatter_path(low, {4}, bank)) == 0.0);

  // compositionality: S[(j1, j2)] f = S[(j2)] U[j1] f
  const HarmonicCoefficients f = random_bandlimited(L, 4);
  const ScatterOptions opts{true, 1};
  const HarmonicCoefficients direct = scatter_path(f, {4, 3}, bank, opts);
  const HarmonicCoefficients via_u =
      scatter_path(propagate(f, 4, bank, opts), {3}, bank, opts);
  double diff = 0.0;
  for (std::size_t i = 0; i < direct.values.size(); ++i)
    diff += std::norm(direct.values[i] - via_u.values[i]);
  CHECK(std::sqrt(diff) < 1e-12 * norm(direct));
}

TEST_CASE("scattering network channels and prefix sharing") {
  const int L = 64;
  const FilterBank bank = build_filter_bank({L, 2.0, 2});
  const HarmonicCoefficients f = random_bandlimited(L, 5);

  const PathSet d0 = enumerate_paths(2, bank.J, 0, PathPolicy::descending);
  const ScatteringCoefficients s0 = scattering_network(f, d0, bank);
  CHECK(s0.entries.size() == 1);
  const HarmonicCoefficients direct = scatter_path(f, {}, bank);
  CHECK(norm(s0.entries[0].second) == doctest::Approx(norm(direct)));

  const PathSet d2 = enumerate_paths(2, bank.J, 2, PathPolicy::descending);
  CHECK(d2.paths.size() == 21);  // 1 + 5 + 15
  const ScatterOptions opts{true, 1};
  const ScatteringCoefficients net = scattering_network(f, d2, bank, opts);
  CHECK(net.entries.size() == 21);
  for (const auto& [p, ch] : net.entries) {
    CHECK(ch.bandlimit == bank.L0);
    const HarmonicCoefficients naive = scatter_path(f, p, bank, opts);
    double diff = 0.0;
    for (std::size_t i = 0; i < ch.values.size(); ++i)
      diff += std::norm(ch.values[i] - naive.values[i]);
    CHECK(std::sqrt(diff) <= 1e-12 * std::max(1.0, norm(naive)));
  }
}

TEST_CASE("general paths at multi-resolution: ascending scales are unreachable") {
  const int L = 32;
  const FilterBank bank = build_filter_bank({L, 2.0, 2});
  const PathSet paths = enumerate_paths(2, bank.J, 2, PathPolicy::general);
  const HarmonicCoefficients f = random_bandlimited(L, 12);
  const ScatteringCoefficients multi = scattering_network(f, paths, bank, {true, 1});
  const ScatteringCoefficients full = scattering_network(f, paths, bank, {false, 1});
  for (const auto& [p, ch] : multi.entries) {
    bool ascending_step = false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (p[i + 1] > p[i] + 1) ascending_step = true;
    if (ascending_step) {
      CHECK(norm(ch) == 0.0);
      // at full resolution the modulus spreads content upward, so the same
      // channel is populated
      CHECK(norm(*full.find(p)) > 0.0);
    }
  }
}

TEST_CASE("network rejects mismatched inputs") {
  const FilterBank bank = build_filter_bank({32, 2.0, 2});
  const PathSet wrong = enumerate_paths(1, bank.J, 1, PathPolicy::descending);
  CHECK_THROWS_AS(scattering_network(random_bandlimited(32, 1), wrong, bank),
                  IncompatibleError);
  const PathSet ok = enumerate_paths(2, bank.J, 1, PathPolicy::descending);
  CHECK_THROWS_AS(scattering_network(random_bandlimited(16, 1), ok, bank),
                  DimensionError);
}

TEST_CASE("scattering distance metric") {
  const int L = 32;
  const FilterBank bank = build_filter_bank({L, 2.0, 2});
  const PathSet paths = enumerate_paths(2, bank.J, 1, PathPolicy::descending);

  const ScatteringCoefficients a =
      scattering_network(random_bandlimited(L, 6), paths, bank);
  CHECK(scattering_distance(a, a) == 0.0);

  ScatteringCoefficients zero = a;
  for (auto& [p, ch] : zero.entries) ch = HarmonicCoefficients(ch.bandlimit, true);
  CHECK(scattering_distance(a, zero) == doctest::Approx(scattering_norm(a)));

  // triangle inequality on random triples
  const ScatteringCoefficients b =
      scattering_network(random_bandlimited(L, 7), paths, bank);
  const ScatteringCoefficients c =
      scattering_network(random_bandlimited(L, 8), paths, bank);
  CHECK(scattering_distance(a, c) <=
        scattering_distance(a, b) + scattering_distance(b, c) + 1e-12);

  ScatteringCoefficients other = a;
  other.provenance.D = 99;
  CHECK_THROWS_AS(scattering_distance(a, other), IncompatibleError);
}

TEST_CASE("channel energy decays with depth") {
  const int L = 32;
  const FilterBank bank = build_filter_bank({L, 2.0, 2});
  const PathSet paths = enumerate_paths(2, bank.J, 3, PathPolicy::descending);
  const HarmonicCoefficients f = random_bandlimited(L, 9);
  const ScatteringCoefficients net = scattering_network(f, paths, bank, {true, 1});
  std::vector<double> per_depth(4, 0.0);
  for (const auto& [p, ch] : net.entries) per_depth[p.size()] += norm_sq(ch);
  CHECK(per_depth[1] > per_depth[2]);
  CHECK(per_depth[2] > per_depth[3]);
}

TEST_CASE("modulus mixes power into low degrees") {
  const int L = 64;
  const FilterBank bank = build_filter_bank({L, 2.0, 2});
  const HarmonicCoefficients f = random_bandlimited(L, 10);
  for (int j : {3, 4, 5}) {
    const auto before = power_spectrum(axisym_convolve(f, bank.psi_hat(j)));
    const auto after = power_spectrum(propagate(f, j, bank, {false, 1}));
    const double lo = std::pow(2.0, j - 1);
    double before_low = 0.0, after_low = 0.0, before_total = 0.0;
    for (int l = 0; l < L; ++l) {
      before_total += (2.0 * l + 1.0) * before[l];
      if (l < lo) {
        before_low += (2.0 * l + 1.0) * before[l];
        after_low += (2.0 * l + 1.0) * after[l];
      }
    }
    CHECK(before_low <= 1e-10 * before_total);
    CHECK(after_low > 0.0);
  }
}
