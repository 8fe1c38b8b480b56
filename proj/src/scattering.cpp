#include "sphscat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "sphscat/sht.hpp"

namespace sphscat {

const char* to_string(PathPolicy p) {
  switch (p) {
    case PathPolicy::general: return "general";
    case PathPolicy::descending: return "descending";
    default: return "adjacent-descending";
  }
}

PathPolicy path_policy_from_string(const std::string& s) {
  if (s == "general") return PathPolicy::general;
  if (s == "descending") return PathPolicy::descending;
  if (s == "adjacent-descending" || s == "adjacent_descending")
    return PathPolicy::adjacent_descending;
  throw Error("unknown path policy: " + s);
}

PathSet enumerate_paths(int J0, int J, int D, PathPolicy policy) {
  if (D < 0) throw InvalidDepthError("enumerate_paths: depth must be >= 0");
  if (J0 > J) throw InvalidScaleRangeError("enumerate_paths: J0 > J");
  PathSet set;
  set.J0 = J0;
  set.J = J;
  set.max_depth = D;
  set.policy = policy;
  // depth-first in ascending scale order emits lexicographic order directly
  Path current;
  auto admissible_next = [&](int j) {
    if (current.empty()) return true;
    const int prev = current.back();
    if (policy == PathPolicy::descending) return j <= prev;
    if (policy == PathPolicy::adjacent_descending) return j == prev - 1;
    return true;
  };
  std::function<void()> emit = [&] {
    set.paths.push_back(current);
    if (static_cast<int>(current.size()) >= D) return;
    for (int j = J0; j <= J; ++j) {
      if (!admissible_next(j)) continue;
      current.push_back(j);
      emit();
      current.pop_back();
    }
  };
  emit();
  return set;
}

const FilterBank& cached_filter_bank(const KernelConfig& config) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, int, int>, std::unique_ptr<FilterBank>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(config.L, config.alpha, config.J0, config.quadrature_nodes);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto bank = std::make_unique<FilterBank>(build_filter_bank(config));
    it = cache.emplace(key, std::move(bank)).first;
  }
  return *it->second;
}

namespace {

// Bank governing a cascade stage whose input sits at bandlimit L_in.
const FilterBank& stage_bank(const FilterBank& top, int L_in) {
  if (L_in == top.config.L) return top;
  KernelConfig c = top.config;
  c.L = L_in;
  return cached_filter_bank(c);
}

// Modulus of the sampled signal; |.| of a complex field is real-valued.
HarmonicCoefficients grid_modulus_projection(const HarmonicCoefficients& w,
                                             int grid_bandlimit, int out_bandlimit) {
  const SampleGrid grid = make_grid(grid_bandlimit, GridScheme::MW);
  SphericalSignal s = inverse_sht(w, grid);
  for (cdouble& v : s.samples) v = cdouble{std::abs(v), 0.0};
  s.real_valued = true;
  HarmonicCoefficients u = forward_sht(s);
  return u.bandlimit == out_bandlimit ? std::move(u) : resize_bandlimit(u, out_bandlimit);
}

}  // namespace

HarmonicCoefficients propagate(const HarmonicCoefficients& f, int j,
                               const FilterBank& bank, const ScatterOptions& opts) {
  if (f.bandlimit > bank.config.L)
    throw DimensionError("propagate: signal bandlimit exceeds filter bank");
  if (opts.oversample < 1) throw Error("propagate: oversample must be >= 1");
  if (j < bank.scale_min() || j > bank.scale_max())
    throw InvalidScaleError("propagate: scale " + std::to_string(j) +
                            " outside [" + std::to_string(bank.scale_min()) + ", " +
                            std::to_string(bank.scale_max()) + "]");
  const FilterBank& b = stage_bank(bank, f.bandlimit);
  if (j > b.scale_max()) {
    // the wavelet band lies entirely above this stage's bandlimit (only
    // reachable with non-descending paths in the multi-resolution setting)
    return HarmonicCoefficients(f.bandlimit, true);
  }
  const int Lw = opts.multires ? b.storage_bandlimit(j) : b.config.L;
  HarmonicCoefficients w = axisym_convolve(f, b.psi_hat(j), Lw);
  return grid_modulus_projection(w, opts.oversample * Lw, Lw);
}

HarmonicCoefficients scatter_path(const HarmonicCoefficients& f, const Path& p,
                                  const FilterBank& bank, const ScatterOptions& opts) {
  HarmonicCoefficients cur = f;
  for (int j : p) cur = propagate(cur, j, bank, opts);
  const FilterBank& b = stage_bank(bank, cur.bandlimit);
  return axisym_convolve(cur, b.phi, bank.L0);
}

const HarmonicCoefficients* ScatteringCoefficients::find(const Path& p) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), p,
                             [](const auto& e, const Path& q) { return e.first < q; });
  if (it == entries.end() || it->first != p) return nullptr;
  return &it->second;
}

ScatteringCoefficients scattering_network(const HarmonicCoefficients& f,
                                          const PathSet& paths, const FilterBank& bank,
                                          const ScatterOptions& opts) {
  if (paths.J0 != bank.scale_min() || paths.J != bank.scale_max())
    throw IncompatibleError("scattering_network: path scales do not match filter bank");
  if (f.bandlimit != bank.config.L)
    throw DimensionError("scattering_network: signal bandlimit does not match bank");

  ScatteringCoefficients out;
  out.provenance = {bank.config.L, bank.config.alpha, bank.config.J0, paths.max_depth,
                    paths.policy,  opts.multires,     bank.L0};
  out.entries.reserve(paths.paths.size());

  // The path set is lexicographic, so a depth-first walk visits each node right
  // after its parent; propagator outputs are shared along the stack.
  std::vector<std::pair<Path, HarmonicCoefficients>> stack;
  stack.emplace_back(Path{}, f);
  auto is_prefix = [](const Path& a, const Path& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
  };
  for (const Path& p : paths.paths) {
    while (stack.size() > 1 && !is_prefix(stack.back().first, p)) stack.pop_back();
    while (stack.back().first.size() < p.size()) {
      const int j = p[stack.back().first.size()];
      Path next = stack.back().first;
      next.push_back(j);
      HarmonicCoefficients u = propagate(stack.back().second, j, bank, opts);
      stack.emplace_back(std::move(next), std::move(u));
    }
    const HarmonicCoefficients& u = stack.back().second;
    const FilterBank& b = stage_bank(bank, u.bandlimit);
    out.entries.emplace_back(p, axisym_convolve(u, b.phi, bank.L0));
  }
  return out;
}

double scattering_distance(const ScatteringCoefficients& a, const ScatteringCoefficients& b) {
  if (!(a.provenance == b.provenance))
    throw IncompatibleError("scattering_distance: provenance mismatch");
  if (a.entries.size() != b.entries.size())
    throw IncompatibleError("scattering_distance: channel count mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].first != b.entries[i].first)
      throw IncompatibleError("scattering_distance: path sets differ");
    const auto& va = a.entries[i].second.values;
    const auto& vb = b.entries[i].second.values;
    for (std::size_t k = 0; k < va.size(); ++k) acc += std::norm(va[k] - vb[k]);
  }
  return std::sqrt(acc);
}

double scattering_norm(const ScatteringCoefficients& s) {
  double acc = 0.0;
  for (const auto& [p, c] : s.entries) acc += norm_sq(c);
  return std::sqrt(acc);
}

}  // namespace sphscat
