#pragma once

#include <cstdint>
#include <vector>

#include "sphscat/filter_bank.hpp"
#include "sphscat/types.hpp"
#include "sphscat/wavelet_transform.hpp"

namespace sphscat {

// -----------------------------------------------------------------------------
// Scattering networks: cascades of wavelet convolutions and pointwise modulus,
// each output projected onto the scaling function.
// -----------------------------------------------------------------------------

using Path = std::vector<int>;  // wavelet scales (j1, ..., jd); empty = depth 0

enum class PathPolicy : std::uint8_t {
  general = 0,              // any scales in [J0, J]
  descending = 1,           // j1 >= j2 >= ... >= jd
  adjacent_descending = 2,  // j_{i+1} = j_i - 1
};

const char* to_string(PathPolicy p);
PathPolicy path_policy_from_string(const std::string& s);

struct PathSet {
  int J0 = 0;
  int J = 0;
  int max_depth = 0;
  PathPolicy policy = PathPolicy::general;
  std::vector<Path> paths;  // lexicographic, empty path first
};

// All policy-admissible paths of depth <= D, deduplicated, lexicographic.
PathSet enumerate_paths(int J0, int J, int D, PathPolicy policy);

struct ScatterOptions {
  bool multires = true;
  int oversample = 1;  // modulus grid bandlimit = oversample x storage bandlimit
};

// U[j] f = |f * psi_j|: convolve, evaluate on the grid, take the pointwise
// modulus, re-project. When f sits below the bank bandlimit (a deeper cascade
// stage) the filter bank is rebuilt at f's bandlimit.
HarmonicCoefficients propagate(const HarmonicCoefficients& f, int j,
                               const FilterBank& bank, const ScatterOptions& opts = {});

// S[p] f = Phi U[p] f at bandlimit L0; the empty path gives Phi f.
HarmonicCoefficients scatter_path(const HarmonicCoefficients& f, const Path& p,
                                  const FilterBank& bank, const ScatterOptions& opts = {});

struct ScatteringProvenance {
  int L = 0;
  double alpha = 0.0;
  int J0 = 0;
  int D = 0;
  PathPolicy policy = PathPolicy::general;
  bool multires = false;
  int L0 = 0;

  bool operator==(const ScatteringProvenance&) const = default;
};

struct ScatteringCoefficients {
  ScatteringProvenance provenance;
  // Lexicographic by path, empty path first; every entry band-limited at L0.
  std::vector<std::pair<Path, HarmonicCoefficients>> entries;

  const HarmonicCoefficients* find(const Path& p) const;
};

// One channel per path; propagator outputs are shared across common prefixes.
ScatteringCoefficients scattering_network(const HarmonicCoefficients& f,
                                          const PathSet& paths, const FilterBank& bank,
                                          const ScatterOptions& opts = {});

// sqrt of the summed squared harmonic-space distances over all channels;
// requires matching provenance and path sets.
double scattering_distance(const ScatteringCoefficients& a, const ScatteringCoefficients& b);

double scattering_norm(const ScatteringCoefficients& s);

// Process-wide cache of filter banks rebuilt at reduced bandlimits for the
// multi-resolution cascade.
const FilterBank& cached_filter_bank(const KernelConfig& config);

}  // namespace sphscat
