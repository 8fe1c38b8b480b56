#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphscat {

using cdouble = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidBandlimitError : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct GridError : Error { using Error::Error; };
struct InvalidSpectrumError : Error { using Error::Error; };
struct InvalidScaleRangeError : Error { using Error::Error; };
struct InvalidScaleError : Error { using Error::Error; };
struct InvalidDepthError : Error { using Error::Error; };
struct IncompatibleError : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };
struct RejectedConfigurationError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Harmonic coefficients
// ---------------------------------------------------------------------------

// Flat index into a coefficient array: (l, m) -> l^2 + l + m.
inline std::size_t flat_index(int l, int m) {
  return static_cast<std::size_t>(l) * l + l + m;
}

// Band-limited harmonic coefficients f_lm, 0 <= l < bandlimit, |m| <= l.
// Stored complex regardless of reality; real_signal records that the sampled
// signal is real-valued, i.e. f_{l,-m} = (-1)^m conj(f_{l,m}).
struct HarmonicCoefficients {
  int bandlimit = 0;
  bool real_signal = false;
  std::vector<cdouble> values;

  HarmonicCoefficients() = default;
  HarmonicCoefficients(int L, bool real)
      : bandlimit(L), real_signal(real),
        values(static_cast<std::size_t>(L) * L, cdouble{0.0, 0.0}) {
    if (L < 1) throw InvalidBandlimitError("bandlimit must be >= 1");
  }

  cdouble& at(int l, int m) { return values[flat_index(l, m)]; }
  const cdouble& at(int l, int m) const { return values[flat_index(l, m)]; }

  std::size_t size() const { return values.size(); }
};

double norm_sq(const HarmonicCoefficients& f);
double norm(const HarmonicCoefficients& f);

// Copy into a (possibly different) bandlimit; truncates or zero-pads.
HarmonicCoefficients resize_bandlimit(const HarmonicCoefficients& f, int L);

// Max violation of the reality symmetry f_{l,-m} = (-1)^m conj(f_{l,m}).
double reality_residual(const HarmonicCoefficients& f);

// ---------------------------------------------------------------------------
// Sampling grids and sampled signals
// ---------------------------------------------------------------------------

enum class GridScheme : std::uint8_t { MW = 0, GL = 1 };

const char* to_string(GridScheme s);

struct SampleGrid {
  int bandlimit = 0;
  GridScheme scheme = GridScheme::MW;
  std::vector<double> thetas;  // colatitudes, ascending
  std::vector<double> phis;    // longitudes, ascending from 0

  std::size_t n_theta() const { return thetas.size(); }
  std::size_t n_phi() const { return phis.size(); }
  std::size_t n_samples() const { return thetas.size() * phis.size(); }
};

// Sampled signal, theta-major row order: samples[t * n_phi + p].
struct SphericalSignal {
  SampleGrid grid;
  bool real_valued = false;
  std::vector<cdouble> samples;
};

// ---------------------------------------------------------------------------
// Rotations
// ---------------------------------------------------------------------------

// zyz Euler angles; alpha, gamma in [0, 2pi), beta in [0, pi].
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

}  // namespace sphscat
