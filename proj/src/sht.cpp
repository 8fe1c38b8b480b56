#include "sphscat/sht.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "sphscat/fft.hpp"
#include "sphscat/legendre.hpp"
#include "sphscat/random.hpp"
#include "sphscat/wigner.hpp"

namespace sphscat {

namespace {

// i^k for any integer k
cdouble ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// w(k) = int_0^pi e^{i k theta} sin(theta) dtheta
cdouble theta_integral(int k) {
  if (k == 1) return {0.0, M_PI / 2.0};
  if (k == -1) return {0.0, -M_PI / 2.0};
  if (k % 2 == 0) return {2.0 / (1.0 - static_cast<double>(k) * k), 0.0};
  return {0.0, 0.0};
}

// ---------------------------------------------------------------------------
// MW machinery. n = 2L - 1 rings on the extended theta range; samples live on
// the first L. Band-limited signals satisfy f_m(2pi - theta) = (-1)^m
// f_m(theta), which turns L rings into n and makes every Fourier step exact.
// ---------------------------------------------------------------------------

struct MwContext {
  int L;
  int n;        // 2L - 1
  std::size_t pad;  // FFT size for the weight correlation, >= 3n - 2
  std::vector<cdouble> weight_fft;   // FFT of b[s] = w(s - (n-1)), zero-padded
  std::vector<cdouble> theta_phase_fwd;  // e^{-i m' pi / n}, index m' + L - 1
  std::vector<cdouble> theta_phase_inv;  // e^{+i m' pi / n}

  explicit MwContext(int L_) : L(L_), n(2 * L_ - 1) {
    pad = 1;
    while (pad < static_cast<std::size_t>(3 * n)) pad *= 2;
    std::vector<cdouble> b(pad, cdouble{0.0, 0.0});
    for (int s = 0; s < 2 * n - 1; ++s) b[s] = theta_integral(s - (n - 1));
    weight_fft.resize(pad);
    fft::forward(b, weight_fft);
    theta_phase_fwd.resize(n);
    theta_phase_inv.resize(n);
    for (int mp = -(L - 1); mp <= L - 1; ++mp) {
      const double a = mp * M_PI / n;
      theta_phase_fwd[mp + L - 1] = {std::cos(a), -std::sin(a)};
      theta_phase_inv[mp + L - 1] = {std::cos(a), std::sin(a)};
    }
  }
};

std::shared_ptr<const MwContext> mw_context(int L) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const MwContext>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(L);
  if (it != cache.end()) return it->second;
  auto ctx = std::make_shared<const MwContext>(L);
  cache.emplace(L, ctx);
  return ctx;
}

// Gauss-Legendre nodes/weights plus ascending thetas, cached per L.
struct GlContext {
  std::vector<double> x;        // cos(theta), descending with theta
  std::vector<double> weights;
  std::vector<double> thetas;   // ascending

  explicit GlContext(int L) {
    gauss_legendre(L, x, weights);          // x ascending
    std::reverse(x.begin(), x.end());       // theta ascending => x descending
    std::reverse(weights.begin(), weights.end());
    thetas.resize(L);
    for (int i = 0; i < L; ++i) thetas[i] = std::acos(std::clamp(x[i], -1.0, 1.0));
  }
};

std::shared_ptr<const GlContext> gl_context(int L) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const GlContext>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(L);
  if (it != cache.end()) return it->second;
  auto ctx = std::make_shared<const GlContext>(L);
  cache.emplace(L, ctx);
  return ctx;
}

// Provides d^l(pi/2) rows either from the shared cache or from a streaming
// recursion when the table would blow the memory budget.
class HalfPiRows {
 public:
  explicit HalfPiRows(int L) : table_(HalfPiWignerTable::get(L)) {
    if (!table_) rec_ = std::make_unique<WignerRecursion>(M_PI / 2.0);
  }

  // Must be called with l = 0, 1, 2, ... in order when streaming.
  void seek(int l) {
    if (!rec_) return;
    while (rec_->degree() < l) rec_->advance();
  }

  void row(int l, int mp, double* out) const {
    if (table_) {
      table_->expand_row(l, mp, out);
    } else {
      const double* plane = rec_->plane().data();
      const int stride = 2 * l + 1;
      const double* src = plane + static_cast<std::size_t>(mp + l) * stride;
      std::copy(src, src + stride, out);
    }
  }

 private:
  std::shared_ptr<const HalfPiWignerTable> table_;
  std::unique_ptr<WignerRecursion> rec_;
};

void check_grid(const SampleGrid& grid) {
  const int L = grid.bandlimit;
  if (L < 1) throw GridError("grid: bandlimit must be >= 1");
  const std::size_t n_phi = 2 * static_cast<std::size_t>(L) - 1;
  if (grid.phis.size() != n_phi || grid.thetas.size() != static_cast<std::size_t>(L))
    throw GridError("grid: sample counts inconsistent with bandlimit");
  if (grid.scheme == GridScheme::MW) {
    for (int t = 0; t < L; ++t)
      if (std::abs(grid.thetas[t] - M_PI * (2.0 * t + 1.0) / (2 * L - 1)) > 1e-9)
        throw GridError("grid: thetas do not match the MW scheme");
  } else {
    const auto& ref = gl_context(L)->thetas;
    for (int t = 0; t < L; ++t)
      if (std::abs(grid.thetas[t] - ref[t]) > 1e-9)
        throw GridError("grid: thetas do not match the GL scheme");
  }
}

// phi-major FFT per ring: out[t][m + L - 1] = 1/n sum_p f(t, p) e^{-i m phi_p}
void phi_analysis(const SphericalSignal& sig, std::vector<cdouble>& fm) {
  const int L = sig.grid.bandlimit;
  const int n = 2 * L - 1;
  const std::size_t n_theta = sig.grid.n_theta();
  fm.assign(n_theta * n, cdouble{0.0, 0.0});
  std::vector<cdouble> ring(n), spec(n);
  for (std::size_t t = 0; t < n_theta; ++t) {
    std::copy(sig.samples.begin() + t * n, sig.samples.begin() + (t + 1) * n, ring.begin());
    fft::forward(ring, spec);
    cdouble* dst = fm.data() + t * n;
    for (int m = -(L - 1); m <= L - 1; ++m) {
      const int q = (m % n + n) % n;
      dst[m + L - 1] = spec[q] / static_cast<double>(n);
    }
  }
}

// phi synthesis per ring: samples[t][p] = sum_m fm[t][m] e^{i m phi_p}
void phi_synthesis(const std::vector<cdouble>& fm, int L, std::vector<cdouble>& samples) {
  const int n = 2 * L - 1;
  const std::size_t n_theta = samples.size() / n;
  std::vector<cdouble> packed(n), ring(n);
  for (std::size_t t = 0; t < n_theta; ++t) {
    std::fill(packed.begin(), packed.end(), cdouble{0.0, 0.0});
    const cdouble* src = fm.data() + t * n;
    for (int m = -(L - 1); m <= L - 1; ++m) {
      const int q = (m % n + n) % n;
      packed[q] = src[m + L - 1];
    }
    fft::backward(packed, ring);
    std::copy(ring.begin(), ring.end(), samples.begin() + t * n);
  }
}

// Theta Fourier coefficients of the parity-extended rings:
// F[m'][m] with m' as the slow index; F[m'][m] = 1/n sum_t f_m(theta_t) e^{-i m' theta_t}.
void mw_theta_analysis(const MwContext& ctx, const std::vector<cdouble>& fm,
                       std::vector<cdouble>& F) {
  const int L = ctx.L;
  const int n = ctx.n;
  F.assign(static_cast<std::size_t>(n) * n, cdouble{0.0, 0.0});
  std::vector<cdouble> col(n), spec(n);
  for (int m = -(L - 1); m <= L - 1; ++m) {
    const int im = m + L - 1;
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    for (int t = 0; t < L; ++t) col[t] = fm[static_cast<std::size_t>(t) * n + im];
    for (int t = L; t < n; ++t)
      col[t] = parity * fm[static_cast<std::size_t>(2 * L - 2 - t) * n + im];
    fft::forward(col, spec);
    for (int mp = -(L - 1); mp <= L - 1; ++mp) {
      const int q = (mp % n + n) % n;
      F[static_cast<std::size_t>(mp + L - 1) * n + im] =
          spec[q] * ctx.theta_phase_fwd[mp + L - 1] / static_cast<double>(n);
    }
  }
}

// Inverse of the above: rings at theta_t for t < L from F[m'][m].
void mw_theta_synthesis(const MwContext& ctx, const std::vector<cdouble>& F,
                        std::vector<cdouble>& fm) {
  const int L = ctx.L;
  const int n = ctx.n;
  fm.assign(static_cast<std::size_t>(L) * n, cdouble{0.0, 0.0});
  std::vector<cdouble> packed(n), col(n);
  for (int m = -(L - 1); m <= L - 1; ++m) {
    const int im = m + L - 1;
    std::fill(packed.begin(), packed.end(), cdouble{0.0, 0.0});
    for (int mp = -(L - 1); mp <= L - 1; ++mp) {
      const int q = (mp % n + n) % n;
      packed[q] = F[static_cast<std::size_t>(mp + L - 1) * n + im] *
                  ctx.theta_phase_inv[mp + L - 1];
    }
    fft::backward(packed, col);
    for (int t = 0; t < L; ++t) fm[static_cast<std::size_t>(t) * n + im] = col[t];
  }
}

SphericalSignal mw_inverse(const HarmonicCoefficients& coeffs, const SampleGrid& grid) {
  const int L = grid.bandlimit;
  const int n = 2 * L - 1;
  auto ctx = mw_context(L);
  HalfPiRows rows(L);
  // F[m'][m] = i^{-m} N_l d_{m'm} d_{m'0} f_lm accumulated over l
  std::vector<cdouble> F(static_cast<std::size_t>(n) * n, cdouble{0.0, 0.0});
  std::vector<double> row(2 * static_cast<std::size_t>(L) - 1);
  std::vector<cdouble> fl(2 * static_cast<std::size_t>(L) - 1);
  const int Lc = coeffs.bandlimit;
  for (int l = 0; l < Lc; ++l) {
    rows.seek(l);
    const double Nl = std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI));
    for (int m = -l; m <= l; ++m)
      fl[m + l] = ipow(-m) * Nl * coeffs.at(l, m);
    for (int mp = 0; mp <= l; ++mp) {
      rows.row(l, mp, row.data());
      const double d0 = row[l];
      if (d0 == 0.0) continue;  // d_{m'0}(pi/2) vanishes for odd l + m'
      cdouble* Fp = F.data() + static_cast<std::size_t>(mp + L - 1) * n + (L - 1);
      cdouble* Fn = F.data() + static_cast<std::size_t>(-mp + L - 1) * n + (L - 1);
      if (mp == 0) {
        for (int m = -l; m <= l; ++m) Fp[m] += row[m + l] * d0 * fl[m + l];
      } else {
        double sign = (l % 2 == 0) ? 1.0 : -1.0;  // (-1)^m starting at m = -l
        for (int m = -l; m <= l; ++m) {
          const cdouble c = row[m + l] * d0 * fl[m + l];
          Fp[m] += c;
          Fn[m] += sign * c;
          sign = -sign;
        }
      }
    }
  }
  SphericalSignal out;
  out.grid = grid;
  out.real_valued = coeffs.real_signal;
  out.samples.assign(static_cast<std::size_t>(L) * n, cdouble{0.0, 0.0});
  std::vector<cdouble> fm;
  mw_theta_synthesis(*ctx, F, fm);
  phi_synthesis(fm, L, out.samples);
  return out;
}

HarmonicCoefficients mw_forward(const SphericalSignal& sig) {
  const int L = sig.grid.bandlimit;
  const int n = 2 * L - 1;
  auto ctx = mw_context(L);

  std::vector<cdouble> fm;
  phi_analysis(sig, fm);
  std::vector<cdouble> F;
  mw_theta_analysis(*ctx, fm, F);

  // Correlate each m-row with the weights: G[m][m''] = sum_m' F[m'][m] w(m''+m').
  // Computed as a linear convolution of the reversed row with b via the padded FFT.
  const std::size_t pad = ctx->pad;
  std::vector<cdouble> buf(pad), spec(pad);
  std::vector<cdouble> G(static_cast<std::size_t>(n) * n);  // [m][m'']
  for (int m = -(L - 1); m <= L - 1; ++m) {
    const int im = m + L - 1;
    std::fill(buf.begin(), buf.end(), cdouble{0.0, 0.0});
    for (int i = 0; i < n; ++i)
      buf[i] = F[static_cast<std::size_t>(n - 1 - i) * n + im];  // reversed in m'
    fft::forward(buf, spec);
    for (std::size_t q = 0; q < pad; ++q) spec[q] *= ctx->weight_fft[q];
    fft::backward(spec, buf);
    cdouble* g = G.data() + static_cast<std::size_t>(im) * n;
    const double inv_pad = 1.0 / static_cast<double>(pad);
    for (int k = 0; k < n; ++k) g[k] = buf[k + n - 1] * inv_pad;
  }

  // Fold negative m'' and collapse with the Wigner rows:
  // P[m''][m] = G[m][m''] + (-1)^m G[m][-m''] (m'' > 0), P[0][m] = G[m][0].
  std::vector<cdouble> P(static_cast<std::size_t>(L) * n);
  for (int mpp = 0; mpp <= L - 1; ++mpp) {
    cdouble* p = P.data() + static_cast<std::size_t>(mpp) * n;
    for (int m = -(L - 1); m <= L - 1; ++m) {
      const int im = m + L - 1;
      cdouble v = G[static_cast<std::size_t>(im) * n + (mpp + L - 1)];
      if (mpp > 0) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        v += sign * G[static_cast<std::size_t>(im) * n + (-mpp + L - 1)];
      }
      p[im] = v;
    }
  }

  HalfPiRows rows(L);
  HarmonicCoefficients out(L, sig.real_valued);
  std::vector<double> row(2 * static_cast<std::size_t>(L) - 1);
  std::vector<cdouble> acc(2 * static_cast<std::size_t>(L) - 1);
  for (int l = 0; l < L; ++l) {
    rows.seek(l);
    std::fill(acc.begin(), acc.begin() + 2 * l + 1, cdouble{0.0, 0.0});
    for (int mp = 0; mp <= l; ++mp) {
      rows.row(l, mp, row.data());
      const double d0 = row[l];
      if (d0 == 0.0) continue;  // odd l + m'
      const cdouble* p = P.data() + static_cast<std::size_t>(mp) * n + (L - 1);
      for (int m = -l; m <= l; ++m) acc[m + l] += row[m + l] * d0 * p[m];
    }
    const double Nl = std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI));
    for (int m = -l; m <= l; ++m)
      out.at(l, m) = 2.0 * M_PI * Nl * ipow(-m) * acc[m + l];
  }
  return out;
}

SphericalSignal gl_inverse(const HarmonicCoefficients& coeffs, const SampleGrid& grid) {
  const int L = grid.bandlimit;
  const int n = 2 * L - 1;
  auto ctx = gl_context(L);
  const int Lc = coeffs.bandlimit;
  std::vector<cdouble> fm(static_cast<std::size_t>(L) * n, cdouble{0.0, 0.0});
  std::vector<double> col(Lc);
  for (int i = 0; i < L; ++i) {
    cdouble* dst = fm.data() + static_cast<std::size_t>(i) * n;
    for (int m = 0; m < Lc; ++m) {
      legendre_column(Lc, m, ctx->x[i], col.data());
      if (m == 0) {
        for (int l = 0; l < Lc; ++l) dst[L - 1] += coeffs.at(l, 0) * col[l];
      } else {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // lambda_{l,-m} = (-1)^m lambda_{lm}
        cdouble pos{0.0, 0.0}, neg{0.0, 0.0};
        for (int l = m; l < Lc; ++l) {
          pos += coeffs.at(l, m) * col[l - m];
          neg += coeffs.at(l, -m) * col[l - m];
        }
        dst[m + L - 1] = pos;
        dst[-m + L - 1] = sign * neg;
      }
    }
  }
  SphericalSignal out;
  out.grid = grid;
  out.real_valued = coeffs.real_signal;
  out.samples.assign(static_cast<std::size_t>(L) * n, cdouble{0.0, 0.0});
  phi_synthesis(fm, L, out.samples);
  return out;
}

HarmonicCoefficients gl_forward(const SphericalSignal& sig) {
  const int L = sig.grid.bandlimit;
  const int n = 2 * L - 1;
  auto ctx = gl_context(L);
  std::vector<cdouble> fm;
  phi_analysis(sig, fm);
  HarmonicCoefficients out(L, sig.real_valued);
  std::vector<double> col(L);
  for (int i = 0; i < L; ++i) {
    const double wq = 2.0 * M_PI * ctx->weights[i];
    const cdouble* src = fm.data() + static_cast<std::size_t>(i) * n;
    for (int m = 0; m < L; ++m) {
      legendre_column(L, m, ctx->x[i], col.data());
      if (m == 0) {
        const cdouble v = wq * src[L - 1];
        for (int l = 0; l < L; ++l) out.at(l, 0) += v * col[l];
      } else {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        const cdouble vpos = wq * src[m + L - 1];
        const cdouble vneg = wq * sign * src[-m + L - 1];
        for (int l = m; l < L; ++l) {
          out.at(l, m) += vpos * col[l - m];
          out.at(l, -m) += vneg * col[l - m];
        }
      }
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

const char* to_string(GridScheme s) { return s == GridScheme::MW ? "MW" : "GL"; }

double norm_sq(const HarmonicCoefficients& f) {
  double acc = 0.0;
  for (const cdouble& v : f.values) acc += std::norm(v);
  return acc;
}

double norm(const HarmonicCoefficients& f) { return std::sqrt(norm_sq(f)); }

HarmonicCoefficients resize_bandlimit(const HarmonicCoefficients& f, int L) {
  HarmonicCoefficients out(L, f.real_signal);
  const int Lc = std::min(L, f.bandlimit);
  for (int l = 0; l < Lc; ++l)
    for (int m = -l; m <= l; ++m) out.at(l, m) = f.at(l, m);
  return out;
}

double reality_residual(const HarmonicCoefficients& f) {
  double worst = 0.0;
  for (int l = 0; l < f.bandlimit; ++l) {
    for (int m = 0; m <= l; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      worst = std::max(worst,
                       std::abs(f.at(l, -m) - sign * std::conj(f.at(l, m))));
    }
  }
  return worst;
}

SampleGrid make_grid(int L, GridScheme scheme) {
  if (L < 1) throw InvalidBandlimitError("make_grid: bandlimit must be >= 1");
  SampleGrid g;
  g.bandlimit = L;
  g.scheme = scheme;
  const int n = 2 * L - 1;
  g.phis.resize(n);
  for (int p = 0; p < n; ++p) g.phis[p] = 2.0 * M_PI * p / n;
  if (scheme == GridScheme::MW) {
    g.thetas.resize(L);
    for (int t = 0; t < L; ++t) g.thetas[t] = M_PI * (2.0 * t + 1.0) / n;
  } else {
    g.thetas = gl_context(L)->thetas;
  }
  return g;
}

SphericalSignal inverse_sht(const HarmonicCoefficients& coeffs, const SampleGrid& grid) {
  check_grid(grid);
  if (grid.bandlimit < coeffs.bandlimit)
    throw DimensionError("inverse_sht: grid bandlimit below coefficient bandlimit");
  return grid.scheme == GridScheme::MW ? mw_inverse(coeffs, grid)
                                       : gl_inverse(coeffs, grid);
}

HarmonicCoefficients forward_sht(const SphericalSignal& signal) {
  check_grid(signal.grid);
  if (signal.samples.size() != signal.grid.n_samples())
    throw GridError("forward_sht: sample count does not match grid");
  return signal.grid.scheme == GridScheme::MW ? mw_forward(signal)
                                              : gl_forward(signal);
}

HarmonicCoefficients rotate(const HarmonicCoefficients& coeffs, const EulerAngles& rho) {
  const int L = coeffs.bandlimit;
  HarmonicCoefficients out(L, coeffs.real_signal);
  std::vector<cdouble> ealpha(2 * L - 1), egamma(2 * L - 1);
  for (int k = -(L - 1); k <= L - 1; ++k) {
    ealpha[k + L - 1] = {std::cos(k * rho.alpha), -std::sin(k * rho.alpha)};
    egamma[k + L - 1] = {std::cos(k * rho.gamma), -std::sin(k * rho.gamma)};
  }
  WignerRecursion rec(rho.beta);
  std::vector<cdouble> fg(2 * L - 1);
  for (int l = 0; l < L; ++l) {
    if (l > 0) rec.advance();
    const double* plane = rec.plane().data();
    const int stride = 2 * l + 1;
    for (int mp = -l; mp <= l; ++mp)
      fg[mp + l] = coeffs.at(l, mp) * egamma[mp + L - 1];
    for (int m = -l; m <= l; ++m) {
      const double* row = plane + static_cast<std::size_t>(m + l) * stride;
      cdouble acc{0.0, 0.0};
      for (int mp = -l; mp <= l; ++mp) acc += row[mp + l] * fg[mp + l];
      out.at(l, m) = ealpha[m + L - 1] * acc;
    }
  }
  return out;
}

std::vector<double> power_spectrum(const HarmonicCoefficients& coeffs) {
  std::vector<double> cl(coeffs.bandlimit, 0.0);
  for (int l = 0; l < coeffs.bandlimit; ++l) {
    double acc = 0.0;
    for (int m = -l; m <= l; ++m) acc += std::norm(coeffs.at(l, m));
    cl[l] = acc / (2.0 * l + 1.0);
  }
  return cl;
}

HarmonicCoefficients random_bandlimited(int L, std::uint64_t seed,
                                        std::span<const double> spectrum) {
  if (L < 1) throw InvalidBandlimitError("random_bandlimited: bandlimit must be >= 1");
  if (!spectrum.empty()) {
    if (static_cast<int>(spectrum.size()) != L)
      throw InvalidSpectrumError("random_bandlimited: spectrum length must equal L");
    for (double c : spectrum)
      if (c < 0.0) throw InvalidSpectrumError("random_bandlimited: negative spectrum entry");
  }
  Rng rng(seed);
  HarmonicCoefficients out(L, true);
  for (int l = 0; l < L; ++l) {
    const double cl = spectrum.empty() ? 1.0 : spectrum[l];
    const double s0 = std::sqrt(cl);
    const double s1 = std::sqrt(cl / 2.0);
    out.at(l, 0) = {s0 * rng.gaussian(), 0.0};
    for (int m = 1; m <= l; ++m) {
      const double re = s1 * rng.gaussian();
      const double im = s1 * rng.gaussian();
      out.at(l, m) = {re, im};
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      out.at(l, -m) = sign * std::conj(out.at(l, m));
    }
  }
  return out;
}

EulerAngles sample_uniform_rotation(std::uint64_t seed) {
  Rng rng(seed);
  EulerAngles rho;
  rho.alpha = 2.0 * M_PI * rng.uniform();
  rho.beta = std::acos(std::clamp(2.0 * rng.uniform() - 1.0, -1.0, 1.0));
  rho.gamma = 2.0 * M_PI * rng.uniform();
  return rho;
}

double quadrature_norm_sq(const SphericalSignal& signal) {
  check_grid(signal.grid);
  const int L = signal.grid.bandlimit;
  const int n = 2 * L - 1;
  if (signal.grid.scheme == GridScheme::GL) {
    auto ctx = gl_context(L);
    double acc = 0.0;
    for (int i = 0; i < L; ++i) {
      double ring = 0.0;
      const cdouble* src = signal.samples.data() + static_cast<std::size_t>(i) * n;
      for (int p = 0; p < n; ++p) ring += std::norm(src[p]);
      acc += ctx->weights[i] * ring;
    }
    return acc * 2.0 * M_PI / n;
  }
  // MW: per-m theta-Fourier route; || f ||^2 = 2 pi sum_m sum_{a,b} F_a conj(F_b) w(a-b)
  auto ctx = mw_context(L);
  std::vector<cdouble> fm;
  phi_analysis(signal, fm);
  std::vector<cdouble> F;
  mw_theta_analysis(*ctx, fm, F);
  double acc = 0.0;
  for (int m = -(L - 1); m <= L - 1; ++m) {
    const int im = m + L - 1;
    for (int a = -(L - 1); a <= L - 1; ++a) {
      const cdouble Fa = F[static_cast<std::size_t>(a + L - 1) * n + im];
      if (Fa == cdouble{0.0, 0.0}) continue;
      for (int b = -(L - 1); b <= L - 1; ++b) {
        const int diff = a - b;
        if (diff % 2 != 0 && diff != 1 && diff != -1) continue;
        const cdouble Fb = F[static_cast<std::size_t>(b + L - 1) * n + im];
        acc += std::real(Fa * std::conj(Fb) * theta_integral(diff));
      }
    }
  }
  return acc * 2.0 * M_PI;
}

std::vector<double> theta_quadrature_weights(const SampleGrid& grid) {
  check_grid(grid);
  const int L = grid.bandlimit;
  if (grid.scheme == GridScheme::GL) return gl_context(L)->weights;
  const int n = 2 * L - 1;
  // q(theta_t) = 1/n sum_k w(k) e^{-i k theta_t} on the extended range, then
  // the mirror rings fold onto the physical ones (even profile).
  std::vector<double> q(n, 0.0);
  for (int t = 0; t < n; ++t) {
    const double theta = M_PI * (2.0 * t + 1.0) / n;
    cdouble acc{0.0, 0.0};
    for (int k = -(L - 1); k <= L - 1; ++k)
      acc += theta_integral(k) * cdouble{std::cos(k * theta), -std::sin(k * theta)};
    q[t] = std::real(acc) / n;
  }
  std::vector<double> out(L);
  for (int t = 0; t < L; ++t) out[t] = q[t];
  for (int t = L; t < n; ++t) out[2 * L - 2 - t] += q[t];
  return out;
}

}  // namespace sphscat
