#include "sphscat/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "sphscat/io.hpp"
#include "sphscat/legendre.hpp"
#include "sphscat/random.hpp"
#include "sphscat/sht.hpp"
#include "sphscat/threading.hpp"
#include "sphscat/version.hpp"

namespace sphscat {

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void csv_preamble(std::ostream& out, const std::string& kind, const std::string& config) {
  out << "# sphscat " << kVersion << " " << kind << "\n";
  out << "# config: " << config << "\n";
}

}  // namespace

// ---------------------------------------------------------------------------
// equivariance
// ---------------------------------------------------------------------------

int EquivarianceConfig::resolved_j0() const {
  return J0 ? *J0 : scale_from_l0(alpha, L0);
}

std::string EquivarianceConfig::describe() const {
  std::ostringstream s;
  s << "equivariance L=" << L << " alpha=" << format_double(alpha)
    << " J0=" << resolved_j0() << " D=" << depth << " policy=" << to_string(policy)
    << " multires=" << (multires ? 1 : 0) << " oversample=" << oversample
    << " n_signals=" << n_signals << " n_rotations=" << n_rotations << " seed=" << seed;
  return s.str();
}

EquivarianceConfig EquivarianceConfig::desk() { return {}; }

EquivarianceConfig EquivarianceConfig::full() {
  EquivarianceConfig c;
  c.L = 256;
  c.L0 = 32;
  c.n_signals = 100;
  c.n_rotations = 100;
  return c;
}

EquivarianceReport equivariance_experiment(const EquivarianceConfig& config) {
  const int J0 = config.resolved_j0();
  KernelConfig kc{config.L, config.alpha, J0};
  kc.validate();
  const FilterBank& bank = cached_filter_bank(kc);
  const PathSet paths = enumerate_paths(J0, bank.J, config.depth, config.policy);
  const ScatterOptions opts{config.multires, config.oversample};

  const std::size_t ns = static_cast<std::size_t>(config.n_signals);
  const std::size_t nr = static_cast<std::size_t>(config.n_rotations);

  std::vector<HarmonicCoefficients> signals(ns);
  std::vector<ScatteringCoefficients> base(ns);
  parallel_for(ns, [&](std::size_t s) {
    signals[s] = random_bandlimited(config.L, derive_seed(config.seed, 0, s));
    base[s] = scattering_network(signals[s], paths, bank, opts);
  });

  std::vector<EulerAngles> rotations(nr);
  for (std::size_t r = 0; r < nr; ++r)
    rotations[r] = sample_uniform_rotation(derive_seed(config.seed, 1, r));

  const std::size_t np = paths.paths.size();
  // per-(signal, rotation) slots keep aggregation order-independent
  std::vector<double> errors(ns * nr * np, -1.0);  // -1 marks an excluded channel
  parallel_for(ns * nr, [&](std::size_t task) {
    const std::size_t s = task / nr;
    const std::size_t r = task % nr;
    const ScatteringCoefficients rotated =
        scattering_network(rotate(signals[s], rotations[r]), paths, bank, opts);
    for (std::size_t p = 0; p < np; ++p) {
      const HarmonicCoefficients ref = rotate(base[s].entries[p].second, rotations[r]);
      const double denom = norm(ref);
      double& slot = errors[task * np + p];
      if (denom == 0.0) continue;
      double diff = 0.0;
      const auto& got = rotated.entries[p].second.values;
      for (std::size_t k = 0; k < got.size(); ++k) diff += std::norm(got[k] - ref.values[k]);
      slot = std::sqrt(diff) / denom;
    }
  });

  EquivarianceReport report;
  report.config = config;
  report.J0 = J0;
  report.J = bank.J;
  report.L0 = bank.L0;

  std::vector<std::vector<double>> per_depth(config.depth + 1);
  std::size_t skipped = 0;
  for (std::size_t task = 0; task < ns * nr; ++task) {
    for (std::size_t p = 0; p < np; ++p) {
      const double e = errors[task * np + p];
      const int d = static_cast<int>(paths.paths[p].size());
      if (e < 0.0) {
        ++skipped;
        continue;
      }
      per_depth[d].push_back(e);
    }
  }
  report.skipped_zero_channels = skipped;

  for (int d = 0; d <= config.depth; ++d) {
    EquivarianceRow row;
    row.depth = d;
    row.n_samples = per_depth[d].size();
    if (!per_depth[d].empty()) {
      row.err_min = *std::min_element(per_depth[d].begin(), per_depth[d].end());
      row.err_max = *std::max_element(per_depth[d].begin(), per_depth[d].end());
      row.err_median = median_of(per_depth[d]);
    }
    std::vector<double> energies(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      double acc = 0.0;
      for (std::size_t p = 0; p < np; ++p)
        if (static_cast<int>(paths.paths[p].size()) == d)
          acc += norm_sq(base[s].entries[p].second);
      energies[s] = acc / norm_sq(signals[s]);
    }
    row.energy_median = median_of(energies);
    report.rows.push_back(row);
  }
  return report;
}

void write_equivariance_csv(const EquivarianceReport& report, std::ostream& out) {
  csv_preamble(out, "equivariance", report.config.describe());
  out << "# J0=" << report.J0 << " J=" << report.J << " L0_channels=" << report.L0
      << "\n";
  out << "# energy metric: per-depth relative energy sum_{p: depth d} ||S[p]f||^2 / ||f||^2,"
         " median over signals\n";
  out << "# skipped_zero_channels: " << report.skipped_zero_channels << "\n";
  out << "depth,err_min,err_median,err_max,energy_median_rel,n_samples\n";
  for (const auto& row : report.rows) {
    out << row.depth << ',' << format_double(row.err_min) << ','
        << format_double(row.err_median) << ',' << format_double(row.err_max) << ','
        << format_double(row.energy_median) << ',' << row.n_samples << "\n";
  }
}

// ---------------------------------------------------------------------------
// power mixing
// ---------------------------------------------------------------------------

std::string PowerMixingConfig::describe() const {
  std::ostringstream s;
  s << "power-mixing L=" << L << " alpha=" << format_double(alpha) << " J0=" << J0
    << " oversample=" << oversample << " n_signals=" << n_signals << " seed=" << seed;
  return s.str();
}

PowerMixingConfig PowerMixingConfig::desk() {
  PowerMixingConfig c;
  c.n_signals = 20;
  return c;
}

PowerMixingConfig PowerMixingConfig::full() { return {}; }

PowerMixingResult power_mixing_experiment(const PowerMixingConfig& config) {
  KernelConfig kc{config.L, config.alpha, config.J0};
  kc.validate();
  const FilterBank& bank = cached_filter_bank(kc);
  const ScatterOptions opts{false, config.oversample};  // full resolution

  PowerMixingResult result;
  result.config = config;
  result.J = bank.J;
  for (int j = config.J0; j <= bank.J; ++j) result.scales.push_back(j);
  const std::size_t nscale = result.scales.size();
  const std::size_t ns = static_cast<std::size_t>(config.n_signals);

  std::vector<std::vector<double>> before(ns * nscale), after(ns * nscale);
  parallel_for(ns, [&](std::size_t s) {
    const HarmonicCoefficients f =
        random_bandlimited(config.L, derive_seed(config.seed, 0, s));
    for (std::size_t k = 0; k < nscale; ++k) {
      const int j = result.scales[k];
      before[s * nscale + k] = power_spectrum(axisym_convolve(f, bank.psi_hat(j)));
      after[s * nscale + k] = power_spectrum(propagate(f, j, bank, opts));
    }
  });

  result.before.assign(nscale, std::vector<double>(config.L, 0.0));
  result.after.assign(nscale, std::vector<double>(config.L, 0.0));
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t k = 0; k < nscale; ++k) {
      for (int l = 0; l < config.L; ++l) {
        result.before[k][l] += before[s * nscale + k][l] / ns;
        result.after[k][l] += after[s * nscale + k][l] / ns;
      }
    }
  }
  return result;
}

void write_power_mixing_csv(const PowerMixingResult& result, std::ostream& out) {
  csv_preamble(out, "power-mixing", result.config.describe());
  out << "# mean power spectra of wavelet coefficients before (w_j) and after (|w_j|)"
         " the modulus, full-resolution transforms\n";
  out << "l";
  for (int j : result.scales) out << ",before_j" << j << ",after_j" << j;
  out << "\n";
  for (int l = 0; l < result.config.L; ++l) {
    out << l;
    for (std::size_t k = 0; k < result.scales.size(); ++k)
      out << ',' << format_double(result.before[k][l]) << ','
          << format_double(result.after[k][l]);
    out << "\n";
  }
}

double spectral_centroid(const std::vector<double>& cl) {
  double num = 0.0, den = 0.0;
  for (std::size_t l = 0; l < cl.size(); ++l) {
    const double w = (2.0 * l + 1.0) * cl[l];
    num += l * w;
    den += w;
  }
  return den > 0.0 ? num / den : 0.0;
}

// ---------------------------------------------------------------------------
// invariance vs scale
// ---------------------------------------------------------------------------

std::string InvarianceSweepConfig::describe() const {
  std::ostringstream s;
  s << "invariance-sweep L=" << L << " alpha=" << format_double(alpha) << " J0=";
  for (std::size_t i = 0; i < J0_list.size(); ++i) s << (i ? "|" : "") << J0_list[i];
  s << " D=" << depth << " policy=" << to_string(policy) << " multires=" << (multires ? 1 : 0)
    << " oversample=" << oversample << " n_signals=" << n_signals
    << " n_rotations=" << n_rotations << " beta=" << format_double(beta) << " seed=" << seed;
  return s.str();
}

InvarianceSweepConfig InvarianceSweepConfig::desk() { return {}; }

InvarianceSweepConfig InvarianceSweepConfig::full() {
  InvarianceSweepConfig c;
  c.n_signals = 20;
  c.n_rotations = 20;
  return c;
}

InvarianceSweepResult invariance_sweep(const InvarianceSweepConfig& config) {
  InvarianceSweepResult result;
  result.config = config;

  const std::size_t ns = static_cast<std::size_t>(config.n_signals);
  const std::size_t nr = static_cast<std::size_t>(config.n_rotations);
  std::vector<EulerAngles> rotations(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    Rng rng(derive_seed(config.seed, 1, r));
    rotations[r] = {2.0 * M_PI * rng.uniform(), config.beta, 2.0 * M_PI * rng.uniform()};
  }

  for (int J0 : config.J0_list) {
    KernelConfig kc{config.L, config.alpha, J0};
    kc.validate();
    const FilterBank& bank = cached_filter_bank(kc);
    const PathSet paths = enumerate_paths(J0, bank.J, config.depth, config.policy);
    const ScatterOptions opts{config.multires, config.oversample};

    std::vector<HarmonicCoefficients> signals(ns);
    std::vector<ScatteringCoefficients> base(ns);
    std::vector<double> base_norm(ns);
    parallel_for(ns, [&](std::size_t s) {
      signals[s] = random_bandlimited(config.L, derive_seed(config.seed, 0, s));
      base[s] = scattering_network(signals[s], paths, bank, opts);
      base_norm[s] = scattering_norm(base[s]);
    });

    std::vector<double> dist(ns * nr, 0.0);
    parallel_for(ns * nr, [&](std::size_t task) {
      const std::size_t s = task / nr;
      const std::size_t r = task % nr;
      const ScatteringCoefficients rotated =
          scattering_network(rotate(signals[s], rotations[r]), paths, bank, opts);
      dist[task] = scattering_distance(base[s], rotated) / base_norm[s];
    });

    result.J0_values.push_back(J0);
    result.median_error.push_back(median_of(dist));
  }
  return result;
}

void write_invariance_csv(const InvarianceSweepResult& result, std::ostream& out) {
  csv_preamble(out, "invariance-sweep", result.config.describe());
  out << "# median over signals x rotations of scattering_distance(Sf, S R f) / ||Sf||\n";
  out << "J0,median_invariance_error\n";
  for (std::size_t i = 0; i < result.J0_values.size(); ++i)
    out << result.J0_values[i] << ',' << format_double(result.median_error[i]) << "\n";
}

// ---------------------------------------------------------------------------
// diffeomorphism stability
// ---------------------------------------------------------------------------

void DiffeoField::displace(double theta, double phi, double& theta_out,
                           double& phi_out) const {
  theta_out = theta + eps * a_theta * std::sin(2.0 * theta);
  phi_out = phi + eps * a_phi * std::sin(theta);
}

bool DiffeoField::injective() const {
  // theta' = theta + eps a_t sin(2 theta) is monotone iff 2 eps a_t < 1;
  // the phi component is a shear and never folds.
  return 2.0 * std::abs(eps * a_theta) < 1.0;
}

double DiffeoField::norm_inf() const {
  double worst = 0.0;
  const int n = 4096;
  for (int i = 0; i <= n; ++i) {
    const double theta = M_PI * i / n;
    double tp, pp;
    displace(theta, 0.0, tp, pp);
    const double dphi = pp;
    const double s1 = std::sin(0.5 * (tp - theta));
    const double s2 = std::sin(0.5 * dphi);
    const double h = s1 * s1 + std::sin(theta) * std::sin(tp) * s2 * s2;
    const double d = 2.0 * std::asin(std::min(1.0, std::sqrt(std::max(0.0, h))));
    worst = std::max(worst, d);
  }
  return worst;
}

HarmonicCoefficients apply_diffeo(const HarmonicCoefficients& f, const DiffeoField& field,
                                  const SampleGrid& grid) {
  if (!field.injective())
    throw RejectedConfigurationError("diffeo: displacement field is not injective");
  if (grid.bandlimit < f.bandlimit)
    throw DimensionError("apply_diffeo: grid bandlimit below signal bandlimit");
  const int L = f.bandlimit;
  const std::size_t n_phi = grid.n_phi();

  SphericalSignal deformed;
  deformed.grid = grid;
  deformed.real_valued = f.real_signal;
  deformed.samples.assign(grid.n_samples(), cdouble{0.0, 0.0});

  parallel_for(grid.n_theta(), [&](std::size_t t) {
    std::vector<double> col(L);
    for (std::size_t p = 0; p < n_phi; ++p) {
      double theta, phi;
      field.displace(grid.thetas[t], grid.phis[p], theta, phi);
      const double x = std::clamp(std::cos(theta), -1.0, 1.0);
      cdouble acc{0.0, 0.0};
      for (int m = 0; m < L; ++m) {
        legendre_column(L, m, x, col.data());
        if (m == 0) {
          cdouble sum{0.0, 0.0};
          for (int l = 0; l < L; ++l) sum += f.at(l, 0) * col[l];
          acc += sum;
        } else {
          cdouble pos{0.0, 0.0}, neg{0.0, 0.0};
          for (int l = m; l < L; ++l) {
            pos += f.at(l, m) * col[l - m];
            neg += f.at(l, -m) * col[l - m];
          }
          const double sign = (m % 2 == 0) ? 1.0 : -1.0;
          const cdouble ep{std::cos(m * phi), std::sin(m * phi)};
          acc += pos * ep + sign * neg * std::conj(ep);
        }
      }
      deformed.samples[t * n_phi + p] = acc;
    }
  });
  if (f.real_signal)
    for (cdouble& v : deformed.samples) v = cdouble{v.real(), 0.0};
  return forward_sht(deformed);
}

std::string DiffeoProbeConfig::describe() const {
  std::ostringstream s;
  s << "diffeo-probe L=" << L << " alpha=" << format_double(alpha) << " J0=" << J0
    << " D=" << depth << " policy=" << to_string(policy) << " multires=" << (multires ? 1 : 0)
    << " oversample=" << oversample << " eps=";
  for (std::size_t i = 0; i < epsilons.size(); ++i)
    s << (i ? "|" : "") << format_double(epsilons[i]);
  s << " n_signals=" << n_signals << " seed=" << seed;
  return s.str();
}

DiffeoProbeConfig DiffeoProbeConfig::desk() { return {}; }

DiffeoProbeConfig DiffeoProbeConfig::full() {
  DiffeoProbeConfig c;
  c.n_signals = 10;
  return c;
}

DiffeoProbeResult diffeo_stability_probe(const DiffeoProbeConfig& config) {
  KernelConfig kc{config.L, config.alpha, config.J0};
  kc.validate();
  const FilterBank& bank = cached_filter_bank(kc);
  const PathSet paths = enumerate_paths(config.J0, bank.J, config.depth, config.policy);
  const ScatterOptions opts{config.multires, config.oversample};
  const SampleGrid grid = make_grid(config.L, GridScheme::MW);

  for (double e : config.epsilons) {
    DiffeoField probe{e};
    if (!probe.injective())
      throw RejectedConfigurationError("diffeo probe: eps too large, field not injective");
  }

  const std::size_t ns = static_cast<std::size_t>(config.n_signals);
  std::vector<HarmonicCoefficients> signals(ns);
  std::vector<ScatteringCoefficients> base(ns);
  std::vector<double> base_norm(ns);
  parallel_for(ns, [&](std::size_t s) {
    signals[s] = random_bandlimited(config.L, derive_seed(config.seed, 0, s));
    base[s] = scattering_network(signals[s], paths, bank, opts);
    base_norm[s] = scattering_norm(base[s]);
  });

  DiffeoProbeResult result;
  result.config = config;
  const std::size_t ne = config.epsilons.size();
  std::vector<double> dist(ne * ns, 0.0);
  parallel_for(ne * ns, [&](std::size_t task) {
    const std::size_t ei = task / ns;
    const std::size_t s = task % ns;
    DiffeoField field{config.epsilons[ei]};
    const HarmonicCoefficients deformed = apply_diffeo(signals[s], field, grid);
    const ScatteringCoefficients sd = scattering_network(deformed, paths, bank, opts);
    dist[task] = scattering_distance(base[s], sd) / base_norm[s];
  });

  for (std::size_t ei = 0; ei < ne; ++ei) {
    DiffeoField field{config.epsilons[ei]};
    result.epsilons.push_back(config.epsilons[ei]);
    result.norm_inf.push_back(field.norm_inf());
    std::vector<double> d(dist.begin() + ei * ns, dist.begin() + (ei + 1) * ns);
    result.median_distance.push_back(median_of(d));
  }
  return result;
}

void write_diffeo_csv(const DiffeoProbeResult& result, std::ostream& out) {
  csv_preamble(out, "diffeo-probe", result.config.describe());
  out << "# resampling: direct harmonic evaluation at displaced points;"
         " re-projection after deformation is approximate\n";
  out << "eps,norm_inf,median_scattering_distance_rel\n";
  for (std::size_t i = 0; i < result.epsilons.size(); ++i)
    out << format_double(result.epsilons[i]) << ',' << format_double(result.norm_inf[i])
        << ',' << format_double(result.median_distance[i]) << "\n";
}

// ---------------------------------------------------------------------------
// Gaussian random fields
// ---------------------------------------------------------------------------

HarmonicCoefficients gaussian_field(std::span<const double> spectrum, int L,
                                    std::uint64_t seed) {
  if (static_cast<int>(spectrum.size()) < L)
    throw InvalidSpectrumError("gaussian_field: spectrum shorter than bandlimit");
  return random_bandlimited(L, seed, spectrum.subspan(0, L));
}

}  // namespace sphscat
