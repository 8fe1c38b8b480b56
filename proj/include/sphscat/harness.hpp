#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sphscat/scattering.hpp"
#include "sphscat/types.hpp"

namespace sphscat {

// -----------------------------------------------------------------------------
// Experiment harness. Every experiment is a pure function of its config; CSV
// emission is deterministic (byte-identical across runs and thread counts).
// -----------------------------------------------------------------------------

// ---- equivariance -----------------------------------------------------------

struct EquivarianceConfig {
  int L = 128;
  double alpha = 2.0;
  int L0 = 32;  // J0 derived unless set explicitly
  std::optional<int> J0;
  int depth = 3;
  PathPolicy policy = PathPolicy::descending;
  bool multires = true;
  int oversample = 3;
  int n_signals = 10;
  int n_rotations = 10;
  std::uint64_t seed = 1400;

  int resolved_j0() const;
  std::string describe() const;
  static EquivarianceConfig desk();
  static EquivarianceConfig full();  // paper scale: (256, 2, 32), 100 x 100
};

struct EquivarianceRow {
  int depth = 0;
  double err_min = 0.0;
  double err_median = 0.0;
  double err_max = 0.0;
  double energy_median = 0.0;  // sum_{p: depth d} ||S[p]f||^2 / ||f||^2, median over signals
  std::size_t n_samples = 0;
};

struct EquivarianceReport {
  EquivarianceConfig config;
  int J0 = 0;
  int J = 0;
  int L0 = 0;  // channel bandlimit
  std::vector<EquivarianceRow> rows;        // depth 0..D
  std::size_t skipped_zero_channels = 0;    // excluded from relative errors
};

EquivarianceReport equivariance_experiment(const EquivarianceConfig& config);
void write_equivariance_csv(const EquivarianceReport& report, std::ostream& out);

// ---- power mixing -----------------------------------------------------------

struct PowerMixingConfig {
  int L = 128;
  double alpha = 2.0;
  int J0 = 2;
  int oversample = 1;
  int n_signals = 100;
  std::uint64_t seed = 2700;

  std::string describe() const;
  static PowerMixingConfig desk();  // 20 signals
  static PowerMixingConfig full();
};

struct PowerMixingResult {
  PowerMixingConfig config;
  int J = 0;
  std::vector<int> scales;
  // mean C_l over signals, indexed [scale][l], l < L
  std::vector<std::vector<double>> before;  // of w_j
  std::vector<std::vector<double>> after;   // of |w_j|
};

PowerMixingResult power_mixing_experiment(const PowerMixingConfig& config);
void write_power_mixing_csv(const PowerMixingResult& result, std::ostream& out);

// sum_l l (2l+1) C_l / sum_l (2l+1) C_l
double spectral_centroid(const std::vector<double>& cl);

// ---- invariance vs scale ----------------------------------------------------

struct InvarianceSweepConfig {
  int L = 64;
  double alpha = 2.0;
  std::vector<int> J0_list = {0, 1, 2, 3, 4};
  int depth = 2;
  PathPolicy policy = PathPolicy::descending;
  bool multires = true;
  int oversample = 3;
  int n_signals = 5;
  int n_rotations = 5;
  double beta = 1.0;  // fixed rotation magnitude; alpha, gamma uniform
  std::uint64_t seed = 3100;

  std::string describe() const;
  static InvarianceSweepConfig desk();
  static InvarianceSweepConfig full();
};

struct InvarianceSweepResult {
  InvarianceSweepConfig config;
  std::vector<int> J0_values;
  std::vector<double> median_error;  // scattering_distance(Sf, SRf) / ||Sf||
};

InvarianceSweepResult invariance_sweep(const InvarianceSweepConfig& config);
void write_invariance_csv(const InvarianceSweepResult& result, std::ostream& out);

// ---- diffeomorphism stability ----------------------------------------------

// Smooth displacement field: theta' = theta + eps a_theta sin(2 theta),
// phi' = phi + eps a_phi sin(theta). Bijective iff 2 eps a_theta < 1.
struct DiffeoField {
  double eps = 0.0;
  double a_theta = 0.5;
  double a_phi = 1.0;

  void displace(double theta, double phi, double& theta_out, double& phi_out) const;
  bool injective() const;
  double norm_inf() const;  // sup geodesic displacement (numeric, fine grid)
};

// Evaluates the band-limited f at displaced grid points and re-projects.
// Exact evaluation, inexact re-projection (the deformed signal is not
// band-limited).
HarmonicCoefficients apply_diffeo(const HarmonicCoefficients& f, const DiffeoField& field,
                                  const SampleGrid& grid);

struct DiffeoProbeConfig {
  int L = 64;
  double alpha = 2.0;
  int J0 = 2;
  int depth = 2;
  PathPolicy policy = PathPolicy::descending;
  bool multires = true;
  int oversample = 3;
  std::vector<double> epsilons = {0.0, 0.002, 0.005, 0.01, 0.02};
  int n_signals = 3;
  std::uint64_t seed = 4900;

  std::string describe() const;
  static DiffeoProbeConfig desk();
  static DiffeoProbeConfig full();
};

struct DiffeoProbeResult {
  DiffeoProbeConfig config;
  std::vector<double> epsilons;
  std::vector<double> norm_inf;         // realized sup displacement per eps
  std::vector<double> median_distance;  // scattering_distance(Sf, S V f) / ||Sf||
};

DiffeoProbeResult diffeo_stability_probe(const DiffeoProbeConfig& config);
void write_diffeo_csv(const DiffeoProbeResult& result, std::ostream& out);

// ---- Gaussian random fields -------------------------------------------------

// Gaussian realization with the target per-degree spectrum (length >= L;
// truncated to L).
HarmonicCoefficients gaussian_field(std::span<const double> spectrum, int L,
                                    std::uint64_t seed);

}  // namespace sphscat
