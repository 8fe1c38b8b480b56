// sphscat command line: spherical harmonic transforms, wavelet filter banks,
// scattering feature extraction, and the experiment harness.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <algorithm>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sphscat/harness.hpp"
#include "sphscat/io.hpp"
#include "sphscat/sht.hpp"
#include "sphscat/threading.hpp"
#include "sphscat/version.hpp"

namespace fs = std::filesystem;
using namespace sphscat;

namespace {

constexpr int kExitUsage = 2;

fs::path default_out_dir() {
  if (const char* env = std::getenv("SPHSCAT_OUT_DIR")) return fs::path(env);
  return fs::current_path();
}

std::string sniff_magic(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  return std::string(magic, magic + in.gcount());
}

GridScheme scheme_from_string(const std::string& s) {
  if (s == "mw" || s == "MW") return GridScheme::MW;
  if (s == "gl" || s == "GL") return GridScheme::GL;
  throw Error("unknown grid scheme: " + s);
}

struct WaveletParams {
  double alpha = 2.0;
  std::optional<int> j0;
  std::optional<int> l0;
  int nodes = 5000;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "dilation parameter (> 1)");
    auto* oj = cmd->add_option("--j0", j0, "minimum wavelet scale");
    auto* ol = cmd->add_option("--l0", l0, "scaling-coefficient bandlimit (sets J0)");
    oj->excludes(ol);
    ol->excludes(oj);
    cmd->add_option("--nodes", nodes, "kernel quadrature nodes");
  }

  KernelConfig resolve(int L) const {
    KernelConfig c;
    c.L = L;
    c.alpha = alpha;
    c.quadrature_nodes = nodes;
    c.J0 = l0 ? scale_from_l0(alpha, *l0) : j0.value_or(0);
    c.validate();
    return c;
  }
};

// Expands "--config FILE" into option tokens from a flat "key = value" file.
// Keys already given on the command line are skipped, so explicit flags
// override config entries.
std::vector<std::string> expand_config_args(std::vector<std::string> args) {
  std::string config_path;
  std::size_t insert_at = args.size();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      insert_at = i;
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + i);
      insert_at = i;
      break;
    }
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw FormatError("cannot open config file " + config_path);
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::vector<std::string> injected;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw FormatError("config file: expected key = value, got: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw FormatError("config file: empty key");
    const std::string flag = "--" + key;
    bool overridden = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) overridden = true;
    if (overridden) continue;
    if (value.find_first_of(" \t") == std::string::npos) {
      injected.push_back(flag + "=" + value);
    } else {
      injected.push_back(flag);
      std::istringstream parts(value);
      std::string chunk;
      while (parts >> chunk) injected.push_back(chunk);
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at), injected.begin(),
              injected.end());
  return args;
}

double relative_error(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// ---------------------------------------------------------------------------
// sht subcommand
// ---------------------------------------------------------------------------

struct ShtArgs {
  std::string input;
  std::string out;
  std::string scheme = "mw";
  std::string spectrum;
  bool roundtrip = false;
  int make_random = 0;
  std::uint64_t seed = 0;
  int bandlimit = 0;
};

int run_sht(const ShtArgs& a) {
  if (a.make_random > 0) {
    HarmonicCoefficients f;
    if (a.spectrum.empty()) {
      f = random_bandlimited(a.make_random, a.seed);
    } else {
      std::vector<double> cl = read_spectrum_csv(a.spectrum);
      if (static_cast<int>(cl.size()) < a.make_random)
        throw Error("sht: spectrum shorter than the requested bandlimit");
      f = gaussian_field(cl, a.make_random, a.seed);
    }
    const fs::path out = a.out.empty()
                             ? default_out_dir() / ("random_L" + std::to_string(a.make_random) + ".shc")
                             : fs::path(a.out);
    write_shc(out, f);
    std::cout << "wrote " << out.string() << "\n";
    return 0;
  }
  if (a.input.empty()) throw Error("sht: --input or --make-random required");
  const std::string magic = sniff_magic(a.input);
  if (magic == "SSHC") {
    const HarmonicCoefficients f = read_shc(a.input);
    const int L = a.bandlimit > 0 ? a.bandlimit : f.bandlimit;
    const SampleGrid grid = make_grid(L, scheme_from_string(a.scheme));
    const SphericalSignal s = inverse_sht(f, grid);
    if (a.roundtrip) {
      const HarmonicCoefficients back = forward_sht(s);
      const double err = relative_error(resize_bandlimit(back, f.bandlimit).values, f.values);
      std::cout << "roundtrip relative error = " << format_double(err) << "\n";
      return 0;
    }
    const fs::path out =
        a.out.empty() ? fs::path(a.input).replace_extension(".ssig") : fs::path(a.out);
    write_ssig(out, s);
    std::cout << "wrote " << out.string() << "\n";
    return 0;
  }
  if (magic == "SSIG") {
    const SphericalSignal s = read_ssig(a.input);
    const HarmonicCoefficients f = forward_sht(s);
    if (a.roundtrip) {
      const SphericalSignal back = inverse_sht(f, s.grid);
      const double err = relative_error(back.samples, s.samples);
      std::cout << "roundtrip relative error = " << format_double(err) << "\n";
      return 0;
    }
    const fs::path out =
        a.out.empty() ? fs::path(a.input).replace_extension(".shc") : fs::path(a.out);
    write_shc(out, f);
    std::cout << "wrote " << out.string() << "\n";
    return 0;
  }
  throw FormatError("sht: unrecognized input format (expected .shc or .ssig magic)");
}

// ---------------------------------------------------------------------------
// wavelet subcommand
// ---------------------------------------------------------------------------

struct WaveletArgs {
  WaveletParams params;
  int bandlimit = 0;
  std::string input;
  std::string bank_csv;
  bool roundtrip = false;
  bool multires = true;
};

int run_wavelet(const WaveletArgs& a) {
  int L = a.bandlimit;
  HarmonicCoefficients f;
  if (!a.input.empty()) {
    f = read_shc(a.input);
    L = f.bandlimit;
  }
  if (L < 1) throw Error("wavelet: need --bandlimit or --input");
  const FilterBank bank = build_filter_bank(a.params.resolve(L));
  std::cout << "filter bank: L=" << L << " alpha=" << format_double(bank.config.alpha)
            << " J0=" << bank.config.J0 << " J=" << bank.J << " L0=" << bank.L0
            << " admissibility_residual=" << format_double(check_admissibility(bank)) << "\n";
  if (!a.bank_csv.empty()) {
    std::ofstream out(a.bank_csv);
    if (!out) throw Error("wavelet: cannot open " + a.bank_csv);
    write_filter_bank_csv(bank, out);
    std::cout << "wrote " << a.bank_csv << "\n";
  }
  if (a.roundtrip) {
    if (a.input.empty()) throw Error("wavelet: --roundtrip needs --input");
    const HarmonicCoefficients back = synthesize(analyze(f, bank, a.multires), bank);
    std::cout << "reconstruction relative error = "
              << format_double(relative_error(back.values, f.values)) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// scatter subcommand
// ---------------------------------------------------------------------------

struct ScatterArgs {
  WaveletParams params;
  std::string input;
  std::string out;
  std::string summary;
  std::string policy = "descending";
  int depth = 2;
  bool multires = true;
  int oversample = 1;
};

int run_scatter(const ScatterArgs& a) {
  if (a.input.empty()) throw Error("scatter: --input required");
  HarmonicCoefficients f;
  const std::string magic = sniff_magic(a.input);
  if (magic == "SSHC")
    f = read_shc(a.input);
  else if (magic == "SSIG")
    f = forward_sht(read_ssig(a.input));
  else
    throw FormatError("scatter: unrecognized input format");

  const KernelConfig kc = a.params.resolve(f.bandlimit);
  const FilterBank& bank = cached_filter_bank(kc);
  const PathSet paths =
      enumerate_paths(kc.J0, bank.J, a.depth, path_policy_from_string(a.policy));
  const ScatterOptions opts{a.multires, a.oversample};
  const ScatteringCoefficients s = scattering_network(f, paths, bank, opts);

  std::ostringstream cfg;
  cfg << "scatter L=" << f.bandlimit << " alpha=" << format_double(kc.alpha)
      << " J0=" << kc.J0 << " D=" << a.depth << " policy=" << a.policy
      << " multires=" << (a.multires ? 1 : 0) << " oversample=" << a.oversample;
  const fs::path out = a.out.empty()
                           ? default_out_dir() / ("scatter_" + hash_hex(cfg.str()) + ".scat")
                           : fs::path(a.out);
  write_scat(out, s);

  const fs::path summary =
      a.summary.empty() ? fs::path(out).replace_extension(".csv") : fs::path(a.summary);
  std::ofstream csv(summary);
  if (!csv) throw Error("scatter: cannot open " + summary.string());
  csv << "# sphscat " << kVersion << " scatter\n# config: " << cfg.str() << "\n";
  csv << "path,depth,channel_energy\n";
  for (const auto& [p, ch] : s.entries) {
    std::string key;
    for (std::size_t i = 0; i < p.size(); ++i)
      key += (i ? "|" : "") + std::to_string(p[i]);
    csv << key << ',' << p.size() << ',' << format_double(norm_sq(ch)) << "\n";
  }
  std::cout << "wrote " << out.string() << " (" << s.entries.size() << " channels) and "
            << summary.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// experiment subcommand
// ---------------------------------------------------------------------------

struct ExperimentArgs {
  std::string name;
  bool full = false;
  std::string out;
  std::optional<int> bandlimit;
  std::optional<double> alpha;
  std::optional<int> j0;
  std::optional<int> l0;
  std::optional<int> depth;
  std::optional<std::string> policy;
  std::optional<bool> multires;
  std::optional<int> oversample;
  std::optional<int> signals;
  std::optional<int> rotations;
  std::optional<std::uint64_t> seed;
  std::optional<double> beta;
  std::vector<double> epsilons;
  std::vector<int> j0_list;
};

fs::path experiment_path(const ExperimentArgs& a, const std::string& describe) {
  if (!a.out.empty()) return a.out;
  return default_out_dir() / (a.name + "_" + hash_hex(describe) + ".csv");
}

template <typename Result, typename Writer>
int emit(const ExperimentArgs& a, const std::string& describe, const Result& result,
         Writer writer) {
  const fs::path path = experiment_path(a, describe);
  std::ofstream out(path);
  if (!out) throw Error("experiment: cannot open " + path.string());
  writer(result, out);
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int run_experiment(const ExperimentArgs& a) {
  if (a.name == "equivariance") {
    EquivarianceConfig c = a.full ? EquivarianceConfig::full() : EquivarianceConfig::desk();
    if (a.bandlimit) c.L = *a.bandlimit;
    if (a.alpha) c.alpha = *a.alpha;
    if (a.l0) c.L0 = *a.l0;
    if (a.j0) c.J0 = *a.j0;
    if (a.depth) c.depth = *a.depth;
    if (a.policy) c.policy = path_policy_from_string(*a.policy);
    if (a.multires) c.multires = *a.multires;
    if (a.oversample) c.oversample = *a.oversample;
    if (a.signals) c.n_signals = *a.signals;
    if (a.rotations) c.n_rotations = *a.rotations;
    if (a.seed) c.seed = *a.seed;
    return emit(a, c.describe(), equivariance_experiment(c),
                [](const auto& r, std::ostream& o) { write_equivariance_csv(r, o); });
  }
  if (a.name == "power-mixing") {
    PowerMixingConfig c = a.full ? PowerMixingConfig::full() : PowerMixingConfig::desk();
    if (a.bandlimit) c.L = *a.bandlimit;
    if (a.alpha) c.alpha = *a.alpha;
    if (a.j0) c.J0 = *a.j0;
    if (a.l0) c.J0 = scale_from_l0(c.alpha, *a.l0);
    if (a.oversample) c.oversample = *a.oversample;
    if (a.signals) c.n_signals = *a.signals;
    if (a.seed) c.seed = *a.seed;
    return emit(a, c.describe(), power_mixing_experiment(c),
                [](const auto& r, std::ostream& o) { write_power_mixing_csv(r, o); });
  }
  if (a.name == "invariance-sweep") {
    InvarianceSweepConfig c =
        a.full ? InvarianceSweepConfig::full() : InvarianceSweepConfig::desk();
    if (a.bandlimit) c.L = *a.bandlimit;
    if (a.alpha) c.alpha = *a.alpha;
    if (a.depth) c.depth = *a.depth;
    if (a.policy) c.policy = path_policy_from_string(*a.policy);
    if (a.multires) c.multires = *a.multires;
    if (a.oversample) c.oversample = *a.oversample;
    if (a.signals) c.n_signals = *a.signals;
    if (a.rotations) c.n_rotations = *a.rotations;
    if (a.seed) c.seed = *a.seed;
    if (a.beta) c.beta = *a.beta;
    if (!a.j0_list.empty()) c.J0_list = a.j0_list;
    return emit(a, c.describe(), invariance_sweep(c),
                [](const auto& r, std::ostream& o) { write_invariance_csv(r, o); });
  }
  if (a.name == "diffeo-probe") {
    DiffeoProbeConfig c = a.full ? DiffeoProbeConfig::full() : DiffeoProbeConfig::desk();
    if (a.bandlimit) c.L = *a.bandlimit;
    if (a.alpha) c.alpha = *a.alpha;
    if (a.j0) c.J0 = *a.j0;
    if (a.l0) c.J0 = scale_from_l0(c.alpha, *a.l0);
    if (a.depth) c.depth = *a.depth;
    if (a.policy) c.policy = path_policy_from_string(*a.policy);
    if (a.multires) c.multires = *a.multires;
    if (a.oversample) c.oversample = *a.oversample;
    if (a.signals) c.n_signals = *a.signals;
    if (a.seed) c.seed = *a.seed;
    if (!a.epsilons.empty()) c.epsilons = a.epsilons;
    return emit(a, c.describe(), diffeo_stability_probe(c),
                [](const auto& r, std::ostream& o) { write_diffeo_csv(r, o); });
  }
  throw Error("unknown experiment: " + a.name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sphscat: spherical harmonic scattering transforms"};
  app.set_version_flag("--version", std::string("sphscat ") + kVersion);
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (0 = hardware)");

  std::string config_doc;  // handled by expand_config_args before parsing
  ShtArgs sht_args;
  CLI::App* sht_cmd = app.add_subcommand("sht", "forward/inverse spherical harmonic transform");
  sht_cmd->add_option("--config", config_doc, "flat key = value config file");
  sht_cmd->add_option("--input,-i", sht_args.input, "input .shc or .ssig file");
  sht_cmd->add_option("--out,-o", sht_args.out, "output path");
  sht_cmd->add_option("--scheme", sht_args.scheme, "sampling scheme: mw or gl")
      ->check(CLI::IsMember({"mw", "gl", "MW", "GL"}));
  sht_cmd->add_flag("--roundtrip", sht_args.roundtrip, "print the roundtrip relative error");
  sht_cmd->add_option("--make-random", sht_args.make_random,
                      "write random band-limited coefficients at this bandlimit");
  sht_cmd->add_option("--seed", sht_args.seed, "random seed");
  sht_cmd->add_option("--spectrum", sht_args.spectrum,
                      "two-column CSV (l,C_l) target power spectrum for --make-random");
  sht_cmd->add_option("--bandlimit,-L", sht_args.bandlimit, "grid bandlimit override");

  WaveletArgs wavelet_args;
  CLI::App* wavelet_cmd = app.add_subcommand("wavelet", "scale-discretized wavelet filter banks");
  wavelet_cmd->add_option("--config", config_doc, "flat key = value config file");
  wavelet_cmd->add_option("--bandlimit,-L", wavelet_args.bandlimit, "signal bandlimit");
  wavelet_cmd->add_option("--input,-i", wavelet_args.input, "input .shc file");
  wavelet_cmd->add_option("--bank-csv", wavelet_args.bank_csv, "export the kernel tiling CSV");
  wavelet_cmd->add_flag("--roundtrip", wavelet_args.roundtrip,
                        "analyze + synthesize the input and print the error");
  wavelet_cmd->add_flag("--multires,!--no-multires", wavelet_args.multires,
                        "multi-resolution wavelet storage");
  wavelet_args.params.add_options(wavelet_cmd);

  ScatterArgs scatter_args;
  CLI::App* scatter_cmd = app.add_subcommand("scatter", "scattering network feature extraction");
  scatter_cmd->add_option("--config", config_doc, "flat key = value config file");
  scatter_cmd->add_option("--input,-i", scatter_args.input, "input .shc or .ssig file")
      ->required();
  scatter_cmd->add_option("--out,-o", scatter_args.out, "output .scat path");
  scatter_cmd->add_option("--summary", scatter_args.summary, "channel summary CSV path");
  scatter_cmd->add_option("--depth,-D", scatter_args.depth, "maximum path depth");
  scatter_cmd->add_option("--policy", scatter_args.policy, "path policy")
      ->check(CLI::IsMember({"general", "descending", "adjacent-descending"}));
  scatter_cmd->add_flag("--multires,!--no-multires", scatter_args.multires,
                        "multi-resolution propagation");
  scatter_cmd->add_option("--oversample", scatter_args.oversample,
                          "modulus grid oversampling factor");
  scatter_args.params.add_options(scatter_cmd);

  ExperimentArgs exp_args;
  CLI::App* exp_cmd = app.add_subcommand("experiment", "reproducible experiment harness");
  exp_cmd->add_option("--config", config_doc, "flat key = value config file");
  exp_cmd->add_option("name", exp_args.name, "experiment name")
      ->required()
      ->check(CLI::IsMember({"equivariance", "power-mixing", "invariance-sweep", "diffeo-probe"}));
  auto* desk = exp_cmd->add_flag("--desk", "desk-scale preset (default)");
  exp_cmd->add_flag("--full", exp_args.full, "paper-scale preset")->excludes(desk);
  exp_cmd->add_option("--out,-o", exp_args.out, "output CSV path");
  exp_cmd->add_option("--bandlimit,-L", exp_args.bandlimit, "signal bandlimit");
  exp_cmd->add_option("--alpha", exp_args.alpha, "dilation parameter");
  auto* oj = exp_cmd->add_option("--j0", exp_args.j0, "minimum wavelet scale");
  auto* ol = exp_cmd->add_option("--l0", exp_args.l0, "scaling bandlimit (sets J0)");
  oj->excludes(ol);
  ol->excludes(oj);
  exp_cmd->add_option("--depth,-D", exp_args.depth, "maximum path depth");
  exp_cmd->add_option("--policy", exp_args.policy, "path policy")
      ->check(CLI::IsMember({"general", "descending", "adjacent-descending"}));
  exp_cmd->add_option("--multires", exp_args.multires, "multi-resolution propagation (0/1)");
  exp_cmd->add_option("--oversample", exp_args.oversample, "modulus grid oversampling factor");
  exp_cmd->add_option("--signals", exp_args.signals, "number of test signals");
  exp_cmd->add_option("--rotations", exp_args.rotations, "number of rotations");
  exp_cmd->add_option("--seed", exp_args.seed, "base random seed");
  exp_cmd->add_option("--beta", exp_args.beta, "fixed rotation magnitude (invariance sweep)");
  exp_cmd->add_option("--eps", exp_args.epsilons, "diffeomorphism amplitudes");
  exp_cmd->add_option("--j0-list", exp_args.j0_list, "J0 sweep values (invariance sweep)");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config_args(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitUsage;
  }

  set_max_threads(threads);
  try {
    if (*sht_cmd) return run_sht(sht_args);
    if (*wavelet_cmd) return run_wavelet(wavelet_args);
    if (*scatter_cmd) return run_scatter(scatter_args);
    if (*exp_cmd) return run_experiment(exp_args);
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
