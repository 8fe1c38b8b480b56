#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "sphscat/io.hpp"

using namespace sphscat;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SPHSCAT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 512> buf;
  while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("sphscat_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
};

}  // namespace

TEST_CASE("cli sht roundtrip on a random fixture") {
  TempDir tmp;
  const auto shc = (tmp.dir / "f.shc").string();
  CliResult r = run_cli("sht --make-random 32 --seed 11 --out " + shc);
  CHECK(r.exit_code == 0);

  r = run_cli("sht -i " + shc + " --roundtrip");
  CHECK(r.exit_code == 0);
  REQUIRE(r.output.find("roundtrip relative error = ") != std::string::npos);
  const double err = std::stod(r.output.substr(r.output.find("= ") + 2));
  CHECK(err <= 1e-9);
}

TEST_CASE("cli sht inverse of a pure mean component gives a constant signal") {
  TempDir tmp;
  HarmonicCoefficients f(8, true);
  f.at(0, 0) = 2.0 * std::sqrt(4.0 * M_PI);
  const auto shc = (tmp.dir / "c.shc").string();
  const auto ssig = (tmp.dir / "c.ssig").string();
  write_shc(shc, f);
  const CliResult r = run_cli("sht -i " + shc + " --out " + ssig);
  CHECK(r.exit_code == 0);
  const SphericalSignal s = read_ssig(ssig);
  for (const auto& v : s.samples) CHECK(std::abs(v - cdouble{2.0, 0.0}) < 1e-12);
}

TEST_CASE("cli rejects corrupt files with exit code 2") {
  TempDir tmp;
  const auto bad = (tmp.dir / "bad.shc").string();
  {
    std::ofstream out(bad, std::ios::binary);
    out << "SSHC\x01";  // truncated header
  }
  const CliResult r = run_cli("sht -i " + bad + " --roundtrip");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("format error") != std::string::npos);
}

TEST_CASE("cli unknown experiment name gives usage error") {
  const CliResult r = run_cli("experiment frobnicate");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("--help") != std::string::npos);
}

TEST_CASE("cli scatter channel counts and determinism") {
  TempDir tmp;
  const auto shc = (tmp.dir / "f.shc").string();
  run_cli("sht --make-random 64 --seed 3 --out " + shc);

  const auto scat0 = (tmp.dir / "d0.scat").string();
  CliResult r = run_cli("scatter -i " + shc + " --j0 2 -D 0 --out " + scat0);
  CHECK(r.exit_code == 0);
  CHECK(read_scat(scat0).entries.size() == 1);

  const auto scat2 = (tmp.dir / "d2.scat").string();
  r = run_cli("scatter -i " + shc + " --j0 2 -D 2 --policy descending --out " + scat2);
  CHECK(r.exit_code == 0);
  CHECK(read_scat(scat2).entries.size() == 21);

  const auto scat2b = (tmp.dir / "d2b.scat").string();
  run_cli("scatter -i " + shc + " --j0 2 -D 2 --policy descending --out " + scat2b);
  CHECK(slurp(scat2) == slurp(scat2b));  // byte-identical rerun
}

TEST_CASE("cli experiment emits ordered equivariance rows") {
  TempDir tmp;
  const auto csv = (tmp.dir / "eq.csv").string();
  const CliResult r = run_cli(
      "experiment equivariance --desk -L 32 --l0 8 -D 2 --signals 2 --rotations 2 "
      "--oversample 2 --out " + csv);
  CHECK(r.exit_code == 0);
  std::ifstream in(csv);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'd') continue;
    double depth, mn, med, mx;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &depth, &mn, &med, &mx) == 4);
    CHECK(mn <= med);
    CHECK(med <= mx);
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("cli power-mixing emits one before/after pair per scale") {
  TempDir tmp;
  const auto csv = (tmp.dir / "pm.csv").string();
  const CliResult r = run_cli(
      "experiment power-mixing -L 32 --j0 2 --signals 2 --out " + csv);
  CHECK(r.exit_code == 0);
  std::ifstream in(csv);
  std::string line;
  while (std::getline(in, line) && line[0] == '#') {
  }
  // header: l + 2 x (J - J0 + 1) columns; L=32 => J=5, scales {2..5}
  std::size_t commas = 0;
  for (char c : line) commas += c == ',';
  CHECK(commas == 8);
}

TEST_CASE("cli generates gaussian fields from a spectrum csv") {
  TempDir tmp;
  const auto csv = (tmp.dir / "s.csv").string();
  {
    std::ofstream out(csv);
    out << "l,C_l\n";
    for (int l = 0; l < 16; ++l) out << l << "," << (l < 8 ? 1.0 : 0.0) << "\n";
  }
  const auto shc = (tmp.dir / "g.shc").string();
  const CliResult r =
      run_cli("sht --make-random 16 --seed 2 --spectrum " + csv + " --out " + shc);
  CHECK(r.exit_code == 0);
  const HarmonicCoefficients f = read_shc(shc);
  for (int l = 8; l < 16; ++l)
    for (int m = -l; m <= l; ++m) CHECK(std::abs(f.at(l, m)) == 0.0);
}

TEST_CASE("cli config file supplies defaults and flags override") {
  TempDir tmp;
  const auto cfg = (tmp.dir / "run.cfg").string();
  {
    std::ofstream out(cfg);
    out << "make-random=16\nseed=5\n";
  }
  const auto a = (tmp.dir / "a.shc").string();
  CliResult r = run_cli("sht --config " + cfg + " --out " + a);
  CHECK(r.exit_code == 0);
  CHECK(read_shc(a).bandlimit == 16);

  // flag overrides the config value
  const auto b = (tmp.dir / "b.shc").string();
  r = run_cli("sht --config " + cfg + " --make-random 8 --out " + b);
  CHECK(r.exit_code == 0);
  CHECK(read_shc(b).bandlimit == 8);
}
