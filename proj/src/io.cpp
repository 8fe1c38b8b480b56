#include "sphscat/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "sphscat/sht.hpp"

namespace sphscat {

namespace {

// explicit little-endian packing, independent of host order
void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u8(std::string& buf, std::uint8_t v) { buf.push_back(static_cast<char>(v)); }

void put_f64(std::string& buf, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class Reader {
 public:
  Reader(const std::filesystem::path& path, const char* what) : what_(what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(std::string(what) + ": cannot open " + path.string());
    data_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }

  void expect_magic(const char* magic) {
    if (data_.size() < 4 || std::memcmp(data_.data(), magic, 4) != 0)
      throw FormatError(std::string(what_) + ": bad magic");
    pos_ = 4;
  }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }

  double f64() {
    need(8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += 8;
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }

  void expect_end() {
    if (pos_ != data_.size())
      throw FormatError(std::string(what_) + ": trailing bytes");
  }

 private:
  void need(std::size_t n) {
    if (pos_ + n > data_.size())
      throw FormatError(std::string(what_) + ": truncated file");
  }

  const char* what_;
  std::string data_;
  std::size_t pos_ = 0;
};

void write_file(const std::filesystem::path& path, const std::string& buf, const char* what) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(std::string(what) + ": cannot open " + path.string());
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw FormatError(std::string(what) + ": write failed");
}

}  // namespace

void write_shc(const std::filesystem::path& path, const HarmonicCoefficients& f) {
  std::string buf;
  buf.reserve(13 + 16 * f.values.size());
  buf.append("SSHC");
  put_u32(buf, 1);
  put_u32(buf, static_cast<std::uint32_t>(f.bandlimit));
  put_u8(buf, f.real_signal ? 1 : 0);
  for (const cdouble& v : f.values) {
    put_f64(buf, v.real());
    put_f64(buf, v.imag());
  }
  write_file(path, buf, "shc");
}

HarmonicCoefficients read_shc(const std::filesystem::path& path) {
  Reader r(path, "shc");
  r.expect_magic("SSHC");
  const std::uint32_t version = r.u32();
  if (version != 1) throw FormatError("shc: unsupported version");
  const std::uint32_t L = r.u32();
  if (L < 1 || L > (1u << 20)) throw FormatError("shc: bad bandlimit");
  const std::uint8_t reality = r.u8();
  if (reality > 1) throw FormatError("shc: bad reality flag");
  HarmonicCoefficients f(static_cast<int>(L), reality == 1);
  for (cdouble& v : f.values) {
    const double re = r.f64();
    const double im = r.f64();
    v = {re, im};
  }
  r.expect_end();
  return f;
}

void write_ssig(const std::filesystem::path& path, const SphericalSignal& s) {
  std::string buf;
  const bool complex_samples = !s.real_valued;
  buf.reserve(14 + (complex_samples ? 16 : 8) * s.samples.size());
  buf.append("SSIG");
  put_u32(buf, 1);
  put_u32(buf, static_cast<std::uint32_t>(s.grid.bandlimit));
  put_u8(buf, static_cast<std::uint8_t>(s.grid.scheme));
  put_u8(buf, complex_samples ? 1 : 0);
  for (const cdouble& v : s.samples) {
    put_f64(buf, v.real());
    if (complex_samples) put_f64(buf, v.imag());
  }
  write_file(path, buf, "ssig");
}

SphericalSignal read_ssig(const std::filesystem::path& path) {
  Reader r(path, "ssig");
  r.expect_magic("SSIG");
  const std::uint32_t version = r.u32();
  if (version != 1) throw FormatError("ssig: unsupported version");
  const std::uint32_t L = r.u32();
  if (L < 1 || L > (1u << 20)) throw FormatError("ssig: bad bandlimit");
  const std::uint8_t scheme = r.u8();
  if (scheme > 1) throw FormatError("ssig: bad scheme byte");
  const std::uint8_t complex_samples = r.u8();
  if (complex_samples > 1) throw FormatError("ssig: bad complex flag");
  SphericalSignal s;
  s.grid = make_grid(static_cast<int>(L),
                     scheme == 0 ? GridScheme::MW : GridScheme::GL);
  s.real_valued = complex_samples == 0;
  s.samples.resize(s.grid.n_samples());
  for (cdouble& v : s.samples) {
    const double re = r.f64();
    const double im = complex_samples ? r.f64() : 0.0;
    v = {re, im};
  }
  r.expect_end();
  return s;
}

void write_scat(const std::filesystem::path& path, const ScatteringCoefficients& s) {
  std::string buf;
  buf.append("SSCT");
  put_u32(buf, 1);
  put_u32(buf, static_cast<std::uint32_t>(s.provenance.L));
  put_f64(buf, s.provenance.alpha);
  put_u32(buf, static_cast<std::uint32_t>(s.provenance.J0));
  put_u32(buf, static_cast<std::uint32_t>(s.provenance.D));
  put_u8(buf, static_cast<std::uint8_t>(s.provenance.policy));
  put_u8(buf, s.provenance.multires ? 1 : 0);
  put_u32(buf, static_cast<std::uint32_t>(s.provenance.L0));
  put_u32(buf, static_cast<std::uint32_t>(s.entries.size()));
  for (const auto& [p, c] : s.entries) {
    put_u32(buf, static_cast<std::uint32_t>(p.size()));
    for (int j : p) put_u32(buf, static_cast<std::uint32_t>(j));
    for (const cdouble& v : c.values) {
      put_f64(buf, v.real());
      put_f64(buf, v.imag());
    }
  }
  write_file(path, buf, "scat");
}

ScatteringCoefficients read_scat(const std::filesystem::path& path) {
  Reader r(path, "scat");
  r.expect_magic("SSCT");
  const std::uint32_t version = r.u32();
  if (version != 1) throw FormatError("scat: unsupported version");
  ScatteringCoefficients s;
  s.provenance.L = static_cast<int>(r.u32());
  s.provenance.alpha = r.f64();
  s.provenance.J0 = static_cast<int>(r.u32());
  s.provenance.D = static_cast<int>(r.u32());
  const std::uint8_t policy = r.u8();
  if (policy > 2) throw FormatError("scat: bad policy byte");
  s.provenance.policy = static_cast<PathPolicy>(policy);
  s.provenance.multires = r.u8() != 0;
  s.provenance.L0 = static_cast<int>(r.u32());
  if (s.provenance.L0 < 1 || s.provenance.L0 > s.provenance.L)
    throw FormatError("scat: bad L0");
  const std::uint32_t n_paths = r.u32();
  s.entries.reserve(n_paths);
  for (std::uint32_t i = 0; i < n_paths; ++i) {
    const std::uint32_t depth = r.u32();
    if (depth > 64) throw FormatError("scat: implausible path depth");
    Path p(depth);
    for (std::uint32_t d = 0; d < depth; ++d) p[d] = static_cast<int>(r.u32());
    HarmonicCoefficients c(s.provenance.L0, false);
    for (cdouble& v : c.values) {
      const double re = r.f64();
      const double im = r.f64();
      v = {re, im};
    }
    s.entries.emplace_back(std::move(p), std::move(c));
  }
  r.expect_end();
  return s;
}

std::vector<double> read_spectrum_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("spectrum: cannot open " + path.string());
  std::vector<double> spectrum;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    long l;
    double cl;
    if (std::sscanf(line.c_str(), "%ld,%lf", &l, &cl) != 2) {
      if (spectrum.empty()) continue;  // header row
      throw FormatError("spectrum: expected 'l,C_l' rows, got: " + line);
    }
    if (l < 0 || l > (1 << 20)) throw FormatError("spectrum: bad degree " + std::to_string(l));
    if (static_cast<std::size_t>(l) >= spectrum.size())
      spectrum.resize(static_cast<std::size_t>(l) + 1, 0.0);
    spectrum[static_cast<std::size_t>(l)] = cl;
  }
  if (spectrum.empty()) throw FormatError("spectrum: no rows in " + path.string());
  return spectrum;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::string_view s) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace sphscat
