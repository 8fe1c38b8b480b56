#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sphscat/scattering.hpp"
#include "sphscat/types.hpp"

namespace sphscat {

// -----------------------------------------------------------------------------
// Binary file formats (little-endian).
//
// .shc : "SSHC" | u32 version=1 | u32 L | u8 reality | L^2 x (f64 re, f64 im)
// .ssig: "SSIG" | u32 version=1 | u32 L | u8 scheme (0 MW, 1 GL) | u8 complex
//        | samples theta-major (f64, or f64 pairs when complex)
// .scat: "SSCT" | u32 version=1 | u32 L | f64 alpha | u32 J0 | u32 D
//        | u8 policy | u8 multires | u32 L0 | u32 n_paths
//        | per path: u32 depth, u32 scales..., L0^2 x (f64 re, f64 im)
// -----------------------------------------------------------------------------

void write_shc(const std::filesystem::path& path, const HarmonicCoefficients& f);
HarmonicCoefficients read_shc(const std::filesystem::path& path);

void write_ssig(const std::filesystem::path& path, const SphericalSignal& s);
SphericalSignal read_ssig(const std::filesystem::path& path);

void write_scat(const std::filesystem::path& path, const ScatteringCoefficients& s);
ScatteringCoefficients read_scat(const std::filesystem::path& path);

// Two-column CSV (l, C_l); '#' comments and a header row are skipped. Returns
// the spectrum indexed by degree.
std::vector<double> read_spectrum_csv(const std::filesystem::path& path);

// FNV-1a; used to derive experiment output file names from their configs.
std::uint64_t fnv1a64(std::string_view s);
std::string hash_hex(std::string_view s);

// Doubles formatted with %.17g so CSV output is byte-stable across runs.
std::string format_double(double v);

}  // namespace sphscat
