#pragma once

#include <span>
#include <vector>

#include "sphscat/types.hpp"

namespace sphscat {

// -----------------------------------------------------------------------------
// Exact spherical harmonic transforms on sampling-theorem grids.
//
// MW scheme: theta_t = pi (2t+1) / (2L-1), t in [0, L); phi_p = 2 pi p / (2L-1).
// GL scheme: theta from Gauss-Legendre nodes (L rings), same phi grid.
// Both give exact forward/inverse pairs for band-limited signals; cost O(L^3).
// -----------------------------------------------------------------------------

SampleGrid make_grid(int L, GridScheme scheme);

// Evaluates the band-limited sum at the grid points. Requires
// grid.bandlimit >= coeffs.bandlimit (coefficients are zero-padded up).
SphericalSignal inverse_sht(const HarmonicCoefficients& coeffs, const SampleGrid& grid);

// Exact inverse of inverse_sht for band-limited inputs; returns coefficients
// at the grid bandlimit.
HarmonicCoefficients forward_sht(const SphericalSignal& signal);

// Active zyz rotation in harmonic space:
//   (R_rho f)_lm = sum_m' D^l_{m m'}(rho) f_lm',
//   D^l_{m m'}(alpha, beta, gamma) = e^{-i m alpha} d^l_{m m'}(beta) e^{-i m' gamma}.
HarmonicCoefficients rotate(const HarmonicCoefficients& coeffs, const EulerAngles& rho);

// C_l = 1/(2l+1) sum_m |f_lm|^2.
std::vector<double> power_spectrum(const HarmonicCoefficients& coeffs);

// Gaussian random coefficients of a real-valued signal. spectrum, if nonempty,
// must have length L with entries >= 0 and gives E|f_lm|^2 per degree
// (default 1): m=0 real N(0, C_l); m>0 complex with each part N(0, C_l/2);
// m<0 fixed by the reality constraint.
HarmonicCoefficients random_bandlimited(int L, std::uint64_t seed,
                                        std::span<const double> spectrum = {});

// Haar-uniform rotation: alpha, gamma ~ U[0, 2pi), cos(beta) ~ U[-1, 1].
EulerAngles sample_uniform_rotation(std::uint64_t seed);

// Exact ||f||_2^2 from grid samples of a band-limited signal (independent of
// the harmonic-transform path: per-m Fourier route on MW, weighted sums on GL).
double quadrature_norm_sq(const SphericalSignal& signal);

// Per-ring weights q_t with  integral f dOmega  ~=  (2pi / n_phi) sum_t q_t sum_p f_tp.
// Exact on GL for theta-polynomials up to degree 2L-1; on MW exact for signals
// whose phi-averaged profile is a theta-polynomial of degree < L.
std::vector<double> theta_quadrature_weights(const SampleGrid& grid);

}  // namespace sphscat
