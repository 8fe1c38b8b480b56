#pragma once

#include <vector>

#include "sphscat/types.hpp"

namespace sphscat {

// Normalized associated Legendre functions lambda_{lm}(x) = Y_{lm}(theta, 0)
// with x = cos(theta), Condon-Shortley phase included, so that
// Y_{lm}(theta, phi) = lambda_{lm}(cos theta) e^{i m phi} is orthonormal over
// the sphere. For m < 0: lambda_{l,-m} = (-1)^m lambda_{lm}.
//
// Writes lambda_{lm}(x) for l in [m, L) into out[0 .. L-m). Internally rescaled
// so the sin^m(theta) prefactor neither under- nor overflows for large m.
void legendre_column(int L, int m, double x, double* out);

// Gauss-Legendre nodes (ascending) and weights on [-1, 1], exact for
// polynomials of degree <= 2n - 1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace sphscat
