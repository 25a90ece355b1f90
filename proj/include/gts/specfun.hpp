#pragma once

#include <complex>

namespace gts {

using Complex = std::complex<double>;

namespace specfun {

// Gamma on the real line. Negative non-integer arguments go through the
// reflection formula. Throws PoleError at 0, -1, -2, ... and OverflowError
// when the result is not representable.
double gamma_real(double x);

// Digamma psi(x) and trigamma psi_1(x); PoleError at non-positive integers.
double digamma(double x);
double trigamma(double x);

// Principal-branch power exp(beta * Log z). Requires re(z) > 0, so the
// branch cut is never approached; DomainError otherwise.
Complex complex_pow(Complex z, double beta);

// sin(pi x) with exact argument reduction, so it vanishes at integers.
double sin_pi(double x);

}  // namespace specfun
}  // namespace gts
