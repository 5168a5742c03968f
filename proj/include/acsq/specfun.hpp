#pragma once

#include <complex>

// Self-contained special functions: Gamma, modified Bessel K of real order,
// generalized Laguerre polynomials, terminating Gauss hypergeometric sums.
// Everything here is pure and thread-safe.

namespace acsq {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double euler_gamma = 0.5772156649015328606065120900824024;

// Gamma function for x > 0.  Returns +inf past the double overflow point
// (x ~ 171.62); use log_gamma there.  Throws std::domain_error for x <= 0.
double gamma(double x);

// log Gamma(x) for x > 0; stable up to at least x = 1e6.
double log_gamma(double x);

// Modified Bessel function of the second kind K_r(z), z > 0, any real
// order (K is even in r).  Series for z <= 2, continued fraction beyond,
// upward recurrence in the order.  Throws std::domain_error for z <= 0.
double bessel_k(double r, double z);

// Generalized Laguerre polynomial L_n^{(alpha)}(x) by upward recurrence.
double laguerre(int n, double alpha, double x);

// Terminating hypergeometric sum 2F1(-n, b; c; z) =
// sum_{k=0}^{n} (-n)_k (b)_k / ((c)_k k!) z^k.  Throws std::domain_error
// when a denominator Pochhammer factor (c)_k vanishes before termination.
std::complex<double> hyp2f1_poly(int n, std::complex<double> b, double c,
                                 std::complex<double> z);

}  // namespace acsq
