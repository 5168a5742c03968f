#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

// Adaptive integration on the half-line, including Fourier-type oscillatory
// integrals.  Gauss-Kronrod 7-15 panels with worst-first refinement; the tail
// [split, inf) is folded to a finite interval via x -> split/u.

namespace acsq {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 4000;
  double domain_split = 1.0;  // interior/tail split point
};

struct QuadResult {
  double value;
  double err_est;
};

// Thrown when the subdivision budget is exhausted before the tolerance is
// met; carries the partial value and the internal error estimate.
class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, double partial, double err)
      : std::runtime_error(what), partial_value(partial), err_est(err) {}
  double partial_value;
  double err_est;
};

// integral of f over (0, inf); f is never evaluated at 0.
QuadResult integrate_halfline(const std::function<double(double)>& f,
                              const QuadratureSpec& spec = {});

// integral of e^{i omega x} g(x) over (0, inf), oscillation-aware.
std::complex<double> fourier_halfline(const std::function<double(double)>& g,
                                      double omega,
                                      const QuadratureSpec& spec = {});

// adaptive integral over a finite interval (building block, exposed because
// iterated 2-D integrals in tests want it directly).
QuadResult integrate_interval(const std::function<double(double)>& f, double a,
                              double b, const QuadratureSpec& spec = {});

}  // namespace acsq
