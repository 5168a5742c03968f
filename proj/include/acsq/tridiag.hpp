#pragma once

#include <vector>

namespace acsq {

// Symmetric tridiagonal matrix: diagonal d (size n), off-diagonal e
// (size n-1, e[i] couples rows i and i+1).
struct Tridiag {
  std::vector<double> d;
  std::vector<double> e;
};

// The k smallest eigenvalues in ascending order, located by Sturm-sequence
// bisection.  Deterministic and free of external dependencies.
std::vector<double> tridiag_lowest(const Tridiag& t, int k);

// Unit-norm eigenvector for an isolated eigenvalue, by inverse iteration with
// a pivoted tridiagonal solve.  The first entry above a tenth of the peak
// magnitude is made positive so signs are reproducible.
std::vector<double> tridiag_eigenvector(const Tridiag& t, double lambda);

}  // namespace acsq
