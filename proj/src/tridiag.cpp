#include "acsq/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace acsq {

namespace {

// Number of eigenvalues strictly below x, from the signs of the LDL^T pivots.
int sturm_count(const Tridiag& t, double x, double pivmin) {
  int n = static_cast<int>(t.d.size());
  int count = 0;
  double prev = 1.0;
  for (int i = 0; i < n; ++i) {
    double coupling = (i > 0) ? t.e[i - 1] * t.e[i - 1] / prev : 0.0;
    double piv = t.d[i] - x - coupling;
    if (std::abs(piv) < pivmin) piv = (piv < 0.0) ? -pivmin : pivmin;
    if (piv < 0.0) ++count;
    prev = piv;
  }
  return count;
}

}  // namespace

std::vector<double> tridiag_lowest(const Tridiag& t, int k) {
  int n = static_cast<int>(t.d.size());
  if (n == 0 || k <= 0) return {};
  if (static_cast<int>(t.e.size()) != n - 1)
    throw std::invalid_argument("tridiag_lowest: off-diagonal size mismatch");
  k = std::min(k, n);

  double lo = t.d[0], hi = t.d[0], emax = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.e[i - 1]);
    if (i + 1 < n) r += std::abs(t.e[i]);
    lo = std::min(lo, t.d[i] - r);
    hi = std::max(hi, t.d[i] + r);
    if (i + 1 < n) emax = std::max(emax, std::abs(t.e[i]));
  }
  double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
  double pivmin = 1e-290 * std::max(emax * emax, 1.0);

  std::vector<double> out(k);
  for (int idx = 0; idx < k; ++idx) {
    double a = lo, b = hi;
    // invariant: count(a) <= idx < count(b)
    for (int it = 0; it < 200 && b - a > 1e-15 * scale; ++it) {
      double mid = 0.5 * (a + b);
      if (sturm_count(t, mid, pivmin) <= idx)
        a = mid;
      else
        b = mid;
    }
    out[idx] = 0.5 * (a + b);
  }
  return out;
}

std::vector<double> tridiag_eigenvector(const Tridiag& t, double lambda) {
  int n = static_cast<int>(t.d.size());
  if (n == 0) return {};

  // deterministic start vector
  std::mt19937 gen(12345u);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> y(n);
  for (double& v : y) v = uni(gen);

  std::vector<double> du2(n), rhs(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(t.d[i]));
  for (int i = 0; i + 1 < n; ++i) scale = std::max(scale, std::abs(t.e[i]));
  double eps_shift = 1e-14 * std::max(scale, 1.0);

  for (int iter = 0; iter < 4; ++iter) {
    // factor (T - lambda I) with partial pivoting; dl = pivot, du = first
    // superdiagonal, du2 = fill-in second superdiagonal
    std::vector<double> a(n), b(n, 0.0), c(n, 0.0);  // diag, sup, sub
    for (int i = 0; i < n; ++i) a[i] = t.d[i] - lambda;
    for (int i = 0; i + 1 < n; ++i) {
      b[i] = t.e[i];
      c[i + 1] = t.e[i];
    }
    for (int i = 0; i < n; ++i) {
      rhs[i] = y[i];
      du2[i] = 0.0;
    }
    for (int i = 0; i < n - 1; ++i) {
      if (std::abs(c[i + 1]) > std::abs(a[i])) {
        // swap row i and i+1
        std::swap(a[i], c[i + 1]);          // pivot column
        double tmp = b[i];                  // column i+1
        b[i] = a[i + 1];
        a[i + 1] = tmp;
        du2[i] = b[i + 1];                  // fill-in from column i+2
        b[i + 1] = 0.0;
        std::swap(rhs[i], rhs[i + 1]);
      }
      if (std::abs(a[i]) < eps_shift) a[i] = eps_shift;
      double m = c[i + 1] / a[i];
      a[i + 1] -= m * b[i];
      b[i + 1] -= m * du2[i];
      rhs[i + 1] -= m * rhs[i];
    }
    if (std::abs(a[n - 1]) < eps_shift) a[n - 1] = eps_shift;
    // back substitution with the two superdiagonals
    for (int i = n - 1; i >= 0; --i) {
      double v = rhs[i];
      if (i + 1 < n) v -= b[i] * y[i + 1];
      if (i + 2 < n) v -= du2[i] * y[i + 2];
      y[i] = v / a[i];
    }
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw std::runtime_error("tridiag_eigenvector: iteration broke down");
    for (double& v : y) v /= norm;
  }

  double peak = 0.0;
  for (double v : y) peak = std::max(peak, std::abs(v));
  for (double v : y) {
    if (std::abs(v) > 0.1 * peak) {
      if (v < 0.0)
        for (double& w : y) w = -w;
      break;
    }
  }
  return y;
}

}  // namespace acsq
