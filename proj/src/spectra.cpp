#include "acsq/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "acsq/specfun.hpp"
#include "acsq/tridiag.hpp"

namespace acsq {

namespace {

// exact integral of x^e over [a, b] (e > -1 here)
double powint(double a, double b, double e) {
  return (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / (e + 1.0);
}

struct PowerTerm {
  double coeff;
  double expo;
};

// potential of the half-line Schroedinger form, excluding the centrifugal
// piece which is absorbed into the weight exponent
std::vector<PowerTerm> potential_terms(const ModelParams& mp,
                                       const FiducialVector& psi) {
  double cm1 = c_gamma(psi, -1.0);
  switch (mp.model) {
    case Model::Oscillator:
      return {{0.5 * mp.k * c_gamma(psi, 1.0) / cm1, 2.0}};
    case Model::Linear:
      return {{-mp.k * c_gamma(psi, 0.0) / cm1, 1.0}};
    case Model::Kepler:
      return {{-mp.gm / cm1, -1.0}};
  }
  return {};
}

double lambda_tilde(const ModelParams& mp, const FiducialVector& psi) {
  double ktilde = mp.k * c_gamma(psi, 1.0) / c_gamma(psi, -1.0);
  return std::sqrt(ktilde) / (2.0 * mp.hbar);
}

// integral of x^e against the hat function centered at node i (spacing h,
// nodes x_j = j h); node 0 only has the falling half
double hatint(int i, double h, double e) {
  double xi = i * h;
  double acc = 0.0;
  if (i > 0) {
    double xl = xi - h;
    acc += (powint(xl, xi, e + 1.0) - xl * powint(xl, xi, e)) / h;
  }
  double xr = xi + h;
  acc += (xr * powint(xi, xr, e) - powint(xi, xr, e + 1.0)) / h;
  return acc;
}

struct FemSolution {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> y;  // discrete unit vectors
  std::vector<double> msqrt;           // sqrt of lumped weight per node
};

// weighted P1 finite elements for
//   (hbar^2/2) int x^b u' v' + int x^b V u v = E int x^b u v
// on [0, x_max] with a natural condition at 0 and a wall at x_max
FemSolution fem_solve(const ModelParams& mp, const FiducialVector& psi,
                      int n_levels, int nodes, double x_max,
                      bool want_vectors) {
  double alpha = centrifugal_alpha(psi);
  double b = 2.0 * alpha;
  auto pot = potential_terms(mp, psi);
  int n_elem = nodes;
  double h = x_max / n_elem;
  int n_dof = n_elem;  // nodes 0 .. n_elem-1; the wall node is dropped

  std::vector<double> we(n_elem);
  for (int i = 0; i < n_elem; ++i) we[i] = powint(i * h, (i + 1) * h, b);

  Tridiag t;
  t.d.resize(n_dof);
  t.e.resize(n_dof - 1);
  std::vector<double> msqrt(n_dof);
  double kin = 0.5 * mp.hbar * mp.hbar / (h * h);
  std::vector<double> mlump(n_dof), plump(n_dof), sdiag(n_dof);
  for (int i = 0; i < n_dof; ++i) {
    mlump[i] = hatint(i, h, b);
    double p = 0.0;
    for (const auto& term : pot) p += term.coeff * hatint(i, h, b + term.expo);
    plump[i] = p;
    sdiag[i] = kin * ((i > 0 ? we[i - 1] : 0.0) + we[i]);
    msqrt[i] = std::sqrt(mlump[i]);
  }
  for (int i = 0; i < n_dof; ++i) t.d[i] = (sdiag[i] + plump[i]) / mlump[i];
  for (int i = 0; i + 1 < n_dof; ++i)
    t.e[i] = -kin * we[i] / (msqrt[i] * msqrt[i + 1]);

  FemSolution out;
  out.eigenvalues = tridiag_lowest(t, n_levels);
  out.msqrt = std::move(msqrt);
  if (want_vectors)
    for (double ev : out.eigenvalues)
      out.y.push_back(tridiag_eigenvector(t, ev));
  return out;
}

double auto_x_max(const ModelParams& mp, const FiducialVector& psi,
                  int n_levels) {
  int top = n_levels - 1;
  switch (mp.model) {
    case Model::Kepler:
      return 35.0 / kepler_kappa_n(mp, psi, top);
    case Model::Oscillator: {
      double mu = oscillator_mu(psi);
      return std::sqrt((2.0 * top + mu + 1.0 + 30.0) /
                       lambda_tilde(mp, psi));
    }
    case Model::Linear:
      return mp.box;
  }
  return 40.0;
}

}  // namespace

double centrifugal_alpha(const FiducialVector& psi) {
  return 0.5 + 0.5 * std::sqrt(1.0 + 4.0 * k_psi(psi));
}

double kepler_kappa_n(const ModelParams& mp, const FiducialVector& psi,
                      int n) {
  double alpha = centrifugal_alpha(psi);
  return mp.gm /
         (mp.hbar * mp.hbar * c_gamma(psi, -1.0) * (n + alpha));
}

double kepler_eigenvalue(const ModelParams& mp, const FiducialVector& psi,
                         int n) {
  double alpha = centrifugal_alpha(psi);
  double cm1 = c_gamma(psi, -1.0);
  double na = n + alpha;
  return -mp.gm * mp.gm /
         (2.0 * mp.hbar * mp.hbar * cm1 * cm1 * na * na);
}

double kepler_eigenfunction(const ModelParams& mp, const FiducialVector& psi,
                            int n, double x) {
  if (x <= 0.0) return 0.0;
  double alpha = centrifugal_alpha(psi);
  double kn = kepler_kappa_n(mp, psi, n);
  double norm = std::pow(2.0, alpha) * std::sqrt(kn / (n + alpha)) *
                std::exp(0.5 * (log_gamma(n + 1.0) - log_gamma(2.0 * alpha + n)));
  return norm * std::exp(-kn * x) * std::pow(kn * x, alpha) *
         laguerre(n, 2.0 * alpha - 1.0, 2.0 * kn * x);
}

double oscillator_mu(const FiducialVector& psi) {
  return 0.5 * std::sqrt(1.0 + 4.0 * k_psi(psi));
}

double oscillator_eigenvalue_verified(const ModelParams& mp,
                                      const FiducialVector& psi, int n) {
  double mu = oscillator_mu(psi);
  double ktilde = mp.k * c_gamma(psi, 1.0) / c_gamma(psi, -1.0);
  return mp.hbar * std::sqrt(ktilde) * (2.0 * n + mu + 1.0);
}

double oscillator_eigenvalue_alternate(const ModelParams& mp,
                                       const FiducialVector& psi, int n) {
  double mu = oscillator_mu(psi);
  return mp.hbar * std::pow(0.5 * mp.k * mp.k, 0.25) * (2.0 * n + mu + 2.0);
}

double oscillator_eigenfunction(const ModelParams& mp,
                                const FiducialVector& psi, int n, double x) {
  if (x <= 0.0) return 0.0;
  double mu = oscillator_mu(psi);
  double lt = lambda_tilde(mp, psi);
  double norm =
      std::sqrt(2.0) * std::pow(2.0 * lt, 0.5 * (mu + 1.0)) *
      std::exp(0.5 * (log_gamma(n + 1.0) - log_gamma(n + mu + 1.0)));
  return norm * std::pow(x, mu + 0.5) * std::exp(-lt * x * x) *
         laguerre(n, mu, 2.0 * lt * x * x);
}

OscillatorBranchReport oscillator_branch_report(const ModelParams& mp,
                                                const FiducialVector& psi,
                                                int n_levels) {
  OscillatorBranchReport rep;
  for (int n = 0; n < n_levels; ++n) {
    double v = oscillator_eigenvalue_verified(mp, psi, n);
    double a = oscillator_eigenvalue_alternate(mp, psi, n);
    rep.verified.push_back(v);
    rep.alternate.push_back(a);
    rep.max_rel_difference = std::max(
        rep.max_rel_difference, std::abs(v - a) / std::max(std::abs(v), 1e-300));
  }
  return rep;
}

double Spectrum::eigenfunction(int n, double x) const {
  if (n < 0 || n >= static_cast<int>(eigenvalues.size()))
    throw std::out_of_range("Spectrum::eigenfunction: level out of range");
  if (method == SpectrumMethod::Analytic) {
    if (params.model == Model::Kepler)
      return kepler_eigenfunction(params, psi, n, x);
    return oscillator_eigenfunction(params, psi, n, x);
  }
  if (x <= grid.front() || x >= grid.back()) return 0.0;
  double h = grid[1] - grid[0];
  int j = static_cast<int>(x / h);
  j = std::min(j, static_cast<int>(grid.size()) - 2);
  double w = (x - grid[j]) / h;
  return (1.0 - w) * vectors[n][j] + w * vectors[n][j + 1];
}

Spectrum compute_spectrum(const ModelParams& mp, const FiducialVector& psi,
                          int n_levels, SpectrumMethod method,
                          const GridSpec& grid) {
  if (n_levels <= 0)
    throw std::invalid_argument("compute_spectrum: need at least one level");
  Spectrum s;
  s.params = mp;
  s.psi = psi;
  s.method = method;

  if (method == SpectrumMethod::Analytic) {
    if (mp.model == Model::Linear)
      throw std::invalid_argument(
          "compute_spectrum: the linear-pull model has no closed form; "
          "use the finite-element method");
    for (int n = 0; n < n_levels; ++n) {
      if (mp.model == Model::Kepler) {
        s.eigenvalues.push_back(kepler_eigenvalue(mp, psi, n));
      } else {
        s.eigenvalues.push_back(oscillator_eigenvalue_verified(mp, psi, n));
        s.alternate_eigenvalues.push_back(
            oscillator_eigenvalue_alternate(mp, psi, n));
      }
    }
    return s;
  }

  // finite-element route
  int nodes = grid.nodes > 0 ? grid.nodes : 4000;
  if (nodes < 16) throw std::invalid_argument("compute_spectrum: grid too small");
  double x_max = grid.x_max > 0.0 ? grid.x_max : auto_x_max(mp, psi, n_levels);
  if (mp.model == Model::Linear) x_max = mp.box;

  int n_solve = n_levels + (mp.model == Model::Kepler ? 2 : 0);
  FemSolution fine = fem_solve(mp, psi, n_solve, nodes, x_max, true);
  FemSolution coarse = fem_solve(mp, psi, n_solve, nodes / 2, x_max, false);

  double d0 = std::abs(fine.eigenvalues[0] - coarse.eigenvalues[0]);
  if (d0 > 0.01 * std::abs(fine.eigenvalues[0]) + 1e-8)
    throw NumericFailure(
        "compute_spectrum: ground level not stable under grid refinement "
        "(increase nodes or shrink the domain)");

  double h = x_max / nodes;
  s.grid.resize(nodes + 1);
  for (int i = 0; i <= nodes; ++i) s.grid[i] = i * h;

  double alpha = centrifugal_alpha(psi);
  for (int idx = 0; idx < n_solve; ++idx) {
    double ev =
        (4.0 * fine.eigenvalues[idx] - coarse.eigenvalues[idx]) / 3.0;
    if (mp.model == Model::Kepler && ev >= 0.0) {
      if (static_cast<int>(s.eigenvalues.size()) < n_levels) {
        std::ostringstream os;
        os << "only " << s.eigenvalues.size()
           << " bound levels below the domain cutoff; requested " << n_levels;
        s.warnings.push_back(os.str());
      }
      break;
    }
    if (static_cast<int>(s.eigenvalues.size()) == n_levels) break;
    s.eigenvalues.push_back(ev);
    // sampled eigenfunction: undo the weight symmetrization, restore x^alpha
    std::vector<double> phi(nodes + 1, 0.0);
    const auto& y = fine.y[idx];
    for (int i = 0; i < nodes; ++i) {
      double u = y[i] / fine.msqrt[i];
      phi[i] = std::pow(s.grid[i], alpha) * u;
    }
    // sign convention: the first lobe points up
    double peak = 0.0;
    for (double v : phi) peak = std::max(peak, std::abs(v));
    for (double v : phi) {
      if (std::abs(v) > 0.01 * peak) {
        if (v < 0.0)
          for (double& w : phi) w = -w;
        break;
      }
    }
    s.vectors.push_back(std::move(phi));
    s.discrete.push_back(y);
  }

  if (mp.model == Model::Kepler) {
    for (int n = 0; n < static_cast<int>(s.eigenvalues.size()); ++n) {
      if (kepler_kappa_n(mp, psi, n) * x_max < 35.0) {
        std::ostringstream os;
        os << "domain may truncate the tail of level " << n;
        s.warnings.push_back(os.str());
      }
    }
  }
  return s;
}

}  // namespace acsq
