#include "acsq/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "acsq/parallel.hpp"
#include "acsq/quadrature.hpp"
#include "acsq/specfun.hpp"

namespace acsq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool closed_form_applies(const ModelParams& mp, const FiducialVector& psi) {
  return mp.model == Model::Kepler && psi.family == Family::KeplerCubic &&
         psi.kappa == 1.0;
}

template <typename... Args>
std::string format_warning(const char* fmt, Args... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return std::string(buf);
}

}  // namespace

std::complex<double> acs_coefficient(int n, HalfPlanePoint origin,
                                     const ModelParams& mp,
                                     const FiducialVector& psi) {
  if (n < 0) throw std::invalid_argument("level index must be non-negative");
  if (!closed_form_applies(mp, psi))
    throw std::domain_error(
        "closed-form expansion coefficients cover only the 1/q model with "
        "the cubic-profile fiducial at unit rescale");

  const double alpha = centrifugal_alpha(psi);
  const double kap = kepler_kappa_n(mp, psi, n);
  const double q0 = origin.q, p0 = origin.p;

  const std::complex<double> z(2.0 * kap * q0 + 3.0, -2.0 * q0 * p0);
  const std::complex<double> w = 4.0 * kap * q0 / z;

  const double pref = 9.0 / (std::pow(2.0, 2.5) * std::sqrt(6.0)) *
                      std::exp(log_gamma(alpha + 2.5) - log_gamma(2.0 * alpha)) *
                      std::exp(0.5 * (log_gamma(2.0 * alpha + n) -
                                      log_gamma(n + 1.0))) /
                      std::sqrt(n + alpha);

  return pref * std::pow(kap * q0, alpha + 0.5) *
         std::pow(4.0 / z, alpha + 2.5) *
         hyp2f1_poly(n, alpha + 2.5, 2.0 * alpha, w);
}

std::complex<double> acs_coefficient_quadrature(int n, HalfPlanePoint origin,
                                                const Spectrum& spectrum) {
  if (n < 0 || n >= static_cast<int>(spectrum.eigenvalues.size()))
    throw std::out_of_range("level index outside the computed spectrum");

  const double q = origin.q, p = origin.p;
  const double root_q = std::sqrt(q);
  const FiducialVector& psi = spectrum.psi;
  auto g = [&](double x) {
    return spectrum.eigenfunction(n, x) * evaluate(psi, x / q) / root_q;
  };
  QuadratureSpec qs;
  if (spectrum.method == SpectrumMethod::FiniteElement) {
    // interpolation error of the sampled eigenfunction dominates well before
    // the default quadrature tolerance would; keep the whole mesh inside the
    // interior segment so wall-hugging levels are not lost in the tail map
    qs.rel_tol = 1e-7;
    qs.abs_tol = 1e-9;
    qs.max_subdivisions = 8000;
    if (!spectrum.grid.empty()) qs.domain_split = spectrum.grid.back();
  }
  return fourier_halfline(g, p, qs);
}

CoherentExpansion build_expansion(const ModelParams& mp,
                                  const FiducialVector& psi,
                                  HalfPlanePoint origin,
                                  const ExpansionOptions& opt) {
  if (opt.n_max < 0 || opt.hard_cap < opt.n_max)
    throw std::invalid_argument("expansion band must satisfy 0 <= n_max <= hard_cap");

  CoherentExpansion ex;
  ex.origin = origin;
  ex.params = mp;
  ex.psi = psi;
  ex.closed_form = closed_form_applies(mp, psi);
  ex.alpha = centrifugal_alpha(psi);

  const SpectrumMethod method = mp.model == Model::Linear
                                    ? SpectrumMethod::FiniteElement
                                    : SpectrumMethod::Analytic;

  auto extend_to = [&](int n_top) {
    // (Re)solve for levels 0..n_top and append the missing coefficients.
    if (static_cast<int>(ex.spectrum.eigenvalues.size()) < n_top + 1)
      ex.spectrum = compute_spectrum(mp, psi, n_top + 1, method, opt.grid);
    int avail = static_cast<int>(ex.spectrum.eigenvalues.size());
    int top = std::min(n_top, avail - 1);
    for (int n = static_cast<int>(ex.coefficients.size()); n <= top; ++n) {
      std::complex<double> c =
          ex.closed_form ? acs_coefficient(n, origin, mp, psi)
                         : acs_coefficient_quadrature(n, origin, ex.spectrum);
      ex.coefficients.push_back(c);
      ex.completeness += std::norm(c);
    }
    return top;
  };

  int n_max = extend_to(opt.n_max);
  if (n_max < opt.n_max)
    ex.warnings.push_back(format_warning(
        "spectrum supplies only %d levels; expansion truncated (requested %d)",
        n_max + 1, opt.n_max + 1));

  while (opt.auto_raise && ex.completeness < opt.target &&
         n_max < opt.hard_cap) {
    int want = std::min(n_max + 20, opt.hard_cap);
    int got = extend_to(want);
    if (got <= n_max) break;  // spectrum cannot grow further
    n_max = got;
  }
  if (ex.completeness < opt.target)
    ex.warnings.push_back(format_warning(
        "expansion completeness %.6f below target %.4f at n_max = %d",
        ex.completeness, opt.target, n_max));

  ex.energies.assign(ex.spectrum.eigenvalues.begin(),
                     ex.spectrum.eigenvalues.begin() + (n_max + 1));
  for (const auto& w : ex.spectrum.warnings) ex.warnings.push_back(w);
  return ex;
}

namespace {

std::complex<double> coefficient_at(const CoherentExpansion& ex, int n,
                                    double q, double p) {
  return ex.closed_form
             ? acs_coefficient(n, {q, p}, ex.params, ex.psi)
             : acs_coefficient_quadrature(n, {q, p}, ex.spectrum);
}

}  // namespace

double density_at(const CoherentExpansion& ex, double q, double p, double t) {
  if (!(q > 0.0))
    throw std::invalid_argument("phase-space density requires q > 0");
  const std::complex<double> im(0.0, 1.0);
  std::complex<double> acc = 0.0;
  for (int n = 0; n < static_cast<int>(ex.coefficients.size()); ++n) {
    std::complex<double> phase =
        std::exp(-im * ex.energies[n] * t / ex.params.hbar);
    acc += std::conj(coefficient_at(ex, n, q, p)) * ex.coefficients[n] * phase;
  }
  return std::norm(acc) / kTwoPi;
}

double PhaseSpaceDensityGrid::value(int it, int iq, int ip) const {
  if (it < 0 || it >= static_cast<int>(times.size()) || iq < 0 ||
      iq >= static_cast<int>(q_nodes.size()) || ip < 0 ||
      ip >= static_cast<int>(p_nodes.size()))
    throw std::out_of_range("density grid index out of range");
  return values[it][static_cast<std::size_t>(iq) * p_nodes.size() + ip];
}

PhaseSpaceDensityGrid evolve_density(const CoherentExpansion& ex,
                                     const DensityGridSpec& grid,
                                     const std::vector<double>& times) {
  if (!(grid.q_lo > 0.0) || !(grid.q_hi > grid.q_lo) ||
      !(grid.p_hi > grid.p_lo) || grid.nq < 2 || grid.np < 2)
    throw std::invalid_argument("density grid must span q > 0 with at least "
                                "2 nodes per axis");
  if (ex.coefficients.empty())
    throw std::invalid_argument("expansion carries no coefficients");

  PhaseSpaceDensityGrid out;
  out.q_nodes.resize(grid.nq);
  out.p_nodes.resize(grid.np);
  for (int i = 0; i < grid.nq; ++i)
    out.q_nodes[i] = grid.q_lo + (grid.q_hi - grid.q_lo) * i / (grid.nq - 1);
  for (int i = 0; i < grid.np; ++i)
    out.p_nodes[i] = grid.p_lo + (grid.p_hi - grid.p_lo) * i / (grid.np - 1);
  out.times = times;

  if (ex.completeness < 0.98)
    out.warnings.push_back(format_warning(
        "expansion completeness %.4f is below 0.98; densities carry the "
        "truncation deficit", ex.completeness));

  const std::size_t terms = ex.coefficients.size();
  const std::size_t nodes =
      static_cast<std::size_t>(grid.nq) * static_cast<std::size_t>(grid.np);

  // Per-node overlap products conj(c_n(q,p)) c_n(q0,p0); the time loop then
  // only rotates phases.
  std::vector<std::complex<double>> a(nodes * terms);
  std::exception_ptr worker_error = nullptr;
  std::mutex error_mu;
  parallel_for(nodes, grid.threads, [&](std::size_t idx) {
    try {
      const double q = out.q_nodes[idx / grid.np];
      const double p = out.p_nodes[idx % grid.np];
      for (std::size_t n = 0; n < terms; ++n)
        a[idx * terms + n] =
            std::conj(coefficient_at(ex, static_cast<int>(n), q, p)) *
            ex.coefficients[n];
    } catch (...) {
      std::lock_guard<std::mutex> lk(error_mu);
      if (!worker_error) worker_error = std::current_exception();
    }
  });
  if (worker_error) std::rethrow_exception(worker_error);

  const std::complex<double> im(0.0, 1.0);
  out.values.resize(times.size());
  std::vector<std::complex<double>> phases(terms);
  for (std::size_t it = 0; it < times.size(); ++it) {
    for (std::size_t n = 0; n < terms; ++n)
      phases[n] = std::exp(-im * ex.energies[n] * times[it] / ex.params.hbar);
    out.values[it].resize(nodes);
    parallel_for(nodes, grid.threads, [&](std::size_t idx) {
      std::complex<double> acc = 0.0;
      const std::complex<double>* row = a.data() + idx * terms;
      for (std::size_t n = 0; n < terms; ++n) acc += row[n] * phases[n];
      out.values[it][idx] = std::norm(acc) / kTwoPi;
    });
  }
  return out;
}

}  // namespace acsq
