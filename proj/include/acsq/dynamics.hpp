#pragma once

#include <complex>
#include <string>
#include <vector>

#include "acsq/affine.hpp"
#include "acsq/fiducial.hpp"
#include "acsq/spectra.hpp"

namespace acsq {

// Expansion of the coherent state |q0,p0> over bound levels of a model:
// c_n = <phi_n | q0,p0>.
struct CoherentExpansion {
  HalfPlanePoint origin{1.0, 0.0};
  std::vector<std::complex<double>> coefficients;  // n = 0 .. n_max
  double completeness = 0.0;                       // sum |c_n|^2
  double alpha = 0.0;
  ModelParams params;
  FiducialVector psi;
  bool closed_form = false;      // true on the closed-form coefficient route
  std::vector<double> energies;  // E_n matching coefficients
  Spectrum spectrum;             // level data backing the expansion
  std::vector<std::string> warnings;
};

struct ExpansionOptions {
  int n_max = 40;
  bool auto_raise = true;      // extend n_max until the target is met
  double target = 0.995;       // completeness goal for auto_raise
  int hard_cap = 160;
  GridSpec grid;               // finite-element grid for the numeric route
};

// Closed-form expansion coefficient; available for the 1/q model with the
// fixed cubic-profile fiducial at unit rescale.  Throws std::domain_error
// elsewhere.
std::complex<double> acs_coefficient(int n, HalfPlanePoint origin,
                                     const ModelParams& mp,
                                     const FiducialVector& psi);

// Quadrature route: direct inner product of the level-n eigenfunction with
// the coherent state.  Works for every model with eigenfunctions.
std::complex<double> acs_coefficient_quadrature(int n, HalfPlanePoint origin,
                                                const Spectrum& spectrum);

// Builds the expansion, choosing the closed form when it applies and the
// quadrature route otherwise.
CoherentExpansion build_expansion(const ModelParams& mp,
                                  const FiducialVector& psi,
                                  HalfPlanePoint origin,
                                  const ExpansionOptions& opt = {});

// Phase-space density of the truncated evolution at a single point:
// rho(q,p,t) = (1/2pi) |sum_n conj(c_n(q,p)) c_n(q0,p0) e^{-i E_n t/hbar}|^2.
double density_at(const CoherentExpansion& ex, double q, double p, double t);

struct DensityGridSpec {
  double q_lo = 0.2, q_hi = 10.0;
  double p_lo = -2.5, p_hi = 2.5;
  int nq = 120, np = 120;
  int threads = 0;  // 0 = hardware concurrency
};

struct PhaseSpaceDensityGrid {
  std::vector<double> q_nodes, p_nodes, times;
  // values[t][iq * np + ip]
  std::vector<std::vector<double>> values;
  std::vector<std::string> warnings;
  double value(int it, int iq, int ip) const;
};

PhaseSpaceDensityGrid evolve_density(const CoherentExpansion& ex,
                                     const DensityGridSpec& grid,
                                     const std::vector<double>& times);

}  // namespace acsq
