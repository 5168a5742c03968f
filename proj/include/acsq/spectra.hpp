#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "acsq/fiducial.hpp"

namespace acsq {

// Model Hamiltonians on the half-line.  Each acts as
//   H = (1/2) [ -hbar^2 d^2/dx^2 + hbar^2 K_psi / x^2 + W(x) ]
// where the potential W comes from the covariant quantization of the
// classical energy:
//   Oscillator:  p^2/2 + (k/2) q^2   ->  W = k (c_1/c_-1) x^2
//   Linear:      p^2/2 - k q         ->  W = -2 k (c_0/c_-1) x   (wall at x=box)
//   Kepler:      p^2/2 - GM/q        ->  W = -(2 GM/c_-1) / x
enum class Model { Oscillator, Linear, Kepler };

struct ModelParams {
  Model model = Model::Kepler;
  double hbar = 1.0;
  double gm = 1.0;   // strength of the 1/q attraction (Kepler)
  double k = 1.0;    // strength of the linear/quadratic pulls
  double box = 40.0; // hard-wall location for the unbounded-below linear model
};

enum class SpectrumMethod { Analytic, FiniteElement };

struct GridSpec {
  int nodes = 4000;   // fine-grid interior resolution
  double x_max = 0.0; // 0 = choose automatically from the requested levels
};

// Raised when the discretized problem cannot deliver the requested levels at
// the requested trust level (e.g. grid too coarse to stabilize the ground
// state).
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Spectrum {
  ModelParams params;
  FiducialVector psi;
  SpectrumMethod method = SpectrumMethod::Analytic;
  std::vector<double> eigenvalues;
  // Second printed closed form for the oscillator levels; tracked separately
  // so both candidates stay visible (empty for other models).
  std::vector<double> alternate_eigenvalues;
  std::vector<std::string> warnings;

  // Numeric-route storage: x nodes of the fine grid and the sampled
  // eigenfunctions (unit continuum norm, first lobe positive).
  std::vector<double> grid;
  std::vector<std::vector<double>> vectors;
  // Unit eigenvectors of the symmetrized discrete problem, one per level;
  // kept for orthogonality diagnostics.
  std::vector<std::vector<double>> discrete;

  // Eigenfunction value: closed form when available, otherwise linear
  // interpolation of the stored samples.
  double eigenfunction(int n, double x) const;
};

// ---- closed-form building blocks -------------------------------------------

// Exponent splitting off the centrifugal term: alpha(alpha-1) = K_psi.
double centrifugal_alpha(const FiducialVector& psi);

// Kepler-like ladder: inverse length and energy of level n, and the
// normalized eigenfunction.
double kepler_kappa_n(const ModelParams& mp, const FiducialVector& psi, int n);
double kepler_eigenvalue(const ModelParams& mp, const FiducialVector& psi,
                         int n);
double kepler_eigenfunction(const ModelParams& mp, const FiducialVector& psi,
                            int n, double x);

// Oscillator-like ladder.  mu = sqrt(1 + 4 K_psi)/2; `verified` is the branch
// the numeric route confirms, `alternate` the other printed candidate.
double oscillator_mu(const FiducialVector& psi);
double oscillator_eigenvalue_verified(const ModelParams& mp,
                                      const FiducialVector& psi, int n);
double oscillator_eigenvalue_alternate(const ModelParams& mp,
                                       const FiducialVector& psi, int n);
double oscillator_eigenfunction(const ModelParams& mp,
                                const FiducialVector& psi, int n, double x);

// Side-by-side report of the two oscillator closed forms.
struct OscillatorBranchReport {
  std::vector<double> verified;
  std::vector<double> alternate;
  double max_rel_difference = 0.0;
};
OscillatorBranchReport oscillator_branch_report(const ModelParams& mp,
                                                const FiducialVector& psi,
                                                int n_levels);

// ---- solver entry point -----------------------------------------------------

// Computes the lowest n_levels eigenvalues (and eigenfunctions).  The
// analytic method covers Oscillator and Kepler; Linear requires the
// finite-element route.  Finite-element eigenvalues are Richardson
// extrapolated from two grid resolutions.
Spectrum compute_spectrum(const ModelParams& mp, const FiducialVector& psi,
                          int n_levels,
                          SpectrumMethod method = SpectrumMethod::Analytic,
                          const GridSpec& grid = {});

}  // namespace acsq
