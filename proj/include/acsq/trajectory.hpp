#pragma once

#include <vector>

#include "acsq/affine.hpp"
#include "acsq/fiducial.hpp"
#include "acsq/spectra.hpp"

namespace acsq {

// One sample of the upper branch of a constant-energy contour; the lower
// branch is its mirror p -> -p.
struct ContourSample {
  double q;
  double p;  // >= 0
};

struct EnergyContour {
  Model model = Model::Kepler;
  bool semiclassical = false;
  double energy = 0.0;
  double ktilde = 0.0;    // coefficient of the 1/q^2 screening term
  double strength = 0.0;  // k (oscillator/linear) or GM (Kepler); dressed
                          // with moment ratios on the semiclassical branch
  std::vector<double> turning_points;  // ascending positive roots of E = V
  bool hard_wall = false;   // allowed region extends to q -> 0+
  double wall_p = 0.0;      // |p| at the wall, when it is finite there
  bool wall_p_finite = true;
  bool tangent = false;     // E sits at the potential minimum: point contour
  std::vector<ContourSample> samples;
};

struct ContourOptions {
  int samples = 512;
  double q_cap = 50.0;  // outer sampling limit for unbounded regions
};

// Effective potential V(q) = ktilde/q^2 + model term with the given strength.
double effective_potential(Model model, double ktilde, double strength,
                           double q);

// Screening coefficient of the phase-space portrait: hbar^2 c(psi) / 2.
double semiclassical_ktilde(const ModelParams& mp, const FiducialVector& psi);

// Moment-dressed coupling of the portrait: k c_1 c_-4 / c_-1 (oscillator),
// k c_0 c_-3 / c_-1 (linear), plain GM (Kepler).
double semiclassical_strength(const ModelParams& mp, const FiducialVector& psi);

// Portrait energy at a phase-space point.
double semiclassical_energy(const ModelParams& mp, const FiducialVector& psi,
                            double q, double p);

// All positive roots of E = V(q), refined to 1e-12 relative accuracy; a
// double root at the potential minimum is reported twice.
std::vector<double> turning_points(Model model, double ktilde, double strength,
                                   double energy);

EnergyContour classical_contour(const ModelParams& mp, double energy,
                                const ContourOptions& opt = {});
EnergyContour semiclassical_contour(const ModelParams& mp,
                                    const FiducialVector& psi, double energy,
                                    const ContourOptions& opt = {});

// Optional time-parameterized flow of dq/dt = p, dp/dt = -V'(q) by a
// fixed-step leapfrog; stops early if the step crosses q <= 0.
struct FlowPoint {
  double t, q, p;
};
struct FlowOptions {
  double dt = 1e-3;
  int steps = 20000;
};
std::vector<FlowPoint> hamiltonian_flow(Model model, double ktilde,
                                        double strength, HalfPlanePoint start,
                                        const FlowOptions& opt = {});

}  // namespace acsq
