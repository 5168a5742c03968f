#pragma once

#include <complex>
#include <functional>

#include "acsq/fiducial.hpp"

namespace acsq {

// Point of the open upper half-plane {(q, p) : q > 0}, regarded as a group
// element under (q,p)(q0,p0) = (q q0, p0/q + p).
struct HalfPlanePoint {
  double q;
  double p;
  HalfPlanePoint(double q_in, double p_in);
  static HalfPlanePoint identity() { return {1.0, 0.0}; }
};

HalfPlanePoint compose(const HalfPlanePoint& a, const HalfPlanePoint& b);
HalfPlanePoint inverse(const HalfPlanePoint& a);
double act_on_line(const HalfPlanePoint& a, double x);

// Coherent-state wave function: e^{i p x} q^{-1/2} psi(x/q).  Throws for
// x <= 0 (the state lives on the open half-line).
std::complex<double> acs_evaluate(const FiducialVector& psi,
                                  const HalfPlanePoint& pt, double x);

// Inner product <a|b> of two coherent states built on the same fiducial
// vector; |overlap| <= 1 with equality at coinciding points.
std::complex<double> overlap(const FiducialVector& psi, const HalfPlanePoint& a,
                             const HalfPlanePoint& b);

struct PhaseSpaceWindow {
  double q_lo, q_hi;
  double p_lo, p_hi;
};

struct ResolutionOptions {
  double x_max = 40.0;   // truncation of the x-integrals
  int threads = 0;       // 0: one worker per hardware thread
  double freq_hint = 0;  // extra oscillation frequency carried by phi
};

// (1/(2 pi c_{-1})) times the windowed phase-space integral of |<q,p|phi>|^2.
// Approaches ||phi||^2 as the window exhausts the half-plane.  The p-integral
// is carried out exactly (sinc kernel); x and q use fixed composite
// Gauss-Legendre grids, with the q nodes distributed over a parallel pool.
double resolution_check(const FiducialVector& psi,
                        const std::function<std::complex<double>(double)>& phi,
                        const PhaseSpaceWindow& window,
                        const ResolutionOptions& opt = {});

// |<pt|center>|^2 / (2 pi c_{-1}): the smoothed point-mass distribution on
// the half-plane, maximal at pt == center.
double delta_lower_symbol(const FiducialVector& psi, const HalfPlanePoint& center,
                          const HalfPlanePoint& pt);

}  // namespace acsq
