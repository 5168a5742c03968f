#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "acsq/quadrature.hpp"

namespace acsq {

// Families of unit-norm real states on the positive half-line used as the
// reference vector of the coherent-state construction.
enum class Family {
  LogGaussian,   // squared log-normal profile, shape parameter nu
  BesselK,       // exponential in x and 1/x, shape nu, dilation xi
  LaguerreBasis, // orthonormal Laguerre-type basis element (n, alpha)
  KeplerCubic,   // fixed x^{3/2} e^{-3x/2} profile
};

struct FiducialVector {
  Family family = Family::KeplerCubic;
  double nu = 0.0;     // shape (LogGaussian, BesselK)
  double xi = 1.0;     // dilation (BesselK)
  int n = 0;           // basis index (LaguerreBasis)
  double alpha = 2.0;  // basis exponent (LaguerreBasis), must be >= 2
  double kappa = 1.0;  // overall rescale: psi_kappa(x) = kappa^{-1/2} psi(x/kappa)

  static FiducialVector log_gaussian(double nu);
  static FiducialVector bessel_k_family(double nu, double xi = 1.0);
  static FiducialVector laguerre_basis(int n, double alpha = 2.0);
  static FiducialVector kepler_cubic();

  FiducialVector with_kappa(double kappa) const;

  bool operator==(const FiducialVector& o) const;
  bool operator<(const FiducialVector& o) const;  // ordering for cache keys

  std::string describe() const;
};

// Pointwise value of the (possibly rescaled) fiducial vector; zero for x <= 0.
double evaluate(const FiducialVector& psi, double x);

// m-th derivative, analytic per family, supported for m in {0,1,2,3}.
double evaluate_derivative(const FiducialVector& psi, double x, int m);

// Lazily computed, internally cached table of the moment constants attached
// to one fiducial vector.  All accessors are safe to call concurrently; a
// mutex serializes the first computation of each entry.
class MomentTable {
 public:
  explicit MomentTable(FiducialVector psi);

  const FiducialVector& fiducial() const { return psi_; }

  // c_gamma = int |psi|^2 x^{-(2+gamma)} dx.  Closed form for LogGaussian
  // and BesselK, adaptive quadrature otherwise.
  double c_gamma(double gamma) const;

  // c_gamma_m = int x^{-(gamma+2)} psi psi^{(m)} dx, m in {0,..,3}.
  double c_gamma_m(double gamma, int m) const;

  // k_psi = (1/c_{-1}) int x (psi')^2 dx  (invariant under rescaling).
  double k_psi() const;

  // c_psi = int (psi')^2 (1 + (c_0/c_{-1}) x) dx  (scales as kappa^{-2}).
  double c_psi() const;

  // True when the centrifugal strength admits an essentially self-adjoint
  // kinetic operator: k_psi >= 3/4.
  bool self_adjointness_flag() const;

 private:
  FiducialVector psi_;
  mutable std::mutex mu_;
  mutable std::map<double, double> c_;
  mutable std::map<std::pair<double, int>, double> c_m_;
  mutable bool have_k_ = false;
  mutable double k_ = 0.0;
  mutable bool have_cpsi_ = false;
  mutable double cpsi_ = 0.0;
};

// Process-wide cache: one MomentTable per distinct fiducial vector.
const MomentTable& moments(const FiducialVector& psi);

// Convenience wrappers over moments(psi).
double c_gamma(const FiducialVector& psi, double gamma);
double c_gamma_m(const FiducialVector& psi, double gamma, int m);
double k_psi(const FiducialVector& psi);
double c_psi(const FiducialVector& psi);
bool self_adjointness_flag(const FiducialVector& psi);

// Always evaluates the defining integral, bypassing closed forms and the
// cache; the independent route used to cross-check the closed expressions.
double c_gamma_quadrature(const FiducialVector& psi, double gamma,
                          const QuadratureSpec& spec = {});

}  // namespace acsq
