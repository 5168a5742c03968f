#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "acsq/fiducial.hpp"

namespace acsq {

// One term of an operator on the half-line, coeff * Q^{q_power} P^{p_power},
// or coeff * D when `dilation` is set (D = (QP + PQ)/2).
struct OperatorTerm {
  std::complex<double> coeff;
  double q_power = 0.0;
  int p_power = 0;
  bool dilation = false;
};

// Symbolic operator produced by the quantization map.  Matrices are never
// materialized here; the spectra module consumes the term list.
struct QuantizedOperator {
  std::vector<OperatorTerm> terms;
  std::string provenance;  // classical symbol and fiducial that produced it

  // Sum of coefficients matching the given powers (zero when absent).
  std::complex<double> coefficient(double q_power, int p_power,
                                   bool dilation = false) const;
};

// Phase-space function sum c_k * q^{q_power_k} p^{p_power_k}; the value type
// of lower symbols.
struct SymbolTerm {
  std::complex<double> coeff;
  double q_power = 0.0;
  int p_power = 0;
};

struct PhaseSpaceSymbol {
  std::vector<SymbolTerm> terms;
  std::complex<double> eval(double q, double p) const;
};

// ---- quantization map -------------------------------------------------------

// q^beta  ->  (c_{beta-1}/c_{-1}) kappa^{-beta} Q^beta.  The kappa argument
// rescales on top of whatever rescale psi itself carries.
QuantizedOperator quantize_power_q(double beta, const FiducialVector& psi,
                                   double kappa = 1.0);

// p   -> P
// p^2 -> P^2 + K_psi / Q^2   (for real fiducials; n limited to {1,2})
QuantizedOperator quantize_power_p(int n, const FiducialVector& psi);

// Unpruned general-n machinery behind quantize_power_p; exposed for tests
// (n up to 3).  Terms with analytically vanishing coefficients are kept.
QuantizedOperator quantize_power_p_general(int n, const FiducialVector& psi);

// qp -> (c_0/c_{-1}) D
QuantizedOperator quantize_qp(const FiducialVector& psi);

// Finite sum of q-powers: terms (w_i, beta_i) -> sum w_i A_{q^{beta_i}}.
QuantizedOperator quantize_potential(
    const std::vector<std::pair<double, double>>& terms,
    const FiducialVector& psi, double kappa = 1.0);

// ---- lower symbols ----------------------------------------------------------

// Lower symbol of A_{q^beta} is (c_{beta-1} c_{-beta-2} / c_{-1}) q^beta;
// returns the constant in front of q^beta.
double lower_symbol_power_q(double beta, const FiducialVector& psi);

// n = 1: p.  n = 2: p^2 + c_psi / q^2.
PhaseSpaceSymbol lower_symbol_power_p(int n, const FiducialVector& psi);

// General-n expansion used by tests (n up to 3); complex coefficients kept.
PhaseSpaceSymbol lower_symbol_power_p_general(int n, const FiducialVector& psi);

// Lower symbol of A_{qp} is (c_0 c_{-3} / c_{-1}) q p; returns the constant.
double lower_symbol_qp(const FiducialVector& psi);

// ---- auxiliary structures ---------------------------------------------------

// Multiplicative convolution adapted to the half-line:
// (f1 * f2)(x) = int_0^inf (dq/q) f1(q) f2(x/q).
double affine_convolution(const std::function<double(double)>& f1,
                          const std::function<double(double)>& f2, double x,
                          const QuadratureSpec& spec = {});

// Smooth test function with its analytic derivative, used by the
// canonical-commutator check.
struct TestFunction {
  std::function<double(double)> f;
  std::function<double(double)> df;
};

// Max over grid points and test functions of |([Q,P] - i I) phi(x)| with the
// bare operators Q = x, P = -i d/dx.
double commutator_check(const FiducialVector& psi,
                        const std::vector<TestFunction>& tests);

}  // namespace acsq
