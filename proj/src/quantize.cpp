#include "acsq/quantize.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace acsq {

namespace {

double binom(int n, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

std::complex<double> ipow(int k) {
  // (-i)^k
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::domain_error(std::string(what) + ": moment is not finite");
}

}  // namespace

std::complex<double> QuantizedOperator::coefficient(double q_power, int p_power,
                                                    bool dilation) const {
  std::complex<double> sum = 0.0;
  for (const auto& t : terms)
    if (t.dilation == dilation && t.p_power == p_power &&
        (dilation || t.q_power == q_power))
      sum += t.coeff;
  return sum;
}

std::complex<double> PhaseSpaceSymbol::eval(double q, double p) const {
  std::complex<double> sum = 0.0;
  for (const auto& t : terms)
    sum += t.coeff * std::pow(q, t.q_power) * std::pow(p, t.p_power);
  return sum;
}

QuantizedOperator quantize_power_q(double beta, const FiducialVector& psi,
                                   double kappa) {
  if (!(kappa > 0.0)) throw std::domain_error("quantize_power_q: kappa must be > 0");
  double ratio = c_gamma(psi, beta - 1.0) / c_gamma(psi, -1.0);
  check_finite(ratio, "quantize_power_q");
  QuantizedOperator op;
  op.terms.push_back({ratio * std::pow(kappa, -beta), beta, 0, false});
  std::ostringstream os;
  os << "q^" << beta << " @ " << psi.describe();
  if (kappa != 1.0) os << " (kappa=" << kappa << ")";
  op.provenance = os.str();
  return op;
}

QuantizedOperator quantize_power_p_general(int n, const FiducialVector& psi) {
  if (n < 1 || n > 3)
    throw std::domain_error("quantize_power_p_general: n must be in 1..3");
  double cm1 = c_gamma(psi, -1.0);
  QuantizedOperator op;
  for (int m = 0; m <= n; ++m) {
    // term C(n,m) c_{m-n-1}^{(n-m)} (-i)^{n-m} Q^{-(n-m)} P^m / c_{-1}
    double mom = c_gamma_m(psi, m - n - 1.0, n - m);
    check_finite(mom, "quantize_power_p_general");
    std::complex<double> coeff = binom(n, m) * mom * ipow(n - m) / cm1;
    op.terms.push_back({coeff, -static_cast<double>(n - m), m, false});
  }
  std::ostringstream os;
  os << "p^" << n << " @ " << psi.describe() << " (general)";
  op.provenance = os.str();
  return op;
}

QuantizedOperator quantize_power_p(int n, const FiducialVector& psi) {
  if (n != 1 && n != 2)
    throw std::domain_error("quantize_power_p: n must be 1 or 2");
  QuantizedOperator full = quantize_power_p_general(n, psi);
  // drop terms whose coefficients vanish analytically for real fiducials and
  // survive only as quadrature noise
  double scale = 0.0;
  for (const auto& t : full.terms) scale = std::max(scale, std::abs(t.coeff));
  QuantizedOperator op;
  for (const auto& t : full.terms)
    if (std::abs(t.coeff) > 1e-10 * scale) op.terms.push_back(t);
  std::ostringstream os;
  os << "p^" << n << " @ " << psi.describe();
  op.provenance = os.str();
  return op;
}

QuantizedOperator quantize_qp(const FiducialVector& psi) {
  double ratio = c_gamma(psi, 0.0) / c_gamma(psi, -1.0);
  check_finite(ratio, "quantize_qp");
  QuantizedOperator op;
  op.terms.push_back({ratio, 0.0, 0, true});
  op.provenance = "qp @ " + psi.describe();
  return op;
}

QuantizedOperator quantize_potential(
    const std::vector<std::pair<double, double>>& terms,
    const FiducialVector& psi, double kappa) {
  QuantizedOperator op;
  std::ostringstream os;
  os << "potential[";
  bool first = true;
  for (const auto& [w, beta] : terms) {
    QuantizedOperator part = quantize_power_q(beta, psi, kappa);
    for (auto t : part.terms) {
      t.coeff *= w;
      op.terms.push_back(t);
    }
    if (!first) os << ", ";
    os << w << "*q^" << beta;
    first = false;
  }
  os << "] @ " << psi.describe();
  op.provenance = os.str();
  return op;
}

double lower_symbol_power_q(double beta, const FiducialVector& psi) {
  double v = c_gamma(psi, beta - 1.0) * c_gamma(psi, -beta - 2.0) /
             c_gamma(psi, -1.0);
  check_finite(v, "lower_symbol_power_q");
  return v;
}

PhaseSpaceSymbol lower_symbol_power_p_general(int n, const FiducialVector& psi) {
  if (n < 1 || n > 3)
    throw std::domain_error("lower_symbol_power_p_general: n must be in 1..3");
  double cm1 = c_gamma(psi, -1.0);
  PhaseSpaceSymbol sym;
  for (int m = 0; m <= n; ++m) {
    for (int mp = 0; m + mp <= n; ++mp) {
      // multinomial n! / (m! mp! (n-m-mp)!)
      double multi = 1.0;
      for (int i = 1; i <= n; ++i) multi *= i;
      for (int i = 1; i <= m; ++i) multi /= i;
      for (int i = 1; i <= mp; ++i) multi /= i;
      for (int i = 1; i <= n - m - mp; ++i) multi /= i;
      double a = c_gamma_m(psi, -mp - 1.0, mp);     // c^{(mp)}_{-mp-1}
      double b = c_gamma_m(psi, mp - 2.0, m);       // c^{(m)}_{mp-2}, real psi
      check_finite(a, "lower_symbol_power_p_general");
      check_finite(b, "lower_symbol_power_p_general");
      std::complex<double> coeff = multi * a * b * ipow(m + mp) / cm1;
      sym.terms.push_back(
          {coeff, -static_cast<double>(m + mp), n - m - mp});
    }
  }
  return sym;
}

PhaseSpaceSymbol lower_symbol_power_p(int n, const FiducialVector& psi) {
  if (n != 1 && n != 2)
    throw std::domain_error("lower_symbol_power_p: n must be 1 or 2");
  PhaseSpaceSymbol sym;
  if (n == 1) {
    sym.terms.push_back({1.0, 0.0, 1});
    return sym;
  }
  sym.terms.push_back({1.0, 0.0, 2});
  sym.terms.push_back({c_psi(psi), -2.0, 0});
  return sym;
}

double lower_symbol_qp(const FiducialVector& psi) {
  double v =
      c_gamma(psi, 0.0) * c_gamma(psi, -3.0) / c_gamma(psi, -1.0);
  check_finite(v, "lower_symbol_qp");
  return v;
}

double affine_convolution(const std::function<double(double)>& f1,
                          const std::function<double(double)>& f2, double x,
                          const QuadratureSpec& spec) {
  if (!(x > 0.0)) throw std::domain_error("affine_convolution: x must be > 0");
  auto integrand = [&](double q) { return f1(q) * f2(x / q) / q; };
  return integrate_halfline(integrand, spec).value;
}

double commutator_check(const FiducialVector& psi,
                        const std::vector<TestFunction>& tests) {
  (void)psi;  // the bare canonical relation does not involve the fiducial
  double worst = 0.0;
  for (const auto& t : tests) {
    for (int i = 1; i <= 40; ++i) {
      double x = 0.25 * i;  // grid over (0, 10]
      std::complex<double> qp = x * std::complex<double>(0.0, -1.0) * t.df(x);
      // P(Q phi) = -i d/dx (x phi) = -i phi - i x phi'
      std::complex<double> pq =
          std::complex<double>(0.0, -1.0) * (t.f(x) + x * t.df(x));
      std::complex<double> dev = (qp - pq) - std::complex<double>(0.0, 1.0) * t.f(x);
      worst = std::max(worst, std::abs(dev));
    }
  }
  return worst;
}

}  // namespace acsq
