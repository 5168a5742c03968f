#include <doctest.h>

#include <cmath>

#include "acsq/fiducial.hpp"
#include "acsq/specfun.hpp"
#include "oracles/oracle_integrate.hpp"

using namespace acsq;

namespace {
double dquot(const FiducialVector& f, double x, int m, double h) {
  // central difference of order m built from values only
  auto v = [&](double t) { return evaluate(f, t); };
  switch (m) {
    case 1: return (v(x + h) - v(x - h)) / (2.0 * h);
    case 2: return (v(x + h) - 2.0 * v(x) + v(x - h)) / (h * h);
    case 3:
      return (v(x + 2.0 * h) - 2.0 * v(x + h) + 2.0 * v(x - h) - v(x - 2.0 * h)) /
             (2.0 * h * h * h);
  }
  return 0.0;
}
}  // namespace

TEST_CASE("cubic profile: pointwise value and low moments") {
  auto kc = FiducialVector::kepler_cubic();
  CHECK(evaluate(kc, 1.0) == doctest::Approx(0.81983255788372008).epsilon(1e-14));
  CHECK(evaluate(kc, -1.0) == 0.0);
  CHECK(c_gamma(kc, -2.0) == doctest::Approx(1.0).epsilon(1e-11));  // unit norm
  CHECK(c_gamma(kc, -1.0) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(c_gamma(kc, 0.0) == doctest::Approx(1.5).epsilon(1e-11));
  CHECK(c_gamma(kc, 1.0) == doctest::Approx(4.5).epsilon(1e-10));
  CHECK(c_gamma(kc, -3.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-11));
  CHECK(c_gamma(kc, -4.0) == doctest::Approx(20.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("cubic profile: centrifugal strength and kinetic constant") {
  auto kc = FiducialVector::kepler_cubic();
  CHECK(k_psi(kc) == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(c_psi(kc) == doctest::Approx(2.25).epsilon(1e-9));
  CHECK(self_adjointness_flag(kc));
}

TEST_CASE("analytic derivatives agree with difference quotients") {
  auto families = {FiducialVector::kepler_cubic(), FiducialVector::log_gaussian(2.0),
                   FiducialVector::bessel_k_family(2.0, 1.3),
                   FiducialVector::laguerre_basis(3, 2.5)};
  for (const auto& f : families) {
    for (double x : {0.4, 1.0, 2.7}) {
      for (int m : {1, 2, 3}) {
        double h = (m == 3) ? 1e-3 : 1e-4;
        double num = dquot(f, x, m, h);
        double ana = evaluate_derivative(f, x, m);
        CHECK(ana == doctest::Approx(num).epsilon(5e-5));
      }
    }
  }
}

TEST_CASE("log-profile closed moments match quadrature") {
  for (double nu : {1.0, 2.0, 4.0}) {
    auto f = FiducialVector::log_gaussian(nu);
    for (double g : {-3.0, -2.0, -1.0, 0.0, 1.0, 2.0}) {
      double closed = c_gamma(f, g);
      double quad = c_gamma_quadrature(f, g);
      CHECK(closed == doctest::Approx(quad).epsilon(1e-8));
    }
    CHECK(c_gamma(f, -2.0) == doctest::Approx(1.0).epsilon(1e-12));           // unit norm
    CHECK(c_gamma(f, 0.0) == doctest::Approx(c_gamma(f, -1.0)).epsilon(1e-12));
  }
}

TEST_CASE("log-profile centrifugal strength and kinetic constant") {
  auto f = FiducialVector::log_gaussian(2.0);
  CHECK(c_gamma(f, -1.0) == doctest::Approx(0.7788007830714049).epsilon(1e-12));
  CHECK(k_psi(f) == doctest::Approx(1.0).epsilon(1e-10));  // nu / 2
  // closed expression: exp(-1/(2 nu)) (nu + 1/4)
  CHECK(c_psi(f) == doctest::Approx(std::exp(-0.25) * 2.25).epsilon(1e-9));
  CHECK(c_psi(f) == doctest::Approx(1.75230176191).epsilon(1e-9));
  CHECK(k_psi(FiducialVector::log_gaussian(4.0)) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("exponential-pair profile closed moments match quadrature") {
  for (double xi : {1.0, 1.7}) {
    auto f = FiducialVector::bessel_k_family(2.0, xi);
    for (double g : {-3.0, -1.0, 0.0, 1.5}) {
      CHECK(c_gamma(f, g) == doctest::Approx(c_gamma_quadrature(f, g)).epsilon(1e-8));
    }
    CHECK(c_gamma(f, -2.0) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("exponential-pair profile centrifugal strength and flag") {
  struct Row { double nu, k; };
  const Row rows[] = {{1.0, 0.4248709839}, {2.0, 0.6571538794}, {5.0, 1.390745087},
                      {10.0, 2.633543127}, {20.0, 5.129467315}, {50.0, 12.62683845}};
  for (const auto& r : rows) {
    auto f = FiducialVector::bessel_k_family(r.nu);
    CHECK(k_psi(f) == doctest::Approx(r.k).epsilon(1e-9));
    CHECK(self_adjointness_flag(f) == (r.k >= 0.75));
  }
  CHECK_FALSE(self_adjointness_flag(FiducialVector::bessel_k_family(1.0)));
  CHECK(self_adjointness_flag(FiducialVector::bessel_k_family(5.0)));
}

TEST_CASE("stiffness ratio decreases monotonically to one") {
  // xi_30 * xi_2,-1 = K_3 K_2 / (K_0 K_1) -> 1 as nu grows
  double prev = 1e9;
  for (double nu : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
    auto f = FiducialVector::bessel_k_family(nu);
    double r = c_gamma(f, 1.0) * c_gamma(f, -4.0) / c_gamma(f, -1.0);
    // identical to K_3 K_2 / (K_0 K_1) after the normalization cancels
    double direct = bessel_k(3.0, nu) * bessel_k(2.0, nu) /
                    (bessel_k(0.0, nu) * bessel_k(1.0, nu));
    CHECK(r == doctest::Approx(direct).epsilon(1e-12));
    CHECK(r > 1.0);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev < 1.15);
}

TEST_CASE("log-profile concentrates as the shape parameter grows") {
  auto mass_near_center = [](double nu) {
    auto f = FiducialVector::log_gaussian(nu);
    double a = 3.0 / (4.0 * nu);
    auto integ = [&](double x) {
      double v = evaluate(f, x);
      return v * v;
    };
    return oracle::integrate(integ, std::exp(a - 0.5), std::exp(a + 0.5), 64);
  };
  double m2 = mass_near_center(2.0);
  double m8 = mass_near_center(8.0);
  CHECK(m8 > m2);
  CHECK(m8 > 0.95);
}

TEST_CASE("rescaling laws for every moment kind") {
  const double kap = 1.7;
  for (const auto& base :
       {FiducialVector::kepler_cubic(), FiducialVector::log_gaussian(2.0),
        FiducialVector::bessel_k_family(3.0, 1.2)}) {
    auto scaled = base.with_kappa(kap);
    for (double g : {-3.0, -1.0, 0.5}) {
      double lhs = c_gamma_quadrature(scaled, g);
      double rhs = std::pow(kap, -(2.0 + g)) * c_gamma_quadrature(base, g);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
    // derivative moments: stay below the convergence thresholds of the
    // most slowly vanishing family (cubic profile needs gamma < 2 - m)
    for (double g : {-3.0, -1.0}) {
      for (int m : {1, 2}) {
        double lm = c_gamma_m(scaled, g, m);
        double rm = std::pow(kap, -(2.0 + g + m)) * c_gamma_m(base, g, m);
        CHECK(lm == doctest::Approx(rm).epsilon(1e-9));
      }
    }
    CHECK(k_psi(scaled) == doctest::Approx(k_psi(base)).epsilon(1e-10));
    CHECK(c_psi(scaled) == doctest::Approx(c_psi(base) / (kap * kap)).epsilon(1e-9));
    CHECK(self_adjointness_flag(scaled) == self_adjointness_flag(base));
  }
}

TEST_CASE("derivative moments satisfy the integration-by-parts identities") {
  for (const auto& f : {FiducialVector::kepler_cubic(), FiducialVector::log_gaussian(2.0)}) {
    double cm1 = c_gamma(f, -1.0);
    double c0 = c_gamma(f, 0.0);
    // k_psi = -c^{(2)}_{-3} / c_{-1}
    CHECK(k_psi(f) == doctest::Approx(-c_gamma_m(f, -3.0, 2) / cm1).epsilon(1e-8));
    // c_psi = -(c^{(2)}_{-2} + c^{(2)}_{-3} c_0 / c_{-1})
    double rhs = -(c_gamma_m(f, -2.0, 2) + c_gamma_m(f, -3.0, 2) * c0 / cm1);
    CHECK(c_psi(f) == doctest::Approx(rhs).epsilon(1e-8));
  }
}

TEST_CASE("orthonormal basis elements are unit normalized") {
  for (int n : {0, 1, 4}) {
    auto f = FiducialVector::laguerre_basis(n, 2.0);
    CHECK(c_gamma_quadrature(f, -2.0) == doctest::Approx(1.0).epsilon(1e-10));
  }
  auto f = FiducialVector::laguerre_basis(2, 3.0);
  CHECK(c_gamma_quadrature(f, -2.0) == doctest::Approx(1.0).epsilon(1e-10));
  // cross terms vanish
  auto a = FiducialVector::laguerre_basis(1, 2.0);
  auto b = FiducialVector::laguerre_basis(3, 2.0);
  auto cross = oracle::integrate_halfline(
      [&](double x) { return evaluate(a, x) * evaluate(b, x); });
  CHECK(std::fabs(cross) < 1e-10);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(FiducialVector::log_gaussian(0.0), std::domain_error);
  CHECK_THROWS_AS(FiducialVector::bessel_k_family(-1.0), std::domain_error);
  CHECK_THROWS_AS(FiducialVector::bessel_k_family(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(FiducialVector::laguerre_basis(-1), std::domain_error);
  CHECK_THROWS_AS(FiducialVector::laguerre_basis(0, 1.5), std::domain_error);
  CHECK_THROWS_AS(FiducialVector::kepler_cubic().with_kappa(0.0), std::domain_error);
  CHECK_THROWS_AS(evaluate_derivative(FiducialVector::kepler_cubic(), 1.0, 4),
                  std::domain_error);
}

TEST_CASE("moment table caching returns stable references") {
  auto f = FiducialVector::log_gaussian(2.0);
  const MomentTable& t1 = moments(f);
  const MomentTable& t2 = moments(f);
  CHECK(&t1 == &t2);
  CHECK(t1.c_gamma(-1.0) == c_gamma(f, -1.0));
  const MomentTable& t3 = moments(f.with_kappa(2.0));
  CHECK(&t1 != &t3);
}
