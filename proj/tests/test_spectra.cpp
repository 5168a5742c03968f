#include <cmath>
#include <vector>

#include "acsq/fiducial.hpp"
#include "acsq/spectra.hpp"
#include "doctest.h"
#include "oracles/oracle_integrate.hpp"

using namespace acsq;

TEST_CASE("closed-form 1/q ladder: levels, normalization, virial balance") {
  auto kc = FiducialVector::kepler_cubic();
  ModelParams mp;
  mp.model = Model::Kepler;

  SUBCASE("levels follow the shifted Rydberg pattern") {
    CHECK(centrifugal_alpha(kc) == doctest::Approx(1.5).epsilon(1e-9));
    for (int n = 0; n < 6; ++n) {
      double na = n + 1.5;
      CHECK(kepler_eigenvalue(mp, kc, n) ==
            doctest::Approx(-1.0 / (2.0 * na * na)).epsilon(1e-9));
      CHECK(kepler_kappa_n(mp, kc, n) ==
            doctest::Approx(1.0 / na).epsilon(1e-9));
    }
  }

  SUBCASE("eigenfunctions are unit-normalized") {
    for (int n : {0, 1, 3}) {
      double norm = oracle::integrate_halfline([&](double x) {
        double v = kepler_eigenfunction(mp, kc, n, x);
        return v * v;
      });
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
    }
  }

  SUBCASE("distinct levels are orthogonal") {
    auto ip = [&](int m, int n) {
      return oracle::integrate_halfline([&](double x) {
        return kepler_eigenfunction(mp, kc, m, x) *
               kepler_eigenfunction(mp, kc, n, x);
      });
    };
    CHECK(std::abs(ip(0, 1)) < 1e-8);
    CHECK(std::abs(ip(0, 2)) < 1e-8);
    CHECK(std::abs(ip(1, 3)) < 1e-8);
  }

  SUBCASE("mean attraction balances twice the energy") {
    double cm1 = c_gamma(kc, -1.0);
    for (int n = 0; n <= 3; ++n) {
      double mean = oracle::integrate_halfline([&](double x) {
        double v = kepler_eigenfunction(mp, kc, n, x);
        return v * v * (mp.gm / cm1) / x;
      });
      CHECK(mean ==
            doctest::Approx(-2.0 * kepler_eigenvalue(mp, kc, n)).epsilon(1e-5));
    }
  }

  SUBCASE("parameter scaling of the ladder") {
    ModelParams strong = mp;
    strong.gm = 2.0;
    for (int n = 0; n < 4; ++n) {
      CHECK(kepler_eigenvalue(strong, kc, n) ==
            doctest::Approx(4.0 * kepler_eigenvalue(mp, kc, n)).epsilon(1e-12));
      CHECK(kepler_kappa_n(strong, kc, n) ==
            doctest::Approx(2.0 * kepler_kappa_n(mp, kc, n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed-form quadratic-pull ladder and branch report") {
  auto kc = FiducialVector::kepler_cubic();
  ModelParams mp;
  mp.model = Model::Oscillator;

  SUBCASE("confirmed branch: even spacing governed by the moment ratio") {
    CHECK(oscillator_mu(kc) == doctest::Approx(1.0).epsilon(1e-9));
    double omega = std::sqrt(4.5);
    for (int n = 0; n < 6; ++n)
      CHECK(oscillator_eigenvalue_verified(mp, kc, n) ==
            doctest::Approx(omega * (2.0 * n + 2.0)).epsilon(1e-9));
  }

  SUBCASE("eigenfunctions are unit-normalized and orthogonal") {
    for (int n : {0, 2}) {
      double norm = oracle::integrate_halfline([&](double x) {
        double v = oscillator_eigenfunction(mp, kc, n, x);
        return v * v;
      });
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
    }
    double cross = oracle::integrate_halfline([&](double x) {
      return oscillator_eigenfunction(mp, kc, 0, x) *
             oscillator_eigenfunction(mp, kc, 2, x);
    });
    CHECK(std::abs(cross) < 1e-8);
  }

  SUBCASE("both printed branches stay visible and differ") {
    auto rep = oscillator_branch_report(mp, kc, 4);
    REQUIRE(rep.verified.size() == 4);
    REQUIRE(rep.alternate.size() == 4);
    CHECK(rep.max_rel_difference > 0.1);
    auto s = compute_spectrum(mp, kc, 4, SpectrumMethod::Analytic);
    REQUIRE(s.alternate_eigenvalues.size() == 4);
    for (int n = 0; n < 4; ++n) {
      CHECK(s.eigenvalues[n] == doctest::Approx(rep.verified[n]));
      CHECK(s.alternate_eigenvalues[n] == doctest::Approx(rep.alternate[n]));
    }
  }
}

TEST_CASE("grid route reproduces the 1/q ladder") {
  auto kc = FiducialVector::kepler_cubic();
  ModelParams mp;
  mp.model = Model::Kepler;
  auto s = compute_spectrum(mp, kc, 6, SpectrumMethod::FiniteElement);

  SUBCASE("eigenvalues match the closed form after extrapolation") {
    REQUIRE(s.eigenvalues.size() == 6);
    for (int n = 0; n < 6; ++n) {
      double exact = kepler_eigenvalue(mp, kc, n);
      CHECK(s.eigenvalues[n] ==
            doctest::Approx(exact).epsilon(1e-6));
    }
    for (int n = 0; n + 1 < 6; ++n)
      CHECK(s.eigenvalues[n] < s.eigenvalues[n + 1]);
  }

  SUBCASE("discrete eigenvectors are mutually orthogonal") {
    for (int m = 0; m < 3; ++m) {
      for (int n = m + 1; n < 4; ++n) {
        double dot = 0.0;
        for (std::size_t i = 0; i < s.discrete[m].size(); ++i)
          dot += s.discrete[m][i] * s.discrete[n][i];
        CHECK(std::abs(dot) < 1e-7);
      }
    }
  }

  SUBCASE("sampled eigenfunctions overlap the closed-form ones") {
    for (int n : {0, 1, 2}) {
      double overlap = 0.0, exact_norm = 0.0, fem_norm = 0.0;
      for (std::size_t i = 0; i < s.grid.size(); ++i) {
        double ex = kepler_eigenfunction(mp, kc, n, s.grid[i]);
        overlap += ex * s.vectors[n][i];
        exact_norm += ex * ex;
        fem_norm += s.vectors[n][i] * s.vectors[n][i];
      }
      double cosine = overlap / std::sqrt(exact_norm * fem_norm);
      CHECK(cosine > 0.9999);  // sign convention included
    }
  }

  SUBCASE("interpolating accessor agrees with stored samples") {
    double x = 0.5 * (s.grid[200] + s.grid[201]);
    double mid = 0.5 * (s.vectors[0][200] + s.vectors[0][201]);
    CHECK(s.eigenfunction(0, x) == doctest::Approx(mid).epsilon(1e-12));
    CHECK(s.eigenfunction(0, -1.0) == 0.0);
    CHECK_THROWS_AS((void)s.eigenfunction(99, 1.0), std::out_of_range);
  }
}

TEST_CASE("grid route confirms one quadratic-pull branch and rejects the other") {
  auto kc = FiducialVector::kepler_cubic();
  ModelParams mp;
  mp.model = Model::Oscillator;
  auto s = compute_spectrum(mp, kc, 6, SpectrumMethod::FiniteElement);
  REQUIRE(s.eigenvalues.size() == 6);
  for (int n = 0; n < 6; ++n) {
    double confirmed = oscillator_eigenvalue_verified(mp, kc, n);
    double other = oscillator_eigenvalue_alternate(mp, kc, n);
    CHECK(s.eigenvalues[n] == doctest::Approx(confirmed).epsilon(1e-6));
    CHECK(std::abs(s.eigenvalues[n] - other) >
          0.05 * std::abs(confirmed));
  }
}

TEST_CASE("grid route handles a non-integer weight exponent") {
  auto lg2 = FiducialVector::log_gaussian(2.0);
  ModelParams mp;
  mp.model = Model::Kepler;
  // K_psi = 1 here, so alpha = (1 + sqrt 5)/2 and the weight power is
  // irrational
  auto s = compute_spectrum(mp, lg2, 4, SpectrumMethod::FiniteElement);
  REQUIRE(s.eigenvalues.size() == 4);
  for (int n = 0; n < 4; ++n)
    CHECK(s.eigenvalues[n] ==
          doctest::Approx(kepler_eigenvalue(mp, lg2, n)).epsilon(1e-6));
}

TEST_CASE("linear-pull model in a box: fixed reference levels") {
  auto kc = FiducialVector::kepler_cubic();
  ModelParams mp;
  mp.model = Model::Linear;
  mp.k = 1.0;
  mp.box = 40.0;
  auto s = compute_spectrum(mp, kc, 6, SpectrumMethod::FiniteElement);
  REQUIRE(s.eigenvalues.size() == 6);
  // reference values computed with an independent scan of the same
  // boundary-value problem at higher resolution
  const double expect[6] = {-57.5680226109, -55.7481026753, -54.2581182661,
                            -52.9412620094, -51.7374822723, -50.6157705445};
  for (int n = 0; n < 6; ++n)
    CHECK(s.eigenvalues[n] == doctest::Approx(expect[n]).epsilon(2e-8));
  for (int n = 0; n + 1 < 6; ++n)
    CHECK(s.eigenvalues[n] < s.eigenvalues[n + 1]);
  CHECK(compute_spectrum(mp, kc, 3, SpectrumMethod::FiniteElement,
                         GridSpec{4000, 15.0})
            .eigenvalues[0] == doctest::Approx(expect[0]).epsilon(1e-6));
}

TEST_CASE("failure modes are loud") {
  auto kc = FiducialVector::kepler_cubic();
  ModelParams kep;
  kep.model = Model::Kepler;

  SUBCASE("closed form refused where none exists") {
    ModelParams lin;
    lin.model = Model::Linear;
    CHECK_THROWS_AS(compute_spectrum(lin, kc, 3, SpectrumMethod::Analytic),
                    std::invalid_argument);
  }

  SUBCASE("hopelessly coarse grid raises a numeric failure") {
    CHECK_THROWS_AS(compute_spectrum(kep, kc, 6, SpectrumMethod::FiniteElement,
                                     GridSpec{60, 0.0}),
                    NumericFailure);
  }

  SUBCASE("level count must be positive") {
    CHECK_THROWS_AS(compute_spectrum(kep, kc, 0), std::invalid_argument);
  }

  SUBCASE("a visibly truncating domain is flagged") {
    auto s = compute_spectrum(kep, kc, 6, SpectrumMethod::FiniteElement,
                              GridSpec{4000, 20.0});
    CHECK(s.warnings.size() > 0);
  }
}
