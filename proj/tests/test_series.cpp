#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dsr/dispersion.hpp"
#include "dsr/series.hpp"

using namespace dsr;

namespace {
const PhysParams desk{1.0, 1.0, 10.0};

TruncatedSeries from_list(std::initializer_list<double> coeffs) {
  Eigen::ArrayXd a(static_cast<int>(coeffs.size()));
  int i = 0;
  for (double c : coeffs) a[i++] = c;
  return TruncatedSeries(a);
}
}  // namespace

TEST_CASE("series arithmetic basics") {
  const auto one_plus_p = from_list({1.0, 1.0, 0.0});
  const auto one_minus_p = from_list({1.0, -1.0, 0.0});
  CHECK(series_approx_equal(series_mul(one_plus_p, one_minus_p),
                            from_list({1.0, 0.0, -1.0})));

  const auto sum = series_add(one_plus_p, one_minus_p);
  CHECK(series_approx_equal(sum, from_list({2.0, 0.0, 0.0})));
  CHECK(series_approx_equal(series_scale(sum, 0.5), from_list({1.0, 0.0, 0.0})));

  // Truncation closes the algebra: p * p at order 1 drops the p^2 term.
  const auto p1 = TruncatedSeries::variable(1);
  CHECK(series_approx_equal(series_mul(p1, p1), TruncatedSeries(1)));

  CHECK_THROWS_AS(series_add(p1, one_plus_p), std::invalid_argument);
  CHECK_THROWS_AS(series_mul(p1, one_plus_p), std::invalid_argument);
}

TEST_CASE("series square root") {
  CHECK(series_approx_equal(series_sqrt(from_list({1.0, 0.0, 1.0})),
                            from_list({1.0, 0.0, 0.5})));
  CHECK_THROWS_AS(series_sqrt(from_list({0.0, 1.0})), std::domain_error);
  CHECK_THROWS_AS(series_sqrt(from_list({-1.0, 1.0})), std::domain_error);
}

TEST_CASE("series reciprocal") {
  const auto a = from_list({1.0, 0.0, 0.25, 0.0, 0.0});
  const auto product = series_mul(series_reciprocal(a), a);
  CHECK(series_approx_equal(product, TruncatedSeries::constant(1.0, 4)));
  CHECK_THROWS_AS(series_reciprocal(from_list({0.0, 1.0})), std::domain_error);
}

TEST_CASE("sqrt consistency property: square of sqrt reproduces the input") {
  std::mt19937_64 rng(0x5eed0002);
  std::uniform_real_distribution<double> lead(0.2, 4.0);
  std::uniform_real_distribution<double> tail(-0.5, 0.5);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::ArrayXd coeffs(7);
    coeffs[0] = lead(rng);
    for (int i = 1; i < 7; ++i) coeffs[i] = tail(rng);
    const TruncatedSeries s(coeffs);
    const auto root = series_sqrt(s);
    CHECK(series_approx_equal(series_mul(root, root), s, 1e-13));
  }
}

TEST_CASE("energy expansion: special relativity binomial") {
  const auto series = expand_energy(desk, DispersionBranch::Particle,
                                    DispersionModel::SpecialRelativity, 4);
  CHECK(series.coeff(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(series.coeff(1) == 0.0);
  CHECK(series.coeff(2) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(series.coeff(3) == 0.0);
  CHECK(series.coeff(4) == doctest::Approx(-0.125).epsilon(1e-12));
}

TEST_CASE("energy expansion: truncated deformed model") {
  const auto series =
      expand_energy(desk, DispersionBranch::Particle,
                    DispersionModel::AmelinoCameliaTruncated, 4);
  // Hand expansion of the closed-form root: E = mc2 + (1+mu) p^2 / 2m + ...
  CHECK(series.coeff(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(series.coeff(2) == doctest::Approx(0.55).epsilon(1e-13));
  CHECK(series.coeff(4) == doctest::Approx(-0.12375).epsilon(1e-12));
  CHECK(std::abs(series.coeff(2) - 1.0 / (2.0 * m_plus(desk))) < 1e-12);

  const auto anti =
      expand_energy(desk, DispersionBranch::Antiparticle,
                    DispersionModel::AmelinoCameliaTruncated, 4);
  CHECK(anti.coeff(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(anti.coeff(2) + 1.0 / (2.0 * m_minus(desk))) < 1e-12);
}

TEST_CASE("energy expansion: magueijo-smolin transposed limit") {
  const auto series = expand_energy(desk, DispersionBranch::Particle,
                                    DispersionModel::MagueijoSmolin, 4);
  CHECK(series.coeff(0) == doctest::Approx(1.0 / 1.1).epsilon(1e-13));
  CHECK(series.coeff(2) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(series.coeff(4) == doctest::Approx(-0.12375).epsilon(1e-12));

  const auto anti = expand_energy(desk, DispersionBranch::Antiparticle,
                                  DispersionModel::MagueijoSmolin, 4);
  CHECK(anti.coeff(0) == doctest::Approx(-1.0 / 0.9).epsilon(1e-13));
  CHECK(anti.coeff(2) == doctest::Approx(-0.5).epsilon(1e-13));
}

TEST_CASE("expansion parity: odd coefficients vanish identically") {
  for (auto model : {DispersionModel::SpecialRelativity,
                     DispersionModel::AmelinoCameliaTruncated,
                     DispersionModel::MagueijoSmolin}) {
    for (auto branch :
         {DispersionBranch::Particle, DispersionBranch::Antiparticle}) {
      const auto series = expand_energy(desk, branch, model, 8);
      for (int i = 1; i <= series.order(); i += 2) {
        CHECK(series.coeff(i) == 0.0);  // exactly, not approximately
      }
    }
  }
}

TEST_CASE("expansion rejects bad requests") {
  CHECK_THROWS_AS(expand_energy(desk, DispersionBranch::Particle,
                                DispersionModel::AmelinoCameliaExact, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(expand_energy(desk, DispersionBranch::Particle,
                                DispersionModel::SpecialRelativity, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(expand_energy(desk, DispersionBranch::Particle,
                                DispersionModel::SpecialRelativity, 0),
                  std::invalid_argument);
}

TEST_CASE("series curvature agrees with the finite-difference route") {
  for (auto model : {DispersionModel::SpecialRelativity,
                     DispersionModel::AmelinoCameliaTruncated,
                     DispersionModel::MagueijoSmolin}) {
    for (auto branch :
         {DispersionBranch::Particle, DispersionBranch::Antiparticle}) {
      const auto series = expand_energy(desk, branch, model, 4);
      const auto masses = effective_masses(desk, branch, model);
      const double series_mass = 1.0 / (2.0 * std::abs(series.coeff(2)));
      CHECK(std::abs(series_mass - masses.inertial_mass) < 1e-8);
      CHECK(std::abs(std::abs(series.coeff(0)) - masses.rest_energy) < 1e-10);
    }
  }
}

TEST_CASE("reciprocity of the two deformed models") {
  const auto report = reciprocity_report(desk);
  CHECK(report.ac_rest_energy == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.ac_inertial_mass ==
        doctest::Approx(10.0 / 11.0).epsilon(1e-12));
  CHECK(report.ms_rest_energy ==
        doctest::Approx(10.0 / 11.0).epsilon(1e-12));
  CHECK(report.ms_inertial_mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.max_cross_error <= 1e-10);

  SUBCASE("exact rationals at mu = 1/2") {
    const auto strong = reciprocity_report(PhysParams{1.0, 1.0, 2.0});
    CHECK(strong.ac_inertial_mass == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(strong.ms_rest_energy == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("collapses in the undeformed limit") {
    const auto flat = reciprocity_report(PhysParams{1.0, 1.0, 1e9});
    CHECK(flat.ac_inertial_mass == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(flat.ms_rest_energy == doctest::Approx(1.0).epsilon(1e-8));
  }

  SUBCASE("holds for random deformation strengths") {
    std::mt19937_64 rng(0x5eed0003);
    std::uniform_real_distribution<double> mu_draw(1e-4, 0.5);
    for (int trial = 0; trial < 20; ++trial) {
      const double mu = mu_draw(rng);
      CHECK_NOTHROW(reciprocity_report(PhysParams{1.0, 1.0, 1.0 / mu}));
    }
  }
}
