#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "exlab/analytics.hpp"
#include "exlab/numerics.hpp"

using namespace exlab::analytics;
using exlab::DiffusionModel;

namespace {
const std::vector<double> kGrid{0.25, 0.5, 1.0, 2.0, 4.0};
}

TEST_CASE("RBM joint transform") {
  CHECK(lt_rbm(1.0, 1.5, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(lt_rbm(1.0, 0.0, 0.0) == 1.0);
  for (double a : kGrid) {
    for (double b : kGrid) CHECK(lt_rbm(0.8, a, b) == lt_rbm(0.8, b, a));
  }
}

TEST_CASE("RBM joint density") {
  CHECK(joint_density_rbm(1.0, 0.3, 0.7) == doctest::Approx(std::exp(-0.5) / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-14));
  CHECK(joint_density_rbm(1.0, 0.3, 0.7) == doctest::Approx(0.241971).epsilon(1e-6));
  CHECK(joint_density_rbm(1.0, 0.3, 0.7) == joint_density_rbm(1.0, 0.7, 0.3));
  CHECK(joint_density_rbm(2.0, 0.1, 0.4) == joint_density_rbm(2.0, 0.25, 0.25));
  const double mass = exlab::numerics::integrate_half_line(
      [](double v) {
        return exlab::numerics::adaptive_simpson(
            [&](double u) { return v * joint_density_rbm(1.0, v * u, v * (1.0 - u)); }, 0.0, 1.0, 1e-12);
      },
      1e-10);
  CHECK(std::abs(mass - 1.0) < 1e-6);
  CHECK_THROWS_AS(joint_density_rbm(1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("ReflBM01 marginal transform") {
  CHECK(lt_reflbm01_d0(1e-12) == doctest::Approx(1.0));
  CHECK(lt_reflbm01_d0(0.5) == doctest::Approx(std::tanh(1.0)).epsilon(1e-15));
  const auto m = DiffusionModel::refl_bm01();
  for (double a : kGrid) CHECK(std::abs(lt_reflbm01_d0(a) - exlab::lt_joint_from_green(m, a, 0.0)) < 1e-10);
}

TEST_CASE("SqOU density of d0") {
  const double expected = (2.0 / std::numbers::pi) * std::exp(-1.0) / std::sqrt(1.0 - std::exp(-2.0));
  CHECK(density_d0_sqou(1.0, -0.5, 1.0) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(0.25177).epsilon(1e-4));
  const auto m = DiffusionModel::sq_ou(1.0, -0.5);
  const auto f = [](double t) { return density_d0_sqou(1.0, -0.5, t); };
  CHECK(std::abs(exlab::numerics::integrate_half_line(f, 1e-11, 4.0) - 1.0) < 1e-6);
  for (double a : {0.5, 1.0, 2.0}) {
    const double lt =
        exlab::numerics::integrate_half_line([&](double t) { return std::exp(-a * t) * f(t); }, 1e-11, 4.0);
    CHECK(std::abs(lt - exlab::lt_joint_from_green(m, a, 0.0)) < 1e-6);
  }
  CHECK_THROWS_AS(density_d0_sqou(1.0, -0.5, 0.0), std::invalid_argument);
}

TEST_CASE("class-K residual") {
  CHECK(class_k_residual(joint_lt_rbm(1.0), 2.0, 0.5) < 1e-9);

  const JointLT comonotone{[](double a, double b) { return 1.0 / (1.0 + a + b); },
                           [](double g) { return 1.0 / (1.0 + 2.0 * g); }};
  CHECK(class_k_residual(comonotone, 1.0, 0.0) == doctest::Approx(std::abs(0.5 - std::log(3.0) / 2.0)).epsilon(1e-8));

  const JointLT independent{[](double a, double b) { return 1.0 / ((1.0 + a) * (1.0 + b)); },
                            [](double g) { return 1.0 / ((1.0 + g) * (1.0 + g)); }};
  CHECK(class_k_residual(independent, 1.0, 0.0) < 1e-9);
  CHECK_THROWS_AS(class_k_residual(independent, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("every shipped joint transform is class K") {
  const std::vector<JointLT> lts{joint_lt_rbm(1.0), joint_lt_from_green(DiffusionModel::rbm(1.3)),
                                 joint_lt_from_green(DiffusionModel::refl_bm01()),
                                 joint_lt_from_green(DiffusionModel::sq_ou(1.0, -0.5)),
                                 joint_lt_from_green(DiffusionModel::sq_ou(0.7, -0.2))};
  for (const auto& lt : lts) {
    for (double a : kGrid) {
      for (double b : kGrid) {
        if (a != b) CHECK(class_k_residual(lt, a, b) < 1e-8);
      }
    }
  }
}

TEST_CASE("density from the law of the sum") {
  const auto gamma2 = [](double v) { return v * std::exp(-v); };
  CHECK(density_from_sum(gamma2, 0.3, 1.1) == doctest::Approx(std::exp(-1.4)).epsilon(1e-15));
  CHECK(density_from_sum(gamma2, 0.3, 1.1) == density_from_sum(gamma2, 1.1, 0.3));
  const auto rbm = DiffusionModel::rbm(1.5);
  const auto pv = [&](double v) { return v_density(rbm, v); };
  CHECK(density_from_sum(pv, 0.2, 0.9) == doctest::Approx(joint_density_rbm(1.5, 0.2, 0.9)).epsilon(1e-14));
}

TEST_CASE("Levy tail and V density") {
  const auto rbm = DiffusionModel::rbm(1.0);
  for (double t : {0.1, 1.0, 4.0}) {
    CHECK(levy_tail(rbm, t) == doctest::Approx(rbm.total_mass() * rbm.d0_density(t)));
    CHECK(v_density(rbm, t) == doctest::Approx(std::exp(-t / 2.0) / std::sqrt(2.0 * std::numbers::pi * t)));
  }
  for (const auto& m : {rbm, DiffusionModel::sq_ou(1.0, -0.5)}) {
    const double q = m.kind() == exlab::ModelKind::SqOu ? 4.0 : 2.0;
    CHECK(std::abs(exlab::numerics::integrate_half_line([&](double t) { return levy_tail(m, t); }, 1e-11, q) -
                   m.total_mass()) < 1e-6);
    CHECK(std::abs(exlab::numerics::integrate_half_line([&](double v) { return v_density(m, v); }, 1e-11, q) -
                   1.0) < 1e-6);
  }
  CHECK_THROWS_AS(levy_tail(DiffusionModel::refl_bm01(), 1.0), std::invalid_argument);
}

TEST_CASE("SqOU spectral mixture") {
  const auto mix = sqou_spectral(1.0, -0.5, 200);
  CHECK(mix.atoms.size() == 201);
  CHECK(mix.tail_resolved());
  CHECK(std::abs(mix.total_weight() - 1.0) < 1e-8);
  const auto m = DiffusionModel::sq_ou(1.0, -0.5);
  for (double t : {0.5, 1.0, 2.0}) CHECK(std::abs(mix.d0_density(t) - m.d0_density(t)) < 1e-6);
  CHECK(std::abs(mix.v_density(1.0) - v_density(m, 1.0)) < 1e-5);

  const auto other = sqou_spectral(2.0, -0.3, 150);
  CHECK(std::abs(other.total_weight() - 1.0) < 1e-8);
  CHECK_THROWS_AS(sqou_spectral(1.0, 0.5, 200), std::invalid_argument);
}

TEST_CASE("recurrence test") {
  const auto m = DiffusionModel::sq_ou(1.0, -0.5);
  const auto sq = recurrence_test(to_unnormalized(sqou_spectral(1.0, -0.5), m.total_mass()));
  CHECK(sq.positively_recurrent);

  SpectralMixture harmonic;
  harmonic.normalized = false;
  for (int k = 1; k <= 200; ++k) harmonic.atoms.push_back({static_cast<double>(k), static_cast<double>(k)});
  const auto h = recurrence_test(harmonic);
  CHECK_FALSE(h.positively_recurrent);
  CHECK(h.partial_sums_growing);

  CHECK_THROWS_WITH_AS(recurrence_test(SpectralMixture{}), doctest::Contains("no atoms"), std::invalid_argument);
}

TEST_CASE("null-recurrent reflecting Brownian motion") {
  CHECK(lt_null_reflbm(1.0, 1.0) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  for (double a : kGrid) {
    for (double b : kGrid) {
      CHECK(lt_null_reflbm(a, b) == lt_null_reflbm(b, a));
      if (a != b) {
        CHECK(std::abs((std::sqrt(2.0 * a) - std::sqrt(2.0 * b)) / (a - b) - lt_null_reflbm(a, b)) < 1e-12);
      }
    }
  }
}
