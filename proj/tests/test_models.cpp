#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "exlab/analytics.hpp"
#include "exlab/models.hpp"
#include "exlab/numerics.hpp"
#include "exlab/stats.hpp"

using exlab::DiffusionModel;
using exlab::ModelKind;

namespace {

std::vector<DiffusionModel> all_models() {
  return {DiffusionModel::rbm(1.0), DiffusionModel::rbm(0.7), DiffusionModel::refl_bm01(),
          DiffusionModel::sq_ou(1.0, -0.5), DiffusionModel::sq_ou(2.0, -0.3)};
}

const std::vector<double> kGrid{0.25, 0.5, 1.0, 2.0, 4.0};

} // namespace

TEST_CASE("total mass") {
  CHECK(DiffusionModel::rbm(1.0).total_mass() == doctest::Approx(1.0));
  CHECK(DiffusionModel::refl_bm01().total_mass() == doctest::Approx(2.0));
  CHECK(DiffusionModel::sq_ou(1.0, -0.5).total_mass() == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0));
}

TEST_CASE("total mass equals the integral of the speed density") {
  for (const auto& m : all_models()) {
    CAPTURE(m.name());
    double integral = 0.0;
    if (m.kind() == ModelKind::ReflBm01) {
      integral = exlab::numerics::adaptive_simpson([&](double x) { return m.speed_density(x); }, 0.0, 1.0);
    } else {
      integral = exlab::numerics::integrate_half_line([&](double x) { return m.speed_density(x); }, 1e-11, 4.0);
    }
    CHECK(integral == doctest::Approx(m.total_mass()).epsilon(1e-7));
  }
}

TEST_CASE("scale derivative and speed density are positive inside the interval") {
  for (const auto& m : all_models()) {
    for (double x : {1e-6, 0.01, 0.3, 0.5, 0.99}) {
      CHECK(m.scale_deriv(x) > 0.0);
      CHECK(m.speed_density(x) > 0.0);
    }
  }
}

TEST_CASE("green function at the origin") {
  CHECK(DiffusionModel::rbm(1.0).green00(1.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(DiffusionModel::refl_bm01().green00(0.5) == doctest::Approx(1.313035285499331).epsilon(1e-12));
  CHECK(DiffusionModel::sq_ou(1.0, -0.5).green00(2.0) ==
        doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-12));
  CHECK(DiffusionModel::rbm(1.0).inverse_green00(0.0) == 0.0);
  CHECK_THROWS_AS(DiffusionModel::rbm(1.0).green00(0.0), std::invalid_argument);
}

TEST_CASE("alpha G_alpha(0,0) tends to 1/M") {
  for (const auto& m : all_models()) {
    for (double a : {1e-3, 1e-4}) {
      CHECK(std::abs(a * m.green00(a) * m.total_mass() - 1.0) < 0.01);
    }
  }
}

TEST_CASE("joint transform from the Green function") {
  const auto rbm = DiffusionModel::rbm(1.0);
  CHECK(exlab::lt_joint_from_green(rbm, 1.5, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(exlab::lt_joint_from_green(rbm, 1.0, 1.0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
  for (const auto& m : all_models()) CHECK(exlab::lt_joint_from_green(m, 0.0, 0.0) == 1.0);
}

TEST_CASE("joint transform lies in (0,1) and decreases in alpha") {
  for (const auto& m : all_models()) {
    for (double b : kGrid) {
      double prev = 1.0;
      for (double a : kGrid) {
        if (a <= b) continue;
        const double v = exlab::lt_joint_from_green(m, a, b);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("Green route agrees with the RBM closed form on and off the diagonal") {
  for (double mu : {0.5, 1.0, 2.0}) {
    const auto m = DiffusionModel::rbm(mu);
    for (double a : kGrid) {
      for (double b : kGrid) {
        CHECK(std::abs(exlab::lt_joint_from_green(m, a, b) - exlab::analytics::lt_rbm(mu, a, b)) < 1e-10);
      }
    }
  }
}

TEST_CASE("diagonal near zero is continuous") {
  for (const auto& m : all_models()) {
    const double at0 = exlab::lt_diagonal_from_green(m, 0.0);
    CHECK(at0 == 1.0);
    CHECK(std::abs(exlab::lt_diagonal_from_green(m, 1e-7) - at0) < 1e-3);
  }
}

TEST_CASE("stationary samplers") {
  exlab::Philox4x32 rng(11, 0, 0);
  const std::size_t n = 100000;
  std::vector<double> rbm(n), refl(n), sq(n);
  const auto m_rbm = DiffusionModel::rbm(1.0);
  const auto m_refl = DiffusionModel::refl_bm01();
  const auto m_sq = DiffusionModel::sq_ou(1.0, -0.5);
  for (std::size_t i = 0; i < n; ++i) {
    rbm[i] = m_rbm.stationary_sample(rng);
    refl[i] = m_refl.stationary_sample(rng);
    sq[i] = m_sq.stationary_sample(rng);
  }
  const auto e_rbm = exlab::stats::mean_estimate(rbm);
  CHECK(std::abs(e_rbm.value - 0.5) < 3.0 * e_rbm.std_error);
  const double d = exlab::stats::ks_one_sample(refl, [](double x) { return std::clamp(x, 0.0, 1.0); });
  CHECK(d < 1.628 / std::sqrt(static_cast<double>(n)));
  const auto e_sq = exlab::stats::mean_estimate(sq);
  CHECK(std::abs(e_sq.value - 0.5) < 3.0 * e_sq.std_error);
}

TEST_CASE("closed-form laws of d0") {
  for (const auto& m : {DiffusionModel::rbm(1.0), DiffusionModel::rbm(1.7), DiffusionModel::sq_ou(1.0, -0.5),
                        DiffusionModel::sq_ou(0.5, -0.8)}) {
    CAPTURE(m.name());
    for (double t : {0.01, 0.2, 1.0, 3.0}) {
      const double tail =
          exlab::numerics::integrate_half_line([&](double x) { return m.d0_density(t + x); }, 1e-12);
      CHECK(std::abs(tail - m.d0_survival(t)) < 1e-8);
    }
    const double mean = exlab::numerics::integrate_half_line([&](double t) { return m.d0_survival(t); }, 1e-11);
    CHECK(mean == doctest::Approx(m.d0_mean()).epsilon(1e-6));
  }
  CHECK(DiffusionModel::rbm(2.0).d0_mean() == doctest::Approx(0.125));
  CHECK(DiffusionModel::refl_bm01().d0_mean() == doctest::Approx(2.0 / 3.0));
  CHECK(DiffusionModel::sq_ou(1.0, -0.5).d0_mean() == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(DiffusionModel::refl_bm01().d0_density(1.0), std::invalid_argument);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(DiffusionModel::rbm(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(DiffusionModel::rbm(0.0), std::invalid_argument);
  CHECK_THROWS_AS(DiffusionModel::rbm(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(DiffusionModel::sq_ou(0.0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(DiffusionModel::sq_ou(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DiffusionModel::sq_ou(1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(exlab::parse_model_kind("ou"), std::invalid_argument);
  CHECK(exlab::parse_model_kind("sqou") == ModelKind::SqOu);
  const std::vector<double> p{1.0, -0.5};
  CHECK(exlab::make_model(ModelKind::SqOu, p).nu() == -0.5);
  CHECK_THROWS_AS(exlab::make_model(ModelKind::Rbm, std::span<const double>{}), std::invalid_argument);
}
