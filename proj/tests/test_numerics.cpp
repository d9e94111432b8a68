#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "exlab/numerics.hpp"

using namespace exlab::numerics;

TEST_CASE("adaptive simpson on smooth integrands") {
  CHECK(adaptive_simpson([](double x) { return x * x * x; }, 0.0, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(adaptive_simpson([](double x) { return std::exp(x); }, 1.0, 0.0) ==
        doctest::Approx(1.0 - std::numbers::e).epsilon(1e-10));
  CHECK(adaptive_simpson([](double) { return 1.0; }, 3.0, 3.0) == 0.0);
}

TEST_CASE("half-line integrals") {
  CHECK(std::abs(integrate_half_line([](double t) { return std::exp(-t); }) - 1.0) < 1e-9);
  // Integrable singularity at 0: Gamma(1/2).
  CHECK(std::abs(integrate_half_line([](double t) { return std::exp(-t) / std::sqrt(t); }, 1e-11) -
                 std::sqrt(std::numbers::pi)) < 1e-7);
  CHECK(std::abs(integrate_tail([](double t) { return std::exp(-t); }, 2.0) - std::exp(-2.0)) < 1e-10);
}

TEST_CASE("beta function") {
  CHECK(beta(1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(beta(0.5, 0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-13));
  CHECK(log_beta(3.0, 4.0) == doctest::Approx(std::log(1.0 / 60.0)).epsilon(1e-13));
  CHECK_THROWS(log_beta(0.0, 1.0));
}

TEST_CASE("coth(x)/x is continuous across the series switch") {
  const double below = coth_over_x(std::nextafter(1e-4, 0.0));
  const double above = coth_over_x(1e-4);
  CHECK(std::abs(below - above) / above < 1e-12);
  CHECK(coth_over_x(1.0) == doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-14));
}

TEST_CASE("central difference") {
  CHECK(central_difference([](double x) { return std::sin(x); }, 0.3, 1e-5) ==
        doctest::Approx(std::cos(0.3)).epsilon(1e-9));
}
