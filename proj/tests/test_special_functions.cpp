#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "wrcw/special_functions.hpp"

using namespace wrcw;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  }
  return g;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

}  // namespace

TEST_CASE("u_value pinned points") {
  CHECK(u_value(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(u_value(0.0, 0.0) == 1.0);
  CHECK(u_value(0.0, 2.5) == std::exp(2.5));
  CHECK(u_value(1.0, 0.0) == doctest::Approx(oracle::kOmega).epsilon(1e-13));
  // frozen constant agrees with the independent bisection oracle
  CHECK(std::abs(oracle::bisect_u(1.0, 0.0) - oracle::kOmega) < 1e-14);
  // oracle cross-checks at a generic point
  CHECK(u_value(3.0, -1.5) ==
        doctest::Approx(oracle::bisect_u(3.0, -1.5)).epsilon(1e-12));
  CHECK(u_value(100.0, 2.0) ==
        doctest::Approx(oracle::bisect_u(100.0, 2.0)).epsilon(1e-12));
}

TEST_CASE("u_value defining identity over the parameter box") {
  double worst = 0.0;
  for (double a : log_grid(1e-3, 100.0, 50)) {
    for (double x : lin_grid(-10.0, 10.0, 50)) {
      const double u = u_value(a, x);
      CHECK(u > 0.0);
      const double r = std::abs(u * std::exp(a * u) - std::exp(x)) / std::exp(x);
      worst = std::max(worst, r);
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("u_value monotonicity") {
  for (double a : {0.5, 1.0, 10.0}) {
    double prev = u_value(a, -6.0);
    for (double x : lin_grid(-5.5, 8.0, 28)) {
      const double u = u_value(a, x);
      CHECK(u > prev);
      prev = u;
    }
  }
  for (double x : {-2.0, 0.0, 3.0}) {
    double prev = u_value(1e-3, x);
    for (double a : log_grid(2e-3, 50.0, 25)) {
      const double u = u_value(a, x);
      CHECK(u < prev);  // more repulsion, less density
      prev = u;
    }
  }
}

TEST_CASE("u_value domain errors") {
  CHECK_THROWS_AS(u_value(-0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(u_value(1.0, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(u_value(1.0, INFINITY), std::domain_error);
}

TEST_CASE("u_dx pinned points and finite differences") {
  CHECK(u_dx(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(u_dx(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(u_dx(1.0, 0.0) ==
        doctest::Approx(oracle::kOmega / (1.0 + oracle::kOmega)).epsilon(1e-12));
  CHECK(u_dx(1.0, 0.0) == doctest::Approx(0.36190).epsilon(1e-4));
  for (double a : {0.2, 1.0, 7.0}) {
    for (double x : {-3.0, 0.0, 1.5, 6.0}) {
      const double h = 1e-6 * std::max(1.0, std::abs(x));
      const double fd =
          oracle::central_diff([a](double t) { return u_value(a, t); }, x, h);
      CHECK(u_dx(a, x) == doctest::Approx(fd).epsilon(1e-6));
      CHECK(u_dx(a, x) > 0.0);
    }
  }
}

TEST_CASE("f_value pinned points and derivative route") {
  CHECK(f_value(1.0, 1.0) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(f_value(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  const double f10 = 0.5 * oracle::kOmega * oracle::kOmega + oracle::kOmega;
  CHECK(f_value(1.0, 0.0) == doctest::Approx(f10).epsilon(1e-13));
  for (double a : {0.5, 2.0}) {
    for (double x : {-2.0, 0.3, 4.0}) {
      const double h = 1e-6 * std::max(1.0, std::abs(x));
      const double fd =
          oracle::central_diff([a](double t) { return f_value(a, t); }, x, h);
      CHECK(fd == doctest::Approx(u_value(a, x)).epsilon(1e-6));
    }
  }
}

TEST_CASE("psi small-y expansion and limit") {
  CHECK(psi_value(0.1) == doctest::Approx(0.01 / 24.0).epsilon(0.03));
  CHECK(psi_value(1e-8) < 1e-15);  // -> 0 at the origin
  CHECK(psi_value(1e-8) > 0.0);
}

TEST_CASE("psi against extended-precision direct evaluation") {
  CHECK(std::abs(psi_value(1.0) - oracle::psi_direct(1.0)) <= 1e-12);
  for (double y : {0.01, 0.3, 2.0, 10.0, 40.0}) {
    CHECK(std::abs(psi_value(y) - oracle::psi_direct(y)) <= 1e-12);
  }
}

TEST_CASE("psi branch switch is seamless") {
  // overlap window around the series threshold 1e-3
  for (double y : lin_grid(5e-4, 2e-3, 31)) {
    CHECK(std::abs(psi_value(y) - oracle::psi_direct(y)) <= 1e-10);
  }
  const double below = psi_value(1e-3 * (1.0 - 1e-9));
  const double above = psi_value(1e-3 * (1.0 + 1e-9));
  CHECK(std::abs(below - above) <= 1e-12);
}

TEST_CASE("psi strictly increasing") {
  double prev = psi_value(1e-6);
  for (double y : log_grid(2e-6, 50.0, 120)) {
    const double p = psi_value(y);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("psi domain errors and derivative") {
  CHECK_THROWS_AS(psi_value(0.0), std::domain_error);
  CHECK_THROWS_AS(psi_value(-1.0), std::domain_error);
  CHECK_THROWS_AS(psi_dy(0.0), std::domain_error);
  for (double y : {5e-4, 0.05, 1.0, 8.0}) {
    const double fd = oracle::central_diff(
        [](double t) { return psi_value(t); }, y, 1e-7 * std::max(1.0, y));
    CHECK(psi_dy(y) == doctest::Approx(fd).epsilon(1e-5));
  }
}
