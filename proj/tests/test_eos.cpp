#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "wrcw/eos.hpp"
#include "wrcw/phase.hpp"
#include "wrcw/special_functions.hpp"

using namespace wrcw;

namespace {

const PhasePoint kSamplePoints[] = {{1, 0, 0},     {1, 2, 2},   {1, 2, 0.5},
                                    {2, 1, -1},    {0.5, 3, 3}, {1, 5, -5},
                                    {3, -1, -0.5}, {0.8, 2, 2}};

double pressure_of(const DensityPair& d, double a) {
  return a * d.rho0 * d.rho1 + d.rho0 + d.rho1;
}

}  // namespace

TEST_CASE("densities at the pinned points") {
  auto free_gas = densities(PhasePoint{0, std::log(2.0), 0});
  REQUIRE(free_gas.size() == 1);
  CHECK(free_gas[0].rho0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(free_gas[0].rho1 == doctest::Approx(1.0).epsilon(1e-14));

  auto symmetric = densities(PhasePoint{1, 0, 0});
  REQUIRE(symmetric.size() == 1);
  CHECK(symmetric[0].rho0 == doctest::Approx(oracle::kOmega).epsilon(1e-12));
  CHECK(symmetric[0].rho1 == doctest::Approx(oracle::kOmega).epsilon(1e-12));

  auto coex = densities(PhasePoint{1, 2, 2});
  REQUIRE(coex.size() == 2);
  const double ybar = order_parameter(1.0, 2.0);
  const double zp = u_value(1.0, 2.0 + ybar);
  const double zm = u_value(1.0, 2.0 - ybar);
  CHECK(coex[0].rho0 == doctest::Approx(zm).epsilon(1e-12));
  CHECK(coex[0].rho1 == doctest::Approx(zp).epsilon(1e-12));
  CHECK(coex[1].rho0 == doctest::Approx(zp).epsilon(1e-12));
  CHECK(coex[1].rho1 == doctest::Approx(zm).epsilon(1e-12));
}

TEST_CASE("density self-consistency and stability") {
  for (const auto& pt : kSamplePoints) {
    for (const auto& d : densities(pt)) {
      CHECK(std::abs(d.rho0 - std::exp(pt.mu0 - pt.a * d.rho1)) <= 1e-10);
      CHECK(std::abs(d.rho1 - std::exp(pt.mu1 - pt.a * d.rho0)) <= 1e-10);
      // repulsion only lowers the densities (up to solver noise when the
      // suppression itself is far below double precision)
      CHECK(d.rho0 <= std::exp(pt.mu0) * (1.0 + 1e-12));
      CHECK(d.rho1 <= std::exp(pt.mu1) * (1.0 + 1e-12));
      CHECK(1.0 - pt.a * pt.a * d.rho0 * d.rho1 > 0.0);
    }
  }
}

TEST_CASE("two-component pressure") {
  CHECK(pressure_two_component(PhasePoint{0, std::log(2.0), 0}) ==
        doctest::Approx(3.0).epsilon(1e-14));
  const double p00 = oracle::kOmega * oracle::kOmega + 2.0 * oracle::kOmega;
  CHECK(pressure_two_component(PhasePoint{1, 0, 0}) ==
        doctest::Approx(p00).epsilon(1e-12));

  // both coexistence phases carry the same pressure
  auto coex = densities(PhasePoint{1, 2, 2});
  REQUIRE(coex.size() == 2);
  CHECK(pressure_of(coex[0], 1.0) ==
        doctest::Approx(pressure_of(coex[1], 1.0)).epsilon(1e-12));
}

TEST_CASE("pressure agrees with the landscape maximum") {
  for (const auto& pt : kSamplePoints) {
    CHECK(std::abs(pressure_two_component(pt) - pressure_from_landscape(pt)) <=
          1e-10 * std::max(1.0, pressure_two_component(pt)));
  }
}

TEST_CASE("densities are the pressure gradient") {
  // away from the transition set, rho_i = dp/dmu_i
  const PhasePoint pts[] = {{1, 0.3, -0.2}, {2, 1, 0.5}, {0.5, -1, -2},
                            {1, 2, 0.5}};
  for (const auto& pt : pts) {
    const auto d = densities(pt).front();
    const double h = 1e-5;
    const double fd0 = oracle::central_diff(
        [&](double m) { return pressure_two_component(PhasePoint{pt.a, m, pt.mu1}); },
        pt.mu0, h);
    const double fd1 = oracle::central_diff(
        [&](double m) { return pressure_two_component(PhasePoint{pt.a, pt.mu0, m}); },
        pt.mu1, h);
    CHECK(fd0 == doctest::Approx(d.rho0).epsilon(1e-6));
    CHECK(fd1 == doctest::Approx(d.rho1).epsilon(1e-6));
  }
}

TEST_CASE("one-component state on and off the jump") {
  // theta > e/a with mu at the jump: both one-sided densities reported
  const double theta = std::exp(2.0);
  auto at_jump = pressure_one_component(1.0, theta, 2.0);
  REQUIRE(at_jump.sides.has_value());
  const double ybar = order_parameter(1.0, 2.0);
  CHECK(at_jump.sides->rho_minus ==
        doctest::Approx(u_value(1.0, 2.0 - ybar)).epsilon(1e-10));
  CHECK(at_jump.sides->rho_plus ==
        doctest::Approx(u_value(1.0, 2.0 + ybar)).epsilon(1e-10));
  CHECK(at_jump.rho == at_jump.sides->rho_minus);

  // theta <= e/a: continuous everywhere, no sides ever
  for (double mu : {-1.0, 0.0, 1.0}) {
    auto st = pressure_one_component(1.0, 1.0, mu);
    CHECK(!st.sides.has_value());
  }

  // free case collapses to p_hat = rho
  auto free_state = pressure_one_component(0.0, 1.0, 0.0);
  CHECK(free_state.rho == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(free_state.p_hat == doctest::Approx(1.0).epsilon(1e-14));

  // closed form matches p - theta along an off-jump sweep
  for (double mu : {0.0, 1.0, 1.9, 2.1, 3.0}) {
    auto st = pressure_one_component(1.0, theta, mu);
    CHECK(std::abs(one_component_pressure_at_density(1.0, theta, st.rho) -
                   st.p_hat) <= 1e-10 * std::max(1.0, std::abs(st.p_hat)));
  }
}

TEST_CASE("density jump") {
  const double theta = std::exp(2.0);
  const double ybar = order_parameter(1.0, 2.0);
  const double jump = density_jump(1.0, theta);
  CHECK(jump == doctest::Approx(ybar).epsilon(1e-12));
  const double zp = u_value(1.0, 2.0 + ybar);
  const double zm = u_value(1.0, 2.0 - ybar);
  CHECK(std::abs(jump - (zp - zm)) <= 1e-10);

  // vanishes toward the critical line
  CHECK(density_jump(1.0, std::exp(1.0) * 1.0001) < 0.1);
  CHECK_THROWS_AS(density_jump(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(density_jump(1.0, std::exp(1.0)), std::domain_error);

  // rescaling theta -> theta/alpha at a -> alpha a halves the jump
  CHECK(density_jump(2.0, theta / 2.0) ==
        doctest::Approx(jump / 2.0).epsilon(1e-12));
}

TEST_CASE("isotherm with plateau") {
  const double theta = std::exp(2.0);
  std::vector<double> grid;
  for (int i = 0; i < 200; ++i) grid.push_back(0.001 + (10.0 - 0.001) * i / 199);
  auto curve = isotherm(1.0, theta, grid);
  REQUIRE(curve.plateau.has_value());

  const double ybar = order_parameter(1.0, 2.0);
  CHECK(curve.plateau->rho_minus ==
        doctest::Approx(u_value(1.0, 2.0 - ybar)).epsilon(1e-9));
  CHECK(curve.plateau->rho_plus ==
        doctest::Approx(u_value(1.0, 2.0 + ybar)).epsilon(1e-9));

  // continuity at both joints
  CHECK(std::abs(one_component_pressure_at_density(1.0, theta,
                                                   curve.plateau->rho_minus) -
                 curve.plateau->p_star) <= 1e-10);
  CHECK(std::abs(one_component_pressure_at_density(1.0, theta,
                                                   curve.plateau->rho_plus) -
                 curve.plateau->p_star) <= 1e-10);

  // nondecreasing along the assembled curve, branches in order
  int last_branch = 0;
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    if (i > 0) {
      CHECK(curve.samples[i].rho >= curve.samples[i - 1].rho);
      CHECK(curve.samples[i].p_hat >= curve.samples[i - 1].p_hat - 1e-12);
    }
    const int b = static_cast<int>(curve.samples[i].branch);
    CHECK(b >= last_branch);
    last_branch = b;
  }
  // endpoint rows are duplicated across the branch change
  int plateau_rows = 0;
  for (const auto& s : curve.samples) {
    if (s.branch == IsothermBranch::Plateau) ++plateau_rows;
  }
  CHECK(plateau_rows >= 2);
}

TEST_CASE("isotherm without plateau") {
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back(0.01 + 3.0 * i / 99);
  auto curve = isotherm(1.0, 1.0, grid);  // theta = 1 < e/a
  CHECK(!curve.plateau.has_value());
  for (std::size_t i = 1; i < curve.samples.size(); ++i) {
    CHECK(curve.samples[i].p_hat > curve.samples[i - 1].p_hat);
    CHECK(curve.samples[i].branch == IsothermBranch::Low);
  }
  CHECK_THROWS_AS(isotherm(1.0, 1.0, std::vector<double>{2.0, 1.0}),
                  std::domain_error);
  CHECK_THROWS_AS(isotherm(1.0, 1.0, std::vector<double>{-1.0, 1.0}),
                  std::domain_error);
}

TEST_CASE("free-gas isotherm is the identity") {
  std::vector<double> grid{0.5, 1.0, 2.0};
  auto curve = isotherm(0.0, 1.0, grid);
  REQUIRE(curve.samples.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(curve.samples[i].p_hat == doctest::Approx(grid[i]).epsilon(1e-14));
  }
}

TEST_CASE("rescaling") {
  auto id = rescale({1, 2, 2}, 1.0);
  CHECK(id.point.a == 1.0);
  CHECK(id.point.mu0 == 2.0);
  CHECK(id.density_factor == 1.0);

  auto scaled = rescale({1, 2, 2}, 2.0);
  CHECK(scaled.point.a == 2.0);
  CHECK(scaled.point.mu0 == doctest::Approx(2.0 - std::log(2.0)));
  CHECK(classify(scaled.point).region == Region::Coexistence);

  for (double alpha : {0.1, 0.5, 2.0, 10.0}) {
    for (const auto& pt : kSamplePoints) {
      auto r = rescale(pt, alpha);
      CHECK(classify(r.point).region == classify(pt).region);
      auto d0 = densities(pt);
      auto d1 = densities(r.point);
      REQUIRE(d0.size() == d1.size());
      for (std::size_t i = 0; i < d0.size(); ++i) {
        CHECK(std::abs(d1[i].rho0 - d0[i].rho0 * r.density_factor) <=
              1e-10 * std::max(1.0, d0[i].rho0 * r.density_factor));
        CHECK(std::abs(d1[i].rho1 - d0[i].rho1 * r.density_factor) <=
              1e-10 * std::max(1.0, d0[i].rho1 * r.density_factor));
      }
      CHECK(std::abs(pressure_two_component(r.point) -
                     pressure_two_component(pt) * r.pressure_factor) <=
            1e-10 * std::max(1.0, pressure_two_component(pt) * r.pressure_factor));
    }
  }
}

TEST_CASE("ground state drift") {
  auto strong = ground_state_drift(100.0, 1.0, 0.0);
  CHECK(std::abs(strong.rho0 - std::exp(1.0)) <= 1e-3);
  CHECK(strong.rho1 < 1e-10);
  CHECK(strong.rho1 <= strong.rho1_bound);
  CHECK(strong.difference >= strong.free_difference);

  // a -> 0 recovers the free difference
  auto weak = ground_state_drift(1e-6, 1.0, 0.0);
  CHECK(std::abs(weak.difference - (std::exp(1.0) - 1.0)) <= 1e-4);

  // the density gap grows with a
  double prev = 0.0;
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    const double diff = ground_state_drift(a, 1.0, 0.0).difference;
    CHECK(diff > prev);
    prev = diff;
  }
  CHECK_THROWS_AS(ground_state_drift(1.0, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(ground_state_drift(1.0, -1.0, 0.0), std::domain_error);
}

TEST_CASE("poisson occupancy probabilities") {
  CHECK(poisson_event_probability(1.0, 1.0, 0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  // direct small case: (zV)^n/n! e^{-zV}
  CHECK(poisson_event_probability(2.0, 3.0, 5) ==
        doctest::Approx(std::pow(6.0, 5) / 120.0 * std::exp(-6.0)).epsilon(1e-13));
  double total = 0.0;
  for (int n = 0; n < 80; ++n) total += poisson_event_probability(1.5, 4.0, n);
  CHECK(std::abs(total - 1.0) <= 1e-12);
  // the two-type joint mass is exactly the product of its marginals
  CHECK(poisson_joint_probability(1.0, 2.0, 3.0, 4, 5) ==
        poisson_event_probability(1.0, 3.0, 4) *
            poisson_event_probability(2.0, 3.0, 5));
  CHECK_THROWS_AS(poisson_event_probability(-1.0, 1.0, 0), std::domain_error);
  CHECK_THROWS_AS(poisson_event_probability(1.0, 1.0, -2), std::domain_error);
}
