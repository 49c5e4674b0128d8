#include "wrcw/eos.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wrcw/errors.hpp"
#include "wrcw/special_functions.hpp"

namespace wrcw {

namespace {

constexpr double kConsistencyTol = 1e-10;

DensityPair pair_at(const PhasePoint& pt, double y_star) {
  return {u_value(pt.a, pt.mu0 + y_star), u_value(pt.a, pt.mu1 - y_star)};
}

bool has_plateau(double a, double theta) {
  return a > 0.0 && theta * a > std::exp(1.0);
}

}  // namespace

std::vector<DensityPair> densities(const PhaseSolution& sol) {
  std::vector<DensityPair> out;
  out.reserve(sol.maximizers.size());
  for (const auto& m : sol.maximizers) out.push_back(pair_at(sol.point, m.y));
  return out;
}

std::vector<DensityPair> densities(const PhasePoint& pt) {
  return densities(classify(pt));
}

double pressure_two_component(const PhaseSolution& sol) {
  const auto d = pair_at(sol.point, sol.maximizers.front().y);
  return sol.point.a * d.rho0 * d.rho1 + d.rho0 + d.rho1;
}

double pressure_two_component(const PhasePoint& pt) {
  return pressure_two_component(classify(pt));
}

double pressure_from_landscape(const PhasePoint& pt) {
  const auto sol = classify(pt);
  if (pt.a == 0.0) return std::exp(pt.mu0) + std::exp(pt.mu1);
  return landscape_energy(pt, sol.maximizers.front().y);
}

double one_component_pressure_at_density(double a, double theta, double rho) {
  // p_hat = a theta rho e^{-a rho} + rho - theta (1 - e^{-a rho})
  const double ear = std::exp(-a * rho);
  return a * theta * rho * ear + rho + theta * std::expm1(-a * rho);
}

OneComponentState pressure_one_component(double a, double theta, double mu) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw std::domain_error("pressure_one_component: theta must be > 0");
  }
  const PhasePoint pt{a, mu, std::log(theta)};
  const auto sol = classify(pt);
  const auto rho_pairs = densities(sol);
  const double p = pressure_two_component(sol);

  OneComponentState st{a, theta, mu, rho_pairs.front().rho0, p - theta, {}};
  if (sol.region == Region::Coexistence) {
    // Maximizers ascend in y, so rho0 values ascend from z~- to z~+.
    st.sides = DensityJumpSides{rho_pairs.front().rho0, rho_pairs.back().rho0};
  }

  for (const auto& rp : rho_pairs) {
    const double closed = one_component_pressure_at_density(a, theta, rp.rho0);
    if (std::abs(closed - st.p_hat) > kConsistencyTol * std::max(1.0, std::abs(st.p_hat))) {
      throw SolverError("pressure_one_component: closed form disagrees with p - theta");
    }
  }
  return st;
}

double density_jump(double a, double theta) {
  if (!(a > 0.0) || !has_plateau(a, theta)) {
    throw std::domain_error("density_jump: no phase transition at this theta");
  }
  return order_parameter(a, std::log(theta)) / a;
}

IsothermCurve isotherm(double a, double theta, std::span<const double> rho_grid) {
  if (!(a >= 0.0) || !(theta > 0.0)) {
    throw std::domain_error("isotherm: requires a >= 0 and theta > 0");
  }
  if (rho_grid.empty()) throw std::domain_error("isotherm: empty density grid");
  for (std::size_t i = 0; i < rho_grid.size(); ++i) {
    if (!(rho_grid[i] > 0.0) || (i > 0 && rho_grid[i] < rho_grid[i - 1])) {
      throw std::domain_error("isotherm: grid must be positive and ascending");
    }
  }

  IsothermCurve curve;
  if (has_plateau(a, theta)) {
    const double mu = std::log(theta);
    const double ybar = order_parameter(a, mu);
    const double zm = u_value(a, mu - ybar);
    const double zp = u_value(a, mu + ybar);
    curve.plateau = PlateauSegment{zm, zp, a * zp * zm + zp + zm - theta};
  }

  auto classify_rho = [&](double rho) {
    if (!curve.plateau) return IsothermBranch::Low;
    if (rho < curve.plateau->rho_minus) return IsothermBranch::Low;
    if (rho > curve.plateau->rho_plus) return IsothermBranch::High;
    return IsothermBranch::Plateau;
  };
  auto push = [&](double rho, IsothermBranch branch) {
    const double p = branch == IsothermBranch::Plateau
                         ? curve.plateau->p_star
                         : one_component_pressure_at_density(a, theta, rho);
    curve.samples.push_back({rho, p, branch});
  };

  // Plateau endpoints are inserted as duplicate rows, one per adjoining
  // branch, so the continuity of the assembled curve is visible in the data.
  for (std::size_t i = 0; i < rho_grid.size(); ++i) {
    const double rho = rho_grid[i];
    if (curve.plateau && i > 0) {
      const double prev = rho_grid[i - 1];
      const double zm = curve.plateau->rho_minus;
      const double zp = curve.plateau->rho_plus;
      if (prev < zm && rho > zm) {
        push(zm, IsothermBranch::Low);
        push(zm, IsothermBranch::Plateau);
      }
      if (prev < zp && rho > zp) {
        push(zp, IsothermBranch::Plateau);
        push(zp, IsothermBranch::High);
      }
    }
    push(rho, classify_rho(rho));
  }
  return curve;
}

RescaleResult rescale(const PhasePoint& pt, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("rescale: alpha must be > 0");
  }
  const double la = std::log(alpha);
  return {{alpha * pt.a, pt.mu0 - la, pt.mu1 - la}, 1.0 / alpha, 1.0 / alpha};
}

GroundStateDrift ground_state_drift(double a, double mu0, double mu1) {
  if (!(a > 0.0)) throw std::domain_error("ground_state_drift: requires a > 0");
  if (!(mu0 > mu1)) {
    throw std::domain_error("ground_state_drift: requires mu0 > mu1");
  }
  const auto sol = classify({a, mu0, mu1});
  const auto d = densities(sol).front();
  const double free_diff = std::exp(mu0) - std::exp(mu1);
  const double bound = d.rho0 * std::exp(-(mu0 - mu1) - a * free_diff);
  return {d.rho0, d.rho1, d.rho0 - d.rho1, free_diff, bound};
}

double poisson_event_probability(double z, double volume, std::int64_t n) {
  if (!(z > 0.0) || !(volume > 0.0) || n < 0) {
    throw std::domain_error("poisson_event_probability: requires z > 0, V > 0, n >= 0");
  }
  const double lambda = z * volume;
  return std::exp(static_cast<double>(n) * std::log(lambda) -
                  std::lgamma(static_cast<double>(n) + 1.0) - lambda);
}

double poisson_joint_probability(double z0, double z1, double volume,
                                 std::int64_t n0, std::int64_t n1) {
  return poisson_event_probability(z0, volume, n0) *
         poisson_event_probability(z1, volume, n1);
}

}  // namespace wrcw
