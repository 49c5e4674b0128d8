#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wrcw/phase.hpp"

// Equations of state.  Densities are the Poisson intensities of the limiting
// phases, rho_i = u(a, mu_i +- y*), the two-component pressure is
// p = a rho0 rho1 + rho0 + rho1, and the one-component system at parameter
// theta is the two-component one at mu1 = ln(theta) with p_hat = p - theta.

namespace wrcw {

struct DensityPair {
  double rho0;
  double rho1;
};

struct DensityJumpSides {
  double rho_minus;  // density limit from mu < ln(theta)
  double rho_plus;   // density limit from mu > ln(theta)
};

struct OneComponentState {
  double a;
  double theta;
  double mu;
  double rho;    // resolved density; the low side at the jump point
  double p_hat;  // p - theta
  std::optional<DensityJumpSides> sides;  // set at mu = ln(theta), theta > e/a
};

enum class IsothermBranch { Low, Plateau, High };

struct IsothermSample {
  double rho;
  double p_hat;
  IsothermBranch branch;
};

struct PlateauSegment {
  double rho_minus;  // z~- , onset density
  double rho_plus;   // z~+ , end density
  double p_star;     // a z~+ z~- + z~+ + z~- - theta
};

struct IsothermCurve {
  std::vector<IsothermSample> samples;
  std::optional<PlateauSegment> plateau;  // present iff theta > e/a
};

struct RescaleResult {
  PhasePoint point;        // (alpha*a, mu0 - ln alpha, mu1 - ln alpha)
  double density_factor;   // 1/alpha
  double pressure_factor;  // 1/alpha
};

struct GroundStateDrift {
  double rho0;
  double rho1;
  double difference;       // rho0 - rho1
  double free_difference;  // e^{mu0} - e^{mu1}, lower bound of the difference
  double rho1_bound;       // rho0 * exp(-(mu0-mu1) - a (e^{mu0}-e^{mu1}))
};

// Density pair per global maximizer (two mutually swapped pairs at
// coexistence, ascending in y* so the (z~-, z~+) pair comes first).
std::vector<DensityPair> densities(const PhaseSolution& solution);
std::vector<DensityPair> densities(const PhasePoint& point);

// p = a rho0 rho1 + rho0 + rho1 at a global maximizer; both coexistence
// maximizers give the same value.
double pressure_two_component(const PhaseSolution& solution);
double pressure_two_component(const PhasePoint& point);

// The same pressure through the other route, max_y E(y); agreement with the
// density formula is a consistency check, not a cheaper path.
double pressure_from_landscape(const PhasePoint& point);

// One-component state at (a, theta, mu).  At mu = ln(theta) with
// theta > e/a both one-sided densities are reported in `sides`.
OneComponentState pressure_one_component(double a, double theta, double mu);

// Density increment ybar(a, ln theta)/a across the first-order transition.
// Requires theta > e/a.
double density_jump(double a, double theta);

// p_hat as a function of density along the isotherm: the closed form
// a theta rho e^{-a rho} + rho - theta (1 - e^{-a rho}) outside the
// coexistence interval [z~-, z~+], the constant p_star inside.  Plateau
// endpoints are inserted as duplicate samples so both branch values appear.
IsothermCurve isotherm(double a, double theta, std::span<const double> rho_grid);

// Closed form of the one-component equation of state at given density.
double one_component_pressure_at_density(double a, double theta, double rho);

// Scale transformation (a, mu0, mu1) -> (alpha a, mu0 - ln alpha,
// mu1 - ln alpha) under which region labels are invariant and densities and
// pressure pick up a factor 1/alpha.
RescaleResult rescale(const PhasePoint& point, double alpha);

// Diagnostics of the approach to the a -> infinity ground state for
// mu0 > mu1: the minority density decays like
// rho0 exp(-(mu0-mu1) - a(e^{mu0}-e^{mu1})) while rho0 -> e^{mu0}.
GroundStateDrift ground_state_drift(double a, double mu0, double mu1);

// Poisson(z V) mass at occupancy n, computed in the log domain.
double poisson_event_probability(double z, double volume, std::int64_t n);

// Two-type product measure: the joint event probability factorizes.
double poisson_joint_probability(double z0, double z1, double volume,
                                 std::int64_t n0, std::int64_t n1);

}  // namespace wrcw
