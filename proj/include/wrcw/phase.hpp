#pragma once

#include <vector>

// Phase structure of the mean-field two-component gas.
//
// A point (a, mu0, mu1) of the parameter space is classified by the number
// of global maxima of the landscape
//
//     E(y) = f(a, mu0 + y) + f(a, mu1 - y) - y^2 / (2a),
//
// one maximum on the single-phase region, a degenerate one on the critical
// line mu0 = mu1 = 1 - ln(a), and two symmetric maxima +-ybar on the
// coexistence half-line mu0 = mu1 > 1 - ln(a).

namespace wrcw {

struct PhasePoint {
  double a;    // repulsion strength, >= 0
  double mu0;  // chemical potential of type 0 (beta absorbed)
  double mu1;  // chemical potential of type 1
};

enum class Region { SinglePhase, Critical, Coexistence };

enum class StationaryKind { LocalMax, LocalMin, Degenerate };

struct StationaryPoint {
  double y;
  StationaryKind kind;
  double energy;  // E(y)
};

struct PhaseSolution {
  PhasePoint point;
  Region region;
  // Global maxima of E, ascending in y: one entry in SinglePhase/Critical,
  // two entries -ybar, +ybar in Coexistence.
  std::vector<StationaryPoint> maximizers;
  double order_parameter;    // ybar > 0 in Coexistence, 0 elsewhere
  bool near_degenerate_tie;  // two off-axis maxima within 1e-10 of each other
};

// E(y) at the given point; requires a > 0 (the free gas bypasses the
// landscape entirely).
double landscape_energy(const PhasePoint& point, double y);

// All real solutions of y = a*u(a, mu0+y) - a*u(a, mu1-y), ascending in y,
// annotated by the sign of E''.  There are 1, 2 or 3 of them; a merged
// double root is reported once and flagged Degenerate.  Requires a > 0.
std::vector<StationaryPoint> stationary_points(const PhasePoint& point);

// Region label plus the global maximizers of E.  Membership in the
// measure-zero sets (critical line, coexistence half-line) is decided with
// tolerance eps_eq on |mu0 - mu1| and eps_crit on the distance to the
// critical value 1 - ln(a).
PhaseSolution classify(const PhasePoint& point, double eps_eq = 1e-12,
                       double eps_crit = 1e-12);

// ybar(a, mu): 0 for mu <= 1 - ln(a), otherwise the unique root of
// psi(y) = mu - (1 - ln a).  Behaves as sqrt(24*(mu - (1 - ln a))) near the
// critical line.
double order_parameter(double a, double mu);

// Upper branch of the three-solution (spinodal) boundary in the reduced
// coordinates xi = (mu0+mu1)/2 + ln(a), eta = (mu1-mu0)/2:
//     eta = sqrt(xi^2 - 1) + ln(xi - sqrt(xi^2 - 1)),  xi >= 1.
// The lower branch is its mirror image -eta.
double spinodal_eta(double xi);

}  // namespace wrcw
