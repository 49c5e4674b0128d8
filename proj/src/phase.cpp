#include "wrcw/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wrcw/errors.hpp"
#include "wrcw/special_functions.hpp"

namespace wrcw {

namespace {

constexpr double kRootMergeDistance = 1e-6;  // double roots below this are one
constexpr double kDegenerateCurvature = 1e-8;
constexpr double kEqualMaxima = 1e-10;

void check_point(const PhasePoint& pt, const char* who) {
  if (!std::isfinite(pt.a) || !std::isfinite(pt.mu0) || !std::isfinite(pt.mu1)) {
    throw std::domain_error(std::string(who) + ": point must be finite");
  }
  if (pt.a < 0.0) {
    throw std::domain_error(std::string(who) + ": a must be >= 0");
  }
}

// h(y) = a u(a, mu0+y) - a u(a, mu1-y) - y; stationary points of E are its
// roots, and h' = a E''.
double gap(const PhasePoint& pt, double y) {
  return pt.a * u_value(pt.a, pt.mu0 + y) - pt.a * u_value(pt.a, pt.mu1 - y) - y;
}

double gap_dy(const PhasePoint& pt, double y) {
  return pt.a * u_dx(pt.a, pt.mu0 + y) + pt.a * u_dx(pt.a, pt.mu1 - y) - 1.0;
}

StationaryKind kind_at(const PhasePoint& pt, double y) {
  const double curv = gap_dy(pt, y);  // a * E''(y)
  if (curv < -kDegenerateCurvature) return StationaryKind::LocalMax;
  if (curv > kDegenerateCurvature) return StationaryKind::LocalMin;
  return StationaryKind::Degenerate;
}

StationaryPoint make_stationary(const PhasePoint& pt, double y) {
  return {y, kind_at(pt, y), landscape_energy(pt, y)};
}

// Bisection with Newton acceleration on a sign-change bracket of h.
double refine_root(const PhasePoint& pt, double lo, double hi, double flo) {
  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 120; ++it) {
    const double f = gap(pt, y);
    if (std::abs(f) <= 1e-13) return y;
    if ((f > 0.0) == (flo > 0.0)) lo = y; else hi = y;
    const double d = gap_dy(pt, y);
    double next = (d != 0.0) ? y - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 8.0 * std::numeric_limits<double>::epsilon() *
                       (1.0 + std::abs(y))) {
      return next;
    }
    y = next;
  }
  return y;
}

// Locate an extremum of h inside (lo, hi) by bisection on h'.
double refine_extremum(const PhasePoint& pt, double lo, double hi) {
  double dlo = gap_dy(pt, lo);
  double dhi = gap_dy(pt, hi);
  if ((dlo > 0.0) == (dhi > 0.0)) return 0.5 * (lo + hi);
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double d = gap_dy(pt, mid);
    if ((d > 0.0) == (dlo > 0.0)) { lo = mid; dlo = d; } else { hi = mid; }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double landscape_energy(const PhasePoint& pt, double y) {
  check_point(pt, "landscape_energy");
  if (pt.a == 0.0) {
    throw std::domain_error("landscape_energy: undefined at a = 0");
  }
  if (!std::isfinite(y)) {
    throw std::domain_error("landscape_energy: y must be finite");
  }
  return f_value(pt.a, pt.mu0 + y) + f_value(pt.a, pt.mu1 - y) -
         y * y / (2.0 * pt.a);
}

std::vector<StationaryPoint> stationary_points(const PhasePoint& pt) {
  check_point(pt, "stationary_points");
  if (pt.a == 0.0) {
    throw std::domain_error("stationary_points: requires a > 0");
  }

  // Every root satisfies -a e^{mu1} <= y <= a e^{mu0}; extend by 1 so the
  // scan brackets roots sitting on the bound itself.
  const double lo = -pt.a * std::exp(pt.mu1) - 1.0;
  const double hi = pt.a * std::exp(pt.mu0) + 1.0;
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi - lo > 1e8) {
    throw SolverError("stationary_points: scan interval too large");
  }

  constexpr int kSamples = 2048;
  const double step = (hi - lo) / kSamples;
  std::vector<double> ys(kSamples + 1), hs(kSamples + 1);
  for (int i = 0; i <= kSamples; ++i) {
    ys[i] = lo + i * step;
    hs[i] = gap(pt, ys[i]);
  }

  std::vector<double> roots;
  for (int i = 0; i < kSamples; ++i) {
    if (hs[i] == 0.0) roots.push_back(ys[i]);
    if (hs[i] * hs[i + 1] < 0.0) {
      roots.push_back(refine_root(pt, ys[i], ys[i + 1], hs[i]));
    }
  }
  if (hs[kSamples] == 0.0) roots.push_back(ys[kSamples]);

  // A pair of roots can hide between two samples when an extremum of h just
  // crosses zero (close to the spinodal boundary).  Refine every sampled
  // extremum and split its bracket if the sign at the extremum disagrees
  // with the neighbours.
  for (int i = 1; i < kSamples; ++i) {
    const bool discrete_max = hs[i] > hs[i - 1] && hs[i] > hs[i + 1];
    const bool discrete_min = hs[i] < hs[i - 1] && hs[i] < hs[i + 1];
    if (!discrete_max && !discrete_min) continue;
    const double ye = refine_extremum(pt, ys[i - 1], ys[i + 1]);
    const double he = gap(pt, ye);
    if (he == 0.0) { roots.push_back(ye); continue; }
    if (hs[i - 1] * he < 0.0 && hs[i] * hs[i - 1] > 0.0) {
      roots.push_back(refine_root(pt, ys[i - 1], ye, hs[i - 1]));
      roots.push_back(refine_root(pt, ye, ys[i + 1], he));
    }
  }

  std::sort(roots.begin(), roots.end());

  std::vector<StationaryPoint> result;
  std::size_t i = 0;
  while (i < roots.size()) {
    std::size_t j = i + 1;
    while (j < roots.size() && roots[j] - roots[j - 1] < kRootMergeDistance) ++j;
    if (j - i == 1) {
      result.push_back(make_stationary(pt, roots[i]));
    } else {
      // Numerically inseparable cluster: report its midpoint as degenerate.
      const double y = 0.5 * (roots[i] + roots[j - 1]);
      result.push_back({y, StationaryKind::Degenerate, landscape_energy(pt, y)});
    }
    i = j;
  }
  if (result.empty()) {
    throw SolverError("stationary_points: no root located in the bracket");
  }
  return result;
}

PhaseSolution classify(const PhasePoint& pt, double eps_eq, double eps_crit) {
  check_point(pt, "classify");
  PhaseSolution sol{pt, Region::SinglePhase, {}, 0.0, false};

  if (pt.a == 0.0) {
    // Free gas: no landscape, one Poisson phase with the free densities.
    sol.maximizers = {{0.0, StationaryKind::LocalMax,
                       std::exp(pt.mu0) + std::exp(pt.mu1)}};
    return sol;
  }

  if (std::abs(pt.mu0 - pt.mu1) <= eps_eq) {
    const double mu = 0.5 * (pt.mu0 + pt.mu1);
    const double delta = mu - (1.0 - std::log(pt.a));
    if (std::abs(delta) <= eps_crit) {
      sol.region = Region::Critical;
      sol.maximizers = {{0.0, StationaryKind::Degenerate,
                         landscape_energy(pt, 0.0)}};
      return sol;
    }
    if (delta > eps_crit) {
      sol.region = Region::Coexistence;
      const double ybar = order_parameter(pt.a, mu);
      sol.order_parameter = ybar;
      sol.maximizers = {make_stationary(pt, -ybar), make_stationary(pt, ybar)};
      return sol;
    }
    // Subcritical symmetric point: y = 0 is the unique global maximum.
    sol.maximizers = {make_stationary(pt, 0.0)};
    return sol;
  }

  auto stationary = stationary_points(pt);
  double emax = -std::numeric_limits<double>::infinity();
  for (const auto& s : stationary) {
    if (s.kind != StationaryKind::LocalMin) emax = std::max(emax, s.energy);
  }
  for (const auto& s : stationary) {
    if (s.kind != StationaryKind::LocalMin && s.energy >= emax - kEqualMaxima) {
      sol.maximizers.push_back(s);
    }
  }
  // Off-axis exact ties do not occur in this model; surface them instead of
  // picking a side.
  sol.near_degenerate_tie = sol.maximizers.size() > 1;
  return sol;
}

double order_parameter(double a, double mu) {
  if (!std::isfinite(a) || !std::isfinite(mu) || a <= 0.0) {
    throw std::domain_error("order_parameter: requires finite mu and a > 0");
  }
  const double delta = mu - (1.0 - std::log(a));
  if (delta <= 0.0) return 0.0;

  // psi(y) > ln(y) - 1, so psi(e^{delta+1}) > delta always brackets above.
  double hi = (delta > 700.0) ? 1e307 : std::exp(delta + 1.0) + 1.0;
  double lo = 0.0;  // psi -> 0 as y -> 0+
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (psi_value(mid) < delta) lo = mid; else hi = mid;
    if (hi - lo <= 1e-12 * hi) break;
  }
  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 40; ++it) {
    const double r = psi_value(y) - delta;
    if (std::abs(r) <= 1e-15 * std::max(1.0, std::abs(delta))) break;
    if (r > 0.0) hi = y; else lo = y;
    double next = y - r / psi_dy(y);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == y) break;
    y = next;
  }
  return y;
}

double spinodal_eta(double xi) {
  if (!std::isfinite(xi) || xi < 1.0) {
    throw std::domain_error("spinodal_eta: requires xi >= 1");
  }
  const double s = std::sqrt((xi - 1.0) * (xi + 1.0));
  // ln(xi - s) = -ln(xi + s), which avoids the cancellation at large xi.
  return s - std::log(xi + s);
}

}  // namespace wrcw
