#include "wrcw/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wrcw/errors.hpp"

namespace wrcw {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_inputs(double a, double x, const char* who) {
  if (!std::isfinite(a) || !std::isfinite(x)) {
    throw std::domain_error(std::string(who) + ": inputs must be finite");
  }
  if (a < 0.0) {
    throw std::domain_error(std::string(who) + ": a must be >= 0");
  }
}

}  // namespace

double u_value(double a, double x) {
  check_inputs(a, x, "u_value");
  if (a == 0.0) return std::exp(x);

  // Nearly free regime: u = e^x e^{-a u} with a e^x small, one substitution
  // step leaves a residual of order (a e^x)^2.
  const double ex = std::exp(x);
  if (std::isfinite(ex) && a * ex < 1e-8) return ex * std::exp(-a * ex);

  // Solve g(u) = a u + ln u - x = 0.  g' = a + 1/u > 0, so the root is
  // unique; the root lies in (0, e^x) and below max(1, x/a).
  double hi = std::max(1.0, x / a);
  if (std::isfinite(ex)) hi = std::min(hi, ex);
  double lo = 0.0;

  double u = 1.0 / (a + std::exp(-x));  // e^x / (1 + a e^x), overflow-safe
  if (!(u > lo) || u > hi) u = 0.5 * hi;

  double g = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double au = a * u;
    const double lu = std::log(u);
    g = au + lu - x;
    const double tol =
        std::max(1e-14, 2.0 * kEps * (std::abs(au) + std::abs(lu) + std::abs(x) + 1.0));
    if (std::abs(g) <= tol) return u;
    if (g > 0.0) hi = u; else lo = u;
    double next = u - g / (a + 1.0 / u);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == u || hi - lo <= 4.0 * kEps * u) break;
    u = next;
  }
  if (std::abs(g) <= 1e-12 * (1.0 + std::abs(x))) return u;
  throw SolverError("u_value: no convergence at a=" + std::to_string(a) +
                    ", x=" + std::to_string(x));
}

double u_dx(double a, double x) {
  check_inputs(a, x, "u_dx");
  const double u = u_value(a, x);
  return u / (1.0 + a * u);
}

double f_value(double a, double x) {
  check_inputs(a, x, "f_value");
  const double u = u_value(a, x);
  return 0.5 * a * u * u + u;
}

double psi_value(double y) {
  if (!std::isfinite(y) || y <= 0.0) {
    throw std::domain_error("psi_value: y must be positive and finite");
  }
  if (y < 1e-3) {
    const double y2 = y * y;
    return y2 / 24.0 - y2 * y2 / 960.0 + y2 * y2 * y2 / 36288.0;
  }
  // psi = y/(e^y-1) - 1 + ln(y / (1 - e^{-y})) in a form free of overflow
  // and with the log of a near-unit ratio taken via log1p.
  const double em = std::exp(-y);
  const double den = -std::expm1(-y);  // 1 - e^{-y}
  return y * em / den - 1.0 + std::log1p((y - den) / den);
}

double psi_dy(double y) {
  if (!std::isfinite(y) || y <= 0.0) {
    throw std::domain_error("psi_dy: y must be positive and finite");
  }
  if (y < 1e-3) {
    const double y2 = y * y;
    return y / 12.0 - y * y2 / 240.0 + y * y2 * y2 / 6048.0;
  }
  const double em = std::exp(-y);
  const double den = -std::expm1(-y);
  const double bprime = em / den * (1.0 - y / den);
  return 1.0 + bprime + 1.0 / y - 1.0 / den;
}

}  // namespace wrcw
