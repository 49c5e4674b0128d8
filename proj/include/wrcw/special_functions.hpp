#pragma once

// Special functions of the mean-field two-component gas.
//
// u(a,x) is the positive solution of u * exp(a*u) = exp(x), i.e. the inverse
// of u -> a*u + ln u.  It equals W(a*e^x)/a with W the principal Lambert
// branch, and reduces to exp(x) for a = 0.  f(a,x) = (a/2) u^2 + u is the
// free-energy surface whose x-derivative is u.  psi(y) parametrizes the
// order-parameter equation on the coexistence half-line.

namespace wrcw {

// Positive root of u*exp(a*u) = exp(x).  Requires a >= 0 and finite x.
// Relative residual of the defining identity is kept below 1e-12.
double u_value(double a, double x);

// d/dx u(a,x) = u / (1 + a*u).  Strictly positive.
double u_dx(double a, double x);

// f(a,x) = (a/2) u(a,x)^2 + u(a,x).
double f_value(double a, double x);

// psi(y) = y + y/(e^y - 1) - 1 + ln[y/(e^y - 1)] for y > 0.
// Strictly increasing from 0; behaves as y^2/24 near 0 and ln(y) - 1 at
// infinity.  Evaluated by series below y = 1e-3 to avoid cancellation.
double psi_value(double y);

// d/dy psi(y), same branch structure as psi_value.
double psi_dy(double y);

}  // namespace wrcw
