#include "wrcw/finite_volume.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "wrcw/errors.hpp"
#include "wrcw/special_functions.hpp"

namespace wrcw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Streaming log-sum-exp with a running maximum.
class LogAccumulator {
 public:
  void add(double t) {
    if (t == kNegInf) return;
    if (t <= max_) {
      sum_ += std::exp(t - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - t) + 1.0;
      max_ = t;
    }
  }
  double max_term() const { return max_; }
  double log_total() const {
    return (sum_ > 0.0) ? max_ + std::log(sum_) : kNegInf;
  }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

void check_spec(const FiniteVolumeSpec& spec, const char* who) {
  if (!(spec.volume > 0.0) || !std::isfinite(spec.volume)) {
    throw std::domain_error(std::string(who) + ": volume must be > 0");
  }
  if (!(spec.tail_tol > 0.0) || spec.tail_tol >= 1.0) {
    throw std::domain_error(std::string(who) + ": tail_tol must be in (0,1)");
  }
}

// Poisson-dominated truncation bound: the summand cannot outgrow the free
// term with mean V e^mu, padded by ten standard deviations plus a floor.
std::int64_t auto_bound(double volume, double mu) {
  const double em = std::exp(std::min(mu, 45.0));
  const double n = volume * (em + 10.0 * std::sqrt(em / volume)) + 50.0;
  if (n > 4e18) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(std::ceil(n));
}

std::int64_t initial_bound(const FiniteVolumeSpec& spec, double mu) {
  const std::int64_t n = spec.n_max > 0 ? spec.n_max : auto_bound(spec.volume, mu);
  if (n > spec.hard_cap) {
    throw ResourceError("finite_volume: truncation bound " + std::to_string(n) +
                        " exceeds hard cap " + std::to_string(spec.hard_cap));
  }
  return n;
}

std::int64_t extend_bound(std::int64_t cap, std::int64_t hard_cap) {
  const std::int64_t next = cap + cap / 2 + 16;
  if (next > hard_cap) {
    throw ResourceError("finite_volume: tail criterion unmet at hard cap " +
                        std::to_string(hard_cap));
  }
  return next;
}

// Sum exp(term(n)) over n >= 0 for a term sequence that rises to a single
// peak and then decays (term increments strictly decreasing).  Stops once
// the running term has passed its peak and fallen below tail_tol times the
// maximum; extends the bound if the criterion is not met in range.
template <typename TermFn>
double log_sum_unimodal(const FiniteVolumeSpec& spec, std::int64_t cap,
                        const double log_tail, TermFn&& term) {
  for (;;) {
    LogAccumulator acc;
    double prev = std::numeric_limits<double>::infinity();
    bool tail_ok = false;
    for (std::int64_t n = 0; n <= cap; ++n) {
      const double t = term(n);
      acc.add(t);
      if (t < prev && t <= acc.max_term() + log_tail) {
        tail_ok = true;
        break;
      }
      prev = t;
    }
    if (tail_ok) return acc.log_total();
    cap = extend_bound(cap, spec.hard_cap);
  }
}

// Terms of the single-species sum sum_n V^n/n! exp(x n - a n^2/(2V)).
struct SingleSumTerm {
  double log_v_plus_x;
  double a_over_2v;
  double operator()(std::int64_t n) const {
    const double nd = static_cast<double>(n);
    return nd * log_v_plus_x - std::lgamma(nd + 1.0) - a_over_2v * nd * nd;
  }
};

double log_f_v_sum(const FiniteVolumeSpec& spec, double a, double x) {
  const SingleSumTerm term{std::log(spec.volume) + x, a / (2.0 * spec.volume)};
  return log_sum_unimodal(spec, initial_bound(spec, x), std::log(spec.tail_tol),
                          term);
}

struct Xi2Sum {
  double log_xi;          // ln Xi_V
  std::int64_t n0_max;
  std::int64_t n1_max;
  std::vector<double> log_weight;  // filled only when requested
};

// Exact double sum of the two-component partition function.  Rows (fixed
// n0) are unimodal in n1, so each row breaks early against the global
// maximum; the row index itself is never cut short because the weight
// surface is bimodal in n0 at coexistence.
Xi2Sum xi_two_component_sum(const FiniteVolumeSpec& spec, double a, double mu0,
                            double mu1, bool store_weights) {
  check_spec(spec, "log_xi_two_component");
  if (!std::isfinite(a) || a < 0.0 || !std::isfinite(mu0) || !std::isfinite(mu1)) {
    throw std::domain_error("log_xi_two_component: bad parameters");
  }
  const double log_v = std::log(spec.volume);
  const double log_tail = std::log(spec.tail_tol);
  std::int64_t n0_cap = initial_bound(spec, mu0);
  std::int64_t n1_cap = initial_bound(spec, mu1);

  for (;;) {
    LogAccumulator acc;
    std::vector<double> weights;
    if (store_weights) {
      if ((n0_cap + 1) > 100'000'000 / (n1_cap + 1)) {
        throw ResourceError("occupancy_distribution: weight table too large");
      }
      weights.assign((n0_cap + 1) * (n1_cap + 1), kNegInf);
    }
    bool n1_exhausted = false;
    double last_row_max = kNegInf;

    for (std::int64_t n0 = 0; n0 <= n0_cap; ++n0) {
      const double nd0 = static_cast<double>(n0);
      const double base = nd0 * (log_v + mu0) - std::lgamma(nd0 + 1.0);
      const double slope = mu1 - a * nd0 / spec.volume;  // per-n1 drift
      double prev = std::numeric_limits<double>::infinity();
      double row_max = kNegInf;
      double t = kNegInf;
      bool row_tail_ok = false;
      for (std::int64_t n1 = 0; n1 <= n1_cap; ++n1) {
        const double nd1 = static_cast<double>(n1);
        t = base + nd1 * (log_v + slope) - std::lgamma(nd1 + 1.0);
        acc.add(t);
        if (store_weights) weights[n0 * (n1_cap + 1) + n1] = t;
        row_max = std::max(row_max, t);
        // Break only past the row peak: the cutoff is global, so a rising
        // row can sit below it long before its own maximum.
        if (n1 > 0 && t < prev && t <= acc.max_term() + log_tail) {
          row_tail_ok = true;
          break;
        }
        prev = t;
      }
      // A row cut off while still significant, or still rising, needs a
      // wider n1 range (only reachable with a user-supplied bound).
      if (!row_tail_ok &&
          (row_max > acc.max_term() + log_tail || t == row_max)) {
        n1_exhausted = true;
        break;
      }
      if (n0 == n0_cap) last_row_max = row_max;
    }

    if (n1_exhausted) {
      n1_cap = extend_bound(n1_cap, spec.hard_cap);
      continue;
    }
    if (last_row_max > acc.max_term() + log_tail) {
      n0_cap = extend_bound(n0_cap, spec.hard_cap);
      continue;
    }
    return {acc.log_total(), n0_cap, n1_cap, std::move(weights)};
  }
}

// Adaptive Simpson on [a, b] with an absolute tolerance.
double simpson_segment(const std::function<double(double)>& fn, double a,
                       double fa, double m, double fm, double b, double fb,
                       double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = fn(lm);
  const double frm = fn(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) {
    throw SolverError("laplace_integral: quadrature recursion exhausted");
  }
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_segment(fn, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         simpson_segment(fn, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& fn, double a,
                        double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = fn(a);
  const double fm = fn(m);
  const double fb = fn(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_segment(fn, a, fa, m, fm, b, fb, whole, tol, 48);
}

}  // namespace

double log_xi_two_component(const FiniteVolumeSpec& spec, double a, double mu0,
                            double mu1) {
  return xi_two_component_sum(spec, a, mu0, mu1, false).log_xi / spec.volume;
}

double f_v_value(const FiniteVolumeSpec& spec, double a, double x) {
  check_spec(spec, "f_v_value");
  if (!std::isfinite(a) || a < 0.0 || !std::isfinite(x)) {
    throw std::domain_error("f_v_value: bad parameters");
  }
  return log_f_v_sum(spec, a, x) / spec.volume;
}

FiniteVolumeMoments u_v_moments(const FiniteVolumeSpec& spec, double a,
                                double x) {
  check_spec(spec, "u_v_moments");
  if (!std::isfinite(a) || a < 0.0 || !std::isfinite(x)) {
    throw std::domain_error("u_v_moments: bad parameters");
  }
  const SingleSumTerm term{std::log(spec.volume) + x, a / (2.0 * spec.volume)};
  const double log_tail = std::log(spec.tail_tol);
  std::int64_t cap = initial_bound(spec, x);

  std::vector<double> ts;
  for (;;) {
    ts.clear();
    double tmax = kNegInf;
    double prev = std::numeric_limits<double>::infinity();
    bool tail_ok = false;
    for (std::int64_t n = 0; n <= cap; ++n) {
      const double t = term(n);
      ts.push_back(t);
      tmax = std::max(tmax, t);
      if (t < prev && t <= tmax + log_tail) {
        tail_ok = true;
        break;
      }
      prev = t;
    }
    if (tail_ok) break;
    cap = extend_bound(cap, spec.hard_cap);
  }

  LogAccumulator acc;
  for (double t : ts) acc.add(t);
  const double log_z = acc.log_total();

  double mean = 0.0;
  for (std::size_t n = 0; n < ts.size(); ++n) {
    mean += static_cast<double>(n) * std::exp(ts[n] - log_z);
  }
  double var = 0.0, third = 0.0;
  for (std::size_t n = 0; n < ts.size(); ++n) {
    const double w = std::exp(ts[n] - log_z);
    const double d = static_cast<double>(n) - mean;
    var += d * d * w;
    third += d * d * d * w;
  }
  const double v = spec.volume;
  return {mean / v, var / v, third / v};
}

double log_xi_one_component(const FiniteVolumeSpec& spec, double a,
                            double theta, double mu) {
  check_spec(spec, "log_xi_one_component");
  if (!std::isfinite(a) || a < 0.0 || !(theta > 0.0) || !std::isfinite(mu)) {
    throw std::domain_error("log_xi_one_component: bad parameters");
  }
  const double v = spec.volume;
  const double log_v_plus_mu = std::log(v) + mu;
  auto term = [&](std::int64_t n) {
    const double nd = static_cast<double>(n);
    // energy V theta (1 - e^{-a n / V}) via expm1 for small exponents
    return nd * log_v_plus_mu - std::lgamma(nd + 1.0) +
           v * theta * std::expm1(-a * nd / v);
  };

  // The saturating energy makes the term sequence possibly bimodal, so no
  // early break: sum the full range and only check the boundary tail.  The
  // Poisson bound is padded to absorb the at most V*theta of energy deficit.
  std::int64_t cap = spec.n_max > 0 ? spec.n_max : [&] {
    const double lambda = v * std::exp(std::min(mu, 45.0));
    const double n = lambda + 10.0 * std::sqrt(lambda) +
                     std::sqrt(2.0 * lambda * (v * theta + 40.0)) + 50.0;
    return n > 4e18 ? std::numeric_limits<std::int64_t>::max()
                    : static_cast<std::int64_t>(std::ceil(n));
  }();
  if (cap > spec.hard_cap) {
    throw ResourceError("log_xi_one_component: bound exceeds hard cap");
  }
  const double log_tail = std::log(spec.tail_tol);
  for (;;) {
    LogAccumulator acc;
    double last = kNegInf;
    for (std::int64_t n = 0; n <= cap; ++n) {
      last = term(n);
      acc.add(last);
    }
    if (last <= acc.max_term() + log_tail) return acc.log_total() / v;
    cap = extend_bound(cap, spec.hard_cap);
  }
}

double one_component_identity(const FiniteVolumeSpec& spec, double a,
                              double theta, double mu) {
  const double lhs = log_xi_one_component(spec, a, theta, mu);
  const double rhs = log_xi_two_component(spec, a, mu, std::log(theta)) - theta;
  return std::abs(lhs - rhs);
}

double laplace_integral(const FiniteVolumeSpec& spec, double a, double mu0,
                        double mu1) {
  check_spec(spec, "laplace_integral");
  if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(mu0) || !std::isfinite(mu1)) {
    throw std::domain_error("laplace_integral: requires a > 0 and finite mu");
  }
  const double v = spec.volume;
  FiniteVolumeSpec inner = spec;
  inner.n_max = 0;  // each shifted f_V sizes its own truncation

  auto energy = [&](double y) {
    return f_v_value(inner, a, mu0 + y) + f_v_value(inner, a, mu1 - y) -
           y * y / (2.0 * a);
  };

  // All mass concentrates where the limit landscape is maximal; its
  // stationary points lie within [-a e^{mu1}, a e^{mu0}].
  const double scan_lo = -a * std::exp(mu1) - 1.0;
  const double scan_hi = a * std::exp(mu0) + 1.0;
  if (!std::isfinite(scan_lo) || !std::isfinite(scan_hi) ||
      scan_hi - scan_lo > 1e6) {
    throw SolverError("laplace_integral: scan interval too large");
  }

  constexpr int kScan = 192;
  const double step = (scan_hi - scan_lo) / kScan;
  std::vector<double> es(kScan + 1);
  double e_max = kNegInf;
  for (int i = 0; i <= kScan; ++i) {
    es[i] = energy(scan_lo + i * step);
    e_max = std::max(e_max, es[i]);
  }

  // Window: V (E_max - E_V) <= 60, covering every qualifying scan sample so
  // a second coexistence lobe is never dropped.  The window can extend past
  // the stationary-point bracket, so march outward until the integrand is
  // genuinely negligible.
  const double cutoff = e_max - 60.0 / v;
  int first = 0, last = kScan;
  while (first <= kScan && es[first] < cutoff) ++first;
  while (last >= 0 && es[last] < cutoff) --last;
  if (first > last) {
    throw SolverError("laplace_integral: window location failed");
  }
  double y_lo = scan_lo + std::max(0, first - 1) * step;
  double y_hi = scan_lo + std::min(kScan, last + 1) * step;
  for (int it = 0; it < 100000 && energy(y_lo) >= cutoff; ++it) y_lo -= step;
  for (int it = 0; it < 100000 && energy(y_hi) >= cutoff; ++it) y_hi += step;

  // Sharpen the peak estimate so the scale factor exp(-V E_max) is tight.
  for (int i = std::max(0, first - 1); i <= std::min(kScan, last + 1); ++i) {
    double lo = scan_lo + std::max(0, i - 1) * step;
    double hi = scan_lo + std::min(kScan, i + 1) * step;
    if (es[i] >= e_max) {
      for (int it = 0; it < 40; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (energy(m1) < energy(m2)) lo = m1; else hi = m2;
      }
      e_max = std::max(e_max, energy(0.5 * (lo + hi)));
    }
  }

  auto integrand = [&](double y) { return std::exp(v * (energy(y) - e_max)); };

  // Panel width resolves the O(sqrt(a/V)) Gaussian core before adapting.
  const double width = y_hi - y_lo;
  const int panels = std::clamp(
      static_cast<int>(std::ceil(width / (0.25 * std::sqrt(a / v)))), 16, 4096);
  const double panel_tol = 1e-10 / panels;
  double integral = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double pa = y_lo + width * i / panels;
    const double pb = y_lo + width * (i + 1) / panels;
    integral += adaptive_simpson(integrand, pa, pb, panel_tol);
  }

  const double log_xi =
      0.5 * std::log(v / (2.0 * M_PI * a)) + v * e_max + std::log(integral);
  return log_xi / v;
}

OccupancyDistribution::OccupancyDistribution(std::int64_t n0_max,
                                             std::int64_t n1_max,
                                             std::vector<double> log_weight,
                                             double log_norm)
    : n0_max_(n0_max),
      n1_max_(n1_max),
      log_weight_(std::move(log_weight)),
      log_norm_(log_norm) {
  diff_marginal_.assign(n0_max_ + n1_max_ + 1, 0.0);
  std::vector<LogAccumulator> acc(n0_max_ + n1_max_ + 1);
  for (std::int64_t n0 = 0; n0 <= n0_max_; ++n0) {
    for (std::int64_t n1 = 0; n1 <= n1_max_; ++n1) {
      const double t = log_weight_[n0 * (n1_max_ + 1) + n1];
      if (t != kNegInf) acc[n0 - n1 + n1_max_].add(t);
    }
  }
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const double lt = acc[i].log_total();
    diff_marginal_[i] = (lt == kNegInf) ? 0.0 : std::exp(lt - log_norm_);
  }
}

double OccupancyDistribution::probability(std::int64_t n0,
                                          std::int64_t n1) const {
  if (n0 < 0 || n0 > n0_max_ || n1 < 0 || n1 > n1_max_) return 0.0;
  const double t = log_weight_[n0 * (n1_max_ + 1) + n1];
  return (t == kNegInf) ? 0.0 : std::exp(t - log_norm_);
}

std::vector<std::int64_t> OccupancyDistribution::diff_marginal_modes() const {
  const auto& m = diff_marginal_;
  std::vector<double> smooth(m.size(), 0.0);
  double peak = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double s = m[i];
    int c = 1;
    if (i > 0) { s += m[i - 1]; ++c; }
    if (i + 1 < m.size()) { s += m[i + 1]; ++c; }
    smooth[i] = s / c;
    peak = std::max(peak, smooth[i]);
  }
  // Ripples at the truncation floor are not modes.
  const double floor = 1e-12 * peak;
  std::vector<std::int64_t> modes;
  for (std::size_t i = 1; i + 1 < smooth.size(); ++i) {
    if (smooth[i] > floor && smooth[i] > smooth[i - 1] &&
        smooth[i] > smooth[i + 1]) {
      modes.push_back(static_cast<std::int64_t>(i) - n1_max_);
    }
  }
  return modes;
}

OccupancyDistribution occupancy_distribution(const FiniteVolumeSpec& spec,
                                             double a, double mu0,
                                             double mu1) {
  auto sum = xi_two_component_sum(spec, a, mu0, mu1, true);
  return OccupancyDistribution(sum.n0_max, sum.n1_max, std::move(sum.log_weight),
                               sum.log_xi);
}

}  // namespace wrcw
