#pragma once

#include <cstdint>
#include <vector>

// Exact finite-volume computations, used as ground truth for every
// thermodynamic-limit formula.  All partition sums run in the log domain
// with streaming log-sum-exp; truncation bounds adapt until the boundary
// term falls below tail_tol times the running maximum term.

namespace wrcw {

struct FiniteVolumeSpec {
  double volume = 1.0;            // V > 0
  std::int64_t n_max = 0;         // initial truncation bound; 0 = auto-size
  double tail_tol = 1e-16;        // relative tail criterion
  std::int64_t hard_cap = 2'000'000;  // per-axis limit before ResourceError
};

// Unnormalized log-weights of the two-component occupancy distribution,
// pi(n0, n1) proportional to V^{n0+n1}/(n0! n1!) exp(mu0 n0 + mu1 n1
// - (a/V) n0 n1), with the normalizer ln Xi_V.
class OccupancyDistribution {
 public:
  OccupancyDistribution(std::int64_t n0_max, std::int64_t n1_max,
                        std::vector<double> log_weight, double log_norm);

  std::int64_t n0_max() const { return n0_max_; }
  std::int64_t n1_max() const { return n1_max_; }
  double log_norm() const { return log_norm_; }

  // Normalized probability of the occupancy pair (n0, n1).
  double probability(std::int64_t n0, std::int64_t n1) const;

  // Marginal of m = n0 - n1; index i corresponds to m = i - n1_max.
  const std::vector<double>& diff_marginal() const { return diff_marginal_; }
  std::int64_t diff_offset() const { return n1_max_; }

  // Strict local maxima of the m-marginal after a moving average of
  // half-width 1, returned as m values, ascending.
  std::vector<std::int64_t> diff_marginal_modes() const;

 private:
  std::int64_t n0_max_;
  std::int64_t n1_max_;
  std::vector<double> log_weight_;  // row-major, (n0_max+1) x (n1_max+1)
  double log_norm_;
  std::vector<double> diff_marginal_;
};

// (1/V) ln Xi_V(a, mu0, mu1), the exact two-component double sum.
double log_xi_two_component(const FiniteVolumeSpec& spec, double a,
                            double mu0, double mu1);

// (1/V) ln Xi^_V(a, theta, mu), the one-component sum with energy
// V theta (1 - exp(-a n / V)).
double log_xi_one_component(const FiniteVolumeSpec& spec, double a,
                            double theta, double mu);

// f_V(a, x) = (1/V) ln sum_n V^n/n! exp(x n - a n^2 / (2V)).
double f_v_value(const FiniteVolumeSpec& spec, double a, double x);

struct FiniteVolumeMoments {
  double u;    // <n>/V
  double du;   // variance / V = d u_V / dx
  double d2u;  // third central moment / V = d^2 u_V / dx^2
};

// Moments of the single-sum occupancy distribution pi_n.
FiniteVolumeMoments u_v_moments(const FiniteVolumeSpec& spec, double a,
                                double x);

// (1/V) ln Xi_V through the exact Gaussian-transform representation
//   Xi_V = sqrt(V / 2 pi a) * integral exp(V E_V(y)) dy,
//   E_V(y) = f_V(a, mu0+y) + f_V(a, mu1-y) - y^2/(2a),
// evaluated by adaptive quadrature over the window where
// V (max E_V - E_V) <= 60.  Agrees with log_xi_two_component at every V;
// the identity is exact, not asymptotic.  Requires a > 0.
double laplace_integral(const FiniteVolumeSpec& spec, double a, double mu0,
                        double mu1);

// | (1/V) ln Xi^_V - [ (1/V) ln Xi_V(a, mu, ln theta) - theta ] |,
// the residual of the summing-out identity.
double one_component_identity(const FiniteVolumeSpec& spec, double a,
                              double theta, double mu);

// Full two-component occupancy table with marginal diagnostics.
OccupancyDistribution occupancy_distribution(const FiniteVolumeSpec& spec,
                                             double a, double mu0, double mu1);

}  // namespace wrcw
