#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "telegraph/params.hpp"
#include "telegraph/rates.hpp"
#include "telegraph/sampler.hpp"

namespace telegraph {

// One point of the finite-time scaling study: scaled_log_prob is
// (1/t) * log P(position(t)/t in (x-eps, x+eps)) from exact quadrature and
// target is -inf of the rate function over the window. scaled_log_prob is
// -infinity when the window misses the support entirely (probability zero);
// that marker is reported, not thrown.
struct LdpPoint {
  double t;
  double x;
  double eps;
  double scaled_log_prob;
  double target;
};

// Monte Carlo estimate of P(running max ever exceeds q). truncated counts
// paths stopped by the hard time cap while the abandon rule had not yet
// released them; estimates with truncated > 0.1% of n_paths should be treated
// as flagged (see budget_exceeded).
struct CrossingEstimate {
  double q;
  std::uint64_t n_paths;
  std::uint64_t hits;
  double p_hat;
  double std_err;
  std::uint64_t truncated;
};

inline bool budget_exceeded(const CrossingEstimate& e) {
  return static_cast<double>(e.truncated) >
         0.001 * static_cast<double>(e.n_paths);
}

// Ordinary least squares of log p_hat against q over the levels with at least
// 30 hits; sparser levels are excluded from the fit and reported.
struct SlopeFit {
  std::vector<double> q_values; // levels entering the fit
  std::vector<double> log_p;
  double slope;
  double intercept;
  std::pair<double, double> slope_ci; // 95% interval for the slope
  std::vector<double> excluded_levels;
};

// Empirical check of the constant-prefactor upper bound
// P(max > q) <= m * exp(-w q) for the standard process: m_hat is the largest
// observed p_hat * exp(q w), and holds requires m_hat finite with no upward
// trend of that product in q (Spearman correlation within noise).
struct SharpBoundCheck {
  double m_hat;
  bool holds;
  double spearman_rho;
};

// Infinite-horizon policy for crossing runs. A path is abandoned at a local
// minimum once the remaining probability of ever climbing back above the
// lowest still-unhit level is provably below abandon_residual: starting a
// fresh up phase with per-direction index j, an exponential supermartingale
// argument bounds that probability by kappa * exp(-j * w * g), where g is the
// gap to the level, w is the standard-process decay rate, and
// kappa = lambda1 c2 / (lambda2 c1). Every completed up-down pair at phase
// i >= j contributes a moment factor <= 1 at theta = j*w, and the in-progress
// up segment contributes at most kappa, so the bound is rigorous for both
// processes (the standard one is the j = 1 case). t_max is the unconditional
// time cap; hitting it marks the path truncated.
struct HorizonPolicy {
  double t_max = 1e4;
  double abandon_residual = 1e-9;
};

// Exact-quadrature scaling curve for a window (x-eps, x+eps); endpoint atoms
// are counted only when they fall strictly inside the scaled window.
std::vector<LdpPoint> ldp_curve(double x, double eps,
                                const std::vector<double>& t_grid,
                                const ModelParams& params);

// Closed-form window target -inf{I_D(y) : y in (x-eps, x+eps)}; -infinity
// when the window misses the support.
double ldp_window_target(double x, double eps, const ModelParams& params);

// Simulates n_paths paths (stream index = path index) and estimates
// P(max > q) for every level of the increasing grid on the same ensemble.
// Deterministic for fixed (seed, n_paths, params) at any thread count.
std::vector<CrossingEstimate> estimate_crossing(
    const std::vector<double>& q_grid, const ModelParams& params,
    ProcessKind kind, std::uint64_t n_paths, std::uint64_t seed,
    const HorizonPolicy& policy = {}, unsigned threads = 1);

SlopeFit fit_decay_slope(const std::vector<CrossingEstimate>& estimates);

SharpBoundCheck sharp_bound_check(const std::vector<CrossingEstimate>& estimates,
                                  const ModelParams& params);

// Everything the damped-vs-standard comparison emits.
struct ComparisonGridRow {
  double x;
  double rate_damped;
  double rate_standard;
};

struct LlnProbe {
  double t;
  std::uint64_t n_paths;
  double sample_mean; // mean of position(t)/t
  double std_err;
  double target;      // the common zero x0 of both rate functions
  bool within_3se;
};

struct ComparisonReport {
  ModelParams params;
  double x0;
  bool stable;

  std::vector<ComparisonGridRow> grid;

  // The four headline checks: shared unique zero, matching endpoint values,
  // damped rate dominating the standard rate strictly inside, and strict
  // ordering of the decay rates.
  bool rates_vanish_only_at_x0;
  bool endpoint_values_match;
  bool damped_dominates_inside;
  bool decay_rates_strictly_ordered; // w_standard < w_damped

  bool crossing_section_skipped; // true when the regime is unstable
  DecayRateReport decay_damped;   // valid when not skipped
  DecayRateReport decay_standard; // valid when not skipped

  LlnProbe lln_damped;
  LlnProbe lln_standard;
};

// grid_size rate-function samples over [-c2, c1], closed-form checks, decay
// rates (skipped when unstable), and law-of-large-numbers probes of the
// scaled position mean with mc_budget paths per process. The damped probe
// runs at a shorter horizon than the standard one because its switch count
// grows exponentially with the horizon.
ComparisonReport compare_report(const ModelParams& params, int grid_size,
                                std::uint64_t mc_budget, std::uint64_t seed,
                                unsigned threads = 1);

} // namespace telegraph
