#include "telegraph/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "telegraph/density.hpp"
#include "telegraph/errors.hpp"
#include "telegraph/parallel.hpp"
#include "telegraph/rng.hpp"

namespace telegraph {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::uint64_t kCrossingChunk = 8192;
constexpr std::uint64_t kMeanChunk = 256;

// Stream indices for the scaled-mean probes; the standard-process probe uses
// a disjoint block so the two probes never share draws under one seed.
constexpr std::uint64_t kStandardProbeStreamOffset = 1ull << 32;

struct PathCrossingOutcome {
  std::size_t levels_hit; // levels [0, levels_hit) were exceeded
  bool truncated;         // stopped by t_max with levels still unhit
};

// Simulates one path until every level is hit, the abandon rule fires, or the
// time cap strikes. Positions are tracked segment by segment; peaks happen at
// the ends of up segments, so hits are checked there (and on the partial
// segment at the cap). The abandon rule runs at local minima; see
// HorizonPolicy for the bound it relies on.
PathCrossingOutcome simulate_crossing_path(const ModelParams& p,
                                           ProcessKind kind,
                                           const std::vector<double>& q,
                                           const HorizonPolicy& policy,
                                           RngStream& stream, double w_std,
                                           double log_kappa_over_residual) {
  const std::size_t n_q = q.size();
  std::size_t i = 0;
  bool moving_up = stream.next_bernoulli(p.alpha);
  double pos = 0.0;
  double t = 0.0;
  std::uint64_t up_phase = 1;
  std::uint64_t down_phase = 1;

  for (;;) {
    double rate = moving_up ? p.lambda1 : p.lambda2;
    if (kind == ProcessKind::damped) {
      rate *= static_cast<double>(moving_up ? up_phase : down_phase);
    }
    double dt = stream.next_exponential(rate);

    if (t + dt > policy.t_max) {
      if (moving_up) {
        double peak = pos + (policy.t_max - t) * p.c1;
        while (i < n_q && peak > q[i]) ++i;
      }
      return {i, i < n_q};
    }
    t += dt;

    if (moving_up) {
      pos += dt * p.c1;
      while (i < n_q && pos > q[i]) ++i;
      if (i == n_q) return {i, false};
      ++up_phase;
      moving_up = false;
    } else {
      pos -= dt * p.c2;
      ++down_phase;
      moving_up = true;
      // Local minimum. theta = (next up-phase index) * w_std for the damped
      // process, plain w_std for the standard one.
      double gap = q[i] - pos;
      double theta =
          (kind == ProcessKind::damped ? static_cast<double>(up_phase) : 1.0) *
          w_std;
      if (gap > 0.0 && theta * gap >= log_kappa_over_residual) {
        return {i, false};
      }
    }
  }
}

struct MeanChunk {
  double sum = 0.0;
  double sum_sq = 0.0;
};

LlnProbe scaled_mean_probe(const ModelParams& params, ProcessKind kind,
                           double horizon, std::uint64_t n_paths,
                           std::uint64_t seed, std::uint64_t stream_offset,
                           double target, unsigned threads) {
  auto chunks = chunked_map<MeanChunk>(
      n_paths, kMeanChunk, threads,
      [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        MeanChunk acc;
        for (std::uint64_t i = begin; i < end; ++i) {
          RngStream stream(seed, stream_offset + i);
          PathSkeleton path = kind == ProcessKind::damped
                                  ? sample_damped_path(params, horizon, stream)
                                  : sample_standard_path(params, horizon, stream);
          double v = position_at(path, horizon) / horizon;
          acc.sum += v;
          acc.sum_sq += v * v;
        }
        return acc;
      });

  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& c : chunks) {
    sum += c.sum;
    sum_sq += c.sum_sq;
  }
  double n = static_cast<double>(n_paths);
  double mean = sum / n;
  double var = n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
  double se = std::sqrt(var / n);
  bool ok = std::abs(mean - target) <= 3.0 * se;
  return LlnProbe{horizon, n_paths, mean, se, target, ok};
}

} // namespace

double ldp_window_target(double x, double eps, const ModelParams& params) {
  double lo = std::max(x - eps, -params.c2);
  double hi = std::min(x + eps, params.c1);
  if (!(lo <= hi)) return kNegInf;
  double y = std::clamp(classify_regime(params).drift, lo, hi);
  return -rate_ID(y, params).value;
}

std::vector<LdpPoint> ldp_curve(double x, double eps,
                                const std::vector<double>& t_grid,
                                const ModelParams& params) {
  if (!(eps > 0.0)) {
    throw InvalidInterval("window half-width must be strictly positive");
  }
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw InvalidInterval("t grid must be increasing");
  }

  // Endpoint atoms belong to the open window only when the corresponding
  // velocity extreme lies strictly inside it.
  AtomFlags flags{x - eps < -params.c2 && -params.c2 < x + eps,
                  x - eps < params.c1 && params.c1 < x + eps};
  double target = ldp_window_target(x, eps, params);

  std::vector<LdpPoint> points;
  points.reserve(t_grid.size());
  for (double t : t_grid) {
    double lp =
        log_interval_probability((x - eps) * t, (x + eps) * t, t, params, flags);
    points.push_back(LdpPoint{t, x, eps, lp == kNegInf ? kNegInf : lp / t, target});
  }
  return points;
}

std::vector<CrossingEstimate> estimate_crossing(
    const std::vector<double>& q_grid, const ModelParams& params,
    ProcessKind kind, std::uint64_t n_paths, std::uint64_t seed,
    const HorizonPolicy& policy, unsigned threads) {
  if (q_grid.empty() || n_paths == 0) {
    throw InvalidInterval("need at least one level and one path");
  }
  for (std::size_t i = 0; i < q_grid.size(); ++i) {
    if (q_grid[i] < 0.0 || (i > 0 && q_grid[i] <= q_grid[i - 1])) {
      throw InvalidInterval("levels must be nonnegative and strictly increasing");
    }
  }
  // Also validates stability.
  double w_std = decay_rate_closed(ProcessKind::standard, params);
  double kappa = params.lambda1 * params.c2 / (params.lambda2 * params.c1);
  double log_kappa_over_residual = std::log(kappa / policy.abandon_residual);

  struct ChunkCounts {
    std::vector<std::uint64_t> hits;
    std::vector<std::uint64_t> truncated;
  };

  const std::size_t n_q = q_grid.size();
  auto chunks = chunked_map<ChunkCounts>(
      n_paths, kCrossingChunk, threads,
      [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        ChunkCounts counts{std::vector<std::uint64_t>(n_q, 0),
                           std::vector<std::uint64_t>(n_q, 0)};
        for (std::uint64_t path = begin; path < end; ++path) {
          RngStream stream(seed, path);
          PathCrossingOutcome out = simulate_crossing_path(
              params, kind, q_grid, policy, stream, w_std,
              log_kappa_over_residual);
          for (std::size_t level = 0; level < out.levels_hit; ++level) {
            ++counts.hits[level];
          }
          if (out.truncated) {
            for (std::size_t level = out.levels_hit; level < n_q; ++level) {
              ++counts.truncated[level];
            }
          }
        }
        return counts;
      });

  std::vector<std::uint64_t> hits(n_q, 0), truncated(n_q, 0);
  for (const auto& c : chunks) {
    for (std::size_t level = 0; level < n_q; ++level) {
      hits[level] += c.hits[level];
      truncated[level] += c.truncated[level];
    }
  }

  std::vector<CrossingEstimate> estimates;
  estimates.reserve(n_q);
  double n = static_cast<double>(n_paths);
  for (std::size_t level = 0; level < n_q; ++level) {
    double p_hat = static_cast<double>(hits[level]) / n;
    double se = std::sqrt(p_hat * (1.0 - p_hat) / n);
    estimates.push_back(CrossingEstimate{q_grid[level], n_paths, hits[level],
                                         p_hat, se, truncated[level]});
  }
  return estimates;
}

SlopeFit fit_decay_slope(const std::vector<CrossingEstimate>& estimates) {
  SlopeFit fit;
  for (const auto& e : estimates) {
    if (e.hits >= 30) {
      fit.q_values.push_back(e.q);
      fit.log_p.push_back(std::log(e.p_hat));
    } else {
      fit.excluded_levels.push_back(e.q);
    }
  }
  const std::size_t m = fit.q_values.size();
  if (m < 3) {
    throw InsufficientLevels("slope fit needs at least three well-hit levels");
  }

  double qbar = std::accumulate(fit.q_values.begin(), fit.q_values.end(), 0.0) /
                static_cast<double>(m);
  double ybar = std::accumulate(fit.log_p.begin(), fit.log_p.end(), 0.0) /
                static_cast<double>(m);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double dx = fit.q_values[i] - qbar;
    sxx += dx * dx;
    sxy += dx * (fit.log_p[i] - ybar);
  }
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * qbar;

  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double r = fit.log_p[i] - (fit.intercept + fit.slope * fit.q_values[i]);
    rss += r * r;
  }
  double sigma2 = m > 2 ? rss / static_cast<double>(m - 2) : 0.0;
  double se_slope = std::sqrt(sigma2 / sxx);
  fit.slope_ci = {fit.slope - 1.96 * se_slope, fit.slope + 1.96 * se_slope};
  return fit;
}

SharpBoundCheck sharp_bound_check(const std::vector<CrossingEstimate>& estimates,
                                  const ModelParams& params) {
  double w = decay_rate_closed(ProcessKind::standard, params);

  std::vector<double> qs;
  std::vector<double> scaled;
  for (const auto& e : estimates) {
    if (e.hits > 0) {
      qs.push_back(e.q);
      scaled.push_back(e.p_hat * std::exp(e.q * w));
    }
  }
  const std::size_t m = qs.size();
  if (m < 3) {
    throw InsufficientLevels("bound check needs at least three hit levels");
  }

  double m_hat = *std::max_element(scaled.begin(), scaled.end());

  // Spearman rank correlation with average ranks for ties; zero-variance
  // inputs (a perfectly flat product profile) count as no trend.
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  std::vector<double> rq = ranks(qs);
  std::vector<double> rv = ranks(scaled);
  double mq = std::accumulate(rq.begin(), rq.end(), 0.0) / static_cast<double>(m);
  double mv = std::accumulate(rv.begin(), rv.end(), 0.0) / static_cast<double>(m);
  double cov = 0.0;
  double vq = 0.0;
  double vv = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    cov += (rq[i] - mq) * (rv[i] - mv);
    vq += (rq[i] - mq) * (rq[i] - mq);
    vv += (rv[i] - mv) * (rv[i] - mv);
  }
  double rho = (vq > 0.0 && vv > 0.0) ? cov / std::sqrt(vq * vv) : 0.0;

  // An upward trend beyond rank-noise scale rejects the constant prefactor.
  double noise = 2.0 / std::sqrt(static_cast<double>(m - 1));
  bool holds = std::isfinite(m_hat) && rho <= noise;
  return SharpBoundCheck{m_hat, holds, rho};
}

ComparisonReport compare_report(const ModelParams& params, int grid_size,
                                std::uint64_t mc_budget, std::uint64_t seed,
                                unsigned threads) {
  if (grid_size < 2) {
    throw InvalidInterval("comparison grid needs at least two points");
  }
  if (mc_budget == 0) {
    throw InvalidInterval("comparison needs a positive path budget");
  }

  ComparisonReport report{};
  report.params = params;
  Regime regime = classify_regime(params);
  report.x0 = regime.drift;
  report.stable = regime.stable;

  const double span = params.c1 + params.c2;
  const double spacing = span / (grid_size - 1);
  report.grid.reserve(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    // Endpoints are pinned exactly; interpolation rounding must not push a
    // grid point outside the support where the rates jump to infinity.
    double x = i == 0 ? -params.c2
               : i == grid_size - 1 ? params.c1
                                    : -params.c2 + spacing * i;
    report.grid.push_back(ComparisonGridRow{x, rate_ID(x, params).value,
                                            rate_IS(x, params).value});
  }

  const double tol = 1e-12 * (1.0 + params.lambda1 + params.lambda2);
  bool vanish_at_x0 = rate_ID(report.x0, params).value <= tol &&
                      rate_IS(report.x0, params).value <= tol;
  bool positive_away = true;
  bool dominates = true;
  for (const auto& row : report.grid) {
    bool near_x0 = std::abs(row.x - report.x0) < spacing;
    if (!near_x0 && (row.rate_damped <= tol || row.rate_standard <= tol)) {
      positive_away = false;
    }
    if (row.rate_damped + tol < row.rate_standard) dominates = false;
    bool interior = row.x > -params.c2 + spacing / 2 &&
                    row.x < params.c1 - spacing / 2;
    if (interior && !near_x0 && row.rate_damped <= row.rate_standard) {
      dominates = false;
    }
  }
  report.rates_vanish_only_at_x0 = vanish_at_x0 && positive_away;
  report.endpoint_values_match =
      std::abs(rate_ID(-params.c2, params).value - params.lambda2) <= tol &&
      std::abs(rate_IS(-params.c2, params).value - params.lambda2) <= tol &&
      std::abs(rate_ID(params.c1, params).value - params.lambda1) <= tol &&
      std::abs(rate_IS(params.c1, params).value - params.lambda1) <= tol;
  report.damped_dominates_inside = dominates;

  report.crossing_section_skipped = !report.stable;
  if (report.stable) {
    report.decay_damped = decay_rate_numeric(ProcessKind::damped, params);
    report.decay_standard = decay_rate_numeric(ProcessKind::standard, params);
    report.decay_rates_strictly_ordered =
        report.decay_standard.w_closed < report.decay_damped.w_closed;
  } else {
    report.decay_damped = DecayRateReport{ProcessKind::damped, 0, 0, 0, 0};
    report.decay_standard = DecayRateReport{ProcessKind::standard, 0, 0, 0, 0};
    report.decay_rates_strictly_ordered = false;
  }

  // Scaled-mean probes. The damped horizon scales with the mean cycle length
  // because its switch count grows exponentially in time; eight cycle lengths
  // keep the cost near a few thousand switches per path while the transient
  // is already far below the Monte Carlo noise floor.
  double cycle = 1.0 / params.lambda1 + 1.0 / params.lambda2;
  double t_damped = 8.0 * cycle;
  double t_standard = 50.0 * cycle;
  report.lln_damped =
      scaled_mean_probe(params, ProcessKind::damped, t_damped, mc_budget, seed,
                        0, report.x0, threads);
  report.lln_standard =
      scaled_mean_probe(params, ProcessKind::standard, t_standard, mc_budget,
                        seed, kStandardProbeStreamOffset, report.x0, threads);
  return report;
}

} // namespace telegraph
