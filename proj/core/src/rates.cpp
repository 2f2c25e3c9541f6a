#include "telegraph/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "telegraph/errors.hpp"

namespace telegraph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool in_support(double x, const ModelParams& p) {
  return x >= -p.c2 && x <= p.c1;
}

void require_stable(const ModelParams& params) {
  if (!classify_regime(params).stable) {
    throw UnstableRegime("decay rates require a stable regime (drift < 0)");
  }
}

// Variational objective g(x) = x * I(1/x); +infinity for x < 1/c1 where 1/x
// leaves the support.
double objective(double x, ProcessKind kind, const ModelParams& params) {
  if (!(x > 0.0)) return kInf;
  ExtendedRate r = kind == ProcessKind::damped ? rate_ID(1.0 / x, params)
                                               : rate_IS(1.0 / x, params);
  if (!r.finite()) return kInf;
  return x * r.value;
}

struct GoldenResult {
  double x;
  double value;
};

GoldenResult golden_minimize(double lo, double hi, ProcessKind kind,
                             const ModelParams& params) {
  const double inv_phi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = objective(x1, kind, params);
  double f2 = objective(x2, kind, params);
  for (int i = 0; i < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(b)); ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = objective(x1, kind, params);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = objective(x2, kind, params);
    }
  }
  double xm = 0.5 * (a + b);
  return {xm, objective(xm, kind, params)};
}

} // namespace

bool ExtendedRate::finite() const { return std::isfinite(value); }

ExtendedRate ExtendedRate::infinity() { return ExtendedRate{kInf}; }

ExtendedRate rate_ID(double x, const ModelParams& p) {
  if (!in_support(x, p)) return ExtendedRate::infinity();
  double num = (p.lambda1 + p.lambda2) * x - (p.lambda2 * p.c1 - p.lambda1 * p.c2);
  return ExtendedRate{std::abs(num) / (p.c1 + p.c2)};
}

ExtendedRate rate_ID_two_branch(double x, const ModelParams& p) {
  if (!in_support(x, p)) return ExtendedRate::infinity();
  double num = (p.lambda1 + p.lambda2) * x - (p.lambda2 * p.c1 - p.lambda1 * p.c2);
  double value = num >= 0.0 ? num / (p.c1 + p.c2) : -num / (p.c1 + p.c2);
  return ExtendedRate{value};
}

ExtendedRate rate_IS(double x, const ModelParams& p) {
  if (!in_support(x, p)) return ExtendedRate::infinity();
  double s1 = std::max(p.lambda1 * (x + p.c2) / (p.c1 + p.c2), 0.0);
  double s2 = std::max(p.lambda2 * (p.c1 - x) / (p.c1 + p.c2), 0.0);
  double diff = std::sqrt(s1) - std::sqrt(s2);
  return ExtendedRate{diff * diff};
}

double auxiliary_identity_residual(double x, const ModelParams& p) {
  if (!in_support(x, p)) {
    throw OutOfSupport("x must lie in [-c2, c1]");
  }
  double up = p.lambda1 * (p.c2 + x) / (p.c1 + p.c2);
  double down = p.lambda2 * (p.c1 - x) / (p.c1 + p.c2);
  double rhs = up + down + 2.0 * std::max(-down, -up);
  return rhs - rate_ID(x, p).value;
}

double decay_rate_closed(ProcessKind kind, const ModelParams& p) {
  require_stable(p);
  if (kind == ProcessKind::damped) {
    return p.lambda1 / p.c1;
  }
  return (p.lambda1 * p.c2 - p.lambda2 * p.c1) / (p.c1 * p.c2);
}

DecayRateReport decay_rate_numeric(ProcessKind kind, const ModelParams& p) {
  require_stable(p);
  const double lo = 1.0 / p.c1;
  double hi = lo + 10.0 * (p.c1 + p.c2) / (p.c1 * p.c1);

  // Coarse scan; widen while the minimum hugs the right edge.
  const int scan_points = 65;
  std::vector<double> xs(scan_points), fs(scan_points);
  int best = 0;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 60) {
      throw OptimizationFailure("bracketing the variational minimum failed");
    }
    best = 0;
    for (int i = 0; i < scan_points; ++i) {
      xs[i] = lo + (hi - lo) * i / (scan_points - 1);
      fs[i] = objective(xs[i], kind, p);
      if (fs[i] < fs[best]) best = i;
    }
    if (best < scan_points - 1) break;
    hi = lo + 2.0 * (hi - lo);
  }

  double bracket_lo = best == 0 ? xs[0] : xs[best - 1];
  double bracket_hi = xs[best + 1];
  GoldenResult refined = golden_minimize(bracket_lo, bracket_hi, kind, p);

  // The infimum may sit on the domain boundary x = 1/c1 (the damped case
  // does); always give the boundary a chance to win outright.
  double boundary = objective(lo, kind, p);
  double w_numeric = refined.value;
  double argmin = refined.x;
  if (boundary <= w_numeric) {
    w_numeric = boundary;
    argmin = lo;
  }

  double w_closed = decay_rate_closed(kind, p);
  return DecayRateReport{kind, w_closed, w_numeric, argmin,
                         std::abs(w_closed - w_numeric)};
}

DlsHypotheses check_dls_hypotheses(const ModelParams& p) {
  Regime regime = classify_regime(p);
  const double x0 = regime.drift;
  const int grid_points = 1025;

  // Grid over [0, c1] with the zero of the rate inserted when it lands there,
  // so the infimum is exact for the piecewise-linear rate.
  std::vector<double> grid;
  grid.reserve(grid_points + 1);
  for (int i = 0; i < grid_points; ++i) {
    grid.push_back(p.c1 * i / (grid_points - 1));
  }
  if (x0 >= 0.0 && x0 <= p.c1) {
    grid.push_back(x0);
    std::sort(grid.begin(), grid.end());
  }

  std::vector<double> values;
  values.reserve(grid.size());
  for (double x : grid) values.push_back(rate_ID(x, p).value);

  // Positivity threshold scaled to the rate magnitude; guards rounding noise
  // at the rate function's zero.
  const double positive_floor = 1e-14 * (p.lambda1 + p.lambda2);
  double inf_all = *std::min_element(values.begin(), values.end());
  bool hyp_positive = inf_all > positive_floor;

  bool hyp_finite = rate_ID(p.c1, p).finite();

  // Tail infima: scan from the right so inf over [grid[i], c1] is available
  // at every grid point; compare with the pointwise value.
  bool hyp_tail = true;
  double tail_inf = kInf;
  std::vector<double> tail(grid.size());
  for (std::size_t i = grid.size(); i-- > 0;) {
    tail_inf = std::min(tail_inf, values[i]);
    tail[i] = tail_inf;
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= 0.0) continue;
    if (std::abs(tail[i] - values[i]) > 1e-12 * std::max(1.0, values[i])) {
      hyp_tail = false;
      break;
    }
  }

  // Support is bounded by c1, so P(position > x t) vanishes for x > c1; the
  // super-exponential tail condition holds with witness K = c1.
  bool hyp_tail_bound = true;

  return DlsHypotheses{hyp_positive, hyp_finite, hyp_tail, hyp_tail_bound};
}

} // namespace telegraph
