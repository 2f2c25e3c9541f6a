#include "telegraph/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "telegraph/errors.hpp"

namespace telegraph {

namespace {

constexpr double kQuadRelTol = 1e-10;
constexpr unsigned kQuadMaxDepth = 60;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_positive_time(double t) {
  if (!(t > 0.0)) {
    throw NonPositiveTime("time must be strictly positive");
  }
}

// log(1 - exp(-y)) for y > 0 without cancellation.
double log1mexp(double y) {
  if (y <= 0.6931471805599453) {
    return std::log(-std::expm1(-y));
  }
  return std::log1p(-std::exp(-y));
}

double logaddexp(double u, double v) {
  if (u == kNegInf) return v;
  if (v == kNegInf) return u;
  double hi = std::max(u, v);
  double lo = std::min(u, v);
  return hi + std::log1p(std::exp(lo - hi));
}

// Shared quadrature core: returns log of the integral of the density over
// [lo, hi] (already clipped to the support). The integrand is rescaled by its
// coarse-scan maximum so the integration runs near unit scale no matter how
// far the log-density has sunk.
double log_quadrature(double lo, double hi, double t, const ModelParams& params) {
  if (!(lo < hi)) return kNegInf;

  const int scan_points = 129;
  double peak = kNegInf;
  for (int i = 0; i < scan_points; ++i) {
    double x = lo + (hi - lo) * (i + 0.5) / scan_points;
    peak = std::max(peak, log_density_p(x, t, params));
  }
  if (peak == kNegInf) return kNegInf;

  auto integrand = [&](double x) {
    double lp = log_density_p(x, t, params);
    return lp == kNegInf ? 0.0 : std::exp(lp - peak);
  };

  double error = 0.0;
  double l1 = 0.0;
  double integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, lo, hi, kQuadMaxDepth, kQuadRelTol, &error, &l1);
  if (!(integral >= 0.0) || !std::isfinite(integral)) {
    throw QuadratureFailure("quadrature produced a non-finite or negative value");
  }
  if (integral == 0.0) return kNegInf;
  if (error > kQuadRelTol * std::max(l1, integral)) {
    throw QuadratureFailure("quadrature tolerance not reached at maximum depth");
  }
  return peak + std::log(integral);
}

} // namespace

LawOfD law_of_d(const ModelParams& params, double t) {
  auto [up, down] = point_masses(t, params);
  return LawOfD{t, params, up, down};
}

double tau_star(double x, double t, const ModelParams& params) {
  return (params.c2 * t + x) / (params.c1 + params.c2);
}

double log_density_p(double x, double t, const ModelParams& params) {
  check_positive_time(t);
  const double lo = -params.c2 * t;
  const double hi = params.c1 * t;
  if (!(x > lo && x < hi)) return kNegInf;

  const double ts = tau_star(x, t, params);
  const double a = params.lambda1 * ts;       // up-phase exponent
  const double b = params.lambda2 * (t - ts); // down-phase exponent

  // Numerator factor is bounded below by alpha*lambda1 + (1-alpha)*lambda2,
  // so direct evaluation is stable.
  double numer = params.lambda1 + params.lambda2 -
                 params.alpha * params.lambda2 * std::exp(-a) -
                 (1.0 - params.alpha) * params.lambda1 * std::exp(-b);

  // Denominator core exp(-b) + exp(-a)(1 - exp(-b)) as a log-sum of
  // nonnegative terms; both a and b are > 0 strictly inside the support.
  double log_core = logaddexp(-b, -a + log1mexp(b));

  return -a - b + std::log(numer) - std::log(params.c1 + params.c2) -
         2.0 * log_core;
}

double density_p(double x, double t, const ModelParams& params) {
  double lp = log_density_p(x, t, params);
  return lp == kNegInf ? 0.0 : std::exp(lp);
}

std::pair<double, double> point_masses(double t, const ModelParams& params) {
  check_positive_time(t);
  double up = params.alpha * std::exp(-params.lambda1 * t);
  double down = (1.0 - params.alpha) * std::exp(-params.lambda2 * t);
  return {up, down};
}

double log_interval_probability(double a, double b, double t,
                                const ModelParams& params,
                                AtomFlags include_atoms) {
  if (a > b) {
    throw InvalidInterval("interval endpoints must satisfy a <= b");
  }
  check_positive_time(t);

  const double support_lo = -params.c2 * t;
  const double support_hi = params.c1 * t;
  auto [mass_up, mass_down] = point_masses(t, params);

  double log_total = kNegInf;
  if (include_atoms.include_down && a <= support_lo && support_lo <= b &&
      mass_down > 0.0) {
    log_total = logaddexp(log_total, std::log(mass_down));
  }
  if (include_atoms.include_up && a <= support_hi && support_hi <= b &&
      mass_up > 0.0) {
    log_total = logaddexp(log_total, std::log(mass_up));
  }

  double lo = std::max(a, support_lo);
  double hi = std::min(b, support_hi);
  log_total = logaddexp(log_total, log_quadrature(lo, hi, t, params));
  return log_total;
}

double interval_probability(double a, double b, double t,
                            const ModelParams& params, AtomFlags include_atoms) {
  double lp = log_interval_probability(a, b, t, params, include_atoms);
  return lp == kNegInf ? 0.0 : std::exp(lp);
}

} // namespace telegraph
