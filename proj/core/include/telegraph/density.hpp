#pragma once

#include <utility>

#include "telegraph/params.hpp"

namespace telegraph {

// The exact law of the damped position at a fixed time t > 0: two point
// masses (at c1*t for never-switched up starts, at -c2*t for never-switched
// down starts) plus an absolutely continuous part with density density_p on
// the open interval (-c2*t, c1*t).
struct LawOfD {
  double t;
  ModelParams params;
  double mass_up;   // alpha * exp(-lambda1 * t), located at +c1*t
  double mass_down; // (1 - alpha) * exp(-lambda2 * t), located at -c2*t
};

LawOfD law_of_d(const ModelParams& params, double t);

// Time spent moving rightward by a path ending at x at time t:
// (c2*t + x) / (c1 + c2). Total on reals; lands in [0, t] iff x is in the
// support [-c2*t, c1*t].
double tau_star(double x, double t, const ModelParams& params);

// Density of the absolutely continuous part at x, exactly 0 outside the open
// support (atoms are reported separately by point_masses).
double density_p(double x, double t, const ModelParams& params);

// log of density_p, -infinity outside the open support. Evaluated without
// underflow for large t, which is what the long-horizon scaling studies need.
double log_density_p(double x, double t, const ModelParams& params);

// (mass_up, mass_down) in closed form.
std::pair<double, double> point_masses(double t, const ModelParams& params);

// Which endpoint atoms interval_probability may count. Atoms are never folded
// into the density; half-open windows set the flag for an endpoint atom they
// exclude to false.
struct AtomFlags {
  bool include_down; // atom at -c2*t
  bool include_up;   // atom at +c1*t
};

// P(D(t) in [a, b]) = flagged atom masses inside [a, b] plus adaptive
// quadrature of the density over [a, b] clipped to the support, relative
// tolerance 1e-10. Throws InvalidInterval, NonPositiveTime, and
// QuadratureFailure when the tolerance is unreachable at maximum depth.
double interval_probability(double a, double b, double t,
                            const ModelParams& params, AtomFlags include_atoms);

// log of interval_probability computed entirely in log space, so results stay
// meaningful when the probability underflows a double. Returns -infinity for
// an empty or zero-mass interval.
double log_interval_probability(double a, double b, double t,
                                const ModelParams& params,
                                AtomFlags include_atoms);

} // namespace telegraph
