#include <doctest.h>

#include <cmath>
#include <limits>

#include "telegraph/density.hpp"
#include "telegraph/errors.hpp"

#include "test_support.hpp"

using namespace telegraph;
using test_support::kFig1;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const AtomFlags kBothAtoms{true, true};
const AtomFlags kNoAtoms{false, false};
} // namespace

TEST_CASE("tau_star endpoints and worked value") {
  double t = 3.0;
  CHECK(tau_star(-kFig1.c2 * t, t, kFig1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(tau_star(kFig1.c1 * t, t, kFig1) == doctest::Approx(t).epsilon(1e-15));
  CHECK(tau_star(0.0, t, kFig1) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("non-positive times are rejected") {
  CHECK_THROWS_AS(density_p(0.0, 0.0, kFig1), NonPositiveTime);
  CHECK_THROWS_AS(log_density_p(0.0, -1.0, kFig1), NonPositiveTime);
  CHECK_THROWS_AS(point_masses(0.0, kFig1), NonPositiveTime);
  CHECK_THROWS_AS(interval_probability(0, 1, 0.0, kFig1, kBothAtoms),
                  NonPositiveTime);
}

TEST_CASE("density vanishes outside the open support") {
  double t = 1.0;
  CHECK(density_p(kFig1.c1 * t + 1.0, t, kFig1) == 0.0);
  CHECK(density_p(kFig1.c1 * t, t, kFig1) == 0.0);
  CHECK(density_p(-kFig1.c2 * t, t, kFig1) == 0.0);
  CHECK(log_density_p(-kFig1.c2 * t - 0.5, t, kFig1) == -kInf);
  CHECK(density_p(0.0, t, kFig1) > 0.0);
}

TEST_CASE("point masses") {
  auto [up, down] = point_masses(1.0, kFig1);
  CHECK(up == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(down == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-15));

  ModelParams all_up = validate_params(1, 1, 1, 2, 1.0);
  CHECK(point_masses(1.0, all_up).second == 0.0);

  auto late = point_masses(10.0, kFig1);
  CHECK(late.first < up);
  CHECK(late.second < down);

  LawOfD law = law_of_d(kFig1, 1.0);
  CHECK(law.mass_up == up);
  CHECK(law.mass_down == down);
  CHECK(law.t == 1.0);
}

TEST_CASE("total mass is one for the reference model") {
  double t = 1.0;
  double total = interval_probability(-kFig1.c2 * t, kFig1.c1 * t, t, kFig1,
                                      kBothAtoms);
  CHECK(std::abs(total - 1.0) < 1e-8);

  auto [up, down] = point_masses(t, kFig1);
  double continuous = interval_probability(-kFig1.c2 * t, kFig1.c1 * t, t,
                                           kFig1, kNoAtoms);
  CHECK(std::abs(continuous - (1.0 - up - down)) < 1e-8);
}

TEST_CASE("degenerate atom interval returns exactly the atom mass") {
  double t = 1.0;
  auto [up, down] = point_masses(t, kFig1);
  CHECK(interval_probability(kFig1.c1 * t, kFig1.c1 * t, t, kFig1, kBothAtoms) ==
        doctest::Approx(up).epsilon(1e-12));
  CHECK(interval_probability(-kFig1.c2 * t, -kFig1.c2 * t, t, kFig1,
                             kBothAtoms) == doctest::Approx(down).epsilon(1e-12));
  CHECK(interval_probability(kFig1.c1 * t, kFig1.c1 * t, t, kFig1, kNoAtoms) ==
        0.0);
}

TEST_CASE("half-open complementarity") {
  double t = 1.0;
  auto [up, down] = point_masses(t, kFig1);
  double left = interval_probability(-kFig1.c2 * t, 0.0, t, kFig1,
                                     AtomFlags{true, false});
  double right_open = interval_probability(0.0, kFig1.c1 * t, t, kFig1,
                                           AtomFlags{false, false});
  CHECK(std::abs(right_open - (1.0 - up - left)) < 1e-8);
  (void)down;
}

TEST_CASE("interval endpoints must be ordered") {
  CHECK_THROWS_AS(interval_probability(1.0, 0.0, 1.0, kFig1, kBothAtoms),
                  InvalidInterval);
}

TEST_CASE("density is affine in alpha") {
  ModelParams a0 = validate_params(1, 1, 1, 2, 0.0);
  ModelParams a1 = validate_params(1, 1, 1, 2, 1.0);
  ModelParams mid = validate_params(1, 1, 1, 2, 0.3);
  double t = 2.0;
  for (double x : {-3.5, -1.0, 0.0, 0.7, 1.9}) {
    double blended = 0.3 * density_p(x, t, a1) + 0.7 * density_p(x, t, a0);
    double direct = density_p(x, t, mid);
    CHECK(std::abs(direct - blended) <= 1e-12 * std::max(1.0, std::abs(blended)));
  }
}

TEST_CASE("log density agrees with the density where both are representable") {
  for (double x : {-1.5, -0.25, 0.6}) {
    double p = density_p(x, 1.0, kFig1);
    double lp = log_density_p(x, 1.0, kFig1);
    CHECK(std::abs(std::exp(lp) - p) <= 1e-12 * p);
  }
}

TEST_CASE("log density stays finite deep in the tails at large times") {
  double t = 900.0;
  double x = 0.9 * kFig1.c1 * t;
  double lp = log_density_p(x, t, kFig1);
  CHECK(std::isfinite(lp));
  CHECK(lp < -700.0);
  // The density itself underflows there; the log path is the usable one.
  CHECK(density_p(x, t, kFig1) == 0.0);

  // Scaled log-density approaches -I_D(y) at y = x/t; closed form for the
  // reference model: I_D(0.9) = (2*0.9 + 1)/3.
  double scaled = lp / t;
  CHECK(std::abs(scaled - (-(2.0 * 0.9 + 1.0) / 3.0)) < 0.05);
}

TEST_CASE("normalization sweep over random parameters") {
  RngStream stream(40054, 0);
  for (int set = 0; set < 10; ++set) {
    ModelParams p = test_support::random_params(stream);
    for (double t : {0.5, 2.0, 10.0}) {
      double total =
          interval_probability(-p.c2 * t, p.c1 * t, t, p, kBothAtoms);
      CHECK(std::abs(total - 1.0) < 1e-8);
      for (int i = 1; i < 200; ++i) {
        double x = -p.c2 * t + (p.c1 + p.c2) * t * i / 200.0;
        CHECK(density_p(x, t, p) >= 0.0);
      }
    }
  }
}
