#pragma once

#include <string>

namespace telegraph {

// The five-parameter model: switch rates lambda1 (up phase) and lambda2 (down
// phase), speeds c1 (rightward) and c2 (leftward), and the probability alpha
// of starting in the up phase. Construct through validate_params.
struct ModelParams {
  double lambda1;
  double lambda2;
  double c1;
  double c2;
  double alpha;
};

// drift is the long-run mean velocity (lambda2*c1 - lambda1*c2)/(lambda1+lambda2);
// stable means strictly negative drift, the condition under which the running
// maximum is almost surely finite. drift = 0 counts as unstable.
struct Regime {
  double drift;
  bool stable;
};

// Checks positivity/finiteness of rates and speeds and alpha in [0,1].
// Throws NonPositiveParameter or AlphaOutOfRange; no silent clamping.
ModelParams validate_params(double lambda1, double lambda2, double c1, double c2,
                            double alpha);

Regime classify_regime(const ModelParams& params) noexcept;

// Parses {"lambda1": r, "lambda2": r, "c1": r, "c2": r, "alpha": r}.
// All five keys are required. Throws ValidationError on malformed input and
// the validate_params errors on bad values.
ModelParams params_from_json(const std::string& text);

ModelParams load_params_file(const std::string& path);

} // namespace telegraph
