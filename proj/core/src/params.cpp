#include "telegraph/params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "telegraph/errors.hpp"

#include <json.hpp>

namespace telegraph {

ModelParams validate_params(double lambda1, double lambda2, double c1, double c2,
                            double alpha) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw NonPositiveParameter(std::string(name) + " must be strictly positive and finite");
    }
  };
  positive(lambda1, "lambda1");
  positive(lambda2, "lambda2");
  positive(c1, "c1");
  positive(c2, "c2");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw AlphaOutOfRange("alpha must lie in [0, 1]");
  }
  return ModelParams{lambda1, lambda2, c1, c2, alpha};
}

Regime classify_regime(const ModelParams& params) noexcept {
  double drift = (params.lambda2 * params.c1 - params.lambda1 * params.c2) /
                 (params.lambda1 + params.lambda2);
  return Regime{drift, drift < 0.0};
}

ModelParams params_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed parameter JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ValidationError("parameter JSON must be an object");
  }
  auto field = [&doc](const char* key) -> double {
    if (!doc.contains(key)) {
      throw ValidationError(std::string("parameter file missing required key \"") + key + "\"");
    }
    const auto& v = doc.at(key);
    if (!v.is_number()) {
      throw ValidationError(std::string("parameter \"") + key + "\" must be a number");
    }
    return v.get<double>();
  };
  return validate_params(field("lambda1"), field("lambda2"), field("c1"),
                         field("c2"), field("alpha"));
}

ModelParams load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open parameter file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_json(buf.str());
}

} // namespace telegraph
