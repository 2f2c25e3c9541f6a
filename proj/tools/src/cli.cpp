#include "telegraph/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "telegraph/density.hpp"
#include "telegraph/errors.hpp"
#include "telegraph/experiments.hpp"
#include "telegraph/parallel.hpp"
#include "telegraph/params.hpp"
#include "telegraph/rates.hpp"
#include "telegraph/sampler.hpp"
#include "telegraph/text.hpp"
#include "telegraph/version.hpp"

namespace telegraph::cli {

namespace {

double parse_double(const std::string& token, const char* what) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ValidationError(std::string("cannot parse ") + what + ": \"" + token + "\"");
  }
  return value;
}

nlohmann::json params_json(const ModelParams& p) {
  return nlohmann::json{{"lambda1", p.lambda1},
                        {"lambda2", p.lambda2},
                        {"c1", p.c1},
                        {"c2", p.c2},
                        {"alpha", p.alpha}};
}

nlohmann::json decay_json(const DecayRateReport& r) {
  return nlohmann::json{
      {"process", r.process_kind == ProcessKind::damped ? "damped" : "standard"},
      {"w_closed", r.w_closed},
      {"w_numeric", r.w_numeric},
      {"argmin_x", r.argmin_x},
      {"abs_gap", r.abs_gap}};
}

std::string iso8601_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// One primary deliverable per invocation: a named file plus the budget
// numbers that belong in the manifest.
struct RunOutput {
  std::string file_name;
  std::string content;
  nlohmann::json budgets;
};

void emit(const RunOutput& result, const std::string& out_dir,
          const std::string& command_line, const ModelParams& params,
          std::uint64_t seed, std::ostream& out) {
  if (out_dir.empty()) {
    out << result.content;
    return;
  }
  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream file(dir / result.file_name, std::ios::binary);
    if (!file) {
      throw ValidationError("cannot write output file in " + out_dir);
    }
    file << result.content;
  }
  nlohmann::json manifest{{"command", command_line},
                          {"params", params_json(params)},
                          {"seed", seed},
                          {"budgets", result.budgets},
                          {"outputs", {result.file_name}},
                          {"tool_version", kToolVersion},
                          {"created_utc", iso8601_now()}};
  std::ofstream mf(dir / "manifest.json", std::ios::binary);
  if (!mf) {
    throw ValidationError("cannot write manifest in " + out_dir);
  }
  mf << manifest.dump(2) << '\n';
}

ProcessKind parse_process(const std::string& name) {
  if (name == "damped") return ProcessKind::damped;
  if (name == "standard") return ProcessKind::standard;
  throw ValidationError("process must be \"damped\" or \"standard\"");
}

RunOutput run_density(const ModelParams& params, double t,
                      const std::vector<double>& grid) {
  std::ostringstream csv;
  csv << "x,t,p,log_p\n";
  for (double x : grid) {
    csv << format_double(x) << ',' << format_double(t) << ','
        << format_double(density_p(x, t, params)) << ','
        << format_double(log_density_p(x, t, params)) << '\n';
  }
  return {"density.csv", csv.str(),
          {{"grid_points", grid.size()}, {"t", t}}};
}

RunOutput run_rate(const ModelParams& params, const std::vector<double>& grid) {
  std::ostringstream csv;
  csv << "x,I_D,I_S\n";
  for (double x : grid) {
    csv << format_double(x) << ',' << format_double(rate_ID(x, params).value)
        << ',' << format_double(rate_IS(x, params).value) << '\n';
  }
  return {"rate.csv", csv.str(), {{"grid_points", grid.size()}}};
}

RunOutput run_decay(const ModelParams& params, ProcessKind kind) {
  DecayRateReport report = decay_rate_numeric(kind, params);
  return {"decay.json", decay_json(report).dump(2) + "\n",
          nlohmann::json::object()};
}

RunOutput run_simulate(const ModelParams& params, ProcessKind kind,
                       double horizon, std::uint64_t n, std::uint64_t seed,
                       unsigned threads) {
  if (n == 0) {
    throw ValidationError("need at least one path");
  }
  auto chunks = chunked_map<std::string>(
      n, 1024, threads, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        std::ostringstream rows;
        for (std::uint64_t i = begin; i < end; ++i) {
          RngStream stream(seed, i);
          PathSkeleton path = kind == ProcessKind::damped
                                  ? sample_damped_path(params, horizon, stream)
                                  : sample_standard_path(params, horizon, stream);
          append_path_csv(rows, path, i);
        }
        return rows.str();
      });
  std::string csv = std::string(path_csv_header()) + "\n";
  for (auto& chunk : chunks) csv += chunk;
  return {"paths.csv", std::move(csv),
          {{"n_paths", n}, {"horizon", horizon}, {"threads", threads}}};
}

RunOutput run_ldp(const ModelParams& params, double x, double eps,
                  const std::vector<double>& t_grid) {
  auto points = ldp_curve(x, eps, t_grid, params);
  std::ostringstream csv;
  csv << "t,x,eps,scaled_log_prob,target\n";
  for (const auto& p : points) {
    csv << format_double(p.t) << ',' << format_double(p.x) << ','
        << format_double(p.eps) << ',' << format_double(p.scaled_log_prob)
        << ',' << format_double(p.target) << '\n';
  }
  return {"ldp_curve.csv", csv.str(),
          {{"t_points", t_grid.size()}, {"x", x}, {"eps", eps}}};
}

RunOutput run_crossing(const ModelParams& params, ProcessKind kind,
                       const std::vector<double>& q_grid, std::uint64_t n,
                       std::uint64_t seed, unsigned threads) {
  auto estimates = estimate_crossing(q_grid, params, kind, n, seed, {}, threads);
  std::ostringstream csv;
  csv << "q,n,hits,p_hat,std_err,truncated\n";
  for (const auto& e : estimates) {
    csv << format_double(e.q) << ',' << format_u64(e.n_paths) << ','
        << format_u64(e.hits) << ',' << format_double(e.p_hat) << ','
        << format_double(e.std_err) << ',' << format_u64(e.truncated) << '\n';
  }
  return {"crossing.csv", csv.str(),
          {{"n_paths", n}, {"levels", q_grid.size()}, {"threads", threads}}};
}

RunOutput run_compare(const ModelParams& params, int grid_size,
                      std::uint64_t mc_budget, std::uint64_t seed,
                      unsigned threads) {
  ComparisonReport report = compare_report(params, grid_size, mc_budget, seed, threads);

  nlohmann::json grid = nlohmann::json::array();
  for (const auto& row : report.grid) {
    grid.push_back({{"x", row.x},
                    {"I_D", row.rate_damped},
                    {"I_S", row.rate_standard}});
  }
  auto lln_json = [](const LlnProbe& probe) {
    return nlohmann::json{{"t", probe.t},
                          {"n_paths", probe.n_paths},
                          {"sample_mean", probe.sample_mean},
                          {"std_err", probe.std_err},
                          {"target", probe.target},
                          {"within_3se", probe.within_3se}};
  };
  nlohmann::json doc{
      {"params", params_json(report.params)},
      {"x0", report.x0},
      {"stable", report.stable},
      {"grid", std::move(grid)},
      {"checks",
       {{"rates_vanish_only_at_x0", report.rates_vanish_only_at_x0},
        {"endpoint_values_match", report.endpoint_values_match},
        {"damped_dominates_inside", report.damped_dominates_inside},
        {"decay_rates_strictly_ordered", report.decay_rates_strictly_ordered}}},
      {"crossing_section_skipped", report.crossing_section_skipped},
      {"lln", {{"damped", lln_json(report.lln_damped)},
               {"standard", lln_json(report.lln_standard)}}}};
  if (!report.crossing_section_skipped) {
    doc["decay"] = {{"damped", decay_json(report.decay_damped)},
                    {"standard", decay_json(report.decay_standard)}};
  }
  return {"compare.json", doc.dump(2) + "\n",
          {{"grid_size", grid_size}, {"mc_budget", mc_budget}, {"threads", threads}}};
}

// CLI11 reads a reversed token vector and will not attach a dash-leading
// value to the preceding flag, so negative grid bounds are folded into
// --flag=value form first.
std::vector<std::string> normalize_args(const std::vector<std::string>& args) {
  std::vector<std::string> fixed;
  fixed.reserve(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& tok = args[i];
    bool long_flag = tok.size() > 2 && tok.rfind("--", 0) == 0 &&
                     tok.find('=') == std::string::npos;
    if (long_flag && i + 1 < args.size() && args[i + 1].size() > 1 &&
        args[i + 1][0] == '-' &&
        (std::isdigit(static_cast<unsigned char>(args[i + 1][1])) ||
         args[i + 1][1] == '.')) {
      fixed.push_back(tok + "=" + args[i + 1]);
      ++i;
    } else {
      fixed.push_back(tok);
    }
  }
  return fixed;
}

} // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  // A ':' right after the start of a field may be a negative number's sign;
  // split on ':' only, fields may be empty-checked below.
  while (parts.size() < 3) {
    std::size_t pos = parts.size() == 2 ? std::string::npos : spec.find(':', start);
    if (pos == std::string::npos) {
      parts.push_back(spec.substr(start));
      break;
    }
    parts.push_back(spec.substr(start, pos - start));
    start = pos + 1;
  }
  if (parts.size() != 3) {
    throw ValidationError("grid must look like lo:hi:step");
  }
  double lo = parse_double(parts[0], "grid lower bound");
  double hi = parse_double(parts[1], "grid upper bound");
  double step = parse_double(parts[2], "grid step");
  if (!(step > 0.0)) {
    throw ValidationError("grid step must be strictly positive");
  }
  if (hi < lo) {
    throw ValidationError("grid upper bound must not be below the lower bound");
  }

  double count = (hi - lo) / step;
  long long k = std::llround(count);
  bool integral = std::abs(count - static_cast<double>(k)) <=
                  1e-9 * std::max(1.0, std::abs(count));
  if (!integral) {
    k = static_cast<long long>(std::floor(count));
  }
  if (k < 0) k = 0;
  if (k > 10'000'000) {
    throw ValidationError("grid has too many points");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(k) + 1);
  for (long long i = 0; i <= k; ++i) {
    grid.push_back(lo + step * static_cast<double>(i));
  }
  if (integral && !grid.empty()) {
    grid.back() = hi;
  }
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"damped and standard telegraph process toolkit"};
  app.require_subcommand(1);

  std::string params_path;
  std::string out_dir;
  std::string process_name = "damped";
  std::string grid_spec;
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  unsigned threads = 1;
  double t_value = 1.0;
  double horizon = 1.0;
  double x_center = 0.0;
  double eps = 0.05;
  int grid_size = 201;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--params", params_path, "JSON parameter file")->required();
    sub->add_option("--out-dir", out_dir, "write files plus a manifest here");
  };

  CLI::App* density = app.add_subcommand("density", "exact density over a grid");
  add_common(density);
  density->add_option("--t", t_value, "evaluation time")->required();
  density->add_option("--grid", grid_spec, "x grid lo:hi:step")->required();

  CLI::App* rate = app.add_subcommand("rate", "rate functions over a grid");
  add_common(rate);
  rate->add_option("--grid", grid_spec, "x grid lo:hi:step")->required();

  CLI::App* decay = app.add_subcommand("decay", "variational decay rate");
  add_common(decay);
  decay->add_option("--process", process_name, "damped|standard")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "sample path skeletons");
  add_common(simulate);
  simulate->add_option("--process", process_name, "damped|standard")->required();
  simulate->add_option("--horizon", horizon, "time horizon")->required();
  simulate->add_option("--n", n, "number of paths")->required();
  simulate->add_option("--seed", seed, "stream seed");
  simulate->add_option("--threads", threads, "worker count");

  CLI::App* ldp = app.add_subcommand("ldp-verify", "scaled log-probability curve");
  add_common(ldp);
  ldp->add_option("--x", x_center, "window center")->required();
  ldp->add_option("--eps", eps, "window half-width")->required();
  ldp->add_option("--grid", grid_spec, "t grid lo:hi:step")->required();

  CLI::App* crossing = app.add_subcommand("crossing", "level-crossing estimates");
  add_common(crossing);
  crossing->add_option("--process", process_name, "damped|standard")->required();
  crossing->add_option("--grid", grid_spec, "level grid lo:hi:step")->required();
  crossing->add_option("--n", n, "number of paths")->required();
  crossing->add_option("--seed", seed, "stream seed");
  crossing->add_option("--threads", threads, "worker count");

  CLI::App* compare = app.add_subcommand("compare", "damped vs standard report");
  add_common(compare);
  compare->add_option("--grid-size", grid_size, "rate grid points");
  compare->add_option("--n", n, "paths per mean probe");
  compare->add_option("--seed", seed, "stream seed");
  compare->add_option("--threads", threads, "worker count");

  std::vector<std::string> tokens = normalize_args(args);
  std::string command_line = "telegraph";
  for (const auto& tok : args) {
    command_line += ' ';
    command_line += tok;
  }

  try {
    std::reverse(tokens.begin(), tokens.end());
    app.parse(std::move(tokens));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    ModelParams params = load_params_file(params_path);
    RunOutput output;
    if (density->parsed()) {
      output = run_density(params, t_value, parse_grid(grid_spec));
    } else if (rate->parsed()) {
      output = run_rate(params, parse_grid(grid_spec));
    } else if (decay->parsed()) {
      output = run_decay(params, parse_process(process_name));
    } else if (simulate->parsed()) {
      output = run_simulate(params, parse_process(process_name), horizon, n,
                            seed, threads);
    } else if (ldp->parsed()) {
      output = run_ldp(params, x_center, eps, parse_grid(grid_spec));
    } else if (crossing->parsed()) {
      if (n == 0) n = 100000;
      output = run_crossing(params, parse_process(process_name),
                            parse_grid(grid_spec), n, seed, threads);
    } else { // compare
      if (n == 0) n = 2000;
      output = run_compare(params, grid_size, n, seed, threads);
    }
    emit(output, out_dir, command_line, params, seed, out);
    return 0;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

} // namespace telegraph::cli
