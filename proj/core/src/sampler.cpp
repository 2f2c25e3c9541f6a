#include "telegraph/sampler.hpp"

#include <algorithm>

#include "telegraph/errors.hpp"
#include "telegraph/text.hpp"

namespace telegraph {

namespace {

PathSkeleton sample_path(const ModelParams& params, double horizon,
                         RngStream& stream, ProcessKind kind) {
  if (!(horizon > 0.0)) {
    throw NonPositiveHorizon("horizon must be strictly positive");
  }
  PathSkeleton path;
  path.up_velocity = params.c1;
  path.down_velocity = -params.c2;
  path.horizon = horizon;
  path.kind = kind;
  bool moving_up = stream.next_bernoulli(params.alpha);
  path.initial_velocity = moving_up ? path.up_velocity : path.down_velocity;

  double t = 0.0;
  std::size_t up_phase = 1;
  std::size_t down_phase = 1;
  for (;;) {
    double rate = moving_up ? params.lambda1 : params.lambda2;
    if (kind == ProcessKind::damped) {
      rate *= static_cast<double>(moving_up ? up_phase : down_phase);
    }
    t += stream.next_exponential(rate);
    if (t > horizon) break;
    if (path.switch_epochs.size() >= kMaxSwitchesPerPath) {
      throw ExplosionGuardTripped("path exceeded the per-path switch cap");
    }
    path.switch_epochs.push_back(t);
    if (moving_up) {
      ++up_phase;
    } else {
      ++down_phase;
    }
    moving_up = !moving_up;
  }
  return path;
}

void check_time(double t, double horizon) {
  if (!(t >= 0.0 && t <= horizon)) {
    throw TimeOutOfRange("time must lie in [0, horizon]");
  }
}

} // namespace

PathSkeleton sample_damped_path(const ModelParams& params, double horizon,
                                RngStream& stream) {
  return sample_path(params, horizon, stream, ProcessKind::damped);
}

PathSkeleton sample_standard_path(const ModelParams& params, double horizon,
                                  RngStream& stream) {
  return sample_path(params, horizon, stream, ProcessKind::standard);
}

double position_at(const PathSkeleton& path, double t) {
  check_time(t, path.horizon);
  bool up = path.initial_velocity > 0.0;
  double pos = 0.0;
  double prev = 0.0;
  for (double epoch : path.switch_epochs) {
    if (epoch >= t) break;
    pos += (up ? path.up_velocity : path.down_velocity) * (epoch - prev);
    prev = epoch;
    up = !up;
  }
  pos += (up ? path.up_velocity : path.down_velocity) * (t - prev);
  return pos;
}

double running_max(const PathSkeleton& path, double upto) {
  check_time(upto, path.horizon);
  bool up = path.initial_velocity > 0.0;
  double best = 0.0;
  double pos = 0.0;
  double prev = 0.0;
  for (double epoch : path.switch_epochs) {
    if (epoch >= upto) break;
    pos += (up ? path.up_velocity : path.down_velocity) * (epoch - prev);
    best = std::max(best, pos);
    prev = epoch;
    up = !up;
  }
  pos += (up ? path.up_velocity : path.down_velocity) * (upto - prev);
  return std::max(best, pos);
}

std::size_t switch_count(const PathSkeleton& path, double t) {
  check_time(t, path.horizon);
  return static_cast<std::size_t>(
      std::upper_bound(path.switch_epochs.begin(), path.switch_epochs.end(), t) -
      path.switch_epochs.begin());
}

void append_path_csv(std::ostream& out, const PathSkeleton& path,
                     std::uint64_t path_id) {
  const std::string id = format_u64(path_id);
  bool up = path.initial_velocity > 0.0;
  double pos = 0.0;
  double prev = 0.0;
  out << id << ",0,0," << format_double(0.0) << ','
      << format_double(path.initial_velocity) << '\n';
  std::uint64_t index = 1;
  for (double epoch : path.switch_epochs) {
    pos += (up ? path.up_velocity : path.down_velocity) * (epoch - prev);
    prev = epoch;
    up = !up;
    out << id << ',' << format_u64(index++) << ',' << format_double(epoch)
        << ',' << format_double(pos) << ','
        << format_double(up ? path.up_velocity : path.down_velocity) << '\n';
  }
  pos += (up ? path.up_velocity : path.down_velocity) * (path.horizon - prev);
  out << id << ',' << format_u64(index) << ',' << format_double(path.horizon)
      << ',' << format_double(pos) << ','
      << format_double(up ? path.up_velocity : path.down_velocity) << '\n';
}

} // namespace telegraph
