#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "telegraph/params.hpp"
#include "telegraph/rng.hpp"

namespace telegraph {

enum class ProcessKind { damped, standard };

// A trajectory stored as its switch epochs only; positions are recomputed
// exactly by piecewise-linear integration of the velocity. Segment k moves at
// up_velocity or down_velocity, alternating from initial_velocity.
struct PathSkeleton {
  double initial_velocity; // +c1 or -c2
  double up_velocity;      // +c1
  double down_velocity;    // -c2
  std::vector<double> switch_epochs; // strictly increasing, all <= horizon
  double horizon;
  ProcessKind kind;
};

// Hard cap on switches per path; exceeding it raises ExplosionGuardTripped
// instead of silently truncating. The damped process switches faster and
// faster, so long horizons can legitimately trip this.
inline constexpr std::size_t kMaxSwitchesPerPath = 1'000'000;

// Damped process: the k-th holding time in each direction has rate
// lambda*k for that direction's lambda, so switching accelerates along the
// path. Initial velocity is +c1 with probability alpha. Draw order per path:
// one Bernoulli, then one exponential per segment.
PathSkeleton sample_damped_path(const ModelParams& params, double horizon,
                                RngStream& stream);

// Standard process: constant rates lambda1 (while moving up) and lambda2
// (while moving down).
PathSkeleton sample_standard_path(const ModelParams& params, double horizon,
                                  RngStream& stream);

// Exact position at time t in [0, horizon]; position_at(path, 0) = 0.
double position_at(const PathSkeleton& path, double t);

// Exact supremum of the path on [0, upto]; attained at a switch epoch, at 0,
// or at upto, and always >= 0.
double running_max(const PathSkeleton& path, double upto);

// Number of switch epochs <= t.
std::size_t switch_count(const PathSkeleton& path, double t);

// Appends CSV rows `path_id,epoch_index,time,position,velocity`: row 0 is the
// origin with the initial velocity, one row per switch (velocity after the
// switch), and a final row at the horizon. No header.
void append_path_csv(std::ostream& out, const PathSkeleton& path,
                     std::uint64_t path_id);

inline const char* path_csv_header() {
  return "path_id,epoch_index,time,position,velocity";
}

} // namespace telegraph
