#ifndef PEAKON_TRAJECTORY_HPP_
#define PEAKON_TRAJECTORY_HPP_

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "peakon/rk4.hpp"
#include "peakon/state.hpp"

namespace peakon {

struct Trajectory {
  std::vector<double> times;
  std::vector<CharacteristicState> states;

  std::size_t size() const { return states.size(); }
  const CharacteristicState& back() const { return states.back(); }

  void push(const CharacteristicState& st) {
    if (!times.empty() && !(st.t > times.back())) throw std::logic_error("trajectory times must increase");
    times.push_back(st.t);
    states.push_back(st);
  }
};

/// Thrown when a state stops being finite; carries the last valid time.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double last_valid_time)
      : std::runtime_error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const { return last_valid_time_; }

 private:
  double last_valid_time_;
};

/// Which states to keep. With `sample_times` set, the run is split into
/// segments ending exactly on those times, each covered by equal steps no
/// longer than dt, and only those states are kept (plus t = 0). Otherwise
/// every `stride`-th step and the final state are kept.
struct RecordPlan {
  std::vector<double> sample_times;
  std::size_t stride = 1;
};

namespace detail {

inline void check_run(double t_end, double dt, std::size_t n_chars) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be non-negative");
  if (n_chars < 16) throw std::invalid_argument("need at least 16 characteristics");
}

/// Step boundaries for a run to t_end: a list of (segment end, step count).
inline std::vector<std::pair<double, std::size_t>> segments(double t_end, double dt, const RecordPlan& plan) {
  std::vector<std::pair<double, std::size_t>> out;
  if (plan.sample_times.empty()) {
    out.emplace_back(t_end, step_count(t_end, dt));
    return out;
  }
  double prev = 0.0;
  for (double ts : plan.sample_times) {
    if (!(ts > prev) && !(ts == 0.0 && prev == 0.0 && out.empty())) {
      throw std::invalid_argument("sample times must be strictly increasing and non-negative");
    }
    if (ts == 0.0) continue;
    out.emplace_back(ts, step_count(ts - prev, dt));
    prev = ts;
  }
  return out;
}

}  // namespace detail
}  // namespace peakon

#endif  // PEAKON_TRAJECTORY_HPP_
