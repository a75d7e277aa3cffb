#pragma once

#include <optional>
#include <vector>

#include "seirq/model.hpp"

namespace seirq {

// What a candidate parameter set is scored against: the observed peak day,
// optionally the observed completion day, both measured from the epidemic
// start x0. The completion threshold is one person, i.e. 1/population.
struct CalibrationTarget {
  SimplexState x0;
  long peak_day = 0;
  double population = 0.0;
  std::optional<long> completion_day;
};

// Candidates are simulated at most this many days. A run that never drops
// below the completion threshold within the cap takes the flat penalty,
// which dwarfs any achievable day mismatch.
inline constexpr long kObjectiveHorizonCap = 200'000;
inline constexpr double kHorizonCapPenalty = 1e6;

// |simulated peak day - target peak day|, plus the same for the completion
// day when the target carries one. Simulation stops at completion (first
// day the infectious fraction is below 1/population) or at the horizon cap.
double objective(const Params& candidate, const CalibrationTarget& target);

// points evenly spaced values over [lo, hi]; points == 1 pins the axis at lo.
struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  int points = 1;

  std::vector<double> values() const;
};

struct SearchBox {
  AxisRange a, b, beta, q;
};

// Epidemiologically plausible daily rates: incubation periods of 2-14 days,
// infectious periods of 10-20 days, modest transmission, q pinned at 1.
SearchBox default_search_box();

inline constexpr long kMaxGridEvaluations = 1'000'000;

struct ScoredParams {
  Params params;
  double loss = 0.0;
};

struct FitResult {
  ScoredParams best;
  std::vector<ScoredParams> ranked;  // best first, at most five entries
  long evaluations = 0;
};

// Exhaustive scan of the box in (a, b, beta, q) lexicographic order. Fully
// deterministic: ties in loss go to the earlier grid point. Throws
// ConfigError if the box leaves the admissible region or exceeds
// kMaxGridEvaluations points.
FitResult grid_search(const SearchBox& box, const CalibrationTarget& target);

}  // namespace seirq
