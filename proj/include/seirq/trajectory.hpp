#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "seirq/model.hpp"

namespace seirq {

// Per-state diagnostics. e_decline and i_decline are the amounts the next
// step removes from e and i:
//   e_decline = a*e - beta*s*(i + q*e)
//   i_decline = b*i - a*e
// A state with both strictly positive lies in the decay region: from there
// both quantities stay positive forever and e, i shrink monotonically (the
// post-peak phase of the epidemic).
struct StepDiag {
  double e_decline = 0.0;
  double i_decline = 0.0;
  bool in_decay = false;
};

StepDiag state_diagnostics(const SimplexState& x, const Params& p);
bool in_decay_region(const SimplexState& x, const Params& p);

// An orbit of the map: states[n+1] = step(states[n]). Immutable once built.
class Trajectory {
 public:
  Trajectory(const Params& p, std::vector<SimplexState> states);

  const Params& params() const { return params_; }
  const std::vector<SimplexState>& states() const { return states_; }
  const std::vector<StepDiag>& diagnostics() const { return diag_; }

  // Number of steps taken; states().size() == days() + 1.
  std::size_t days() const { return states_.size() - 1; }

  std::vector<double> recovered_series() const;

 private:
  Params params_;
  std::vector<SimplexState> states_;
  std::vector<StepDiag> diag_;
};

// Iterates the map for the given number of days. Validates once up front.
Trajectory simulate(const SimplexState& x0, const Params& p, long steps);

struct Peak {
  long day = 0;
  double infectious = 0.0;
};

// Day with the largest infectious fraction; earliest day on ties.
Peak peak(const Trajectory& t);

// First day with i < threshold, or nullopt if the trajectory never gets
// there within its horizon.
std::optional<long> completion_day(const Trajectory& t, double threshold);

inline constexpr double kLimitTol = 1e-10;
inline constexpr long kLimitMaxIter = 1'000'000;

struct LimitReport {
  SimplexState limit;        // e, i clamped to 0 once converged
  long iterations = 0;
  bool converged = false;
  double residual_ei = 0.0;  // e + i at the stopping state
  double residual_ds = 0.0;  // last per-step decrease of s
  bool bound_applicable = false;  // beta > 0 and x0 not a fixed point
  bool bound_ok = false;          // limit s < critical_alpha
  double critical = 0.0;          // NaN when not applicable
};

// Iterates until e + i and the per-step drop of s both fall below tol, then
// reports the limit (e, i clamped to zero; r adjusted to keep the sum 1).
// Exhausting max_iter yields converged = false, never an exception.
LimitReport find_limit(const SimplexState& x0, const Params& p,
                       double tol = kLimitTol, long max_iter = kLimitMaxIter);

struct DecayEntry {
  enum class Status { found, not_found, not_applicable } status =
      Status::not_found;
  long day = 0;  // meaningful only when status == found
};

// Smallest day whose state lies in the decay region. Fixed-point starts
// never enter (both margins are identically zero) and report not_applicable.
DecayEntry decay_entry_day(const SimplexState& x0, const Params& p,
                           long max_iter);

// Scan of a stored trajectory's flags; nullopt when no stored state is in
// the decay region.
std::optional<long> decay_entry_day(const Trajectory& t);

struct Reconstruction {
  double s = 0.0;
  double e = 0.0;
  double i = 0.0;
};

// When the s-quotient denominator is smaller than this fraction of the
// window magnitude, the window cannot determine s to useful accuracy and
// reconstruct_from_v refuses instead of extrapolating.
inline constexpr double kWindowDenominatorFloor = 1e-5;

// Recovers (s, e, i) at the first day of a window of four consecutive
// recovered-fraction values (v(n), ..., v(n+3)):
//   i = (v(n+1) - v(n)) / b
//   e = (v(n+2) + (b-2)*v(n+1) + (1-b)*v(n)) / (a*b)
//   s = quotient of two further window combinations
// Requires a, b, beta > 0. Throws DegenerateWindow for stagnant windows
// (e.g. at fixed points), where the s-quotient denominator vanishes.
Reconstruction reconstruct_from_v(const std::array<double, 4>& v_window,
                                  const Params& p);

// The recovered fraction satisfies a cubic-window recurrence
// a*b*v(n+3) = R(v(n), v(n+1), v(n+2)); this evaluates R.
double recurrence_rhs(double v0, double v1, double v2, const Params& p);

// Largest |a*b*v(n+3) - R(...)| over every window of the sequence.
// Requires at least four values.
double max_recurrence_residual(std::span<const double> v, const Params& p);
double max_recurrence_residual(const Trajectory& t);

}  // namespace seirq
