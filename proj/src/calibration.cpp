#include "seirq/calibration.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "seirq/errors.hpp"

namespace seirq {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void validate_target(const CalibrationTarget& t) {
  if (!(std::isfinite(t.population) && t.population > 0.0))
    throw InvalidInput("population must be positive (population = " +
                       fmt(t.population) + ")");
  if (t.peak_day < 0)
    throw InvalidInput("target peak day must be >= 0 (got " +
                       std::to_string(t.peak_day) + ")");
  if (t.completion_day && *t.completion_day < 0)
    throw InvalidInput("target completion day must be >= 0 (got " +
                       std::to_string(*t.completion_day) + ")");
  require_on_simplex(t.x0);
}

}  // namespace

double objective(const Params& candidate, const CalibrationTarget& target) {
  require_admissible(candidate);
  validate_target(target);
  const double threshold = 1.0 / target.population;

  SimplexState x = target.x0;
  long peak_day = 0;
  double peak_i = x.i;
  std::optional<long> completion;
  if (x.i < threshold) completion = 0;
  long day = 0;
  while (!completion && day < kObjectiveHorizonCap) {
    x = detail::step_unchecked(x, candidate);
    ++day;
    if (x.i > peak_i) {
      peak_i = x.i;
      peak_day = day;
    }
    if (x.i < threshold) completion = day;
  }

  double loss =
      static_cast<double>(std::labs(peak_day - target.peak_day));
  if (!completion)
    loss += kHorizonCapPenalty;
  else if (target.completion_day)
    loss += static_cast<double>(std::labs(*completion - *target.completion_day));
  return loss;
}

std::vector<double> AxisRange::values() const {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo <= hi))
    throw ConfigError("axis range must satisfy lo <= hi (lo = " + fmt(lo) +
                      ", hi = " + fmt(hi) + ")");
  if (points < 1)
    throw ConfigError("axis needs at least one point (points = " +
                      std::to_string(points) + ")");
  if (points == 1) return {lo};
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k)
    v[static_cast<std::size_t>(k)] =
        lo + (hi - lo) * static_cast<double>(k) /
                 static_cast<double>(points - 1);
  return v;
}

SearchBox default_search_box() {
  return {{0.07, 0.5, 20}, {0.05, 0.1, 20}, {0.1, 0.3, 20}, {1.0, 1.0, 1}};
}

FitResult grid_search(const SearchBox& box, const CalibrationTarget& target) {
  validate_target(target);
  const std::vector<double> as = box.a.values();
  const std::vector<double> bs = box.b.values();
  const std::vector<double> betas = box.beta.values();
  const std::vector<double> qs = box.q.values();

  // The admissible region is monotone in every axis, so checking the box
  // corners covers every grid point.
  std::vector<std::string> bad;
  if (box.a.lo < 0.0 || box.a.hi > 1.0)
    bad.push_back("a axis leaves [0,1]");
  if (box.b.lo < 0.0 || box.b.hi > 1.0)
    bad.push_back("b axis leaves [0,1]");
  if (box.beta.lo < 0.0 || box.beta.hi > 1.0)
    bad.push_back("beta axis leaves [0,1]");
  if (box.q.lo < 0.0) bad.push_back("q axis goes below 0");
  if (box.beta.hi * box.q.hi > 1.0)
    bad.push_back("beta*q reaches " + fmt(box.beta.hi * box.q.hi) + " > 1");
  if (!bad.empty()) {
    std::string joined;
    for (const auto& m : bad) {
      if (!joined.empty()) joined += "; ";
      joined += m;
    }
    throw ConfigError("search box leaves the admissible region: " + joined);
  }

  const unsigned long long total =
      static_cast<unsigned long long>(as.size()) * bs.size() * betas.size() *
      qs.size();
  if (total > static_cast<unsigned long long>(kMaxGridEvaluations))
    throw ConfigError("grid too large: " + std::to_string(total) +
                      " points, above the cap of " +
                      std::to_string(kMaxGridEvaluations));

  // Top candidates ordered by (loss, enumeration index); index never stored,
  // insertion order preserves it.
  std::vector<ScoredParams> ranked;
  constexpr std::size_t kKeep = 5;
  for (double a : as)
    for (double b : bs)
      for (double beta : betas)
        for (double q : qs) {
          const Params p{beta, q, a, b};
          const double loss = objective(p, target);
          std::size_t pos = ranked.size();
          while (pos > 0 && ranked[pos - 1].loss > loss) --pos;
          if (pos < kKeep) {
            ranked.insert(ranked.begin() + static_cast<std::ptrdiff_t>(pos),
                          {p, loss});
            if (ranked.size() > kKeep) ranked.pop_back();
          }
        }

  FitResult result;
  result.best = ranked.front();
  result.ranked = std::move(ranked);
  result.evaluations = static_cast<long>(total);
  return result;
}

}  // namespace seirq
