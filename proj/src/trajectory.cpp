#include "seirq/trajectory.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

#include "seirq/errors.hpp"
#include "seirq/spectral.hpp"

namespace seirq {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

StepDiag state_diagnostics(const SimplexState& x, const Params& p) {
  StepDiag d;
  const double force = p.beta * x.s * (x.i + p.q * x.e);
  d.e_decline = p.a * x.e - force;
  d.i_decline = p.b * x.i - p.a * x.e;
  d.in_decay = d.e_decline > 0.0 && d.i_decline > 0.0;
  return d;
}

bool in_decay_region(const SimplexState& x, const Params& p) {
  return state_diagnostics(x, p).in_decay;
}

Trajectory::Trajectory(const Params& p, std::vector<SimplexState> states)
    : params_(p), states_(std::move(states)) {
  if (states_.empty()) throw InvalidInput("trajectory needs at least one state");
  diag_.reserve(states_.size());
  for (const auto& x : states_) diag_.push_back(state_diagnostics(x, params_));
}

std::vector<double> Trajectory::recovered_series() const {
  std::vector<double> v;
  v.reserve(states_.size());
  for (const auto& x : states_) v.push_back(x.r);
  return v;
}

Trajectory simulate(const SimplexState& x0, const Params& p, long steps) {
  if (steps < 0) throw InvalidInput("steps must be >= 0 (steps = " +
                                    std::to_string(steps) + ")");
  require_admissible(p);
  require_on_simplex(x0);
  std::vector<SimplexState> states;
  states.reserve(static_cast<std::size_t>(steps) + 1);
  states.push_back(x0);
  [[maybe_unused]] const double err0 = x0.simplex_error();
  SimplexState x = x0;
  for (long n = 0; n < steps; ++n) {
    x = detail::step_unchecked(x, p);
    // Mass is conserved algebraically; rounding drift grows at most linearly.
    assert(std::fabs(x.sum() - 1.0) <=
           err0 + static_cast<double>(n + 2) *
                      8.0 * std::numeric_limits<double>::epsilon());
    states.push_back(x);
  }
  return Trajectory(p, std::move(states));
}

Peak peak(const Trajectory& t) {
  const auto& states = t.states();
  Peak best{0, states[0].i};
  for (std::size_t n = 1; n < states.size(); ++n) {
    if (states[n].i > best.infectious) {
      best.day = static_cast<long>(n);
      best.infectious = states[n].i;
    }
  }
  return best;
}

std::optional<long> completion_day(const Trajectory& t, double threshold) {
  if (!(threshold > 0.0))
    throw InvalidInput("threshold must be > 0 (threshold = " + fmt(threshold) +
                       ")");
  const auto& states = t.states();
  for (std::size_t n = 0; n < states.size(); ++n)
    if (states[n].i < threshold) return static_cast<long>(n);
  return std::nullopt;
}

LimitReport find_limit(const SimplexState& x0, const Params& p, double tol,
                       long max_iter) {
  if (!(tol > 0.0))
    throw InvalidInput("tolerance must be > 0 (tol = " + fmt(tol) + ")");
  if (max_iter < 1)
    throw InvalidInput("max_iter must be >= 1 (max_iter = " +
                       std::to_string(max_iter) + ")");
  require_admissible(p);
  require_on_simplex(x0);

  LimitReport rep;
  rep.critical = std::numeric_limits<double>::quiet_NaN();
  SimplexState x = x0;
  for (long n = 1; n <= max_iter; ++n) {
    const SimplexState next = detail::step_unchecked(x, p);
    rep.residual_ds = x.s - next.s;
    x = next;
    rep.iterations = n;
    rep.residual_ei = x.e + x.i;
    if (rep.residual_ei < tol && rep.residual_ds < tol) {
      rep.converged = true;
      break;
    }
  }
  rep.limit = rep.converged ? SimplexState{x.s, 0.0, 0.0, 1.0 - x.s} : x;

  // Interior starts with transmission settle strictly below the threshold
  // coordinate; fixed points sit still wherever they are.
  rep.bound_applicable = p.beta > 0.0 && !is_fixed_point(x0);
  if (rep.bound_applicable) {
    try {
      rep.critical = critical_alpha(p);
      rep.bound_ok = rep.converged && rep.limit.s < rep.critical;
    } catch (const DomainError&) {
      rep.bound_applicable = false;
      rep.critical = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return rep;
}

DecayEntry decay_entry_day(const SimplexState& x0, const Params& p,
                           long max_iter) {
  if (max_iter < 0)
    throw InvalidInput("max_iter must be >= 0 (max_iter = " +
                       std::to_string(max_iter) + ")");
  require_admissible(p);
  require_on_simplex(x0);
  if (is_fixed_point(x0)) return {DecayEntry::Status::not_applicable, 0};
  SimplexState x = x0;
  for (long n = 0; n <= max_iter; ++n) {
    if (in_decay_region(x, p)) return {DecayEntry::Status::found, n};
    x = detail::step_unchecked(x, p);
  }
  return {DecayEntry::Status::not_found, 0};
}

std::optional<long> decay_entry_day(const Trajectory& t) {
  const auto& diag = t.diagnostics();
  for (std::size_t n = 0; n < diag.size(); ++n)
    if (diag[n].in_decay) return static_cast<long>(n);
  return std::nullopt;
}

Reconstruction reconstruct_from_v(const std::array<double, 4>& v_window,
                                  const Params& p) {
  require_admissible(p);
  if (!(p.a > 0.0 && p.b > 0.0 && p.beta > 0.0))
    throw DomainError("reconstruction requires a, b, beta > 0 (a = " +
                      fmt(p.a) + ", b = " + fmt(p.b) + ", beta = " +
                      fmt(p.beta) + ")");
  double vmax = 0.0;
  for (double v : v_window) {
    if (!std::isfinite(v))
      throw InvalidInput("window values must be finite (got " + fmt(v) + ")");
    vmax = std::max(vmax, std::fabs(v));
  }
  // Differences of the window, not raw values: the raw-value form of these
  // expressions cancels catastrophically once the epidemic has settled.
  const double d0 = v_window[1] - v_window[0];
  const double d1 = v_window[2] - v_window[1];
  const double d2 = v_window[3] - v_window[2];

  Reconstruction rec;
  rec.i = d0 / p.b;
  rec.e = (d1 - (1.0 - p.b) * d0) / (p.a * p.b);

  const double num = d2 + (p.a + p.b - 2.0) * d1 + (1.0 - p.a) * (1.0 - p.b) * d0;
  const double den =
      p.beta * (p.q * d1 + (p.a + p.b * p.q - p.q) * d0);
  if (den == 0.0 || std::fabs(den) < kWindowDenominatorFloor * vmax)
    throw DegenerateWindow(
        "window is too flat to recover s (denominator = " + fmt(den) +
        ", window magnitude = " + fmt(vmax) + ")");
  rec.s = num / den;
  return rec;
}

double recurrence_rhs(double v0, double v1, double v2, const Params& p) {
  const double a = p.a, b = p.b, beta = p.beta, q = p.q;
  const double ab = a * b;
  // Recurring groups in the window coefficients.
  const double g = a + b * q - 2.0 * q;
  const double h = q - a - b * q;
  const double c22 = q;
  const double c21 = 2.0 * b * q - 4.0 * q + a + a * q;
  const double c20 = q * (1.0 - a) * (1.0 - b) + h;
  const double c11 = g * (a + b - 2.0);
  const double c10 = (1.0 - a) * (1.0 - b) * g + (a + b - 2.0) * h;
  const double c00 = (1.0 - a) * (1.0 - b) * h;
  const double l2 = a + b - beta * q - 3.0;
  const double l1 = 3.0 + ab - 2.0 * a - 2.0 * b - beta * g;
  const double l0 = a + b - ab - 1.0 - beta * h;
  return -beta * (c22 * v2 * v2 + c21 * v2 * v1 + c20 * v2 * v0 +
                  c11 * v1 * v1 + c10 * v1 * v0 + c00 * v0 * v0) -
         ab * (l2 * v2 + l1 * v1 + l0 * v0);
}

double max_recurrence_residual(std::span<const double> v, const Params& p) {
  if (v.size() < 4)
    throw InvalidInput("need at least four values (got " +
                       std::to_string(v.size()) + ")");
  require_admissible(p);
  const double ab = p.a * p.b;
  double worst = 0.0;
  for (std::size_t n = 0; n + 3 < v.size(); ++n) {
    const double lhs = ab * v[n + 3];
    const double rhs = recurrence_rhs(v[n], v[n + 1], v[n + 2], p);
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  return worst;
}

double max_recurrence_residual(const Trajectory& t) {
  const std::vector<double> v = t.recovered_series();
  return max_recurrence_residual(std::span<const double>(v), t.params());
}

}  // namespace seirq
