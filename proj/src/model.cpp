#include "seirq/model.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

#include "seirq/errors.hpp"

namespace seirq {

std::string ParamCheck::joined() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

ParamCheck validate_params(const Params& p) {
  if (!std::isfinite(p.beta) || !std::isfinite(p.q) || !std::isfinite(p.a) ||
      !std::isfinite(p.b)) {
    throw InvalidInput("parameters must be finite (beta=" + fmt(p.beta) +
                       ", q=" + fmt(p.q) + ", a=" + fmt(p.a) +
                       ", b=" + fmt(p.b) + ")");
  }
  ParamCheck check;
  if (!(p.a >= 0.0 && p.a <= 1.0))
    check.violations.push_back("a in [0,1] (a = " + fmt(p.a) + ")");
  if (!(p.b >= 0.0 && p.b <= 1.0))
    check.violations.push_back("b in [0,1] (b = " + fmt(p.b) + ")");
  if (!(p.beta >= 0.0 && p.beta <= 1.0))
    check.violations.push_back("beta in [0,1] (beta = " + fmt(p.beta) + ")");
  if (!(p.q >= 0.0))
    check.violations.push_back("q >= 0 (q = " + fmt(p.q) + ")");
  if (!(p.beta * p.q <= 1.0))
    check.violations.push_back("beta*q <= 1 (beta*q = " + fmt(p.beta * p.q) +
                               ")");
  return check;
}

void require_admissible(const Params& p) {
  const ParamCheck check = validate_params(p);
  if (!check.ok())
    throw ParamError("inadmissible parameters: " + check.joined());
}

double SimplexState::simplex_error() const {
  double worst = std::fabs(sum() - 1.0);
  for (double c : {s, e, i, r}) {
    if (c < 0.0) worst = std::max(worst, -c);
    if (c > 1.0) worst = std::max(worst, c - 1.0);
    if (std::isnan(c)) return std::numeric_limits<double>::infinity();
  }
  return worst;
}

void require_on_simplex(const SimplexState& x, double tol) {
  const double err = x.simplex_error();
  if (!(err <= tol))
    throw DomainError("state is off the simplex by " + fmt(err) +
                      " (tolerance " + fmt(tol) + ")");
}

SimplexState fixed_point(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("fixed-point coordinate must lie in [0,1] (alpha = " +
                      fmt(alpha) + ")");
  return {alpha, 0.0, 0.0, 1.0 - alpha};
}

bool is_fixed_point(const SimplexState& x) { return x.e == 0.0 && x.i == 0.0; }

SimplexState step(const SimplexState& x, const Params& p) {
  require_admissible(p);
  require_on_simplex(x);
  const SimplexState next = detail::step_unchecked(x, p);
  // The sum is preserved algebraically; anything past rounding is a bug.
  assert(std::fabs(next.sum() - 1.0) <= 2.0 * kSimplexTol + x.simplex_error());
  return next;
}

}  // namespace seirq
