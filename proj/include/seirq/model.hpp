#pragma once

#include <string>
#include <vector>

namespace seirq {

// States are accepted as simplex members while every coordinate is within
// this distance of [0,1] and the coordinate sum is within it of 1. Step
// outputs are never renormalized; the map preserves the sum algebraically,
// so any drift is floating-point error and should stay far below this.
inline constexpr double kSimplexTol = 1e-12;

// Model parameters, all rates per day:
//   beta - contact-transmission rate,
//   q    - scaling factor for contacts with exposed individuals,
//   a    - incubation rate (reciprocal of the mean exposed period),
//   b    - recovery rate (reciprocal of the mean infectious period).
//
// The map sends the simplex into itself exactly when a, b, beta are in [0,1]
// and beta*q <= 1 (q itself may exceed 1).
struct Params {
  double beta = 0.0;
  double q = 0.0;
  double a = 0.0;
  double b = 0.0;
};

struct ParamCheck {
  std::vector<std::string> violations;  // one entry per failed inequality
  bool ok() const { return violations.empty(); }
  std::string joined() const;           // "; "-separated, empty when ok
};

// Checks admissibility. Throws InvalidInput if any field is non-finite.
ParamCheck validate_params(const Params& p);

// Throws ParamError naming every violated condition.
void require_admissible(const Params& p);

// A point of the 3-simplex: population fractions in compartment order
// (s, e, i, r) = indices (1, 2, 3, 4).
struct SimplexState {
  double s = 0.0;
  double e = 0.0;
  double i = 0.0;
  double r = 0.0;

  double sum() const { return s + e + i + r; }

  // Largest violation of the simplex constraints: distance of any
  // coordinate from [0,1], or of the sum from 1. Zero for a clean member.
  double simplex_error() const;

  bool on_simplex(double tol = kSimplexTol) const {
    return simplex_error() <= tol;
  }
};

// Throws DomainError when x.simplex_error() exceeds tol.
void require_on_simplex(const SimplexState& x, double tol = kSimplexTol);

// The fixed points of the map are exactly the segment (alpha, 0, 0, 1-alpha).
SimplexState fixed_point(double alpha);

// True iff e and i are exactly zero, i.e. the state sits on the fixed segment.
bool is_fixed_point(const SimplexState& x);

// One day of the discrete SEIR evolution:
//   s' = s - beta*s*(i + q*e)
//   e' = e - a*e + beta*s*(i + q*e)
//   i' = i - b*i + a*e
//   r' = r + b*i
// Throws ParamError for inadmissible p and DomainError for x off the simplex.
// Guarantees s' <= s and r' >= r, and keeps the state on the simplex.
SimplexState step(const SimplexState& x, const Params& p);

namespace detail {
// The raw update with no admissibility or domain checks; used by iteration
// loops that validated their inputs once. Identical arithmetic to step().
inline SimplexState step_unchecked(const SimplexState& x, const Params& p) {
  const double force = p.beta * x.s * (x.i + p.q * x.e);
  return {x.s - force, x.e - p.a * x.e + force, x.i - p.b * x.i + p.a * x.e,
          x.r + p.b * x.i};
}
}  // namespace detail

}  // namespace seirq
