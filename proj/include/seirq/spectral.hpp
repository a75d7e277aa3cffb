#pragma once

#include <array>

#include "seirq/model.hpp"

namespace seirq {

using Matrix3 = std::array<std::array<double, 3>, 3>;

// Jacobian of the reduced (s, e, i) operator at the fixed point
// (alpha, 0, 0):
//   [ 1   -beta*q*alpha      -beta*alpha ]
//   [ 0   1 - a + beta*q*alpha   beta*alpha ]
//   [ 0   a                  1 - b       ]
// Throws DomainError when alpha is outside [0,1], ParamError when p is
// inadmissible.
Matrix3 jacobian_at(double alpha, const Params& p);

struct Eigenvalues {
  double mu1 = 1.0;  // exactly 1 for every fixed point
  double mu2 = 0.0;  // root carrying -sqrt(discriminant); mu2 >= mu3
  double mu3 = 0.0;  // root carrying +sqrt(discriminant)
  double discriminant = 0.0;  // (b - a + q*alpha*beta)^2 + 4*a*alpha*beta
};

// Closed-form spectrum of jacobian_at. All three roots are real.
Eigenvalues eigenvalues_at(double alpha, const Params& p);

// The susceptible-fraction threshold a*b/(beta*(a + b*q)). |mu2| < 1 below
// it, = 1 at it, > 1 above it; it also bounds the limiting susceptible
// fraction of every non-fixed trajectory. Throws DomainError when beta == 0
// (no threshold exists; the dynamics degenerate).
double critical_alpha(const Params& p);

enum class Regime { below, at, above, none };  // none: beta == 0
const char* regime_name(Regime r);

// Tie tolerance when comparing alpha against the threshold:
// |alpha - critical| <= kRegimeTieTol * max(1, critical) classifies as "at".
inline constexpr double kRegimeTieTol = 1e-12;

struct SpectralReport {
  double alpha = 0.0;
  Eigenvalues mu;
  double critical = 0.0;  // NaN when regime == none
  Regime regime = Regime::none;
  int dim_stable = 0;     // eigenvalues of modulus < 1
  int dim_center = 0;     // modulus = 1
  int dim_unstable = 0;   // modulus > 1
  bool hyperbolic = false;  // always false: mu1 = 1 sits on the unit circle
};

// Classifies the fixed point (alpha, 0, 0, 1-alpha). For beta > 0 the
// eigenspace dimensions are (2,1,0) below the threshold, (1,2,0) at it and
// (1,1,1) above it. For beta == 0 the spectrum is {1, 1-a, 1-b} and no
// regime label applies.
SpectralReport classify(double alpha, const Params& p);

}  // namespace seirq
