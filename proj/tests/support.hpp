#pragma once

#include <random>

#include "seirq/model.hpp"

// Seeded generators shared by the suites. Everything here is deterministic:
// callers own the engine and the seed.
namespace testsupport {

// Uniform point of the 3-simplex (normalized exponentials).
inline seirq::SimplexState random_simplex(std::mt19937_64& rng) {
  std::exponential_distribution<double> exp1(1.0);
  double g[4];
  double total = 0.0;
  for (double& v : g) {
    v = exp1(rng);
    total += v;
  }
  return {g[0] / total, g[1] / total, g[2] / total, g[3] / total};
}

// Interior simplex point with every coordinate at least floor; keeps
// trajectory tests away from the exactly-invariant faces.
inline seirq::SimplexState random_interior(std::mt19937_64& rng,
                                           double floor = 1e-3) {
  const seirq::SimplexState x = random_simplex(rng);
  const double keep = 1.0 - 4.0 * floor;
  return {floor + keep * x.s, floor + keep * x.e, floor + keep * x.i,
          floor + keep * x.r};
}

// Admissible parameters; q ranges above 1 where beta allows, so the
// beta*q <= 1 constraint is exercised from the inside.
inline seirq::Params random_admissible(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  seirq::Params p;
  p.a = unit(rng);
  p.b = unit(rng);
  p.beta = unit(rng);
  const double qmax = p.beta > 0.5 ? 1.0 / p.beta : 2.0;
  p.q = unit(rng) * qmax;
  return p;
}

// Admissible with every rate strictly positive; the closed-form spectral
// and reconstruction identities need nondegenerate rates.
inline seirq::Params random_positive_rates(std::mt19937_64& rng,
                                           double lo = 0.02) {
  std::uniform_real_distribution<double> unit(lo, 1.0);
  seirq::Params p;
  p.a = unit(rng);
  p.b = unit(rng);
  p.beta = unit(rng);
  std::uniform_real_distribution<double> qdist(lo, 1.0 / p.beta);
  p.q = qdist(rng);
  return p;
}

// One field pushed out of the admissible region, chosen by `which` mod 4.
inline seirq::Params make_inadmissible(const seirq::Params& base, int which) {
  seirq::Params p = base;
  switch (which % 4) {
    case 0: p.a = 1.0 + 0.5 * (which % 3 + 1); break;
    case 1: p.b = -0.25 * (which % 3 + 1); break;
    case 2: p.beta = 1.5; break;
    default: p.q = 2.0 / (p.beta > 0.0 ? p.beta : 1.0); break;
  }
  return p;
}

inline const seirq::Params uzbekistan_params() {
  return {0.12, 1.0, 0.1, 0.066};  // beta, q, a, b
}

inline const seirq::SimplexState uzbekistan_start() {
  return {0.99999, 0.0, 0.00001, 0.0};
}

}  // namespace testsupport
