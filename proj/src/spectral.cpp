#include "seirq/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "seirq/errors.hpp"

namespace seirq {

namespace {

void require_unit_interval(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("alpha must lie in [0,1] (alpha = " +
                      std::to_string(alpha) + ")");
}

}  // namespace

Matrix3 jacobian_at(double alpha, const Params& p) {
  require_admissible(p);
  require_unit_interval(alpha);
  const double ba = p.beta * alpha;
  const double bqa = p.beta * p.q * alpha;
  return {{{1.0, -bqa, -ba},
           {0.0, 1.0 - p.a + bqa, ba},
           {0.0, p.a, 1.0 - p.b}}};
}

Eigenvalues eigenvalues_at(double alpha, const Params& p) {
  require_admissible(p);
  require_unit_interval(alpha);
  const double qab = p.q * alpha * p.beta;
  const double disc = (p.b - p.a + qab) * (p.b - p.a + qab) +
                      4.0 * p.a * alpha * p.beta;
  const double root = std::sqrt(disc);
  Eigenvalues mu;
  mu.mu1 = 1.0;
  mu.mu2 = 1.0 - (p.a + p.b - qab - root) / 2.0;
  mu.mu3 = 1.0 - (p.a + p.b - qab + root) / 2.0;
  mu.discriminant = disc;
  return mu;
}

double critical_alpha(const Params& p) {
  require_admissible(p);
  if (p.beta == 0.0)
    throw DomainError(
        "critical alpha is undefined for beta = 0 (every trajectory freezes "
        "its susceptible fraction)");
  const double denom = p.beta * (p.a + p.b * p.q);
  if (denom == 0.0)
    throw DomainError("critical alpha is undefined when a + b*q = 0");
  return p.a * p.b / denom;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::below: return "below";
    case Regime::at: return "at";
    case Regime::above: return "above";
    case Regime::none: return "none";
  }
  return "?";
}

SpectralReport classify(double alpha, const Params& p) {
  SpectralReport report;
  report.alpha = alpha;
  report.mu = eigenvalues_at(alpha, p);
  report.hyperbolic = false;

  if (p.beta == 0.0) {
    // Spectrum degenerates to {1, 1-a, 1-b}; count moduli directly.
    report.critical = std::numeric_limits<double>::quiet_NaN();
    report.regime = Regime::none;
    report.dim_center = 1;  // mu1
    for (double mu : {report.mu.mu2, report.mu.mu3}) {
      if (std::fabs(std::fabs(mu) - 1.0) <= kRegimeTieTol)
        ++report.dim_center;
      else if (std::fabs(mu) < 1.0)
        ++report.dim_stable;
      else
        ++report.dim_unstable;
    }
    return report;
  }

  const double critical = critical_alpha(p);
  report.critical = critical;
  const double tie = kRegimeTieTol * std::max(1.0, critical);
  if (std::fabs(alpha - critical) <= tie)
    report.regime = Regime::at;
  else if (alpha < critical)
    report.regime = Regime::below;
  else
    report.regime = Regime::above;

  switch (report.regime) {
    case Regime::below:
      report.dim_stable = 2; report.dim_center = 1; report.dim_unstable = 0;
      break;
    case Regime::at:
      report.dim_stable = 1; report.dim_center = 2; report.dim_unstable = 0;
      break;
    case Regime::above:
      report.dim_stable = 1; report.dim_center = 1; report.dim_unstable = 1;
      break;
    case Regime::none:
      break;
  }
  return report;
}

}  // namespace seirq
