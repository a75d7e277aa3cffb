#include "seirq/qso.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "seirq/errors.hpp"

namespace seirq {

std::size_t QsoTensor::index(int i, int j, int k) {
  if (i < 1 || i > 4 || j < 1 || j > 4 || k < 1 || k > 4)
    throw DomainError("tensor indices must lie in 1..4");
  return static_cast<std::size_t>((i - 1) * 16 + (j - 1) * 4 + (k - 1));
}

QsoTensor build_tensor(const Params& p) {
  validate_params(p);  // throws on non-finite fields only
  const double a = p.a, b = p.b, beta = p.beta;
  const double bq = p.beta * p.q;

  QsoTensor t;
  const auto set_pair = [&t](int i, int j, int k, double value) {
    t.set(i, j, k, value);
    t.set(j, i, k, value);  // symmetric completion
  };

  // The i <= j table; every coefficient for an unordered pair {i,j} with
  // i != j already carries the factor-2 convention, so off-diagonal entries
  // are half the listed sums.
  set_pair(1, 1, 1, 1.0);
  set_pair(1, 2, 1, (1.0 - bq) / 2.0);
  set_pair(1, 2, 2, (1.0 - a + bq) / 2.0);
  set_pair(1, 2, 3, a / 2.0);
  set_pair(1, 3, 1, (1.0 - beta) / 2.0);
  set_pair(1, 3, 2, beta / 2.0);
  set_pair(1, 3, 3, (1.0 - b) / 2.0);
  set_pair(1, 3, 4, b / 2.0);
  set_pair(1, 4, 1, 0.5);
  set_pair(1, 4, 4, 0.5);
  set_pair(2, 2, 2, 1.0 - a);
  set_pair(2, 2, 3, a);
  set_pair(2, 3, 2, (1.0 - a) / 2.0);
  set_pair(2, 3, 3, (1.0 + a - b) / 2.0);
  set_pair(2, 3, 4, b / 2.0);
  set_pair(2, 4, 2, (1.0 - a) / 2.0);
  set_pair(2, 4, 3, a / 2.0);
  set_pair(2, 4, 4, 0.5);
  set_pair(3, 3, 3, 1.0 - b);
  set_pair(3, 3, 4, b);
  set_pair(3, 4, 3, (1.0 - b) / 2.0);
  set_pair(3, 4, 4, (1.0 + b) / 2.0);
  set_pair(4, 4, 4, 1.0);
  return t;
}

SimplexState apply(const QsoTensor& t, const SimplexState& x) {
  const double err = x.simplex_error();
  if (!(err <= kSimplexTol)) {
    std::ostringstream os;
    os << "state is off the simplex by " << err;
    throw DomainError(os.str());
  }
  const std::array<double, 4> in{x.s, x.e, x.i, x.r};
  std::array<double, 4> out{};
  for (int k = 1; k <= 4; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        acc += t.at(i, j, k) * in[i - 1] * in[j - 1];
    out[k - 1] = acc;
  }
  return {out[0], out[1], out[2], out[3]};
}

TensorCheck verify_tensor(const QsoTensor& t, double tol) {
  TensorCheck check;
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      double row_sum = 0.0;
      for (int k = 1; k <= 4; ++k) {
        const double entry = t.at(i, j, k);
        row_sum += entry;
        const double asym = std::fabs(entry - t.at(j, i, k));
        if (asym > check.symmetry.worst) check.symmetry = {asym, i, j, k};
        if (entry < -check.negativity.worst)
          check.negativity = {-entry, i, j, k};
      }
      const double residual = std::fabs(row_sum - 1.0);
      if (residual > check.stochastic.worst) check.stochastic = {residual, i, j};
    }
  }
  check.symmetry_ok = check.symmetry.worst <= tol;
  check.nonneg_ok = check.negativity.worst <= tol;
  check.stochastic_ok = check.stochastic.worst <= tol;
  return check;
}

std::string format_tensor(const QsoTensor& t) {
  std::string out;
  char line[64];
  for (int i = 1; i <= 4; ++i)
    for (int j = i; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k) {
        const double entry = t.at(i, j, k);
        if (entry == 0.0) continue;
        std::snprintf(line, sizeof line, "%d %d %d %.16e\n", i, j, k, entry);
        out += line;
      }
  return out;
}

}  // namespace seirq
