#pragma once

#include <array>
#include <string>

#include "seirq/model.hpp"

namespace seirq {

// Dense 4x4x4 coefficient array of the quadratic-operator form of the SEIR
// map. Indices are 1-based everywhere in the public interface, matching the
// (s, e, i, r) = (1, 2, 3, 4) ordering.
class QsoTensor {
 public:
  QsoTensor() = default;

  double at(int i, int j, int k) const { return entries_[index(i, j, k)]; }

  // Writes the single entry only; the caller is responsible for keeping the
  // tensor symmetric if that matters downstream.
  void set(int i, int j, int k, double value) {
    entries_[index(i, j, k)] = value;
  }

 private:
  static std::size_t index(int i, int j, int k);
  std::array<double, 64> entries_{};
};

// Coefficients of the SEIR map as a quadratic operator. Deliberately accepts
// inadmissible parameters: the result then carries negative entries, which is
// exactly what verify_tensor is for. Throws InvalidInput on non-finite fields.
QsoTensor build_tensor(const Params& p);

// Evaluates coordinate k of the quadratic form, sum_ij P_ij,k x_i x_j.
// Requires x on the simplex (the equivalence with the raw map holds only
// there).
SimplexState apply(const QsoTensor& t, const SimplexState& x);

// Axiom report. Each family records its worst violation and where it occurs.
struct TensorCheck {
  struct EntryViolation {
    double worst = 0.0;  // violation magnitude
    int i = 0, j = 0, k = 0;
  };
  struct PairViolation {
    double worst = 0.0;
    int i = 0, j = 0;
  };

  bool symmetry_ok = true;
  bool nonneg_ok = true;
  bool stochastic_ok = true;
  EntryViolation symmetry;    // worst |P_ij,k - P_ji,k|
  EntryViolation negativity;  // most negative entry (worst = |entry|)
  PairViolation stochastic;   // worst |sum_k P_ij,k - 1|

  bool ok() const { return symmetry_ok && nonneg_ok && stochastic_ok; }
};

TensorCheck verify_tensor(const QsoTensor& t, double tol = 1e-12);

// Text dump: one line per nonzero entry with i <= j, formatted
// "i j k value" with 17 significant digits, sorted by (i, j, k).
std::string format_tensor(const QsoTensor& t);

}  // namespace seirq
