#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "secq/algebra.hpp"

namespace secq {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Brute-force Fock-space model used to verify symbolic derivations on small
// bases. Spin orbitals are numbered 0..n-1; the first n_occ are occupied in
// the reference determinant.
struct OrbitalBasis {
  int n_occ = 0;
  int n_virt = 0;

  int total() const { return n_occ + n_virt; }
  void validate() const;  // throws EvalError unless 1 <= each and total <= 16
};

// Bit k set means spin orbital k is occupied.
using Determinant = std::uint32_t;

// Sparse vector over determinants.
using FockState = std::map<Determinant, double>;

Determinant reference_determinant(const OrbitalBasis& basis);
FockState reference_state(const OrbitalBasis& basis);

// a_p / a_p^+ with the fermionic sign (-1)^(number of set bits below p).
FockState apply_op(const FockState& state, OpKind kind, int orbital);

// Dense tensor values over a basis. V has the real two-electron symmetry
// V[pqrs] = V[rspq] = V[qpsr] = V[srqp]; h is symmetric; the antisymmetrized
// integral is derived as V[pqrs] - V[pqsr]. Amplitudes are unconstrained.
struct NumericTensors {
  int n = 0;
  int n_occ = 0;
  std::vector<double> h;       // n*n
  std::vector<double> v;       // n^4
  std::vector<double> t_vir;   // n_virt            t[=>a]
  std::vector<double> t_occ;   // n_occ             t[i=>]
  std::vector<double> t_ov;    // n_occ*n_virt      t[i=>a]
  std::vector<double> t_oovv;  // (n_occ*n_virt)^2  t[i,j=>a,b]

  double h_at(int p, int q) const { return h[p * n + q]; }
  double v_at(int p, int q, int r, int s) const {
    return v[((p * n + q) * n + r) * n + s];
  }
};

// Seed-deterministic uniform [-1,1] values, exactly symmetrized by assigning
// each symmetry orbit the average of its raw draws.
NumericTensors random_tensors(std::uint64_t seed, const OrbitalBasis& basis);

// Orbital assignment for Free indices, by label.
using FreeAssignment = std::map<std::string, int>;

// Sums every term over its Dummy indices; the operator string is applied
// right to left to the reference determinant and projected back on it.
// Throws ScaleError when assignments * operations would exceed the budget.
double numeric_input_value(const Expression& expr, const NumericTensors& tens,
                           const OrbitalBasis& basis,
                           const FreeAssignment& free = {},
                           std::uint64_t budget = kDefaultBudget);

// Same sum for an operator-free expression (throws EvalError otherwise).
double numeric_symbolic_value(const Expression& expr,
                              const NumericTensors& tens,
                              const OrbitalBasis& basis,
                              const FreeAssignment& free = {},
                              std::uint64_t budget = kDefaultBudget);

struct TrialRow {
  std::uint64_t seed = 0;
  double abs_diff = 0.0;
  bool pass = false;
};

struct Report {
  std::vector<TrialRow> rows;
  double tolerance = 0.0;
  bool passed = false;

  std::string table() const;
};

// Compares numeric_input_value(input) against numeric_symbolic_value(derived)
// on `trials` random tensor sets seeded seed0, seed0+1, ...
Report check_equivalence(const Expression& input, const Expression& derived,
                         const OrbitalBasis& basis, int trials,
                         std::uint64_t seed0, double tolerance,
                         std::uint64_t budget = kDefaultBudget);

}  // namespace secq
