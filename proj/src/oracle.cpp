#include "secq/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>

#include "secq/errors.hpp"

namespace secq {

void OrbitalBasis::validate() const {
  if (n_occ < 1 || n_virt < 1)
    throw EvalError("basis needs at least one occupied and one virtual orbital");
  if (total() > 16) throw EvalError("basis limited to 16 spin orbitals");
}

Determinant reference_determinant(const OrbitalBasis& basis) {
  return (Determinant{1} << basis.n_occ) - 1;
}

FockState reference_state(const OrbitalBasis& basis) {
  return {{reference_determinant(basis), 1.0}};
}

FockState apply_op(const FockState& state, OpKind kind, int orbital) {
  FockState out;
  const Determinant bit = Determinant{1} << orbital;
  for (const auto& [det, amp] : state) {
    bool present = (det & bit) != 0;
    if (kind == OpKind::Annihilate ? !present : present) continue;
    double signed_amp =
        (std::popcount(det & (bit - 1)) & 1) ? -amp : amp;
    Determinant next = det ^ bit;
    double& slot = out[next];
    slot += signed_amp;
    if (slot == 0.0) out.erase(next);
  }
  return out;
}

namespace {

void fill_random(std::vector<double>& v, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (auto& x : v) x = uni(rng);
}

using Quad = std::array<int, 4>;

// The two-electron symmetry group: identity, pq<->rs both pairs swapped as
// blocks, within-pair transpositions combined.
Quad v_image(const Quad& t, int g) {
  switch (g) {
    case 1: return {t[2], t[3], t[0], t[1]};  // (rs|pq)
    case 2: return {t[1], t[0], t[3], t[2]};  // (qp|sr)
    case 3: return {t[3], t[2], t[1], t[0]};  // (sr|qp)
    default: return t;
  }
}

}  // namespace

NumericTensors random_tensors(std::uint64_t seed, const OrbitalBasis& basis) {
  basis.validate();
  const int n = basis.total();
  const int no = basis.n_occ;
  const int nv = basis.n_virt;

  NumericTensors out;
  out.n = n;
  out.n_occ = no;
  out.h.resize(static_cast<size_t>(n) * n);
  out.v.resize(static_cast<size_t>(n) * n * n * n);
  out.t_vir.resize(nv);
  out.t_occ.resize(no);
  out.t_ov.resize(static_cast<size_t>(no) * nv);
  out.t_oovv.resize(static_cast<size_t>(no) * no * nv * nv);

  // Draw everything first so the stream layout is fixed, then symmetrize.
  std::mt19937_64 rng(seed);
  fill_random(out.h, rng);
  fill_random(out.v, rng);
  fill_random(out.t_vir, rng);
  fill_random(out.t_occ, rng);
  fill_random(out.t_ov, rng);
  fill_random(out.t_oovv, rng);

  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      double avg = (out.h[p * n + q] + out.h[q * n + p]) / 2.0;
      out.h[p * n + q] = avg;
      out.h[q * n + p] = avg;
    }

  std::vector<double> raw = out.v;
  auto at = [&](const Quad& t) -> size_t {
    return ((static_cast<size_t>(t[0]) * n + t[1]) * n + t[2]) * n + t[3];
  };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          Quad id{p, q, r, s};
          Quad rep = id;
          for (int g = 1; g < 4; ++g) rep = std::min(rep, v_image(id, g));
          if (rep != id) continue;  // one pass per orbit
          double avg = 0.0;
          for (int g = 0; g < 4; ++g) avg += raw[at(v_image(rep, g))];
          avg /= 4.0;
          for (int g = 0; g < 4; ++g) out.v[at(v_image(rep, g))] = avg;
        }
  return out;
}

namespace {

struct DummySlot {
  std::string label;
  int lo = 0;  // orbital range [lo, hi)
  int hi = 0;
};

void space_range(OrbitalSpace space, const OrbitalBasis& basis, int& lo,
                 int& hi) {
  switch (space) {
    case OrbitalSpace::Occupied:
      lo = 0;
      hi = basis.n_occ;
      break;
    case OrbitalSpace::Virtual:
      lo = basis.n_occ;
      hi = basis.total();
      break;
    case OrbitalSpace::General:
      lo = 0;
      hi = basis.total();
      break;
  }
}

double amplitude_value(const TensorFactor& f, const NumericTensors& tens,
                       const std::vector<int>& orbs) {
  const int no = tens.n_occ;
  const int nv = tens.n - no;
  const int nup = static_cast<int>(f.indices.size()) - f.n_lower;
  if (f.n_lower == 0 && nup == 1) return tens.t_vir[orbs[0] - no];
  if (f.n_lower == 1 && nup == 0) return tens.t_occ[orbs[0]];
  if (f.n_lower == 1 && nup == 1)
    return tens.t_ov[orbs[0] * nv + (orbs[1] - no)];
  if (f.n_lower == 2 && nup == 2)
    return tens.t_oovv[((orbs[0] * no + orbs[1]) * nv + (orbs[2] - no)) * nv +
                       (orbs[3] - no)];
  throw EvalError("unsupported amplitude shape");
}

double tensor_value(const TensorFactor& f, const NumericTensors& tens,
                    const std::vector<int>& orbs) {
  switch (f.kind) {
    case TensorKind::Delta:
      return orbs[0] == orbs[1] ? 1.0 : 0.0;
    case TensorKind::OneElectron:
      return tens.h_at(orbs[0], orbs[1]);
    case TensorKind::TwoElectronBare:
      return tens.v_at(orbs[0], orbs[1], orbs[2], orbs[3]);
    case TensorKind::TwoElectronAntisym:
      return tens.v_at(orbs[0], orbs[1], orbs[2], orbs[3]) -
             tens.v_at(orbs[0], orbs[1], orbs[3], orbs[2]);
    case TensorKind::Amplitude:
      return amplitude_value(f, tens, orbs);
  }
  return 0.0;
}

// <ref| ops |ref> for one orbital assignment, walking a single determinant.
double sandwich_value(const std::vector<OpKind>& kinds,
                      const std::vector<int>& orbitals, Determinant ref) {
  Determinant det = ref;
  double sign = 1.0;
  for (size_t k = kinds.size(); k-- > 0;) {
    const Determinant bit = Determinant{1} << orbitals[k];
    bool present = (det & bit) != 0;
    if (kinds[k] == OpKind::Annihilate ? !present : present) return 0.0;
    if (std::popcount(det & (bit - 1)) & 1) sign = -sign;
    det ^= bit;
  }
  return det == ref ? sign : 0.0;
}

double term_value(const Term& term, const NumericTensors& tens,
                  const OrbitalBasis& basis, const FreeAssignment& free,
                  std::uint64_t budget, std::uint64_t& used) {
  // Deterministic slot list: dummies in first-appearance order.
  std::map<std::string, int> position;
  std::vector<DummySlot> dummies;
  for (const auto& idx : collect_indices(term)) {
    if (idx.binding == Binding::Free) {
      auto it = free.find(idx.label);
      if (it == free.end())
        throw EvalError("free index '" + idx.label + "' not assigned");
      int lo, hi;
      space_range(idx.space, basis, lo, hi);
      // An orbital outside this term's slice of the range contributes zero.
      if (it->second < lo || it->second >= hi) return 0.0;
      continue;
    }
    if (position.count(idx.label)) continue;
    position[idx.label] = static_cast<int>(dummies.size());
    DummySlot slot;
    slot.label = idx.label;
    space_range(idx.space, basis, slot.lo, slot.hi);
    dummies.push_back(slot);
  }

  std::uint64_t assignments = 1;
  for (const auto& slot : dummies) {
    assignments *= static_cast<std::uint64_t>(slot.hi - slot.lo);
    if (assignments > (std::uint64_t{1} << 60))  // no budget reaches this
      throw ScaleError("assignment budget exceeded");
  }
  std::uint64_t per_assignment =
      1 + term.tensors.size() + term.ops.size();
  if (assignments > (budget - std::min(budget, used)) / per_assignment)
    throw ScaleError("assignment budget exceeded");
  used += assignments * per_assignment;

  // Resolve each tensor/operator index to either a fixed orbital or a dummy
  // slot once, outside the assignment loop.
  auto resolve = [&](const Index& idx, int& fixed, int& slot) {
    if (idx.binding == Binding::Free) {
      fixed = free.at(idx.label);
      slot = -1;
    } else {
      fixed = 0;
      slot = position.at(idx.label);
    }
  };
  struct ResolvedTensor {
    const TensorFactor* f;
    std::vector<int> fixed, slot;
  };
  std::vector<ResolvedTensor> rtens;
  for (const auto& t : term.tensors) {
    ResolvedTensor rt{&t, {}, {}};
    for (const auto& idx : t.indices) {
      int fx, sl;
      resolve(idx, fx, sl);
      rt.fixed.push_back(fx);
      rt.slot.push_back(sl);
    }
    rtens.push_back(std::move(rt));
  }
  std::vector<OpKind> op_kinds;
  std::vector<int> op_fixed, op_slot;
  for (const auto& op : term.ops) {
    int fx, sl;
    resolve(op.index, fx, sl);
    op_kinds.push_back(op.kind);
    op_fixed.push_back(fx);
    op_slot.push_back(sl);
  }

  const Determinant ref = reference_determinant(basis);
  const double coeff = boost::rational_cast<double>(term.coefficient);
  std::vector<int> cursor(dummies.size());
  for (size_t k = 0; k < dummies.size(); ++k) cursor[k] = dummies[k].lo;

  double total = 0.0;
  std::vector<int> orbs;
  std::vector<int> op_orbs(op_kinds.size());
  while (true) {
    double prod = coeff;
    for (const auto& rt : rtens) {
      orbs.resize(rt.fixed.size());
      for (size_t k = 0; k < orbs.size(); ++k)
        orbs[k] = rt.slot[k] < 0 ? rt.fixed[k] : cursor[rt.slot[k]];
      prod *= tensor_value(*rt.f, tens, orbs);
      if (prod == 0.0) break;
    }
    if (prod != 0.0 && !op_kinds.empty()) {
      for (size_t k = 0; k < op_kinds.size(); ++k)
        op_orbs[k] = op_slot[k] < 0 ? op_fixed[k] : cursor[op_slot[k]];
      prod *= sandwich_value(op_kinds, op_orbs, ref);
    }
    total += prod;

    size_t k = dummies.size();
    while (k > 0) {
      --k;
      if (++cursor[k] < dummies[k].hi) break;
      cursor[k] = dummies[k].lo;
      if (k == 0) return total;
    }
    if (dummies.empty()) return total;
  }
}

}  // namespace

double numeric_input_value(const Expression& expr, const NumericTensors& tens,
                           const OrbitalBasis& basis,
                           const FreeAssignment& free, std::uint64_t budget) {
  basis.validate();
  std::uint64_t used = 0;
  double total = 0.0;
  for (const auto& term : expr.terms)
    total += term_value(term, tens, basis, free, budget, used);
  return total;
}

double numeric_symbolic_value(const Expression& expr,
                              const NumericTensors& tens,
                              const OrbitalBasis& basis,
                              const FreeAssignment& free,
                              std::uint64_t budget) {
  for (const auto& term : expr.terms)
    if (!term.ops.empty())
      throw EvalError("expression still contains operators");
  return numeric_input_value(expr, tens, basis, free, budget);
}

std::string Report::table() const {
  std::string out = "seed\tabs_diff\tstatus\n";
  char buf[64];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%llu\t%.6e\t%s\n",
                  static_cast<unsigned long long>(row.seed), row.abs_diff,
                  row.pass ? "pass" : "FAIL");
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "result: %s (tol %.1e, trials %zu)\n",
                passed ? "pass" : "FAIL", tolerance, rows.size());
  out += buf;
  return out;
}

namespace {

// One shared orbital per free label. A label narrowed to different spaces
// in different terms is drawn from the full range; the per-term range guard
// zeroes the copies it misses.
FreeAssignment default_free_assignment(const Expression& a,
                                       const Expression& b,
                                       const OrbitalBasis& basis) {
  std::map<std::string, OrbitalSpace> spaces;
  for (const Expression* e : {&a, &b})
    for (const auto& term : e->terms)
      for (const auto& idx : collect_indices(term)) {
        if (idx.binding != Binding::Free) continue;
        auto it = spaces.find(idx.label);
        if (it == spaces.end())
          spaces.emplace(idx.label, idx.space);
        else if (it->second != idx.space)
          it->second = OrbitalSpace::General;
      }
  FreeAssignment out;
  int next_occ = 0, next_vir = 0, next_gen = 0;
  for (const auto& [label, space] : spaces) {
    int lo, hi, offset;
    space_range(space, basis, lo, hi);
    switch (space) {
      case OrbitalSpace::Occupied: offset = next_occ++; break;
      case OrbitalSpace::Virtual: offset = next_vir++; break;
      default: offset = next_gen++; break;
    }
    if (lo + offset >= hi)
      throw EvalError("basis too small for the free indices");
    out[label] = lo + offset;
  }
  return out;
}

}  // namespace

Report check_equivalence(const Expression& input, const Expression& derived,
                         const OrbitalBasis& basis, int trials,
                         std::uint64_t seed0, double tolerance,
                         std::uint64_t budget) {
  basis.validate();
  if (trials < 1) throw EvalError("need at least one trial");
  FreeAssignment free = default_free_assignment(input, derived, basis);

  Report report;
  report.tolerance = tolerance;
  report.passed = true;
  for (int k = 0; k < trials; ++k) {
    std::uint64_t seed = seed0 + static_cast<std::uint64_t>(k);
    NumericTensors tens = random_tensors(seed, basis);
    double lhs = numeric_input_value(input, tens, basis, free, budget);
    double rhs = numeric_symbolic_value(derived, tens, basis, free, budget);
    TrialRow row;
    row.seed = seed;
    row.abs_diff = std::abs(lhs - rhs);
    row.pass = row.abs_diff <= tolerance;
    report.passed = report.passed && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace secq
