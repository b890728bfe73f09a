#include "secq/canonicalize.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "secq/errors.hpp"

namespace secq {

namespace {

using Perm = std::array<int, 4>;

// (pq|rs) -> (rs|pq), (qp|sr), (sr|qp)
constexpr Perm kPairSymmetry[] = {
    {0, 1, 2, 3}, {2, 3, 0, 1}, {1, 0, 3, 2}, {3, 2, 1, 0}};
// The antisymmetrized integral adds the sign-flipped single swaps.
constexpr Perm kOddImages[] = {
    {0, 1, 3, 2}, {1, 0, 2, 3}, {3, 2, 0, 1}, {2, 3, 1, 0}};

std::vector<Index> permute(const std::vector<Index>& ids, const Perm& p) {
  return {ids[p[0]], ids[p[1]], ids[p[2]], ids[p[3]]};
}

bool index_tuple_less(const std::vector<Index>& a,
                      const std::vector<Index>& b) {
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[k].label != b[k].label) return a[k].label < b[k].label;
    if (a[k].space != b[k].space) return a[k].space < b[k].space;
  }
  return false;
}

}  // namespace

CanonicalTensor canonical_tensor(const TensorFactor& t) {
  CanonicalTensor out{t, 1, false};
  switch (t.kind) {
    case TensorKind::Delta:
    case TensorKind::OneElectron: {
      if (index_less(t.indices[1], t.indices[0]))
        std::swap(out.tensor.indices[0], out.tensor.indices[1]);
      return out;
    }
    case TensorKind::TwoElectronBare: {
      std::vector<Index> best = t.indices;
      for (const Perm& p : kPairSymmetry) {
        auto image = permute(t.indices, p);
        if (index_tuple_less(image, best)) best = std::move(image);
      }
      out.tensor.indices = std::move(best);
      return out;
    }
    case TensorKind::TwoElectronAntisym: {
      std::vector<Index> best = t.indices;
      int best_sign = 1;
      bool best_tied_other_sign = false;
      auto consider = [&](std::vector<Index> image, int sign) {
        if (image == best) {
          if (sign != best_sign) best_tied_other_sign = true;
          return;
        }
        if (index_tuple_less(image, best)) {
          best = std::move(image);
          best_sign = sign;
          best_tied_other_sign = false;
        }
      };
      for (const Perm& p : kPairSymmetry) consider(permute(t.indices, p), 1);
      for (const Perm& p : kOddImages) consider(permute(t.indices, p), -1);
      if (best_tied_other_sign) {
        out.zero = true;
        return out;
      }
      out.tensor.indices = std::move(best);
      out.sign = best_sign;
      return out;
    }
    case TensorKind::Amplitude:
      return out;
  }
  return out;
}

Term relabel_dummies(const Term& term) {
  if (!term.ops.empty())
    throw EvalError("dummy relabeling needs an operator-free term");

  std::set<std::string> reserved;  // free labels must not be captured
  for (const auto& idx : collect_indices(term))
    if (idx.binding == Binding::Free) reserved.insert(idx.label);

  std::map<std::string, Index> mapping;
  int next_ordinal[3] = {0, 0, 0};
  for (const auto& idx : collect_indices(term)) {
    if (idx.binding == Binding::Free || mapping.count(idx.label)) continue;
    int& ordinal = next_ordinal[static_cast<int>(idx.space)];
    std::string label;
    do {
      label = fresh_label(idx.space, ordinal++);
    } while (reserved.count(label));
    mapping.emplace(idx.label,
                    Index{std::move(label), idx.space, Binding::Dummy});
  }

  Term out = term;
  auto visit = [&](Index& idx) {
    auto it = mapping.find(idx.label);
    if (it != mapping.end()) idx = it->second;
  };
  for (auto& t : out.tensors)
    for (auto& idx : t.indices) visit(idx);
  normalize_term(out);
  return out;
}

namespace {

// One canonicalization round: minimize every tensor under its symmetries
// (signs into the coefficient), re-sort, relabel dummies. Empty optional
// when a tensor factor vanished.
std::optional<Term> canonical_round(const Term& term) {
  Term next = term;
  Rational sign(1);
  for (auto& t : next.tensors) {
    CanonicalTensor ct = canonical_tensor(t);
    if (ct.zero) return std::nullopt;
    if (ct.sign < 0) sign = -sign;
    t = std::move(ct.tensor);
  }
  next.coefficient *= sign;
  normalize_term(next);
  if (next.ops.empty()) next = relabel_dummies(next);
  return next;
}

}  // namespace

std::optional<CanonicalTerm> canonicalize_term(const Term& term) {
  // Converges in a few rounds; the cycle branch is a determinism backstop
  // (pick the smallest serialization of the oscillation, which is itself a
  // fixed choice on re-entry).
  std::vector<std::pair<std::string, Term>> seen;
  Term work = term;
  std::string work_key = serialize(work);
  for (int round = 0; round < 16; ++round) {
    auto next = canonical_round(work);
    if (!next) return std::nullopt;
    if (*next == work) break;
    std::string key = serialize(*next);
    auto hit = std::find_if(seen.begin(), seen.end(),
                            [&](const auto& p) { return p.first == key; });
    if (hit != seen.end()) {
      // Cycle members are seen[hit..end] plus the current state.
      for (auto it = hit; it != seen.end(); ++it)
        if (it->first < work_key) {
          work = it->second;
          work_key = it->first;
        }
      break;
    }
    seen.emplace_back(work_key, work);
    work = std::move(*next);
    work_key = std::move(key);
  }
  return CanonicalTerm{work, term_key(work)};
}

Expression sort_terms(const Expression& expr) {
  std::vector<std::pair<std::string, Term>> keyed;
  keyed.reserve(expr.terms.size());
  for (const auto& term : expr.terms) {
    auto ct = canonicalize_term(term);
    if (!ct) continue;
    keyed.emplace_back(std::move(ct->key), std::move(ct->term));
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) {
                     return a.first < b.first;
                   });
  Expression out;
  out.terms.reserve(keyed.size());
  for (auto& [key, term] : keyed) out.terms.push_back(std::move(term));
  return out;
}

Expression merge_terms(const Expression& expr) {
  Expression out;
  std::string run_key;
  for (const auto& term : expr.terms) {
    auto ct = canonicalize_term(term);
    if (!ct) continue;
    if (!out.terms.empty() && ct->key == run_key) {
      out.terms.back().coefficient += ct->term.coefficient;
      if (out.terms.back().coefficient == Rational(0)) {
        out.terms.pop_back();
        run_key.clear();
        // The previous run's key is lost; recompute lazily if needed.
        if (!out.terms.empty()) run_key = term_key(out.terms.back());
      }
      continue;
    }
    run_key = ct->key;
    out.terms.push_back(std::move(ct->term));
  }
  return out;
}

namespace {

// Positions of V factors in a term.
std::vector<size_t> bare_integral_positions(const Term& term) {
  std::vector<size_t> out;
  for (size_t k = 0; k < term.tensors.size(); ++k)
    if (term.tensors[k].kind == TensorKind::TwoElectronBare) out.push_back(k);
  return out;
}

}  // namespace

Expression antisymmetrize(const Expression& expr) {
  // Work on canonical forms so partner lookups are exact key matches.
  std::vector<CanonicalTerm> terms;
  for (const auto& term : expr.terms) {
    auto ct = canonicalize_term(term);
    if (ct) terms.push_back(std::move(*ct));
  }
  std::map<std::string, std::vector<size_t>> by_key;
  for (size_t k = 0; k < terms.size(); ++k)
    by_key[terms[k].key].push_back(k);

  std::vector<bool> used(terms.size(), false);
  Expression out;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const Term& term = terms[i].term;
    bool paired = false;
    for (size_t pos : bare_integral_positions(term)) {
      Term partner = term;
      std::swap(partner.tensors[pos].indices[2],
                partner.tensors[pos].indices[3]);
      auto pc = canonicalize_term(partner);
      if (!pc) continue;
      auto hit = by_key.find(pc->key);
      if (hit == by_key.end()) continue;
      for (size_t j : hit->second) {
        if (j == i || used[j]) continue;
        if (terms[j].term.coefficient != -pc->term.coefficient) continue;
        used[j] = true;
        Term combined = term;
        combined.tensors[pos].kind = TensorKind::TwoElectronAntisym;
        normalize_term(combined);
        if (auto cc = canonicalize_term(combined))
          out.terms.push_back(std::move(cc->term));
        paired = true;
        break;
      }
      if (paired) break;
    }
    if (!paired) out.terms.push_back(term);
  }
  return out;
}

Expression simplify(const Expression& expr) {
  Expression out = merge_terms(sort_terms(expr));
  out = antisymmetrize(out);
  return merge_terms(sort_terms(out));
}

}  // namespace secq
