#include "secq/algebra.hpp"

#include <algorithm>
#include <map>

#include "secq/errors.hpp"

namespace secq {

std::optional<OrbitalSpace> infer_space(char letter) {
  if (letter >= 'i' && letter <= 'n') return OrbitalSpace::Occupied;
  if (letter >= 'a' && letter <= 'd') return OrbitalSpace::Virtual;
  if (letter >= 'p' && letter <= 's') return OrbitalSpace::General;
  return std::nullopt;
}

std::optional<OrbitalSpace> intersect(OrbitalSpace a, OrbitalSpace b) {
  if (a == b) return a;
  if (a == OrbitalSpace::General) return b;
  if (b == OrbitalSpace::General) return a;
  return std::nullopt;  // Occupied vs Virtual
}

const char* space_suffix(OrbitalSpace s) {
  switch (s) {
    case OrbitalSpace::Occupied: return "occ";
    case OrbitalSpace::Virtual: return "vir";
    case OrbitalSpace::General: return "gen";
  }
  return "gen";
}

bool index_less(const Index& a, const Index& b) {
  if (a.label != b.label) return a.label < b.label;
  return a.space < b.space;
}

std::string serialize(const Rational& r) {
  std::string out = r < Rational(0) ? "-" : "+";
  Rational a = r < Rational(0) ? -r : r;
  out += std::to_string(a.numerator());
  if (a.denominator() != 1) out += "/" + std::to_string(a.denominator());
  return out;
}

std::string serialize(const Index& idx) {
  std::string out = idx.label;
  auto inferred = idx.label.empty() ? std::nullopt : infer_space(idx.label[0]);
  if (!inferred || *inferred != idx.space) {
    out += ':';
    out += space_suffix(idx.space);
  }
  return out;
}

static void append_list(std::string& out, const std::vector<Index>& ids,
                        size_t first, size_t count) {
  for (size_t k = 0; k < count; ++k) {
    if (k) out += ',';
    out += serialize(ids[first + k]);
  }
}

std::string serialize(const TensorFactor& t) {
  std::string out;
  switch (t.kind) {
    case TensorKind::Delta: out = "d["; break;
    case TensorKind::OneElectron: out = "h["; break;
    case TensorKind::TwoElectronBare: out = "V["; break;
    case TensorKind::TwoElectronAntisym: out = "A["; break;
    case TensorKind::Amplitude: {
      out = "t[";
      append_list(out, t.indices, 0, static_cast<size_t>(t.n_lower));
      out += "=>";
      append_list(out, t.indices, static_cast<size_t>(t.n_lower),
                  t.indices.size() - static_cast<size_t>(t.n_lower));
      out += ']';
      return out;
    }
  }
  append_list(out, t.indices, 0, t.indices.size());
  out += ']';
  return out;
}

std::string serialize(const FermionOp& op) {
  std::string out = op.kind == OpKind::Create ? "c(" : "a(";
  out += serialize(op.index);
  out += ')';
  return out;
}

std::string term_key(const Term& term) {
  std::string out;
  for (const auto& t : term.tensors) {
    if (!out.empty()) out += ' ';
    out += serialize(t);
  }
  for (const auto& op : term.ops) {
    if (!out.empty()) out += ' ';
    out += serialize(op);
  }
  return out;
}

std::string serialize(const Term& term) {
  std::string out = serialize(term.coefficient);
  std::string rest = term_key(term);
  if (!rest.empty()) {
    out += ' ';
    out += rest;
  }
  return out;
}

bool tensor_order(const TensorFactor& a, const TensorFactor& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  return serialize(a) < serialize(b);
}

void normalize_term(Term& term) {
  std::stable_sort(term.tensors.begin(), term.tensors.end(), tensor_order);
}

Term make_term(Rational coeff, std::vector<TensorFactor> tensors,
               std::vector<FermionOp> ops) {
  Term t{coeff, std::move(tensors), std::move(ops)};
  normalize_term(t);
  return t;
}

std::vector<Index> collect_indices(const Term& term) {
  std::vector<Index> out;
  for (const auto& t : term.tensors)
    out.insert(out.end(), t.indices.begin(), t.indices.end());
  for (const auto& op : term.ops) out.push_back(op.index);
  return out;
}

std::set<std::string> labels_in_use(const Term& term) {
  std::set<std::string> out;
  for (const auto& idx : collect_indices(term)) out.insert(idx.label);
  return out;
}

void substitute_label(Term& term, const std::string& from, const Index& to) {
  auto visit = [&](Index& idx) {
    if (idx.label == from) idx = to;
  };
  for (auto& t : term.tensors)
    for (auto& idx : t.indices) visit(idx);
  for (auto& op : term.ops) visit(op.index);
  normalize_term(term);
}

void recompute_bindings(Term& term) {
  std::map<std::string, int> counts;
  std::map<std::string, OrbitalSpace> spaces;
  for (const auto& idx : collect_indices(term)) {
    int n = ++counts[idx.label];
    if (n > 2)
      throw EvalError("index '" + idx.label + "' occurs more than twice");
    auto it = spaces.find(idx.label);
    if (it == spaces.end())
      spaces.emplace(idx.label, idx.space);
    else if (it->second != idx.space)
      throw EvalError("index '" + idx.label + "' used with two spaces");
  }
  auto visit = [&](Index& idx) {
    idx.binding = counts[idx.label] == 2 ? Binding::Dummy : Binding::Free;
  };
  for (auto& t : term.tensors)
    for (auto& idx : t.indices) visit(idx);
  for (auto& op : term.ops) visit(op.index);
}

std::string fresh_label(OrbitalSpace space, int ordinal) {
  static const char* occ[] = {"m", "n", "o"};
  static const char* vir[] = {"e", "f", "g"};
  static const char* gen[] = {"p", "q", "r", "s"};
  const char** base = gen;
  int width = 4;
  if (space == OrbitalSpace::Occupied) {
    base = occ;
    width = 3;
  } else if (space == OrbitalSpace::Virtual) {
    base = vir;
    width = 3;
  }
  std::string out = base[ordinal % width];
  if (int round = ordinal / width; round > 0) out += std::to_string(round);
  return out;
}

}  // namespace secq
