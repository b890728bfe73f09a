#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace secq {

using Rational = boost::rational<long long>;

// Orbital space of an index relative to the reference determinant.
enum class OrbitalSpace : std::uint8_t { Occupied, Virtual, General };

// Letter families: i..n occupied, a..d virtual, p..s general.
std::optional<OrbitalSpace> infer_space(char letter);

// Intersection of two spaces; empty optional means they are disjoint.
std::optional<OrbitalSpace> intersect(OrbitalSpace a, OrbitalSpace b);

const char* space_suffix(OrbitalSpace s);  // "occ" / "vir" / "gen"

enum class Binding : std::uint8_t { Dummy, Free };

// A named orbital index. A Dummy index appears exactly twice in its term
// (implicit summation), a Free index exactly once. Within one term a label
// identifies a single index, so label equality implies space equality.
struct Index {
  std::string label;
  OrbitalSpace space = OrbitalSpace::General;
  Binding binding = Binding::Dummy;

  bool operator==(const Index&) const = default;
};

bool index_less(const Index& a, const Index& b);

enum class OpKind : std::uint8_t { Create, Annihilate };

struct FermionOp {
  OpKind kind = OpKind::Create;
  Index index;

  bool operator==(const FermionOp&) const = default;
};

enum class TensorKind : std::uint8_t {
  Delta = 0,
  OneElectron,
  TwoElectronBare,
  TwoElectronAntisym,
  Amplitude,
};

// Scalar factor of a term. Amplitude indices are stored lower block first:
// n_lower occupied indices, then the virtual ones.
struct TensorFactor {
  TensorKind kind = TensorKind::OneElectron;
  std::vector<Index> indices;
  int n_lower = 0;

  bool operator==(const TensorFactor&) const = default;
};

// coefficient * (product of tensors) * <ref| ops |ref>, implicitly summed
// over its Dummy indices. Tensor factors commute and are kept sorted.
struct Term {
  Rational coefficient{1};
  std::vector<TensorFactor> tensors;
  std::vector<FermionOp> ops;

  bool operator==(const Term&) const = default;
};

struct Expression {
  std::vector<Term> terms;

  bool operator==(const Expression&) const = default;
};

std::string serialize(const Rational& r);  // "+1", "-1/2"
std::string serialize(const Index& idx);
std::string serialize(const TensorFactor& t);
std::string serialize(const FermionOp& op);
std::string serialize(const Term& term);  // "+1 h[i,j] c(p) a(q)"

// Serialization without the coefficient; the sorting and merge key.
std::string term_key(const Term& term);

// Fixed factor order: Delta < OneElectron < TwoElectronBare <
// TwoElectronAntisym < Amplitude, then by serialized form.
bool tensor_order(const TensorFactor& a, const TensorFactor& b);

void normalize_term(Term& term);
Term make_term(Rational coeff, std::vector<TensorFactor> tensors,
               std::vector<FermionOp> ops);

// Every index of the term in a fixed traversal order: tensors (in their
// stored order), then operators left to right.
std::vector<Index> collect_indices(const Term& term);
std::set<std::string> labels_in_use(const Term& term);

// Renames every occurrence of the label `from` to the index `to`.
void substitute_label(Term& term, const std::string& from, const Index& to);

// Recomputes Dummy/Free from occurrence counts. Throws EvalError if a label
// occurs more than twice or with inconsistent spaces.
void recompute_bindings(Term& term);

// Fresh labels per space: m,n,o,m1,... / e,f,g,e1,... / p,q,r,s,p1,...
std::string fresh_label(OrbitalSpace space, int ordinal);

}  // namespace secq
