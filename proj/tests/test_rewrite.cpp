#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <string>

#include "secq/errors.hpp"
#include "secq/oracle.hpp"
#include "secq/parser.hpp"
#include "secq/render.hpp"
#include "secq/rewrite.hpp"

using namespace secq;

namespace {

Term first(const std::string& s) { return parse(s).terms.at(0); }

FermionOp op(OpKind kind, const std::string& label, OrbitalSpace space) {
  return FermionOp{kind, Index{label, space, Binding::Dummy}};
}

// Random operator string; each label is used at most twice so the
// expression stays well formed. labels_per_space caps how many distinct
// labels a space may use (free indices must fit the oracle basis).
std::string random_op_string(std::mt19937_64& rng, int max_ops,
                             int labels_per_space) {
  static const char* pool[3][6] = {{"i", "j", "k", "l", "m", "n"},
                                   {"a", "b", "c", "d", nullptr, nullptr},
                                   {"p", "q", "r", "s", nullptr, nullptr}};
  static const int pool_size[3] = {6, 4, 4};
  int uses[3][6] = {};
  std::string out;
  int n_ops = 1 + int(rng() % max_ops);
  for (int k = 0; k < n_ops; ++k) {
    int space = int(rng() % 3);
    int limit = std::min(pool_size[space], labels_per_space);
    int pick = -1;
    for (int probe = 0; probe < 8; ++probe) {
      int cand = int(rng() % limit);
      if (uses[space][cand] < 2) {
        pick = cand;
        break;
      }
    }
    if (pick < 0) break;
    ++uses[space][pick];
    if (!out.empty()) out += ' ';
    out += rng() % 2 ? "c(" : "a(";
    out += pool[space][pick];
    out += ')';
  }
  return out;
}

}  // namespace

TEST_CASE("operator directions relative to the reference") {
  CHECK(direction(op(OpKind::Create, "i", OrbitalSpace::Occupied)) ==
        Direction::MoveRight);
  CHECK(direction(op(OpKind::Annihilate, "b", OrbitalSpace::Virtual)) ==
        Direction::MoveRight);
  CHECK(direction(op(OpKind::Annihilate, "i", OrbitalSpace::Occupied)) ==
        Direction::MoveLeft);
  CHECK(direction(op(OpKind::Create, "b", OrbitalSpace::Virtual)) ==
        Direction::MoveLeft);
  CHECK(direction(op(OpKind::Create, "p", OrbitalSpace::General)) ==
        Direction::Stationary);
  CHECK(direction(op(OpKind::Annihilate, "p", OrbitalSpace::General)) ==
        Direction::Stationary);
}

TEST_CASE("swapping identical operators gives zero") {
  CHECK(swap_adjacent(first("c(i) c(i)"), 0).terms.empty());
  CHECK(swap_adjacent(first("a(b) a(b)"), 0).terms.empty());
}

TEST_CASE("swapping same-kind operators negates") {
  CHECK(render_text(swap_adjacent(first("c(i) c(j)"), 0)) == "-1 c(j) c(i)");
  CHECK(render_text(swap_adjacent(first("a(p) a(q)"), 0)) == "-1 a(q) a(p)");
}

TEST_CASE("swapping mixed kinds on intersecting spaces inserts a delta") {
  CHECK(render_text(swap_adjacent(first("a(b) c(b)"), 0)) ==
        "+1 d[b,b] -1 c(b) a(b)");
  CHECK(render_text(swap_adjacent(first("a(q) c(a)"), 0)) ==
        "+1 d[q,a] -1 c(a) a(q)");
  CHECK(render_text(swap_adjacent(first("c(p) a(q) c(a) a(i)"), 1)) ==
        "+1 d[q,a] c(p) a(i) -1 c(p) c(a) a(q) a(i)");
}

TEST_CASE("swapping mixed kinds on disjoint spaces has no contraction") {
  CHECK(render_text(swap_adjacent(first("a(i) c(b)"), 0)) == "-1 c(b) a(i)");
  CHECK(render_text(swap_adjacent(first("c(i) a(b)"), 0)) == "-1 a(b) c(i)");
}

TEST_CASE("operators that hit the reference kill the term") {
  CHECK(one_step(first("c(i)")).terms.empty());
  CHECK(one_step(first("a(b)")).terms.empty());
  CHECK(one_step(first("a(i)")).terms.empty());
  CHECK(one_step(first("c(a)")).terms.empty());
  CHECK(one_step(first("c(j) a(b)")).terms.empty());
  CHECK(one_step(first("a(i) c(p)")).terms.empty());
}

TEST_CASE("right-moving operators take precedence") {
  CHECK(one_step(first("a(i) c(i)")).terms.empty());
  CHECK(render_text(one_step(first("c(i) a(i)"))) ==
        "+1 d[i,i] -1 a(i) c(i)");
}

TEST_CASE("one_step picks the rightmost right-mover") {
  CHECK(render_text(one_step(first("c(j) a(b) c(a) a(i)"))) ==
        "+1 d[b,a] c(j) a(i) -1 c(j) c(a) a(b) a(i)");
}

TEST_CASE("a fully stationary string is a fixed point of one_step") {
  Expression out = one_step(first("c(p) a(q)"));
  REQUIRE(out.terms.size() == 1);
  CHECK(out.terms[0] == first("c(p) a(q)"));
}

TEST_CASE("splitting a general dummy sums occupied and virtual copies") {
  CHECK(render_text(split_general(first("c(p) a(p)"))) ==
        "+1 c(m) a(m) +1 c(e:vir) a(e:vir)");
  CHECK(render_text(split_general(first("c(p) h[p,q] a(q)"))) ==
        "+1 h[m,q] c(m) a(q) +1 h[e:vir,q] c(e:vir) a(q)");
}

TEST_CASE("splitting a free general index narrows its space") {
  CHECK(render_text(split_general(first("c(p)"))) ==
        "+1 c(p:occ) +1 c(p:vir)");
}

TEST_CASE("fresh split labels avoid the labels already in use") {
  Expression out = split_general(first("c(p) a(p) h[m,e:vir]"));
  REQUIRE(out.terms.size() == 2);
  CHECK(render_text(out) ==
        "+1 h[m,e:vir] c(n) a(n) +1 h[m,e:vir] c(f:vir) a(f:vir)");
}

TEST_CASE("delta substitution keeps the more specific index") {
  CHECK(serialize(*apply_deltas(first("d[m,q:gen] h[q:gen,n]"))) ==
        "+1 h[m,n]");
  CHECK(serialize(*apply_deltas(first("d[m,q:occ] t[q:occ=>a] h[m,b]"))) ==
        "+1 h[m,b] t[m=>a]");
}

TEST_CASE("delta on disjoint spaces kills the term") {
  CHECK(!apply_deltas(first("d[m,a]")).has_value());
  CHECK(!apply_deltas(first("d[i,b] h[i,m] h[b,e:vir]")).has_value());
}

TEST_CASE("closed and free-free deltas are kept") {
  CHECK(serialize(*apply_deltas(first("d[m,m]"))) == "+1 d[m,m]");
  CHECK(serialize(*apply_deltas(first("d[i,j]"))) == "+1 d[i,j]");
  CHECK(serialize(*apply_deltas(first("d[i,q] h[i,m]"))) ==
        "+1 d[i,q] h[i,m]");
}

TEST_CASE("equally specific dummies drop the later label") {
  CHECK(serialize(*apply_deltas(first("d[m,n] h[m,i] h[n,j]"))) ==
        "+1 h[m,i] h[m,j]");
  CHECK(serialize(*apply_deltas(first("d[p,q] V[p,q,r,s]"))) ==
        "+1 V[p,p,r,s]");
}

TEST_CASE("chained deltas resolve transitively") {
  CHECK(serialize(*apply_deltas(first("d[m,q] d[q,r] h[r,n]"))) ==
        "+1 h[m,n]");
}

TEST_CASE("movement measure counts separating positions") {
  CHECK(movement_measure(first("c(p) a(q)")) == 0);
  CHECK(movement_measure(first("c(p) a(q) c(a) a(i)")) == 5);
  CHECK(movement_measure(first("c(j) a(b) c(p) a(q) c(a) a(i)")) == 18);
  CHECK(movement_measure(first("a(i) c(j)")) == 0);
}

TEST_CASE("fixpoint flattens the reference expectation of a general pair") {
  FixpointStats stats;
  Expression out = fixpoint(parse("c(p) a(p)"), &stats);
  for (const auto& t : out.terms) CHECK(t.ops.empty());
  CHECK(stats.rounds > 0);
  CHECK(stats.peak_terms >= out.terms.size());
}

TEST_CASE("fixpoint output is operator-free and oracle-exact") {
  std::mt19937_64 rng(2024);
  OrbitalBasis basis{2, 2};
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::string src = random_op_string(rng, 8, 2);
    Expression in = parse(src);

    FixpointStats stats;
    Expression flat = fixpoint(in, &stats);
    Expression resolved;
    for (const auto& t : flat.terms) {
      CHECK(t.ops.empty());
      if (auto kept = apply_deltas(t)) resolved.terms.push_back(*kept);
    }

    int n_ops = int(in.terms[0].ops.size());
    int n_general = 0;
    for (const auto& o : in.terms[0].ops)
      if (o.index.space == OrbitalSpace::General) ++n_general;
    std::uint64_t bound =
        std::uint64_t(n_general + 1) * (std::uint64_t(n_ops) * n_ops + 1) +
        n_general + 1;
    CHECK(stats.rounds <= bound);

    Report rep = check_equivalence(in, resolved, basis, 2, 100 + trial, 1e-10);
    CHECK(rep.passed);
    if (!rep.passed) MESSAGE("input was: ", src);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("fixpoint applies to every term of a sum") {
  Expression out = fixpoint(parse("c(i) a(i) - a(j) c(j)"));
  CHECK(!out.terms.empty());
  for (const auto& t : out.terms) CHECK(t.ops.empty());
}
