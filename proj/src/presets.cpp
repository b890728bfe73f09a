#include "secq/presets.hpp"

#include "secq/errors.hpp"

namespace secq {

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"cis-h1",
       "one-electron part of <S|H|S> for a singly excited trial state",
       "t[j=>b] t[i=>a] c(j) a(b) c(p) a(q) c(a) a(i) h[p,q]"},
      {"cis-h2",
       "two-electron part of <S|H|S> for a singly excited trial state",
       "1/2 t[j=>b] t[i=>a] c(j) a(b) c(p) c(q) a(s) a(r) c(a) a(i) "
       "V[p,q,r,s]"},
      {"cid-h1",
       "one-electron part of <D|H|D> for a doubly excited trial state",
       "t[k,l=>c,d] t[i,j=>a,b] c(l) c(k) a(d) a(c) c(p) a(q) "
       "c(a) c(b) a(i) a(j) h[p,q]"},
      {"cid-h2",
       "two-electron part of <D|H|D> for a doubly excited trial state",
       "1/2 t[k,l=>c,d] t[i,j=>a,b] c(l) c(k) a(d) a(c) "
       "c(p) c(q) a(s) a(r) c(a) c(b) a(i) a(j) V[p,q,r,s]"},
      {"anion-h1",
       "one-electron part of <A|H|A> for an electron-attached trial state",
       "t[=>b] t[=>a] a(b) c(p) a(q) c(a) h[p,q]"},
      {"anion-h2",
       "two-electron part of <A|H|A> for an electron-attached trial state",
       "1/2 t[=>b] t[=>a] a(b) c(p) c(q) a(s) a(r) c(a) V[p,q,r,s]"},
      {"cation-h1",
       "one-electron part of <C|H|C> for an ionized trial state",
       "t[j=>] t[i=>] c(j) c(p) a(q) a(i) h[p,q]"},
      {"cation-h2",
       "two-electron part of <C|H|C> for an ionized trial state",
       "1/2 t[j=>] t[i=>] c(j) c(p) c(q) a(s) a(r) a(i) V[p,q,r,s]"},
  };
  return table;
}

const Preset& preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw Error("unknown preset: " + name);
}

}  // namespace secq
