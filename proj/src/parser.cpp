#include "secq/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

namespace secq {

namespace {

struct IdxTok {
  std::string label;
  std::optional<OrbitalSpace> annotation;
  int line = 0, col = 0;
};

struct FactorTok {
  bool is_op = false;
  OpKind op_kind = OpKind::Create;
  TensorKind kind = TensorKind::OneElectron;
  std::vector<IdxTok> indices;
  int n_lower = 0;
  int line = 0, col = 0;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : src(text) {}

  Expression run() {
    skip_space();
    if (eof()) fail("empty input");
    Expression expr;
    bool first = true;
    while (true) {
      long long sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        advance();
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      parse_term(expr, sign);
      first = false;
      skip_space();
      if (eof()) break;
      if (peek() != '+' && peek() != '-')
        fail("unexpected character '" + std::string(1, peek()) + "'");
    }
    return expr;
  }

 private:
  std::string_view src;
  size_t pos = 0;
  int line = 1, col = 1;

  bool eof() const { return pos >= src.size(); }
  char peek(size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }
  void advance() {
    if (eof()) return;
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_space() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, col);
  }
  [[noreturn]] static void fail_at(const std::string& msg, int l, int c) {
    throw ParseError(msg, l, c);
  }
  void expect(char c, const char* what) {
    if (peek() != c) fail(std::string("expected '") + c + "' " + what);
    advance();
  }

  long long parse_integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected a digit");
    int l = line, c = col;
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    if (digits.size() > 18) fail_at("coefficient too large", l, c);
    return std::stoll(digits);
  }

  Rational parse_rational() {
    long long num = parse_integer();
    if (peek() != '/') return Rational(num);
    int l = line, c = col;
    advance();
    long long den = parse_integer();
    if (den == 0) fail_at("zero denominator", l, c);
    return Rational(num, den);
  }

  IdxTok parse_idx() {
    IdxTok tok;
    tok.line = line;
    tok.col = col;
    if (!std::isalpha(static_cast<unsigned char>(peek())))
      fail("expected an index");
    tok.label += peek();
    advance();
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      tok.label += peek();
      advance();
    }
    if (peek() == ':') {
      advance();
      std::string word;
      while (std::isalpha(static_cast<unsigned char>(peek()))) {
        word += peek();
        advance();
      }
      if (word == "occ")
        tok.annotation = OrbitalSpace::Occupied;
      else if (word == "vir")
        tok.annotation = OrbitalSpace::Virtual;
      else if (word == "gen")
        tok.annotation = OrbitalSpace::General;
      else
        fail("space annotation must be occ, vir or gen");
    }
    return tok;
  }

  // Bracketed index list for h/V/A/d with a fixed arity.
  void parse_fixed_indices(FactorTok& f, size_t arity) {
    expect('[', "after tensor name");
    for (size_t k = 0; k < arity; ++k) {
      if (k) expect(',', "between indices");
      skip_inline_space();
      f.indices.push_back(parse_idx());
      skip_inline_space();
    }
    if (peek() == ',')
      fail_at("too many indices for this tensor", f.line, f.col);
    expect(']', "to close the tensor");
  }

  void skip_inline_space() {
    while (peek() == ' ' || peek() == '\t') advance();
  }

  std::vector<IdxTok> parse_idx_list(char stop1, char stop2) {
    std::vector<IdxTok> out;
    skip_inline_space();
    if (peek() == stop1 || (stop2 && peek() == stop2)) return out;
    while (true) {
      out.push_back(parse_idx());
      skip_inline_space();
      if (peek() != ',') break;
      advance();
      skip_inline_space();
    }
    return out;
  }

  FactorTok parse_amplitude() {
    FactorTok f;
    f.kind = TensorKind::Amplitude;
    f.line = line;
    f.col = col;
    advance();  // 't'
    expect('[', "after tensor name");
    std::vector<IdxTok> lower = parse_idx_list('=', ']');
    if (peek() != '=' || peek(1) != '>') fail("expected '=>' in amplitude");
    advance();
    advance();
    std::vector<IdxTok> upper = parse_idx_list(']', '\0');
    expect(']', "to close the tensor");
    size_t nl = lower.size(), nu = upper.size();
    bool ok = (nl == 0 && nu == 1) || (nl == 1 && nu == 0) ||
              (nl == 1 && nu == 1) || (nl == 2 && nu == 2);
    if (!ok)
      fail_at("unsupported amplitude shape t[" + std::to_string(nl) + "=>" +
                  std::to_string(nu) + "]",
              f.line, f.col);
    f.n_lower = static_cast<int>(nl);
    f.indices = std::move(lower);
    f.indices.insert(f.indices.end(), upper.begin(), upper.end());
    return f;
  }

  // True at the start of a factor; leaves position untouched.
  bool at_factor() const {
    char c = peek();
    if ((c == 'h' || c == 'V' || c == 'A' || c == 'd' || c == 't') &&
        peek(1) == '[')
      return true;
    if ((c == 'c' || c == 'a') && peek(1) == '(') return true;
    return false;
  }

  FactorTok parse_factor() {
    FactorTok f;
    f.line = line;
    f.col = col;
    char c = peek();
    if ((c == 'c' || c == 'a') && peek(1) == '(') {
      f.is_op = true;
      f.op_kind = c == 'c' ? OpKind::Create : OpKind::Annihilate;
      advance();
      advance();
      skip_inline_space();
      f.indices.push_back(parse_idx());
      skip_inline_space();
      expect(')', "to close the operator");
      return f;
    }
    if (c == 't') return parse_amplitude();
    size_t arity = (c == 'V' || c == 'A') ? 4 : 2;
    switch (c) {
      case 'h': f.kind = TensorKind::OneElectron; break;
      case 'V': f.kind = TensorKind::TwoElectronBare; break;
      case 'A': f.kind = TensorKind::TwoElectronAntisym; break;
      case 'd': f.kind = TensorKind::Delta; break;
      default: fail("expected a factor");
    }
    advance();
    parse_fixed_indices(f, arity);
    return f;
  }

  void parse_term(Expression& expr, long long sign) {
    int term_line = line, term_col = col;
    Rational coeff(sign);
    bool have_rational = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff *= parse_rational();
      have_rational = true;
    }
    std::vector<FactorTok> factors;
    while (true) {
      skip_space();
      if (!at_factor()) break;
      factors.push_back(parse_factor());
    }
    if (factors.empty() && !have_rational) {
      if (std::isalpha(static_cast<unsigned char>(peek())))
        fail("unknown factor starting with '" + std::string(1, peek()) + "'");
      fail_at("expected a factor or coefficient", term_line, term_col);
    }
    if (coeff != Rational(0))
      expr.terms.push_back(build_term(coeff, factors));
  }

  Term build_term(const Rational& coeff, const std::vector<FactorTok>& factors) {
    // Resolve each label's space from annotations or the letter family,
    // then its binding from the occurrence count.
    struct LabelInfo {
      std::optional<OrbitalSpace> space;
      int count = 0;
      int line = 0, col = 0;  // first occurrence
    };
    std::map<std::string, LabelInfo> table;
    for (const auto& f : factors)
      for (const auto& tok : f.indices) {
        auto [it, fresh] = table.try_emplace(tok.label);
        LabelInfo& info = it->second;
        if (fresh) {
          info.line = tok.line;
          info.col = tok.col;
        }
        if (++info.count > 2)
          fail_at("index '" + tok.label + "' appears more than twice",
                  tok.line, tok.col);
        if (tok.annotation) {
          if (info.space && *info.space != *tok.annotation)
            fail_at("index '" + tok.label + "' annotated with two spaces",
                    tok.line, tok.col);
          info.space = tok.annotation;
        }
      }
    for (auto& [label, info] : table) {
      if (info.space) continue;
      info.space = infer_space(label[0]);
      if (!info.space)
        fail_at("cannot infer a space for '" + label +
                    "'; annotate with :occ, :vir or :gen",
                info.line, info.col);
    }

    auto resolve = [&](const IdxTok& tok) {
      const LabelInfo& info = table.at(tok.label);
      return Index{tok.label, *info.space,
                   info.count == 2 ? Binding::Dummy : Binding::Free};
    };

    std::vector<TensorFactor> tensors;
    std::vector<FermionOp> ops;
    for (const auto& f : factors) {
      if (f.is_op) {
        ops.push_back({f.op_kind, resolve(f.indices[0])});
        continue;
      }
      TensorFactor t;
      t.kind = f.kind;
      t.n_lower = f.n_lower;
      for (size_t k = 0; k < f.indices.size(); ++k) {
        Index idx = resolve(f.indices[k]);
        if (f.kind == TensorKind::Amplitude) {
          bool is_lower = k < static_cast<size_t>(f.n_lower);
          if (is_lower && idx.space != OrbitalSpace::Occupied)
            fail_at("amplitude lower index '" + idx.label +
                        "' must be occupied",
                    f.indices[k].line, f.indices[k].col);
          if (!is_lower && idx.space != OrbitalSpace::Virtual)
            fail_at("amplitude upper index '" + idx.label +
                        "' must be virtual",
                    f.indices[k].line, f.indices[k].col);
        }
        t.indices.push_back(std::move(idx));
      }
      tensors.push_back(std::move(t));
    }
    return make_term(coeff, std::move(tensors), std::move(ops));
  }
};

}  // namespace

Expression parse(std::string_view text) { return Reader(text).run(); }

}  // namespace secq
