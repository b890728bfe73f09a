#include "secq/render.hpp"

namespace secq {

namespace {

// Labels joined bare when all are single letters, comma-separated otherwise.
std::string join_labels(const std::vector<Index>& ids, size_t first,
                        size_t count) {
  bool wide = false;
  for (size_t k = 0; k < count; ++k)
    if (ids[first + k].label.size() > 1) wide = true;
  std::string joined;
  for (size_t k = 0; k < count; ++k) {
    if (k && wide) joined += ',';
    joined += ids[first + k].label;
  }
  return joined;
}

// Single-letter scripts stay bare (t_i^a); longer ones get braces (h_{ij}).
std::string script(const std::vector<Index>& ids, size_t first, size_t count) {
  std::string joined = join_labels(ids, first, count);
  if (joined.size() == 1) return joined;
  return "{" + joined + "}";
}

std::string latex_pair_bracket(const TensorFactor& t, const char* bar) {
  std::string out = "\\langle ";
  out += join_labels(t.indices, 0, 2);
  out += " ";
  out += bar;
  out += " ";
  out += join_labels(t.indices, 2, 2);
  out += " \\rangle";
  return out;
}

std::string latex_tensor(const TensorFactor& t) {
  switch (t.kind) {
    case TensorKind::Delta:
      return "\\delta_" + script(t.indices, 0, 2);
    case TensorKind::OneElectron:
      return "h_" + script(t.indices, 0, 2);
    case TensorKind::TwoElectronBare:
      return latex_pair_bracket(t, "\\vert");
    case TensorKind::TwoElectronAntisym:
      return latex_pair_bracket(t, "\\Vert");
    case TensorKind::Amplitude: {
      std::string out = "t";
      size_t nl = static_cast<size_t>(t.n_lower);
      if (nl > 0) out += "_" + script(t.indices, 0, nl);
      if (t.indices.size() > nl)
        out += "^" + script(t.indices, nl, t.indices.size() - nl);
      return out;
    }
  }
  return "";
}

std::string latex_coefficient(const Rational& r, bool scalar_only) {
  std::string out = r < Rational(0) ? "-" : "+";
  Rational a = r < Rational(0) ? -r : r;
  if (a == Rational(1) && !scalar_only) return out;
  out += ' ';
  if (a.denominator() == 1) {
    out += std::to_string(a.numerator());
  } else {
    out += "\\frac{" + std::to_string(a.numerator()) + "}{" +
           std::to_string(a.denominator()) + "}";
  }
  return out;
}

std::string latex_term(const Term& term) {
  std::string out = latex_coefficient(term.coefficient, term.tensors.empty() &&
                                                            term.ops.empty());
  // Textbook factor order: amplitudes, the operator sandwich, then
  // integrals and deltas.
  for (auto it = term.tensors.rbegin(); it != term.tensors.rend(); ++it)
    if (it->kind == TensorKind::Amplitude) out += " " + latex_tensor(*it);
  if (!term.ops.empty()) {
    out += " \\langle";
    for (const auto& op : term.ops) {
      out += " a_" + script({op.index}, 0, 1);
      if (op.kind == OpKind::Create) out += "^+";
    }
    out += " \\rangle";
  }
  for (const auto& t : term.tensors)
    if (t.kind != TensorKind::Amplitude) out += " " + latex_tensor(t);
  return out;
}

}  // namespace

std::string render_text(const Expression& expr) {
  if (expr.terms.empty()) return "0";
  std::string out;
  for (const auto& term : expr.terms) {
    if (!out.empty()) out += ' ';
    out += serialize(term);
  }
  return out;
}

std::string render_latex(const Expression& expr) {
  if (expr.terms.empty()) return "0";
  std::string out;
  for (const auto& term : expr.terms) {
    if (!out.empty()) out += ' ';
    out += latex_term(term);
  }
  return out;
}

std::string render(const Expression& expr, RenderFormat format) {
  return format == RenderFormat::Text ? render_text(expr)
                                      : render_latex(expr);
}

}  // namespace secq
