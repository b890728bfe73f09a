#pragma once

#include <string>

#include "secq/algebra.hpp"

namespace secq {

enum class RenderFormat { Text, LaTeX };

// Text output is the input language itself and re-parses to an equal
// expression. LaTeX output is presentation only: amplitudes first, operator
// strings wrapped in angle brackets, integrals and deltas last. An empty
// expression renders as "0" in both formats.
std::string render(const Expression& expr, RenderFormat format);

std::string render_text(const Expression& expr);
std::string render_latex(const Expression& expr);

}  // namespace secq
