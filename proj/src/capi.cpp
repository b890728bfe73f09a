#include "sqeval.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "secq/algebra.hpp"
#include "secq/errors.hpp"
#include "secq/evaluate.hpp"
#include "secq/oracle.hpp"
#include "secq/parser.hpp"
#include "secq/presets.hpp"
#include "secq/render.hpp"

struct sq_expr {
  secq::Expression value;
};

namespace {

thread_local std::string g_last_error;

sq_status fail(sq_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn, translating exceptions into statuses and g_last_error.
template <typename Fn>
sq_status guarded(Fn&& fn) {
  try {
    sq_status status = fn();
    if (status == SQ_OK) g_last_error.clear();
    return status;
  } catch (const secq::ParseError& e) {
    return fail(SQ_ERR_PARSE, e.what());
  } catch (const secq::ScaleError& e) {
    return fail(SQ_ERR_SCALE, e.what());
  } catch (const std::exception& e) {
    return fail(SQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SQ_ERR_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

sq_status sq_parse(const char* text, sq_expr** out) {
  if (!text || !out) return fail(SQ_ERR_USAGE, "sq_parse: NULL argument");
  *out = nullptr;
  return guarded([&] {
    auto expr = new sq_expr{secq::parse(text)};
    *out = expr;
    return SQ_OK;
  });
}

sq_status sq_evaluate(const sq_expr* expr, sq_expr** out,
                      sq_eval_stats* stats) {
  if (!expr || !out) return fail(SQ_ERR_USAGE, "sq_evaluate: NULL argument");
  *out = nullptr;
  return guarded([&] {
    secq::EvalStats es;
    auto result = new sq_expr{secq::evaluate(expr->value, &es)};
    if (stats) {
      stats->iterations = es.iterations;
      stats->raw_terms = es.raw_terms;
    }
    *out = result;
    return SQ_OK;
  });
}

sq_status sq_render(const sq_expr* expr, sq_format format, char** out) {
  if (!expr || !out) return fail(SQ_ERR_USAGE, "sq_render: NULL argument");
  *out = nullptr;
  if (format != SQ_FORMAT_TEXT && format != SQ_FORMAT_LATEX)
    return fail(SQ_ERR_USAGE, "sq_render: unknown format");
  return guarded([&] {
    auto fmt = format == SQ_FORMAT_LATEX ? secq::RenderFormat::LaTeX
                                         : secq::RenderFormat::Text;
    *out = copy_string(secq::render(expr->value, fmt));
    if (!*out) return fail(SQ_ERR_INTERNAL, "sq_render: out of memory");
    return SQ_OK;
  });
}

size_t sq_term_count(const sq_expr* expr) {
  return expr ? expr->value.terms.size() : 0;
}

sq_status sq_check(const sq_expr* input, const sq_expr* derived,
                   const sq_check_options* options, char** report) {
  if (!input || !derived || !options)
    return fail(SQ_ERR_USAGE, "sq_check: NULL argument");
  if (report) *report = nullptr;
  if (options->n_occ < 1 || options->n_virt < 1 || options->trials < 1)
    return fail(SQ_ERR_USAGE, "sq_check: invalid basis or trial count");
  return guarded([&] {
    secq::OrbitalBasis basis{options->n_occ, options->n_virt};
    std::uint64_t budget =
        options->budget ? options->budget : secq::kDefaultBudget;
    secq::Report rep = secq::check_equivalence(
        input->value, derived->value, basis, options->trials, options->seed,
        options->tolerance, budget);
    if (report) {
      *report = copy_string(rep.table());
      if (!*report) return fail(SQ_ERR_INTERNAL, "sq_check: out of memory");
    }
    if (!rep.passed)
      return fail(SQ_ERR_CHECK_FAILED, "numeric check failed: " +
                                           rep.table());
    return SQ_OK;
  });
}

const char* sq_preset_source(const char* name) {
  if (!name) return nullptr;
  for (const auto& p : secq::presets())
    if (p.name == name) return p.source.c_str();
  return nullptr;
}

const char* const* sq_preset_names(void) {
  static const std::vector<const char*> names = [] {
    std::vector<const char*> v;
    for (const auto& p : secq::presets()) v.push_back(p.name.c_str());
    v.push_back(nullptr);
    return v;
  }();
  return names.data();
}

const char* sq_last_error(void) { return g_last_error.c_str(); }

void sq_expr_free(sq_expr* expr) { delete expr; }

void sq_string_free(char* s) { std::free(s); }

const char* sq_version(void) { return "1.0.0"; }

}  // extern "C"
