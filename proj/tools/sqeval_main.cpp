// Command-line front end for the second-quantization evaluator. Talks to the
// core exclusively through the C interface in sqeval.h.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sqeval.h"

namespace {

// Owns an sq_expr handle.
struct ExprHandle {
  sq_expr* ptr = nullptr;
  ~ExprHandle() { sq_expr_free(ptr); }
  ExprHandle() = default;
  ExprHandle(const ExprHandle&) = delete;
  ExprHandle& operator=(const ExprHandle&) = delete;
};

// Owns a string returned by the C interface.
struct StringHandle {
  char* ptr = nullptr;
  ~StringHandle() { sq_string_free(ptr); }
  StringHandle() = default;
  StringHandle(const StringHandle&) = delete;
  StringHandle& operator=(const StringHandle&) = delete;
};

int report_error(const char* what, sq_status status) {
  std::cerr << "error: " << what << ": " << sq_last_error() << "\n";
  return static_cast<int>(status);
}

// Reads the expression source from --preset, --input, or standard input.
// Returns false after printing a usage error.
bool load_source(const std::string& preset, const std::string& input_path,
                 std::string& out) {
  if (!preset.empty() && !input_path.empty()) {
    std::cerr << "error: --preset and --input are mutually exclusive\n";
    return false;
  }
  if (!preset.empty()) {
    const char* source = sq_preset_source(preset.c_str());
    if (!source) {
      std::cerr << "error: unknown preset '" << preset << "'\n";
      return false;
    }
    out = source;
    return true;
  }
  if (!input_path.empty()) {
    std::ifstream file(input_path);
    if (!file) {
      std::cerr << "error: cannot open '" << input_path << "'\n";
      return false;
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    out = buffer.str();
    return true;
  }
  std::ostringstream buffer;
  buffer << std::cin.rdbuf();
  out = buffer.str();
  return true;
}

std::uint64_t budget_from_env() {
  const char* env = std::getenv("SQ_EVAL_BUDGET");
  if (!env || !*env) return 0;
  char* end = nullptr;
  unsigned long long value = std::strtoull(env, &end, 10);
  if (end && *end == '\0' && value > 0) return value;
  std::cerr << "warning: ignoring malformed SQ_EVAL_BUDGET='" << env << "'\n";
  return 0;
}

int cmd_evaluate(const std::string& preset, const std::string& input_path,
                 const std::string& format, bool stats) {
  std::string source;
  if (!load_source(preset, input_path, source))
    return static_cast<int>(SQ_ERR_USAGE);

  ExprHandle parsed;
  if (sq_status s = sq_parse(source.c_str(), &parsed.ptr); s != SQ_OK)
    return report_error("parse", s);

  ExprHandle derived;
  sq_eval_stats eval_stats{};
  if (sq_status s = sq_evaluate(parsed.ptr, &derived.ptr, &eval_stats);
      s != SQ_OK)
    return report_error("evaluate", s);

  StringHandle rendered;
  sq_format fmt = format == "latex" ? SQ_FORMAT_LATEX : SQ_FORMAT_TEXT;
  if (sq_status s = sq_render(derived.ptr, fmt, &rendered.ptr); s != SQ_OK)
    return report_error("render", s);

  std::cout << rendered.ptr << "\n";
  if (stats) {
    std::cout << "# terms: " << sq_term_count(derived.ptr) << "\n";
    std::cout << "# iterations: " << eval_stats.iterations << "\n";
  }
  return 0;
}

int cmd_check(const std::string& preset, const std::string& input_path,
              int nocc, int nvirt, int trials, std::uint64_t seed,
              double tol) {
  std::string source;
  if (!load_source(preset, input_path, source))
    return static_cast<int>(SQ_ERR_USAGE);

  ExprHandle parsed;
  if (sq_status s = sq_parse(source.c_str(), &parsed.ptr); s != SQ_OK)
    return report_error("parse", s);

  ExprHandle derived;
  if (sq_status s = sq_evaluate(parsed.ptr, &derived.ptr, nullptr); s != SQ_OK)
    return report_error("evaluate", s);

  sq_check_options options{};
  options.n_occ = nocc;
  options.n_virt = nvirt;
  options.trials = trials;
  options.seed = seed;
  options.tolerance = tol;
  options.budget = budget_from_env();

  StringHandle report;
  sq_status s = sq_check(parsed.ptr, derived.ptr, &options, &report.ptr);
  if (report.ptr) std::cout << report.ptr;
  if (s == SQ_ERR_CHECK_FAILED) return static_cast<int>(s);
  if (s != SQ_OK) return report_error("check", s);
  return 0;
}

int cmd_preset(const std::string& name, bool list) {
  if (list) {
    for (const char* const* p = sq_preset_names(); *p; ++p)
      std::cout << *p << "\n";
    return 0;
  }
  const char* source = sq_preset_source(name.c_str());
  if (!source) {
    std::cerr << "error: unknown preset '" << name << "'\n";
    return static_cast<int>(SQ_ERR_USAGE);
  }
  std::cout << source << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal-order second-quantized operator expressions against "
               "a Hartree-Fock reference"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sq_version()));

  std::string preset, input_path, format = "text", preset_name;
  bool stats = false, list = false;
  int nocc = 2, nvirt = 2, trials = 5;
  std::uint64_t seed = 1;
  double tol = 1e-10;

  auto* eval = app.add_subcommand("evaluate", "Evaluate an expression");
  eval->add_option("--preset", preset, "Use a built-in expression");
  eval->add_option("-i,--input", input_path,
                   "Read the expression from a file (default: stdin)");
  eval->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "latex"}));
  eval->add_flag("--stats", stats, "Print term and iteration counts");

  auto* check = app.add_subcommand(
      "check", "Evaluate, then compare against the input numerically");
  check->add_option("--preset", preset, "Use a built-in expression");
  check->add_option("-i,--input", input_path,
                    "Read the expression from a file (default: stdin)");
  check->add_option("--nocc", nocc, "Occupied orbitals in the numeric basis")
      ->check(CLI::PositiveNumber);
  check->add_option("--nvirt", nvirt, "Virtual orbitals in the numeric basis")
      ->check(CLI::PositiveNumber);
  check->add_option("--trials", trials, "Random-tensor trials")
      ->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "Seed of the first trial");
  check->add_option("--tol", tol, "Per-trial tolerance");

  auto* preset_cmd =
      app.add_subcommand("preset", "Print a built-in expression's source");
  preset_cmd->add_option("name", preset_name, "Preset name");
  preset_cmd->add_flag("--list", list, "List the available names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(SQ_ERR_USAGE);
  }

  if (eval->parsed()) return cmd_evaluate(preset, input_path, format, stats);
  if (check->parsed())
    return cmd_check(preset, input_path, nocc, nvirt, trials, seed, tol);
  if (preset_cmd->parsed()) {
    if (!list && preset_name.empty()) {
      std::cerr << "error: preset requires a name or --list\n";
      return static_cast<int>(SQ_ERR_USAGE);
    }
    return cmd_preset(preset_name, list);
  }
  return static_cast<int>(SQ_ERR_USAGE);
}
