/* C interface to the second-quantization evaluator.
 *
 * All functions are reentrant. Error details for the most recent failing
 * call are kept per thread and read back with sq_last_error(). Strings
 * returned through out-parameters are heap-allocated and must be released
 * with sq_string_free(); expressions with sq_expr_free().
 */
#ifndef SQEVAL_H
#define SQEVAL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sq_expr sq_expr;

typedef enum sq_status {
  SQ_OK = 0,
  SQ_ERR_PARSE = 1,        /* malformed input text */
  SQ_ERR_INTERNAL = 2,     /* invariant violation inside the evaluator */
  SQ_ERR_CHECK_FAILED = 3, /* numeric check ran and disagreed */
  SQ_ERR_SCALE = 4,        /* numeric check exceeded its work budget */
  SQ_ERR_USAGE = 64        /* invalid argument from the caller */
} sq_status;

typedef enum sq_format {
  SQ_FORMAT_TEXT = 0,
  SQ_FORMAT_LATEX = 1
} sq_format;

typedef struct sq_eval_stats {
  size_t iterations; /* rewrite rounds until no operators remained */
  size_t raw_terms;  /* operator-free terms before merging */
} sq_eval_stats;

typedef struct sq_check_options {
  int n_occ;        /* occupied orbitals in the numeric basis */
  int n_virt;       /* virtual orbitals in the numeric basis */
  int trials;       /* independent random-tensor trials */
  uint64_t seed;    /* seed of the first trial; trial k uses seed + k */
  double tolerance; /* per-trial bound on |input - derived| */
  uint64_t budget;  /* work cap per numeric evaluation; 0 = default */
} sq_check_options;

/* Parse expression text. On success stores a new handle in *out. */
sq_status sq_parse(const char* text, sq_expr** out);

/* Evaluate against the reference: eliminate all operators, resolve deltas,
 * canonicalize and merge. stats may be NULL. */
sq_status sq_evaluate(const sq_expr* expr, sq_expr** out,
                      sq_eval_stats* stats);

/* Render an expression. On success stores a NUL-terminated string in *out. */
sq_status sq_render(const sq_expr* expr, sq_format format, char** out);

/* Number of terms in an expression. Returns 0 on a NULL handle. */
size_t sq_term_count(const sq_expr* expr);

/* Compare two expressions numerically over random tensors. Returns SQ_OK
 * when every trial agrees within tolerance, SQ_ERR_CHECK_FAILED otherwise.
 * When report is non-NULL it receives a per-trial table in both cases. */
sq_status sq_check(const sq_expr* input, const sq_expr* derived,
                   const sq_check_options* options, char** report);

/* Source text of a named built-in expression, or NULL for unknown names. */
const char* sq_preset_source(const char* name);

/* NULL-terminated array of the built-in expression names. */
const char* const* sq_preset_names(void);

/* Message from the most recent failing call on this thread ("" if none). */
const char* sq_last_error(void);

void sq_expr_free(sq_expr* expr);
void sq_string_free(char* s);

const char* sq_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SQEVAL_H */
