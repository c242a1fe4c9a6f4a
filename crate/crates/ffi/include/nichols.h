#ifndef NICHOLS_H
#define NICHOLS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Which rendering of the whole run to fetch.
typedef enum NicholsReportKind {
  NICHOLS_REPORT_KIND_HUMAN = 0,
  NICHOLS_REPORT_KIND_MACHINE = 1,
} NicholsReportKind;

// Status codes returned by every fallible entry point.
typedef enum NicholsStatus {
  NICHOLS_STATUS_OK = 0,
  NICHOLS_STATUS_NULL_ARGUMENT = 1,
  NICHOLS_STATUS_INVALID_UTF8 = 2,
  NICHOLS_STATUS_CONFIG = 3,
  NICHOLS_STATUS_IO = 4,
  NICHOLS_STATUS_COMPUTATION = 5,
  NICHOLS_STATUS_INDEX_OUT_OF_RANGE = 6,
  NICHOLS_STATUS_PANIC = 7,
  NICHOLS_STATUS_INVALID_ARGUMENT = 8,
} NicholsStatus;

// Which field of a trace line to fetch.
typedef enum NicholsTraceField {
  NICHOLS_TRACE_FIELD_LABEL = 0,
  // Space-separated coefficients in the field encoding used by the machine
  // report, constant term first.
  NICHOLS_TRACE_FIELD_COEFFICIENTS = 1,
  // Factorization in `(k)_{λt^d}` notation.
  NICHOLS_TRACE_FIELD_FACTORIZATION = 2,
  // Factorization in the line-oriented machine format.
  NICHOLS_TRACE_FIELD_FACTORIZATION_MACHINE = 3,
} NicholsTraceField;

// Verification depth for a run.
typedef enum NicholsVerifyLevel {
  // Use the level given in the config.
  NICHOLS_VERIFY_LEVEL_FROM_CONFIG = 0,
  NICHOLS_VERIFY_LEVEL_FAST = 1,
  NICHOLS_VERIFY_LEVEL_FULL = 2,
} NicholsVerifyLevel;

// Finished run: Hilbert series, graded traces and check verdicts.
typedef struct NicholsRun NicholsRun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses `text` as a config (reported under `name`) and runs it.
// `level` is a `NicholsVerifyLevel`.
//
// # Safety
// `name` and `text` must be NUL-terminated strings; `out` must be writable.
enum NicholsStatus nichols_run_from_text(const char *name,
                                         const char *text,
                                         uint32_t level,
                                         struct NicholsRun **out);

// Loads the config file at `path` and runs it.
// `level` is a `NicholsVerifyLevel`.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum NicholsStatus nichols_run_from_path(const char *path, uint32_t level, struct NicholsRun **out);

// # Safety
// `run` must come from this library and not be used afterwards.
void nichols_run_free(struct NicholsRun *run);

// # Safety
// `s` must be a string returned by this library, or null.
void nichols_string_free(char *s);

// Message of the last failure on this thread, or null. Owned by the library.
const char *nichols_last_error(void);

// Library version, static.
const char *nichols_version(void);

// Total dimension, 0 for a null handle or a run without an algebra.
//
// # Safety
// `run` must be a live handle or null.
size_t nichols_run_dimension(const struct NicholsRun *run);

// 1 when every check passed, 0 otherwise.
//
// # Safety
// `run` must be a live handle or null.
int32_t nichols_run_passed(const struct NicholsRun *run);

// Number of checks that failed.
//
// # Safety
// `run` must be a live handle or null.
size_t nichols_run_failed_checks(const struct NicholsRun *run);

// Copies up to `cap` Hilbert coefficients into `buf`; returns how many exist.
//
// # Safety
// `run` must be a live handle or null; `buf` must hold `cap` entries or be null.
size_t nichols_run_hilbert(const struct NicholsRun *run, size_t *buf, size_t cap);

// Number of graded traces in the run.
//
// # Safety
// `run` must be a live handle or null.
size_t nichols_run_trace_count(const struct NicholsRun *run);

// Text for one field (a `NicholsTraceField`) of trace line `index`, written
// to `out`. Free it with `nichols_string_free`.
//
// # Safety
// `run` must be a live handle; `out` must be writable.
enum NicholsStatus nichols_run_trace_text(const struct NicholsRun *run,
                                          size_t index,
                                          uint32_t field,
                                          char **out);

// Rendered report (`kind` is a `NicholsReportKind`), or null for a null
// handle or unknown kind. Free with `nichols_string_free`.
//
// # Safety
// `run` must be a live handle or null.
char *nichols_run_report(const struct NicholsRun *run, uint32_t kind);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NICHOLS_H */
