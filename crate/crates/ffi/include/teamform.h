#ifndef TEAMFORM_H
#define TEAMFORM_H

/* Generated by cbindgen from teamform-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Aggregation mode for one objective term.
typedef enum TfMode {
  TF_MODE_DIA = 0,
  TF_MODE_SUM = 1,
} TfMode;

// Status code of every fallible entry point.
typedef enum TfStatus {
  TF_STATUS_OK = 0,
  // A required pointer argument was null.
  TF_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  TF_STATUS_INVALID_UTF8 = 2,
  // The instance JSON failed to parse.
  TF_STATUS_PARSE_ERROR = 3,
  // The instance parsed but violates its invariants.
  TF_STATUS_INVALID_INSTANCE = 4,
  // The solver ran and proved the instance infeasible.
  TF_STATUS_INFEASIBLE = 5,
  // An exhaustive component refused the instance size.
  TF_STATUS_GUARD_EXCEEDED = 6,
  // The algorithm name is not recognized.
  TF_STATUS_UNKNOWN_ALGORITHM = 7,
  // Any other solver error; details behind `tf_last_error`.
  TF_STATUS_INTERNAL = 8,
} TfStatus;

// Opaque parsed instance.
typedef struct TfInstance TfInstance;

// Opaque solve result.
typedef struct TfReport TfReport;

// Solver knobs; obtain defaults via `tf_solve_options_default`.
typedef struct TfSolveOptions {
  enum TfMode intra;
  enum TfMode inter;
  // Wage bucket count for the cons-k algorithms.
  uint32_t k_buckets;
  // Seed for the random baseline.
  uint64_t seed;
  // Center enumeration cap of the partition stage.
  uint64_t center_limit;
} TfSolveOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread. The pointer
// stays valid until the next failing call on the same thread.
const char *tf_last_error(void);

// Crate version as a static string.
const char *tf_version(void);

// Fills `out` with the default solver options.
//
// # Safety
// `out` must point to writable memory for one `TfSolveOptions`.
enum TfStatus tf_solve_options_default(struct TfSolveOptions *out);

// Parses and validates an instance JSON document. On success `*out` owns
// a handle that must be released with `tf_instance_free`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum TfStatus tf_instance_from_json(const char *json, struct TfInstance **out);

// Number of workers in the instance; 0 for a null handle.
//
// # Safety
// `inst` must be null or a live handle from `tf_instance_from_json`.
size_t tf_instance_worker_count(const struct TfInstance *inst);

// Releases an instance handle; null is a no-op.
//
// # Safety
// `inst` must be null or a handle not freed before.
void tf_instance_free(struct TfInstance *inst);

// Runs one solver. `algorithm` is one of `exact`, `opt-grp`, `apprx-grp`,
// `grp-split`, `greedy`, `cons-k-opt`, `cons-k-apprx`; `options` may be
// null for defaults. On success `*out` owns a report handle to release
// with `tf_report_free`; `TF_STATUS_INFEASIBLE` means the solver ran and
// found no feasible group.
//
// # Safety
// `inst` must be a live instance handle, `algorithm` NUL-terminated,
// `options` null or valid, `out` writable.
enum TfStatus tf_solve(const struct TfInstance *inst,
                       const char *algorithm,
                       const struct TfSolveOptions *options,
                       struct TfReport **out);

// Objective value of a report; NaN for a null handle.
//
// # Safety
// `report` must be null or a live report handle.
double tf_report_objective(const struct TfReport *report);

// Whether every constraint flag (skill, cost, critical mass) holds.
//
// # Safety
// `report` must be null or a live report handle.
bool tf_report_feasible(const struct TfReport *report);

// Number of workers in the selected group.
//
// # Safety
// `report` must be null or a live report handle.
size_t tf_report_group_size(const struct TfReport *report);

// Full JSON rendering of the report; borrowed from the handle.
//
// # Safety
// `report` must be a live report handle; the pointer dies with it.
const char *tf_report_json(const struct TfReport *report);

// Releases a report handle; null is a no-op.
//
// # Safety
// `report` must be null or a handle not freed before.
void tf_report_free(struct TfReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TEAMFORM_H */
