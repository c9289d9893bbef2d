#ifndef MCFLOW_H
#define MCFLOW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four agree with the `mcflow` exit statuses.
 */
typedef enum McflowStatus {
  MCFLOW_STATUS_OK = 0,
  MCFLOW_STATUS_CHECK_FAILED = 1,
  MCFLOW_STATUS_INVALID_INPUT = 2,
  MCFLOW_STATUS_SINGULAR = 3,
  MCFLOW_STATUS_NULL_POINTER = 4,
  MCFLOW_STATUS_INVALID_UTF8 = 5,
  MCFLOW_STATUS_PANIC = 6,
} McflowStatus;

/**
 * Opaque verification report handle.
 */
typedef struct McflowReport McflowReport;

/**
 * Opaque system handle.
 */
typedef struct McflowSystem McflowSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *mcflow_version(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *mcflow_last_error_message(void);

/**
 * Looks up a builtin system: `guillot`, `dh_classic`, `dh_symmetric`,
 * `heisenberg_example`.
 */
enum McflowStatus mcflow_system_builtin(const char *name, struct McflowSystem **out);

/**
 * Parses `.sys` source text.
 */
enum McflowStatus mcflow_system_parse(const char *source, struct McflowSystem **out);

void mcflow_system_free(struct McflowSystem *system);

/**
 * Declared system name, as an owned string.
 */
enum McflowStatus mcflow_system_name(const struct McflowSystem *system, char **out);

/**
 * Last multiplier `M = 1/((v×u)·w)` in canonical text form.
 */
enum McflowStatus mcflow_derive_multiplier(const struct McflowSystem *system, char **out);

/**
 * Runs the full verification suite with default options. The status
 * mirrors the report's exit status; the report is written whenever the
 * status is below [`McflowStatus::NullPointer`], failures included.
 */
enum McflowStatus mcflow_verify(const struct McflowSystem *system, struct McflowReport **out);

void mcflow_report_free(struct McflowReport *report);

/**
 * 1 when every check holds and the numeric oracle agrees, 0 otherwise or
 * for a null handle.
 */
int32_t mcflow_report_all_hold(const struct McflowReport *report);

/**
 * Number of checks in the report, 0 for a null handle.
 */
size_t mcflow_report_check_count(const struct McflowReport *report);

/**
 * Exit status the command-line tool would return, or -1 for a null handle.
 */
int32_t mcflow_report_exit_status(const struct McflowReport *report);

/**
 * The report as a JSON document, as an owned string.
 */
enum McflowStatus mcflow_report_to_json(const struct McflowReport *report, char **out);

/**
 * Releases a string returned through an out-pointer.
 */
void mcflow_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MCFLOW_H */
