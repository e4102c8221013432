#ifndef INDEPFORGE_H
#define INDEPFORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. Values 1-3 match the command-line exit codes.
typedef enum IfStatus {
  IF_STATUS_OK = 0,
  IF_STATUS_INVALID = 1,
  IF_STATUS_CAP_EXCEEDED = 2,
  IF_STATUS_THEOREM_FALSIFIED = 3,
  IF_STATUS_NULL_POINTER = 4,
  IF_STATUS_UTF8 = 5,
  IF_STATUS_PANIC = 6,
} IfStatus;

// A parsed instance document.
typedef struct IfInstance IfInstance;

// Resource caps for a run.
typedef struct IfCaps {
  size_t max_dim;
  size_t max_seq;
  size_t max_det;
} IfCaps;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The default caps (dimension 512, sequence length 12, determinant size 8).
struct IfCaps indepforge_caps_default(void);

// Library version as a static NUL-terminated string.
const char *indepforge_version(void);

// Message of the last failed call on this thread, or NULL. Valid until
// the next call into the library from this thread.
const char *indepforge_last_error(void);

// Parses an instance document.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum IfStatus indepforge_instance_parse(const char *json, struct IfInstance **out);

// Replaces the command name (and, when `route` is not NULL, the route).
//
// # Safety
// `inst` must come from [`indepforge_instance_parse`]; strings must be
// NUL-terminated; `route` may be NULL.
enum IfStatus indepforge_instance_set_command(struct IfInstance *inst,
                                              const char *name,
                                              const char *route);

// Runs the instance's command. On success and on harness errors
// `*report_out` receives the JSON report (an error report in the latter
// case), which the caller frees with [`indepforge_string_free`].
//
// # Safety
// `inst` must come from [`indepforge_instance_parse`]; `report_out` must be valid.
enum IfStatus indepforge_run(const struct IfInstance *inst, struct IfCaps caps, char **report_out);

// Draws a random instance document of the given kind over `field`
// (for example `"GF(101)"` or `"QQ"`).
//
// # Safety
// Strings must be NUL-terminated; `json_out` must be valid.
enum IfStatus indepforge_generate(const char *kind,
                                  const char *field,
                                  uint64_t seed,
                                  char **json_out);

// # Safety
// `inst` must come from [`indepforge_instance_parse`] or be NULL.
void indepforge_instance_free(struct IfInstance *inst);

// # Safety
// `s` must be a string returned by this library or NULL.
void indepforge_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INDEPFORGE_H */
