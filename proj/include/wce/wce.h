/* Copyright 2026 The wcelab Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the wcelab verification library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a wce_status; on
 * failure wce_last_error() describes the problem (thread-local, valid until
 * the next failing call on the same thread). Strings returned through char**
 * are heap-allocated and released with wce_string_free.
 */

#ifndef WCE_WCE_H
#define WCE_WCE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(WCE_BUILDING_LIBRARY)
#    define WCE_API __declspec(dllexport)
#  else
#    define WCE_API __declspec(dllimport)
#  endif
#else
#  define WCE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wce_status {
  WCE_OK = 0,
  WCE_ERR_INVALID_ARGUMENT = 1, /* null handle, bad range, unknown check */
  WCE_ERR_PARSE = 2,            /* malformed instance document */
  WCE_ERR_IO = 3,               /* file could not be read or written */
  WCE_ERR_CONFIG = 4,           /* generator configuration rejected */
  WCE_ERR_DOMAIN = 5,           /* mathematical precondition violated */
  WCE_ERR_INTERNAL = 6
} wce_status;

typedef struct wce_instance wce_instance;
typedef struct wce_report wce_report;

/* Generator modes, OR-ed into wce_gen_config.modes. */
#define WCE_MODE_MEASURABLE_U 0x1u
#define WCE_MODE_PARTIAL_ISOMETRY 0x2u
#define WCE_MODE_ZERO_BLOCKS 0x4u
#define WCE_MODE_CONSTANT_U 0x8u
#define WCE_MODE_PERTURBED_U 0x10u

typedef struct wce_gen_config {
  uint64_t seed;
  uint32_t n;           /* 2..64 */
  uint32_t block_count; /* 1..n */
  uint32_t modes;
  int with_point_map;   /* nonzero: attach a random point map */
} wce_gen_config;

typedef struct wce_tolerances {
  double op;
  double func_calc;
  double kernel;
  double support;
  double vanish_positive;
  double pi_gap;
  double measure;
  double mass;
  double slack;
  double grouping;
  double normality;
} wce_tolerances;

typedef struct wce_report_summary {
  size_t instances;
  size_t records;
  size_t passed;
  size_t failed;
  size_t skipped;
  double wall_seconds;
} wce_report_summary;

WCE_API const char* wce_version(void);
WCE_API const char* wce_last_error(void);
WCE_API void wce_string_free(char* s);

WCE_API void wce_gen_config_default(wce_gen_config* cfg);
WCE_API void wce_tolerances_default(wce_tolerances* tol);

/* Instances */
WCE_API wce_status wce_instance_generate(const wce_gen_config* cfg,
                                         wce_instance** out);
WCE_API wce_status wce_instance_parse(const char* text, size_t len,
                                      wce_instance** out);
WCE_API wce_status wce_instance_load(const char* path, wce_instance** out);
WCE_API wce_status wce_instance_save(const wce_instance* inst,
                                     const char* path);
WCE_API wce_status wce_instance_serialize(const wce_instance* inst, char** out);
/* out must hold 17 bytes. */
WCE_API wce_status wce_instance_digest(const wce_instance* inst, char* out);
WCE_API size_t wce_instance_size(const wce_instance* inst);
WCE_API size_t wce_instance_block_count(const wce_instance* inst);
/* Closed-form norm and the dense operator norm of T = M_w E M_u. */
WCE_API wce_status wce_instance_norm(const wce_instance* inst, double* formula,
                                     double* oracle);
WCE_API void wce_instance_free(wce_instance* inst);

/* Verification */
WCE_API size_t wce_check_group_count(void);
WCE_API const char* wce_check_group_name(size_t index);

/* checks: comma-separated group names, or NULL / "" / "all" for every group.
 * tol may be NULL for defaults. */
WCE_API wce_status wce_verify(const wce_instance* const* instances,
                              size_t count, const char* checks,
                              const wce_tolerances* tol, wce_report** out);
/* Seeds first..last inclusive; full nonzero adds the companion families. */
WCE_API wce_status wce_suite(uint64_t first, uint64_t last, int full,
                             const wce_tolerances* tol, wce_report** out);

WCE_API wce_status wce_report_summary_get(const wce_report* report,
                                          wce_report_summary* out);
WCE_API wce_status wce_report_json(const wce_report* report, char** out);
WCE_API wce_status wce_report_text(const wce_report* report, int verbose,
                                   char** out);
WCE_API void wce_report_free(wce_report* report);

#ifdef __cplusplus
}
#endif

#endif /* WCE_WCE_H */
