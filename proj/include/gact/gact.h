/* C interface to the gact engine. Strings returned through char** are owned by the caller
 * and released with gact_string_free. Handles are released with their *_free function. */
#ifndef GACT_GACT_H
#define GACT_GACT_H

#include <stdint.h>

#if defined(GACT_BUILDING_LIBRARY)
#define GACT_API __attribute__((visibility("default")))
#else
#define GACT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gact_status {
  GACT_OK = 0,
  GACT_NEGATIVE = 1, /* verified negative: violation found or unsolvable within bounds */
  GACT_E_INVALID = 2,
  GACT_E_SCHEMA = 3,
  GACT_E_BUDGET = 4,
  GACT_E_NOT_FOUND = 5,
  GACT_E_INTERNAL = 6
} gact_status;

typedef struct gact_complex gact_complex;
typedef struct gact_task gact_task;
typedef struct gact_tsub gact_tsub;

/* Message of the last failed call on this thread; empty when none. */
GACT_API const char* gact_last_error(void);
GACT_API void gact_string_free(char* s);
GACT_API const char* gact_version(void);

/* complexes */
GACT_API gact_status gact_complex_standard(int n, gact_complex** out);
GACT_API gact_status gact_complex_from_json(const char* json, gact_complex** out);
GACT_API gact_status gact_complex_to_json(const gact_complex* c, char** out);
/* kind: "chr" or "bary"; m >= 0 iterations */
GACT_API gact_status gact_complex_subdivide(const gact_complex* c, const char* kind, int m, gact_complex** out);
/* {simplices_by_dim, vertices, total_volume, geometry_ok} */
GACT_API gact_status gact_complex_stats(const gact_complex* c, char** out_json);
GACT_API gact_status gact_complex_svg(const gact_complex* c, char** out_svg);
GACT_API void gact_complex_free(gact_complex* c);

/* runs; model_json may be NULL for wait-free */
GACT_API gact_status gact_count_runs(int n, int depth, int period, uint64_t* out);
GACT_API gact_status gact_enumerate_runs(int n, int depth, int period, const char* model_json, char** out_json);

/* tasks; kind: "identity", "lord" or "lt" (t used by "lt") */
GACT_API gact_status gact_task_build(const char* kind, int n, int t, gact_task** out);
GACT_API gact_status gact_task_from_json(const char* json, gact_task** out);
GACT_API gact_status gact_task_to_json(const gact_task* task, char** out);
/* GACT_NEGATIVE with the problem list in out_json when invalid */
GACT_API gact_status gact_task_validate(const gact_task* task, char** out_json);
GACT_API gact_status gact_task_output_svg(const gact_task* task, char** out_svg);
GACT_API void gact_task_free(gact_task* task);

/* ACT: smallest k <= kmax with a decision map; GACT_NEGATIVE when none */
GACT_API gact_status gact_act_search(const gact_task* task, int kmax, char** map_json, char** certificate);
GACT_API gact_status gact_act_verify(const gact_task* task, const char* map_json, char** certificate);
/* protocol JSON from an ACT map */
GACT_API gact_status gact_act_protocol(const gact_task* task, const char* map_json, char** protocol_json);

/* bounded solvability check of a decision table */
GACT_API gact_status gact_solve_check(const gact_task* task, const char* model_json, const char* protocol_json,
                                      int depth, int period, int horizon, char** certificate);

/* terminating subdivisions share the vertex table of `task` */
GACT_API gact_status gact_tsub_from_json(const char* json, const gact_task* task, gact_tsub** out);
GACT_API gact_status gact_tsub_to_json(const gact_tsub* ts, int depth, char** out);
GACT_API gact_status gact_tsub_res(const gact_task* task, int t, int depth, gact_tsub** out);
GACT_API gact_status gact_tsub_chr(const gact_task* task, int k, gact_tsub** out);
GACT_API void gact_tsub_free(gact_tsub* ts);

GACT_API gact_status gact_delta_search(gact_tsub* ts, const gact_task* task, int depth, char** delta_json,
                                       char** certificate);
GACT_API gact_status gact_gact_verify(gact_tsub* ts, const gact_task* task, const char* delta_json,
                                      const char* model_json, int depth, int period, int horizon,
                                      char** certificate);
/* decision table of the protocol induced by (T, δ) on views up to max_round */
GACT_API gact_status gact_extract_protocol(gact_tsub* ts, const gact_task* task, const char* delta_json,
                                           int max_round, char** protocol_json);
GACT_API gact_status gact_from_protocol(const gact_task* task, const char* protocol_json, const char* model_json,
                                        int depth, int period, int horizon, char** tsub_json, char** delta_json);

/* full resilient pipeline: build, δ search, GACT check, protocol check */
GACT_API gact_status gact_res_verify(int n, int t, int depth, int horizon, char** certificate, char** svg);

#ifdef __cplusplus
}
#endif

#endif
