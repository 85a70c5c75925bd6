/* C interface to the monotone-operator solver library. All entry points
 * return an error code; rich results are reachable through opaque handles.
 * Strings returned by accessors stay owned by the handle they came from. */

#ifndef MPROX_H
#define MPROX_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define MPROX_OK 0
#define MPROX_ERR_CONFIG 2  /* invalid configuration / usage */
#define MPROX_ERR_NUMERIC 3 /* numeric failure during a run */

typedef struct mprox_experiment mprox_experiment;
typedef struct mprox_report mprox_report;

const char* mprox_version(void);

/* Message for the most recent failure on this thread; empty string if none. */
const char* mprox_last_error(void);

/* --- experiment configuration ------------------------------------------- */

int mprox_experiment_load_file(const char* path, mprox_experiment** out);
int mprox_experiment_load_json(const char* json_text, mprox_experiment** out);
void mprox_experiment_free(mprox_experiment* e);

int mprox_experiment_set_seed(mprox_experiment* e, uint64_t seed);
int mprox_experiment_set_budget(mprox_experiment* e, int budget);

/* Canonical serialized form (JSON). Owned by the handle. */
const char* mprox_experiment_json(mprox_experiment* e);
uint64_t mprox_experiment_hash(mprox_experiment* e);

/* --- execution ----------------------------------------------------------- */

/* Runs the experiment; writes trace + report files under out_dir.
 * format is "csv" or "json". */
int mprox_run(mprox_experiment* e, const char* out_dir, const char* format,
              mprox_report** out);

/* Runs several experiments sharing a problem/budget; writes an aligned
 * residual table under out_dir and returns the text rendering. */
int mprox_compare(mprox_experiment* const* es, int count, const char* out_dir,
                  char** text_out);
void mprox_string_free(char* s);

/* Runs a named invariant suite. Returns MPROX_OK when every check passes,
 * MPROX_ERR_NUMERIC when some check fails, MPROX_ERR_CONFIG for an unknown
 * suite. *report_out (optional) receives one line per check. */
int mprox_check(const char* suite_id, char** report_out);

/* --- report accessors ----------------------------------------------------- */

void mprox_report_free(mprox_report* r);
const char* mprox_report_summary_json(mprox_report* r);
const char* mprox_report_trace_path(mprox_report* r);
int mprox_report_all_pass(mprox_report* r);   /* 1 / 0 */
int mprox_report_complete(mprox_report* r);   /* 1 / 0 */

#ifdef __cplusplus
}
#endif

#endif
