/* dynembed — incremental node-embedding engine for time-evolving networks.
 *
 * C API of the shared library. All functions return DYNEMBED_OK on success;
 * on failure dynembed_last_error() gives a thread-local message describing
 * the most recent error on the calling thread. Objects are opaque handles
 * owned by the caller and released with the matching _free function.
 */
#ifndef DYNEMBED_H
#define DYNEMBED_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dynembed_status {
    DYNEMBED_OK = 0,
    DYNEMBED_ERR_IO = 1,
    DYNEMBED_ERR_PARSE = 2,
    DYNEMBED_ERR_INVALID_ARGUMENT = 3,
    DYNEMBED_ERR_NO_OP_TRIPLE = 4,
    DYNEMBED_ERR_INSUFFICIENT_SPAN = 5,
    DYNEMBED_ERR_DUPLICATE_NODE = 6,
    DYNEMBED_ERR_EMPTY_CORPUS = 7,
    DYNEMBED_ERR_MISSING_NODE = 8,
    DYNEMBED_ERR_EMPTY_GROUND_TRUTH = 9,
    DYNEMBED_ERR_NO_QUERIES = 10,
    DYNEMBED_ERR_INSUFFICIENT_PAIRS = 11,
    DYNEMBED_ERR_DEGENERATE_LABELS = 12,
    DYNEMBED_ERR_RUNTIME = 13
} dynembed_status;

const char* dynembed_version(void);
const char* dynembed_status_name(dynembed_status status);

/* Message for the last failing call on this thread; empty string if none. */
const char* dynembed_last_error(void);

/* ------------------------------------------------------------------ */
/* Snapshot sequences                                                  */

typedef struct dynembed_snapshots dynembed_snapshots;

typedef struct dynembed_slice_config {
    int scheme;         /* 1, 2 or 3 (S1/S2/S3) */
    int snapshot_count; /* 0: scheme default (21, 21, 100) */
    int64_t interval;   /* 0: infer (S1/S3) / span-based periods (S2) */
} dynembed_slice_config;

void dynembed_slice_config_init(dynembed_slice_config* cfg);

/* Parse a "u v timestamp" stream and slice it into cumulative snapshots. */
dynembed_status dynembed_slice_stream(const char* stream_path, const dynembed_slice_config* cfg,
                                      dynembed_snapshots** out);

/* Load/store a snapshot directory (one t_<index>.edges file per step). */
dynembed_status dynembed_snapshots_open_dir(const char* dir, dynembed_snapshots** out);
dynembed_status dynembed_snapshots_write_dir(const dynembed_snapshots* snaps, const char* dir);

int dynembed_snapshots_count(const dynembed_snapshots* snaps);
int64_t dynembed_snapshots_node_count(const dynembed_snapshots* snaps, int index);
int64_t dynembed_snapshots_edge_count(const dynembed_snapshots* snaps, int index);
void dynembed_snapshots_free(dynembed_snapshots* snaps);

/* ------------------------------------------------------------------ */
/* Embedding runs                                                      */

#define DYNEMBED_TASK_GR 1u
#define DYNEMBED_TASK_CGR 2u
#define DYNEMBED_TASK_LP 4u

typedef struct dynembed_config {
    double alpha;              /* fraction of nodes selected per online step */
    double beta;               /* budget share of most-affected nodes */
    int walks_per_node;        /* r */
    int walk_length;           /* l */
    int window;                /* w */
    int dim;                   /* d */
    int negatives;             /* m */
    int epochs;
    double lr_start;
    double lr_end;
    uint64_t seed;
    uint64_t eval_seed;        /* 0: derived from seed */
    int threads;               /* training threads when not deterministic */
    int deterministic;         /* nonzero: bit-reproducible runs, no timings in reports */
    int swap_beta;             /* assign (1-beta) of the budget to affected nodes */
    int raw_unigram;           /* noise distribution without the 0.75 power */
    int dot_similarity;        /* rank/score by dot product instead of cosine */
    double gr_sample_fraction; /* query fraction for GR */
    int ap_k[8];
    int ap_k_count;
    unsigned tasks;            /* DYNEMBED_TASK_* bits */
    int write_checkpoints;     /* embed: write <out>/<t>/model and emb.txt */
    int dump_walks;            /* embed: write <out>/<t>/walks.txt */
} dynembed_config;

void dynembed_config_init(dynembed_config* cfg);

typedef struct dynembed_run dynembed_run;

/* Run the full pipeline. out_dir may be NULL for an in-memory run. */
dynembed_status dynembed_embed(const dynembed_snapshots* snaps, const dynembed_config* cfg,
                               const char* out_dir, dynembed_run** out);

int dynembed_run_step_count(const dynembed_run* run);
/* One JSON object per step; the string is owned by the run handle. */
const char* dynembed_run_report_json(const dynembed_run* run, int t);
void dynembed_run_free(dynembed_run* run);

/* Recompute metrics from a previous embed's run directory and write them as
 * line-delimited JSON records to metrics_out_path. */
dynembed_status dynembed_eval_run_dir(const dynembed_snapshots* snaps, const char* run_dir,
                                      const dynembed_config* cfg, const char* metrics_out_path);

/* Mean online step time per alpha; *json_out becomes a malloc'd JSON array
 * released with dynembed_string_free. */
dynembed_status dynembed_bench(const dynembed_snapshots* snaps, const dynembed_config* cfg,
                               const double* alphas, int n_alphas, char** json_out);

/* Full pipeline per (alpha, beta) grid point; metric records are written as
 * line-delimited JSON to out_path. */
dynembed_status dynembed_sweep(const dynembed_snapshots* snaps, const dynembed_config* cfg,
                               const double* alphas, int n_alphas, const double* betas,
                               int n_betas, const char* out_path);

void dynembed_string_free(char* str);

#ifdef __cplusplus
}
#endif

#endif /* DYNEMBED_H */
