#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dynembed/evaluator.hpp"
#include "dynembed/graph.hpp"
#include "dynembed/selector.hpp"
#include "dynembed/sgns.hpp"
#include "dynembed/slicer.hpp"
#include "dynembed/walker.hpp"

namespace dynembed {

enum TaskBit : unsigned { kTaskGr = 1u, kTaskCgr = 2u, kTaskLp = 4u };

struct RunConfig {
    double alpha = 0.2;
    double beta = 0.5;
    int walks_per_node = 20;
    int walk_length = 80;
    int window = 10;
    int dim = 128;
    int negatives = 5;
    int epochs = 5;
    double lr_start = 0.025;
    double lr_end = 1e-4;
    std::uint64_t seed = 1;
    std::uint64_t eval_seed = 0;  // 0: derive from seed
    int threads = 1;
    bool deterministic = true;  // single-threaded training, timing-free reports
    bool swap_beta = false;
    bool raw_unigram = false;  // P_D without the 0.75 power
    SimilarityKind similarity = SimilarityKind::Cosine;
    double gr_sample_fraction = 0.25;
    std::vector<int> ap_ks{10, 100};
    unsigned tasks = kTaskGr | kTaskCgr | kTaskLp;
};

struct MetricRecord {
    std::string task;  // "GR", "CGR", "LP"
    int t = 0;
    int k = 0;           // AP@k cutoff; 0 for LP
    double value = 0.0;  // mean AP@k or AUC
    bool has_value = false;
    std::size_t n_queries = 0;
    std::size_t n_skipped = 0;
    double wall_ms = 0.0;
};

struct StepReport {
    int t = 0;
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::size_t delta_size = 0;
    std::size_t unseen = 0;
    std::size_t affected = 0;
    std::size_t diverse = 0;
    bool offline = false;       // t = 0
    double embed_ms = 0.0;      // select + walk + train, excluding evaluation
    double checkpoint_ms = 0.0; // model/embedding writes
    double eval_ms = 0.0;
    std::vector<MetricRecord> metrics;
};

// One line of line-delimited structured output. Timings are omitted when
// include_timings is false so deterministic runs are byte-reproducible.
std::string step_report_json(const StepReport& report, bool include_timings);
std::string metric_record_json(const MetricRecord& record, bool include_timings);

// Per-step observation hook for tests and tooling.
struct StepTrace {
    int t = 0;
    const EdgeDelta* delta = nullptr;        // null at t = 0
    const Selection* selection = nullptr;    // null at t = 0
    const EmbeddingModel* model = nullptr;   // state after training
};

struct PipelineOptions {
    std::string out_dir;             // empty: nothing written
    bool write_checkpoints = false;  // out_dir/<t>/model + emb.txt (+ report.jsonl)
    bool dump_walks = false;         // out_dir/<t>/walks.txt
    std::function<void(const StepTrace&)> trace;
};

// Full run over the snapshot sequence: offline stage at t=0, then one online
// step per later snapshot (select, walk, warm-started training, evaluation).
std::vector<StepReport> run_pipeline(const SnapshotSequence& seq, const RunConfig& cfg,
                                     const PipelineOptions& options = {});

struct BenchRow {
    double alpha = 0.0;
    double offline_ms = 0.0;
    double mean_online_ms = 0.0;
    std::size_t online_steps = 0;
};

// Re-runs the pipeline (no evaluation, no checkpoints) once per alpha and
// reports mean online step time.
std::vector<BenchRow> bench(const SnapshotSequence& seq, const RunConfig& cfg,
                            const std::vector<double>& alphas);

// Recomputes the requested metrics from per-step embeddings previously
// written under run_dir/<t>/emb.txt. With the same config this reproduces
// the metric values reported by run_pipeline.
std::vector<StepReport> evaluate_run_dir(const SnapshotSequence& seq, const std::string& run_dir,
                                         const RunConfig& cfg);

struct SweepCell {
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<StepReport> reports;
};

// Full pipeline once per (alpha, beta) grid point.
std::vector<SweepCell> sweep(const SnapshotSequence& seq, const RunConfig& cfg,
                             const std::vector<double>& alphas, const std::vector<double>& betas);

}  // namespace dynembed
