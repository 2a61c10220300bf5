#include "dynembed.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include <json.hpp>

#include "dynembed/pipeline.hpp"
#include "dynembed/slicer.hpp"

using namespace dynembed;

struct dynembed_snapshots {
    SnapshotSequence seq;
};

struct dynembed_run {
    std::vector<StepReport> reports;
    std::vector<std::string> report_json;
};

namespace {

thread_local std::string g_last_error;

dynembed_status status_from(const Error& e) {
    switch (e.code()) {
        case ErrorCode::Io: return DYNEMBED_ERR_IO;
        case ErrorCode::Parse: return DYNEMBED_ERR_PARSE;
        case ErrorCode::InvalidArgument: return DYNEMBED_ERR_INVALID_ARGUMENT;
        case ErrorCode::NoOpTriple: return DYNEMBED_ERR_NO_OP_TRIPLE;
        case ErrorCode::InsufficientSpan: return DYNEMBED_ERR_INSUFFICIENT_SPAN;
        case ErrorCode::DuplicateNode: return DYNEMBED_ERR_DUPLICATE_NODE;
        case ErrorCode::EmptyCorpus: return DYNEMBED_ERR_EMPTY_CORPUS;
        case ErrorCode::MissingNode: return DYNEMBED_ERR_MISSING_NODE;
        case ErrorCode::EmptyGroundTruth: return DYNEMBED_ERR_EMPTY_GROUND_TRUTH;
        case ErrorCode::NoQueries: return DYNEMBED_ERR_NO_QUERIES;
        case ErrorCode::InsufficientPairs: return DYNEMBED_ERR_INSUFFICIENT_PAIRS;
        case ErrorCode::DegenerateLabels: return DYNEMBED_ERR_DEGENERATE_LABELS;
        case ErrorCode::Runtime: return DYNEMBED_ERR_RUNTIME;
    }
    return DYNEMBED_ERR_RUNTIME;
}

template <typename Fn>
dynembed_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return DYNEMBED_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_from(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DYNEMBED_ERR_RUNTIME;
    } catch (...) {
        g_last_error = "unknown error";
        return DYNEMBED_ERR_RUNTIME;
    }
}

dynembed_status invalid(const char* message) {
    g_last_error = message;
    return DYNEMBED_ERR_INVALID_ARGUMENT;
}

RunConfig to_run_config(const dynembed_config& c) {
    RunConfig cfg;
    cfg.alpha = c.alpha;
    cfg.beta = c.beta;
    cfg.walks_per_node = c.walks_per_node;
    cfg.walk_length = c.walk_length;
    cfg.window = c.window;
    cfg.dim = c.dim;
    cfg.negatives = c.negatives;
    cfg.epochs = c.epochs;
    cfg.lr_start = c.lr_start;
    cfg.lr_end = c.lr_end;
    cfg.seed = c.seed;
    cfg.eval_seed = c.eval_seed;
    cfg.threads = c.threads;
    cfg.deterministic = c.deterministic != 0;
    cfg.swap_beta = c.swap_beta != 0;
    cfg.raw_unigram = c.raw_unigram != 0;
    cfg.similarity = c.dot_similarity ? SimilarityKind::Dot : SimilarityKind::Cosine;
    cfg.gr_sample_fraction = c.gr_sample_fraction;
    cfg.tasks = c.tasks;
    cfg.ap_ks.clear();
    for (int i = 0; i < c.ap_k_count && i < 8; ++i) cfg.ap_ks.push_back(c.ap_k[i]);
    if (cfg.ap_ks.empty()) cfg.ap_ks = {10, 100};
    return cfg;
}

}  // namespace

extern "C" {

const char* dynembed_version(void) { return "0.1.0"; }

const char* dynembed_status_name(dynembed_status status) {
    switch (status) {
        case DYNEMBED_OK: return "ok";
        case DYNEMBED_ERR_IO: return "io";
        case DYNEMBED_ERR_PARSE: return "parse";
        case DYNEMBED_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case DYNEMBED_ERR_NO_OP_TRIPLE: return "no_op_triple";
        case DYNEMBED_ERR_INSUFFICIENT_SPAN: return "insufficient_span";
        case DYNEMBED_ERR_DUPLICATE_NODE: return "duplicate_node";
        case DYNEMBED_ERR_EMPTY_CORPUS: return "empty_corpus";
        case DYNEMBED_ERR_MISSING_NODE: return "missing_node";
        case DYNEMBED_ERR_EMPTY_GROUND_TRUTH: return "empty_ground_truth";
        case DYNEMBED_ERR_NO_QUERIES: return "no_queries";
        case DYNEMBED_ERR_INSUFFICIENT_PAIRS: return "insufficient_pairs";
        case DYNEMBED_ERR_DEGENERATE_LABELS: return "degenerate_labels";
        case DYNEMBED_ERR_RUNTIME: return "runtime";
    }
    return "unknown";
}

const char* dynembed_last_error(void) { return g_last_error.c_str(); }

void dynembed_slice_config_init(dynembed_slice_config* cfg) {
    if (!cfg) return;
    cfg->scheme = 1;
    cfg->snapshot_count = 0;
    cfg->interval = 0;
}

dynembed_status dynembed_slice_stream(const char* stream_path, const dynembed_slice_config* cfg,
                                      dynembed_snapshots** out) {
    if (!stream_path || !cfg || !out) return invalid("null argument");
    if (cfg->scheme < 1 || cfg->scheme > 3) return invalid("scheme must be 1, 2 or 3");
    return guarded([&] {
        SliceScheme scheme;
        scheme.kind = static_cast<SliceKind>(cfg->scheme);
        scheme.snapshot_count = cfg->snapshot_count;
        scheme.interval = cfg->interval;
        auto events = parse_edge_stream_file(stream_path);
        auto handle = std::make_unique<dynembed_snapshots>();
        handle->seq = slice(events, scheme);
        *out = handle.release();
    });
}

dynembed_status dynembed_snapshots_open_dir(const char* dir, dynembed_snapshots** out) {
    if (!dir || !out) return invalid("null argument");
    return guarded([&] {
        auto handle = std::make_unique<dynembed_snapshots>();
        handle->seq = load_snapshot_dir(dir);
        *out = handle.release();
    });
}

dynembed_status dynembed_snapshots_write_dir(const dynembed_snapshots* snaps, const char* dir) {
    if (!snaps || !dir) return invalid("null argument");
    return guarded([&] { write_snapshot_dir(snaps->seq, dir); });
}

int dynembed_snapshots_count(const dynembed_snapshots* snaps) {
    return snaps ? static_cast<int>(snaps->seq.size()) : 0;
}

int64_t dynembed_snapshots_node_count(const dynembed_snapshots* snaps, int index) {
    if (!snaps || index < 0 || static_cast<std::size_t>(index) >= snaps->seq.size()) return -1;
    return static_cast<int64_t>(snaps->seq.snapshots[index].node_count());
}

int64_t dynembed_snapshots_edge_count(const dynembed_snapshots* snaps, int index) {
    if (!snaps || index < 0 || static_cast<std::size_t>(index) >= snaps->seq.size()) return -1;
    return static_cast<int64_t>(snaps->seq.snapshots[index].edge_count());
}

void dynembed_snapshots_free(dynembed_snapshots* snaps) { delete snaps; }

void dynembed_config_init(dynembed_config* cfg) {
    if (!cfg) return;
    std::memset(cfg, 0, sizeof(*cfg));
    cfg->alpha = 0.2;
    cfg->beta = 0.5;
    cfg->walks_per_node = 20;
    cfg->walk_length = 80;
    cfg->window = 10;
    cfg->dim = 128;
    cfg->negatives = 5;
    cfg->epochs = 5;
    cfg->lr_start = 0.025;
    cfg->lr_end = 1e-4;
    cfg->seed = 1;
    cfg->threads = 1;
    cfg->deterministic = 1;
    cfg->gr_sample_fraction = 0.25;
    cfg->ap_k[0] = 10;
    cfg->ap_k[1] = 100;
    cfg->ap_k_count = 2;
    cfg->tasks = DYNEMBED_TASK_GR | DYNEMBED_TASK_CGR | DYNEMBED_TASK_LP;
    cfg->write_checkpoints = 1;
}

dynembed_status dynembed_embed(const dynembed_snapshots* snaps, const dynembed_config* cfg,
                               const char* out_dir, dynembed_run** out) {
    if (!snaps || !cfg || !out) return invalid("null argument");
    return guarded([&] {
        const RunConfig run_cfg = to_run_config(*cfg);
        PipelineOptions options;
        if (out_dir) options.out_dir = out_dir;
        options.write_checkpoints = out_dir != nullptr && cfg->write_checkpoints != 0;
        options.dump_walks = cfg->dump_walks != 0;
        auto handle = std::make_unique<dynembed_run>();
        handle->reports = run_pipeline(snaps->seq, run_cfg, options);
        handle->report_json.reserve(handle->reports.size());
        for (const auto& report : handle->reports)
            handle->report_json.push_back(step_report_json(report, !run_cfg.deterministic));
        *out = handle.release();
    });
}

int dynembed_run_step_count(const dynembed_run* run) {
    return run ? static_cast<int>(run->reports.size()) : 0;
}

const char* dynembed_run_report_json(const dynembed_run* run, int t) {
    if (!run || t < 0 || static_cast<std::size_t>(t) >= run->report_json.size()) return nullptr;
    return run->report_json[t].c_str();
}

void dynembed_run_free(dynembed_run* run) { delete run; }

dynembed_status dynembed_eval_run_dir(const dynembed_snapshots* snaps, const char* run_dir,
                                      const dynembed_config* cfg, const char* metrics_out_path) {
    if (!snaps || !run_dir || !cfg || !metrics_out_path) return invalid("null argument");
    return guarded([&] {
        const RunConfig run_cfg = to_run_config(*cfg);
        const auto reports = evaluate_run_dir(snaps->seq, run_dir, run_cfg);
        std::ofstream out(metrics_out_path);
        if (!out) throw IoError(std::string("cannot open '") + metrics_out_path + "' for writing");
        for (const auto& report : reports)
            for (const auto& metric : report.metrics)
                out << metric_record_json(metric, !run_cfg.deterministic) << '\n';
        if (!out) throw IoError(std::string("write failed for '") + metrics_out_path + "'");
    });
}

dynembed_status dynembed_bench(const dynembed_snapshots* snaps, const dynembed_config* cfg,
                               const double* alphas, int n_alphas, char** json_out) {
    if (!snaps || !cfg || !alphas || n_alphas < 1 || !json_out) return invalid("null argument");
    return guarded([&] {
        const RunConfig run_cfg = to_run_config(*cfg);
        const auto rows = bench(snaps->seq, run_cfg, std::vector<double>(alphas, alphas + n_alphas));
        nlohmann::json j = nlohmann::json::array();
        for (const auto& row : rows) {
            j.push_back({{"alpha", row.alpha},
                         {"offline_ms", row.offline_ms},
                         {"mean_online_ms", row.mean_online_ms},
                         {"online_steps", row.online_steps}});
        }
        const std::string text = j.dump();
        char* buf = static_cast<char*>(std::malloc(text.size() + 1));
        if (!buf) throw std::bad_alloc();
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *json_out = buf;
    });
}

dynembed_status dynembed_sweep(const dynembed_snapshots* snaps, const dynembed_config* cfg,
                               const double* alphas, int n_alphas, const double* betas,
                               int n_betas, const char* out_path) {
    if (!snaps || !cfg || !alphas || n_alphas < 1 || !betas || n_betas < 1 || !out_path)
        return invalid("null argument");
    return guarded([&] {
        const RunConfig run_cfg = to_run_config(*cfg);
        const auto cells = sweep(snaps->seq, run_cfg, std::vector<double>(alphas, alphas + n_alphas),
                                 std::vector<double>(betas, betas + n_betas));
        std::ofstream out(out_path);
        if (!out) throw IoError(std::string("cannot open '") + out_path + "' for writing");
        for (const auto& cell : cells) {
            for (const auto& report : cell.reports) {
                for (const auto& metric : report.metrics) {
                    nlohmann::json j = nlohmann::json::parse(
                        metric_record_json(metric, !run_cfg.deterministic));
                    j["alpha"] = cell.alpha;
                    j["beta"] = cell.beta;
                    out << j.dump() << '\n';
                }
            }
        }
        if (!out) throw IoError(std::string("write failed for '") + out_path + "'");
    });
}

void dynembed_string_free(char* str) { std::free(str); }

}  // extern "C"
