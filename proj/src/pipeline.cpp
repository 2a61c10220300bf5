#include "dynembed/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace dynembed {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Seed-stream tags; every stage draws from its own derived stream so adding
// or removing one stage never shifts another.
constexpr std::uint64_t kInitStream = 0x696e6974ULL;
constexpr std::uint64_t kWalkStream = 0x77616c6bULL;
constexpr std::uint64_t kTrainStream = 0x747261696eULL;
constexpr std::uint64_t kSelectStream = 0x73656c6563ULL;
constexpr std::uint64_t kEvalStream = 0x6576616cULL;

nlohmann::json metric_to_json(const MetricRecord& m, bool include_timings) {
    nlohmann::json j;
    j["task"] = m.task;
    j["t"] = m.t;
    if (m.k > 0) j["k"] = m.k;
    if (m.has_value)
        j["value"] = m.value;
    else
        j["value"] = nullptr;
    j["n_queries"] = m.n_queries;
    j["n_skipped"] = m.n_skipped;
    if (include_timings) j["wall_ms"] = m.wall_ms;
    return j;
}

struct StepOutputs {
    std::string dir;  // out_dir/<t>
};

void write_step_files(const std::string& out_dir, int t, const EmbeddingModel& model,
                      const NodeInterner& interner,
                      const std::vector<std::vector<NodeId>>* walks) {
    const fs::path step_dir = fs::path(out_dir) / std::to_string(t);
    std::error_code ec;
    fs::create_directories(step_dir, ec);
    if (ec) throw IoError("cannot create '" + step_dir.string() + "': " + ec.message());
    save_model(model, interner, (step_dir / "model").string());
    write_embedding_text(model.embeddings(), interner, (step_dir / "emb.txt").string());
    if (walks) {
        std::ofstream out(step_dir / "walks.txt");
        for (const auto& walk : *walks) {
            for (std::size_t i = 0; i < walk.size(); ++i)
                out << (i ? " " : "") << interner.label(walk[i]);
            out << '\n';
        }
    }
}

void evaluate_step(const SnapshotSequence& seq, std::size_t t, const RunConfig& cfg,
                   const Embedding& emb, const EdgeDelta* delta, Rng eval_base,
                   StepReport& report) {
    const Snapshot& snap = seq.snapshots[t];
    auto add_gr = [&](GrMode mode, const char* name, std::span<const NodeId> changed) {
        for (int k : cfg.ap_ks) {
            MetricRecord rec;
            rec.task = name;
            rec.t = static_cast<int>(t);
            rec.k = k;
            const auto start = Clock::now();
            Rng rng = eval_base.derive(mode == GrMode::Gr ? 0x4752ULL : 0x434752ULL,
                                       static_cast<std::uint64_t>(k));
            GrOptions options;
            options.mode = mode;
            options.sample_fraction = cfg.gr_sample_fraction;
            options.k = static_cast<std::size_t>(k);
            options.kind = cfg.similarity;
            try {
                const GrResult res = graph_reconstruction(emb, snap, options, changed, rng);
                rec.value = res.mean_ap;
                rec.has_value = true;
                rec.n_queries = res.n_queries;
                rec.n_skipped = res.n_skipped;
            } catch (const NoQueriesError&) {
                rec.has_value = false;
            }
            rec.wall_ms = ms_since(start);
            report.metrics.push_back(std::move(rec));
        }
    };

    if (cfg.tasks & kTaskGr) add_gr(GrMode::Gr, "GR", {});
    if ((cfg.tasks & kTaskCgr) && delta != nullptr) {
        std::vector<NodeId> changed;
        for (const auto& c : delta->changes) {
            changed.push_back(c.u);
            changed.push_back(c.v);
        }
        std::sort(changed.begin(), changed.end());
        changed.erase(std::unique(changed.begin(), changed.end()), changed.end());
        std::erase_if(changed, [&](NodeId v) { return !snap.has_node(v); });
        add_gr(GrMode::Cgr, "CGR", changed);
    }
    if ((cfg.tasks & kTaskLp) && t + 1 < seq.size()) {
        MetricRecord rec;
        rec.task = "LP";
        rec.t = static_cast<int>(t);
        const auto start = Clock::now();
        Rng rng = eval_base.derive(0x4c50ULL);
        try {
            const LpTestSet testset = build_lp_testset(snap, seq.snapshots[t + 1], emb, rng);
            rec.value = lp_auc(testset, emb, cfg.similarity);
            rec.has_value = true;
            rec.n_queries = testset.positives.size() + testset.negatives.size();
            rec.n_skipped = testset.skipped;
        } catch (const InsufficientPairsError&) {
            rec.has_value = false;
        }
        rec.wall_ms = ms_since(start);
        report.metrics.push_back(std::move(rec));
    }
}

}  // namespace

std::string metric_record_json(const MetricRecord& record, bool include_timings) {
    return metric_to_json(record, include_timings).dump();
}

std::string step_report_json(const StepReport& report, bool include_timings) {
    nlohmann::json j;
    j["t"] = report.t;
    j["stage"] = report.offline ? "offline" : "online";
    j["nodes"] = report.node_count;
    j["edges"] = report.edge_count;
    j["delta"] = report.delta_size;
    j["unseen"] = report.unseen;
    j["affected"] = report.affected;
    j["diverse"] = report.diverse;
    if (include_timings) {
        j["embed_ms"] = report.embed_ms;
        j["checkpoint_ms"] = report.checkpoint_ms;
        j["eval_ms"] = report.eval_ms;
    }
    nlohmann::json metrics = nlohmann::json::array();
    for (const auto& m : report.metrics) metrics.push_back(metric_to_json(m, include_timings));
    j["metrics"] = metrics;
    return j.dump();
}

std::vector<StepReport> run_pipeline(const SnapshotSequence& seq, const RunConfig& cfg,
                                     const PipelineOptions& options) {
    if (seq.size() == 0) throw InvalidArgumentError("need at least one snapshot");

    const Rng root(cfg.seed);
    const Rng eval_root(cfg.eval_seed != 0 ? cfg.eval_seed : root.derive(kEvalStream).seed());
    const int train_threads = cfg.deterministic ? 1 : std::max(1, cfg.threads);
    const bool include_timings = !cfg.deterministic;
    const double neg_power = cfg.raw_unigram ? 1.0 : 0.75;

    WalkConfig walk_cfg;
    walk_cfg.walks_per_node = cfg.walks_per_node;
    walk_cfg.walk_length = cfg.walk_length;
    walk_cfg.window = cfg.window;

    TrainConfig train_cfg;
    train_cfg.epochs = cfg.epochs;
    train_cfg.lr_start = cfg.lr_start;
    train_cfg.lr_end = cfg.lr_end;
    train_cfg.threads = train_threads;

    std::vector<StepReport> reports;
    std::ofstream report_file;
    if (!options.out_dir.empty() && options.write_checkpoints) {
        std::error_code ec;
        fs::create_directories(options.out_dir, ec);
        if (ec) throw IoError("cannot create '" + options.out_dir + "': " + ec.message());
        report_file.open(fs::path(options.out_dir) / "report.jsonl");
        if (!report_file) throw IoError("cannot open report file under '" + options.out_dir + "'");
    }

    EmbeddingModel model(cfg.dim, cfg.negatives);
    Reservoir reservoir;

    for (std::size_t t = 0; t < seq.size(); ++t) {
        try {
        const Snapshot& snap = seq.snapshots[t];
        StepReport report;
        report.t = static_cast<int>(t);
        report.offline = (t == 0);
        report.node_count = snap.node_count();
        report.edge_count = snap.edge_count();

        EdgeDelta delta;
        Selection selection;
        const auto embed_start = Clock::now();

        std::vector<std::vector<NodeId>> walk_log;
        std::vector<std::vector<NodeId>>* walk_sink = options.dump_walks ? &walk_log : nullptr;

        if (t == 0) {
            Rng init_rng = root.derive(kInitStream, 0);
            model = EmbeddingModel::random_init(snap.nodes(), cfg.dim, cfg.negatives, init_rng);
            walk_cfg.seed = root.derive(kWalkStream, t).seed();
            const PairCorpus corpus = generate_corpus(snap, snap.nodes(), walk_cfg, walk_sink);
            if (!corpus.empty()) {
                const NegativeTable table(corpus, neg_power);
                train_cfg.seed = root.derive(kTrainStream, t).seed();
                train(model, corpus, table, train_cfg);
            }
        } else {
            const Snapshot& prev = seq.snapshots[t - 1];
            delta = compute_delta(prev, snap);
            report.delta_size = delta.size();

            SelectorConfig sel_cfg{cfg.alpha, cfg.beta, cfg.swap_beta};
            Rng sel_rng = root.derive(kSelectStream, t);
            selection = select_nodes(prev, snap, delta, reservoir, sel_cfg, sel_rng);
            report.unseen = selection.unseen.size();
            report.affected = selection.affected.size();
            report.diverse = selection.diverse.size();

            std::vector<NodeId> new_nodes;
            for (NodeId v : snap.nodes())
                if (!model.contains(v)) new_nodes.push_back(v);
            Rng extend_rng = root.derive(kInitStream, t);
            model.extend_vocab(new_nodes, extend_rng);

            walk_cfg.seed = root.derive(kWalkStream, t).seed();
            const PairCorpus corpus = generate_corpus(snap, selection.all(), walk_cfg, walk_sink);
            if (!corpus.empty()) {
                const NegativeTable table(corpus, neg_power);
                train_cfg.seed = root.derive(kTrainStream, t).seed();
                train(model, corpus, table, train_cfg);
            }
        }
        report.embed_ms = ms_since(embed_start);

        if (!options.out_dir.empty() && options.write_checkpoints) {
            const auto ckpt_start = Clock::now();
            write_step_files(options.out_dir, static_cast<int>(t), model, *seq.interner,
                             walk_sink);
            report.checkpoint_ms = ms_since(ckpt_start);
        }

        if (cfg.tasks != 0) {
            const auto eval_start = Clock::now();
            const Embedding emb = model.embeddings();
            evaluate_step(seq, t, cfg, emb, t == 0 ? nullptr : &delta,
                          eval_root.derive(kEvalStream, t), report);
            report.eval_ms = ms_since(eval_start);
        }

        if (report_file.is_open()) {
            report_file << step_report_json(report, include_timings) << '\n';
            report_file.flush();
        }
        if (options.trace) {
            StepTrace trace;
            trace.t = static_cast<int>(t);
            trace.delta = t == 0 ? nullptr : &delta;
            trace.selection = t == 0 ? nullptr : &selection;
            trace.model = &model;
            options.trace(trace);
        }
        reports.push_back(std::move(report));
        } catch (const Error& e) {
            throw Error(e.code(), "step " + std::to_string(t) + ": " + e.what());
        }
    }
    return reports;
}

std::vector<StepReport> evaluate_run_dir(const SnapshotSequence& seq, const std::string& run_dir,
                                         const RunConfig& cfg) {
    const Rng root(cfg.seed);
    const Rng eval_root(cfg.eval_seed != 0 ? cfg.eval_seed : root.derive(kEvalStream).seed());

    std::vector<StepReport> reports;
    for (std::size_t t = 0; t < seq.size(); ++t) {
        const fs::path emb_path = fs::path(run_dir) / std::to_string(t) / "emb.txt";
        if (!fs::exists(emb_path)) {
            if (t == 0) throw IoError("no embeddings under '" + run_dir + "'");
            break;  // evaluate however many steps the run produced
        }
        const Embedding emb = load_embedding_text(emb_path.string(), *seq.interner);

        StepReport report;
        report.t = static_cast<int>(t);
        report.offline = (t == 0);
        report.node_count = seq.snapshots[t].node_count();
        report.edge_count = seq.snapshots[t].edge_count();

        EdgeDelta delta;
        if (t > 0) {
            delta = compute_delta(seq.snapshots[t - 1], seq.snapshots[t]);
            report.delta_size = delta.size();
        }
        const auto eval_start = Clock::now();
        evaluate_step(seq, t, cfg, emb, t == 0 ? nullptr : &delta, eval_root.derive(kEvalStream, t),
                      report);
        report.eval_ms = ms_since(eval_start);
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<SweepCell> sweep(const SnapshotSequence& seq, const RunConfig& cfg,
                             const std::vector<double>& alphas, const std::vector<double>& betas) {
    std::vector<SweepCell> cells;
    for (double alpha : alphas) {
        for (double beta : betas) {
            RunConfig run_cfg = cfg;
            run_cfg.alpha = alpha;
            run_cfg.beta = beta;
            SweepCell cell;
            cell.alpha = alpha;
            cell.beta = beta;
            cell.reports = run_pipeline(seq, run_cfg, {});
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

std::vector<BenchRow> bench(const SnapshotSequence& seq, const RunConfig& cfg,
                            const std::vector<double>& alphas) {
    if (seq.size() < 2) throw InvalidArgumentError("bench needs at least two snapshots");
    std::vector<BenchRow> rows;
    for (double alpha : alphas) {
        RunConfig run_cfg = cfg;
        run_cfg.alpha = alpha;
        run_cfg.tasks = 0;
        const auto reports = run_pipeline(seq, run_cfg, {});
        BenchRow row;
        row.alpha = alpha;
        row.offline_ms = reports.front().embed_ms;
        for (std::size_t t = 1; t < reports.size(); ++t) row.mean_online_ms += reports[t].embed_ms;
        row.online_steps = reports.size() - 1;
        row.mean_online_ms /= static_cast<double>(row.online_steps);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dynembed
