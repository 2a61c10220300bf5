// dynembed command line: slice edge streams into snapshots, embed snapshot
// sequences, and evaluate / benchmark the results. Talks to the engine
// exclusively through the C API in dynembed.h.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynembed.h"

namespace {

struct CommonFlags {
    dynembed_config cfg;
    std::vector<int> ap_ks;
    std::vector<std::string> tasks;
};

void add_config_flags(CLI::App* app, CommonFlags& flags) {
    auto& cfg = flags.cfg;
    app->add_option("--alpha", cfg.alpha, "Fraction of nodes selected per online step")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--beta", cfg.beta, "Budget share of most-affected nodes")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("-r,--walks", cfg.walks_per_node, "Walks per selected node");
    app->add_option("-l,--length", cfg.walk_length, "Walk length in nodes");
    app->add_option("-w,--window", cfg.window, "Sliding window half-width");
    app->add_option("-d,--dim", cfg.dim, "Embedding dimension");
    app->add_option("-m,--negatives", cfg.negatives, "Negative samples per pair");
    app->add_option("--epochs", cfg.epochs, "Training epochs per step");
    app->add_option("--lr-start", cfg.lr_start, "Initial learning rate");
    app->add_option("--lr-end", cfg.lr_end, "Final learning rate");
    app->add_option("--seed", cfg.seed, "Master seed");
    app->add_option("--eval-seed", cfg.eval_seed, "Evaluation seed (default: derived)");
    app->add_option("--threads", cfg.threads, "Training threads (ignored when deterministic)");
    app->add_flag("--deterministic,!--no-deterministic", cfg.deterministic,
                  "Single-threaded bit-reproducible run, timing-free reports");
    app->add_flag("--swap-beta", cfg.swap_beta,
                  "Assign (1-beta) of the budget to most-affected nodes");
    app->add_flag("--raw-unigram", cfg.raw_unigram, "Noise distribution without the 0.75 power");
    app->add_flag("--dot-similarity", cfg.dot_similarity, "Score pairs by dot product");
    app->add_option("--gr-sample", cfg.gr_sample_fraction, "Query fraction for GR")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--ap-k", flags.ap_ks, "AP@k cutoffs (repeatable; default 10 100)");
    app->add_option("--tasks", flags.tasks, "Evaluation tasks: GR, CGR, LP (default all)");
}

int finalize_config(CommonFlags& flags) {
    auto& cfg = flags.cfg;
    if (!flags.ap_ks.empty()) {
        cfg.ap_k_count = 0;
        for (int k : flags.ap_ks) {
            if (cfg.ap_k_count >= 8) break;
            cfg.ap_k[cfg.ap_k_count++] = k;
        }
    }
    if (!flags.tasks.empty()) {
        cfg.tasks = 0;
        for (const auto& t : flags.tasks) {
            if (t == "GR" || t == "gr")
                cfg.tasks |= DYNEMBED_TASK_GR;
            else if (t == "CGR" || t == "cgr")
                cfg.tasks |= DYNEMBED_TASK_CGR;
            else if (t == "LP" || t == "lp")
                cfg.tasks |= DYNEMBED_TASK_LP;
            else {
                std::cerr << "unknown task '" << t << "'\n";
                return 1;
            }
        }
    }
    return 0;
}

int fail(const char* action, dynembed_status status) {
    std::cerr << "error: " << action << " failed (" << dynembed_status_name(status)
              << "): " << dynembed_last_error() << "\n";
    return 1;
}

std::vector<double> parse_grid(const std::vector<double>& values, double fallback) {
    return values.empty() ? std::vector<double>{fallback} : values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynembed — incremental node embeddings for time-evolving networks"};
    app.require_subcommand(1);

    // slice
    auto* slice_cmd = app.add_subcommand("slice", "Slice a timestamped edge stream into snapshots");
    std::string slice_input, slice_out, scheme_name = "S1";
    dynembed_slice_config slice_cfg;
    dynembed_slice_config_init(&slice_cfg);
    slice_cmd->add_option("-i,--input", slice_input, "Edge stream file (u v timestamp per line)")
        ->required();
    slice_cmd->add_option("-o,--out", slice_out, "Output snapshot directory")->required();
    slice_cmd->add_option("--scheme", scheme_name, "Slicing scheme: S1, S2 or S3")
        ->check(CLI::IsMember({"S1", "S2", "S3", "s1", "s2", "s3"}));
    slice_cmd->add_option("--count", slice_cfg.snapshot_count,
                          "Snapshot count (default 21 for S1/S2, 100 for S3)");
    slice_cmd->add_option("--interval-seconds", slice_cfg.interval,
                          "Cut interval in timestamp units (default: inferred / span-based)");

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "Embed a snapshot directory");
    std::string embed_snapshots, embed_out;
    CommonFlags embed_flags;
    dynembed_config_init(&embed_flags.cfg);
    embed_cmd->add_option("-s,--snapshots", embed_snapshots, "Snapshot directory")->required();
    embed_cmd->add_option("-o,--out", embed_out, "Run directory for checkpoints and reports")
        ->required();
    embed_cmd->add_flag("--dump-walks", embed_flags.cfg.dump_walks,
                        "Also write the generated walks per step");
    add_config_flags(embed_cmd, embed_flags);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Recompute metrics from a run directory");
    std::string eval_snapshots, eval_run, eval_out;
    CommonFlags eval_flags;
    dynembed_config_init(&eval_flags.cfg);
    eval_cmd->add_option("-s,--snapshots", eval_snapshots, "Snapshot directory")->required();
    eval_cmd->add_option("--run", eval_run, "Run directory produced by embed")->required();
    eval_cmd->add_option("-o,--out", eval_out, "Metrics output file (JSON lines)")->required();
    add_config_flags(eval_cmd, eval_flags);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Time online steps across alpha values");
    std::string bench_snapshots;
    std::vector<double> bench_alphas;
    CommonFlags bench_flags;
    dynembed_config_init(&bench_flags.cfg);
    bench_cmd->add_option("-s,--snapshots", bench_snapshots, "Snapshot directory")->required();
    bench_cmd->add_option("--alphas", bench_alphas, "Alpha values to time (default: 0.2)");
    add_config_flags(bench_cmd, bench_flags);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Metric grid over alpha and beta");
    std::string sweep_snapshots, sweep_out;
    std::vector<double> sweep_alphas, sweep_betas;
    CommonFlags sweep_flags;
    dynembed_config_init(&sweep_flags.cfg);
    sweep_cmd->add_option("-s,--snapshots", sweep_snapshots, "Snapshot directory")->required();
    sweep_cmd->add_option("-o,--out", sweep_out, "Metrics output file (JSON lines)")->required();
    sweep_cmd->add_option("--alphas", sweep_alphas, "Alpha grid (default: 0.2)");
    sweep_cmd->add_option("--betas", sweep_betas, "Beta grid (default: 0.5)");
    add_config_flags(sweep_cmd, sweep_flags);

    CLI11_PARSE(app, argc, argv);

    if (slice_cmd->parsed()) {
        slice_cfg.scheme = scheme_name[1] - '0';
        dynembed_snapshots* snaps = nullptr;
        dynembed_status st = dynembed_slice_stream(slice_input.c_str(), &slice_cfg, &snaps);
        if (st != DYNEMBED_OK) return fail("slice", st);
        st = dynembed_snapshots_write_dir(snaps, slice_out.c_str());
        if (st != DYNEMBED_OK) {
            dynembed_snapshots_free(snaps);
            return fail("write snapshots", st);
        }
        const int n = dynembed_snapshots_count(snaps);
        std::cout << "wrote " << n << " snapshots to " << slice_out << "\n";
        for (int t = 0; t < n; ++t)
            std::cout << "t=" << t << " nodes=" << dynembed_snapshots_node_count(snaps, t)
                      << " edges=" << dynembed_snapshots_edge_count(snaps, t) << "\n";
        dynembed_snapshots_free(snaps);
        return 0;
    }

    if (embed_cmd->parsed()) {
        if (int rc = finalize_config(embed_flags); rc != 0) return rc;
        dynembed_snapshots* snaps = nullptr;
        dynembed_status st = dynembed_snapshots_open_dir(embed_snapshots.c_str(), &snaps);
        if (st != DYNEMBED_OK) return fail("open snapshots", st);
        dynembed_run* run = nullptr;
        st = dynembed_embed(snaps, &embed_flags.cfg, embed_out.c_str(), &run);
        dynembed_snapshots_free(snaps);
        if (st != DYNEMBED_OK) return fail("embed", st);
        const int steps = dynembed_run_step_count(run);
        for (int t = 0; t < steps; ++t) std::cout << dynembed_run_report_json(run, t) << "\n";
        dynembed_run_free(run);
        return 0;
    }

    if (eval_cmd->parsed()) {
        if (int rc = finalize_config(eval_flags); rc != 0) return rc;
        dynembed_snapshots* snaps = nullptr;
        dynembed_status st = dynembed_snapshots_open_dir(eval_snapshots.c_str(), &snaps);
        if (st != DYNEMBED_OK) return fail("open snapshots", st);
        st = dynembed_eval_run_dir(snaps, eval_run.c_str(), &eval_flags.cfg, eval_out.c_str());
        dynembed_snapshots_free(snaps);
        if (st != DYNEMBED_OK) return fail("eval", st);
        std::ifstream metrics(eval_out);
        std::string line;
        while (std::getline(metrics, line)) std::cout << line << "\n";
        return 0;
    }

    if (bench_cmd->parsed()) {
        if (int rc = finalize_config(bench_flags); rc != 0) return rc;
        dynembed_snapshots* snaps = nullptr;
        dynembed_status st = dynembed_snapshots_open_dir(bench_snapshots.c_str(), &snaps);
        if (st != DYNEMBED_OK) return fail("open snapshots", st);
        const auto alphas = parse_grid(bench_alphas, bench_flags.cfg.alpha);
        char* json = nullptr;
        st = dynembed_bench(snaps, &bench_flags.cfg, alphas.data(),
                            static_cast<int>(alphas.size()), &json);
        dynembed_snapshots_free(snaps);
        if (st != DYNEMBED_OK) return fail("bench", st);
        std::cout << json << "\n";
        dynembed_string_free(json);
        return 0;
    }

    if (sweep_cmd->parsed()) {
        if (int rc = finalize_config(sweep_flags); rc != 0) return rc;
        dynembed_snapshots* snaps = nullptr;
        dynembed_status st = dynembed_snapshots_open_dir(sweep_snapshots.c_str(), &snaps);
        if (st != DYNEMBED_OK) return fail("open snapshots", st);
        const auto alphas = parse_grid(sweep_alphas, sweep_flags.cfg.alpha);
        const auto betas = parse_grid(sweep_betas, sweep_flags.cfg.beta);
        st = dynembed_sweep(snaps, &sweep_flags.cfg, alphas.data(), static_cast<int>(alphas.size()),
                            betas.data(), static_cast<int>(betas.size()), sweep_out.c_str());
        dynembed_snapshots_free(snaps);
        if (st != DYNEMBED_OK) return fail("sweep", st);
        std::cout << "wrote sweep metrics to " << sweep_out << "\n";
        return 0;
    }

    return 0;
}
