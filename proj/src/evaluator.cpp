#include "dynembed/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace dynembed {

double similarity(const Embedding& emb, NodeId u, NodeId v, SimilarityKind kind) {
    const auto a = emb.vec(u);
    const auto b = emb.vec(v);
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += static_cast<double>(a[i]) * b[i];
    if (kind == SimilarityKind::Dot) return dot;
    double na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double ap_at_k(const RankedRetrieval& retrieval, std::size_t k) {
    if (retrieval.truth.empty())
        throw EmptyGroundTruthError("query " + std::to_string(retrieval.query) +
                                    " has no true neighbors");
    std::unordered_set<NodeId> truth(retrieval.truth.begin(), retrieval.truth.end());
    const std::size_t depth = std::min(k, retrieval.ranked.size());
    std::size_t hits = 0;
    double sum = 0.0;
    for (std::size_t j = 0; j < depth; ++j) {
        if (truth.contains(retrieval.ranked[j])) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(j + 1);
        }
    }
    return sum / static_cast<double>(std::min(truth.size(), k));
}

namespace {

std::vector<NodeId> rank_candidates(const Embedding& emb, const Snapshot& snapshot, NodeId query,
                                    SimilarityKind kind) {
    std::vector<std::pair<double, NodeId>> scored;
    scored.reserve(snapshot.node_count());
    for (NodeId v : snapshot.nodes()) {
        if (v == query || !emb.contains(v)) continue;
        scored.emplace_back(similarity(emb, query, v, kind), v);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;  // deterministic tie break
    });
    std::vector<NodeId> ranked;
    ranked.reserve(scored.size());
    for (const auto& [s, v] : scored) ranked.push_back(v);
    return ranked;
}

}  // namespace

GrResult graph_reconstruction(const Embedding& emb, const Snapshot& snapshot,
                              const GrOptions& options, std::span<const NodeId> changed, Rng& rng) {
    std::vector<NodeId> queries;
    if (options.mode == GrMode::Gr) {
        const auto& nodes = snapshot.nodes();
        const std::size_t want = std::min<std::size_t>(
            nodes.size(),
            std::max<std::size_t>(1, static_cast<std::size_t>(
                                         options.sample_fraction * static_cast<double>(nodes.size()) + 0.5)));
        queries = sample_without_replacement(std::span<const NodeId>(nodes), want, rng);
        std::sort(queries.begin(), queries.end());
    } else {
        queries.assign(changed.begin(), changed.end());
        std::sort(queries.begin(), queries.end());
        queries.erase(std::unique(queries.begin(), queries.end()), queries.end());
    }

    GrResult result;
    double sum = 0.0;
    for (NodeId q : queries) {
        if (!emb.contains(q) || snapshot.degree(q) == 0) {
            ++result.n_skipped;
            continue;
        }
        RankedRetrieval retrieval;
        retrieval.query = q;
        retrieval.ranked = rank_candidates(emb, snapshot, q, options.kind);
        auto nbrs = snapshot.neighbors(q);
        retrieval.truth.assign(nbrs.begin(), nbrs.end());
        sum += ap_at_k(retrieval, options.k);
        ++result.n_queries;
    }
    if (result.n_queries == 0)
        throw NoQueriesError("every candidate query was skipped");
    result.mean_ap = sum / static_cast<double>(result.n_queries);
    return result;
}

namespace {

using NodePair = std::pair<NodeId, NodeId>;

NodePair ordered(NodeId u, NodeId v) { return u < v ? NodePair{u, v} : NodePair{v, u}; }

struct PairHash {
    std::size_t operator()(const NodePair& p) const {
        return std::hash<std::uint64_t>()((static_cast<std::uint64_t>(p.first) << 32) | p.second);
    }
};

}  // namespace

LpTestSet build_lp_testset(const Snapshot& g_t, const Snapshot& g_t1, const Embedding& z_t,
                           Rng& rng) {
    LpTestSet set;
    const EdgeDelta delta = compute_delta(g_t, g_t1);

    std::unordered_set<NodePair, PairHash> used;
    auto embedded = [&](NodeId u, NodeId v) { return z_t.contains(u) && z_t.contains(v); };

    for (const auto& c : delta.changes) {
        if (!embedded(c.u, c.v)) {
            ++set.skipped;
            continue;
        }
        used.insert({c.u, c.v});
        if (c.op == EdgeOp::Add)
            set.positives.emplace_back(c.u, c.v);
        else
            set.negatives.emplace_back(c.u, c.v);
    }

    // Candidate nodes for sampling: embedded nodes present at t+1.
    std::vector<NodeId> candidates;
    for (NodeId v : g_t1.nodes())
        if (z_t.contains(v)) candidates.push_back(v);

    // Top up both sides to the larger one (at least one pair each): existing
    // t+1 links as positives, non-links at t+1 as negatives.
    const std::size_t target = std::max<std::size_t>({set.positives.size(), set.negatives.size(), 1});
    if (set.positives.size() < target && candidates.size() >= 2) {
        std::vector<NodePair> sampleable;
        for (const auto& [u, v] : g_t1.edges()) {
            if (!embedded(u, v) || used.contains({u, v})) continue;
            sampleable.emplace_back(u, v);
        }
        shuffle(sampleable, rng);
        for (const auto& p : sampleable) {
            if (set.positives.size() >= target) break;
            set.positives.push_back(p);
            used.insert(p);
        }
    }
    if (set.negatives.size() < target && candidates.size() >= 2) {
        std::size_t attempts = 0;
        const std::size_t max_attempts = 200 * target + 1000;
        while (set.negatives.size() < target && attempts++ < max_attempts) {
            const NodeId u = candidates[rng.below(candidates.size())];
            const NodeId v = candidates[rng.below(candidates.size())];
            if (u == v || g_t1.has_edge(u, v)) continue;
            const NodePair p = ordered(u, v);
            if (used.contains(p)) continue;
            set.negatives.push_back(p);
            used.insert(p);
        }
    }

    // Balance to the minimum achievable; drop a random subset of the long side.
    const std::size_t n = std::min(set.positives.size(), set.negatives.size());
    auto truncate = [&](std::vector<NodePair>& side) {
        if (side.size() <= n) return;
        shuffle(side, rng);
        side.resize(n);
        std::sort(side.begin(), side.end());
    };
    truncate(set.positives);
    truncate(set.negatives);

    if (set.positives.empty() || set.negatives.empty())
        throw InsufficientPairsError("cannot build a balanced link-prediction test set");
    return set;
}

double auc(std::span<const std::pair<double, int>> scored) {
    std::vector<std::pair<double, int>> sorted(scored.begin(), scored.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::size_t n_pos = 0, n_neg = 0;
    for (const auto& [score, label] : sorted) (label != 0 ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0)
        throw DegenerateLabelsError("AUC needs at least one positive and one negative");

    // Rank sum with ties averaged; ranks are 1-based.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j].first == sorted[i].first) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
        for (std::size_t t = i; t < j; ++t) {
            if (sorted[t].second != 0) rank_sum_pos += avg_rank;
        }
        i = j;
    }
    const double u_stat =
        rank_sum_pos - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
    return u_stat / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double lp_auc(const LpTestSet& testset, const Embedding& z_t, SimilarityKind kind) {
    std::vector<std::pair<double, int>> scored;
    scored.reserve(testset.positives.size() + testset.negatives.size());
    for (const auto& [u, v] : testset.positives)
        scored.emplace_back(similarity(z_t, u, v, kind), 1);
    for (const auto& [u, v] : testset.negatives)
        scored.emplace_back(similarity(z_t, u, v, kind), 0);
    return auc(scored);
}

}  // namespace dynembed
