#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dynembed/embedding.hpp"
#include "dynembed/graph.hpp"
#include "dynembed/rng.hpp"

namespace dynembed {

enum class SimilarityKind { Cosine, Dot };

// Cosine (default) or raw dot product of embedding vectors, accumulated in
// double. A zero vector has cosine similarity 0 to everything.
double similarity(const Embedding& emb, NodeId u, NodeId v,
                  SimilarityKind kind = SimilarityKind::Cosine);

struct RankedRetrieval {
    NodeId query = kInvalidNode;
    std::vector<NodeId> ranked;  // candidates by descending similarity, query excluded
    std::vector<NodeId> truth;   // neighbors at time t
};

// AP@k = sum_{j<=k, hit j} precision@j / min(|truth|, k).
double ap_at_k(const RankedRetrieval& retrieval, std::size_t k);

enum class GrMode { Gr, Cgr };

struct GrOptions {
    GrMode mode = GrMode::Gr;
    double sample_fraction = 0.25;  // GR only
    std::size_t k = 10;
    SimilarityKind kind = SimilarityKind::Cosine;
};

struct GrResult {
    double mean_ap = 0.0;
    std::size_t n_queries = 0;
    std::size_t n_skipped = 0;
};

// GR: rank all other embedded snapshot nodes for a random fraction of the
// nodes; CGR: same but the queries are the `changed` set. Queries without
// embedding or without any neighbor are skipped and counted; all skipped
// raises NoQueriesError.
GrResult graph_reconstruction(const Embedding& emb, const Snapshot& snapshot,
                              const GrOptions& options, std::span<const NodeId> changed, Rng& rng);

struct LpTestSet {
    std::vector<std::pair<NodeId, NodeId>> positives;  // links at t+1
    std::vector<std::pair<NodeId, NodeId>> negatives;  // non-links at t+1
    std::size_t skipped = 0;                           // pairs dropped for missing embeddings
};

// Changed links from t to t+1 are the testing core: added links are
// positives, removed links are negatives, and whichever side is short is
// topped up by sampling existing links / non-links at t+1. Sides are
// balanced to the minimum achievable size.
LpTestSet build_lp_testset(const Snapshot& g_t, const Snapshot& g_t1, const Embedding& z_t,
                           Rng& rng);

// Mann-Whitney AUC with ties counted as half. Labels: nonzero = positive.
double auc(std::span<const std::pair<double, int>> scored);

double lp_auc(const LpTestSet& testset, const Embedding& z_t,
              SimilarityKind kind = SimilarityKind::Cosine);

}  // namespace dynembed
