#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dynembed/embedding.hpp"
#include "dynembed/graph.hpp"
#include "dynembed/rng.hpp"
#include "dynembed/walker.hpp"

namespace dynembed {

// Skip-gram negative-sampling model: one input and one output vector per
// vocabulary node. Vocabulary only ever grows.
class EmbeddingModel {
  public:
    EmbeddingModel(int dim, int negatives) : dim_(dim), negatives_(negatives) {}

    // Input vectors uniform in (-0.5/d, +0.5/d) per entry, output vectors
    // zero; nodes are added in ascending order so a fixed seed gives a
    // bit-identical model.
    static EmbeddingModel random_init(std::span<const NodeId> nodes, int dim, int negatives,
                                      Rng& rng);

    // Adds rows for new_nodes (initialized as in random_init) leaving every
    // existing row untouched. Throws DuplicateNodeError on a known node.
    void extend_vocab(std::span<const NodeId> new_nodes, Rng& rng);

    // Adds a node with explicit vectors (checkpoint loading, tests).
    void insert_row(NodeId v, std::span<const float> input, std::span<const float> output);

    int dim() const { return dim_; }
    int negatives() const { return negatives_; }
    std::size_t vocab_size() const { return node_of_row_.size(); }
    bool contains(NodeId v) const {
        return v < row_of_.size() && row_of_[v] >= 0;
    }

    std::span<const float> input_vector(NodeId v) const {
        return {input_row(v), static_cast<std::size_t>(dim_)};
    }
    std::span<const float> output_vector(NodeId v) const {
        return {output_row(v), static_cast<std::size_t>(dim_)};
    }

    const float* input_row(NodeId v) const { return input_.data() + row_index(v) * dim_; }
    const float* output_row(NodeId v) const { return output_.data() + row_index(v) * dim_; }
    float* input_row(NodeId v) { return input_.data() + row_index(v) * dim_; }
    float* output_row(NodeId v) { return output_.data() + row_index(v) * dim_; }

    std::vector<NodeId> vocab_sorted() const;

    // Published per-node vectors: input + output sum, so cosine between two
    // published vectors carries the co-occurrence (input.output) terms. A
    // fresh model publishes exactly its input initialization since output
    // vectors start at zero.
    Embedding embeddings() const;

  private:
    std::size_t row_index(NodeId v) const {
        if (!contains(v)) throw MissingNodeError("node " + std::to_string(v) + " not in vocabulary");
        return static_cast<std::size_t>(row_of_[v]);
    }
    void add_node(NodeId v, Rng& rng);

    int dim_;
    int negatives_;
    std::vector<float> input_;
    std::vector<float> output_;
    std::vector<std::int64_t> row_of_;  // indexed by NodeId, -1 = absent
    std::vector<NodeId> node_of_row_;
};

// Noise distribution P_D over nodes with nonzero corpus frequency,
// proportional to frequency^power (0.75 by default, 1.0 = raw unigram).
// Alias-method table: exact probabilities, constant-time draws.
class NegativeTable {
  public:
    NegativeTable(const PairCorpus& corpus, double power = 0.75);

    NodeId draw(Rng& rng) const;
    bool supports(NodeId v) const;
    std::size_t support_size() const { return nodes_.size(); }

  private:
    std::vector<NodeId> nodes_;
    std::vector<double> accept_;
    std::vector<std::uint32_t> alias_;
};

// One gradient-ascent step on the pair objective. Coefficients are computed
// from the current vectors before any of them is touched, so the applied
// update equals lr times the exact gradient even with repeated negatives.
void sgd_pair(EmbeddingModel& model, NodeId center, NodeId context,
              std::span<const NodeId> negatives, float lr);

struct TrainConfig {
    int epochs = 5;
    double lr_start = 0.025;
    double lr_end = 1e-4;
    int threads = 1;  // >1: lock-free parallel updates, not bit-reproducible
    std::uint64_t seed = 0;
};

// Count-weighted SGD over every pair occurrence, shuffled each epoch, with m
// negatives per occurrence drawn from the table (a draw that hits the
// positive context is retried up to 8 times, then skipped).
void train(EmbeddingModel& model, const PairCorpus& corpus, const NegativeTable& table,
           const TrainConfig& cfg);

// Binary checkpoint: header (node count, dim, negatives) followed by one
// record per node (label, input vector, output vector). Bit-exact round trip.
void save_model(const EmbeddingModel& model, const NodeInterner& interner,
                const std::string& path);
EmbeddingModel load_model(const std::string& path, NodeInterner& interner);

}  // namespace dynembed
