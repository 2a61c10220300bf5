#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "dynembed/graph.hpp"
#include "dynembed/rng.hpp"

namespace dynembed {

struct WalkConfig {
    int walks_per_node = 20;  // r
    int walk_length = 80;     // l, nodes per walk
    int window = 10;          // w
    std::uint64_t seed = 0;
};

// Multiset of (center, context) pairs with counts, plus per-node occurrence
// frequencies (each pair occurrence counts once for the center and once for
// the context). Frozen after construction.
class PairCorpus {
  public:
    struct Pair {
        NodeId center;
        NodeId context;
        std::uint64_t count;
    };

    const std::vector<Pair>& pairs() const { return pairs_; }
    std::uint64_t total_pairs() const { return total_; }
    bool empty() const { return total_ == 0; }

    std::uint64_t count(NodeId center, NodeId context) const;
    std::uint64_t frequency(NodeId v) const {
        auto it = frequency_.find(v);
        return it == frequency_.end() ? 0 : it->second;
    }
    // (node, frequency) ascending by node.
    const std::vector<std::pair<NodeId, std::uint64_t>>& frequency_items() const {
        return frequency_items_;
    }

  private:
    friend class PairCorpusBuilder;
    std::vector<Pair> pairs_;  // sorted by (center, context)
    std::unordered_map<NodeId, std::uint64_t> frequency_;
    std::vector<std::pair<NodeId, std::uint64_t>> frequency_items_;
    std::uint64_t total_ = 0;
};

class PairCorpusBuilder {
  public:
    void add_pair(NodeId center, NodeId context, std::uint64_t count = 1);
    // Emits (walk[i], walk[j]) for all j within `window` of i, j != i.
    void add_walk(std::span<const NodeId> walk, int window);
    PairCorpus build() const;

  private:
    std::unordered_map<std::uint64_t, std::uint64_t> counts_;
};

// Uniform walk of exactly `length` nodes starting at `start`, truncated early
// only at a dead end; an isolated start yields just [start].
std::vector<NodeId> random_walk(const Snapshot& snapshot, NodeId start, int length, Rng& rng);

// r walks per selected node, in ascending NodeId order, each walk seeded from
// (cfg.seed, node, walk_index) so generation order never changes the result.
// walk_log, when given, receives every walk in generation order.
PairCorpus generate_corpus(const Snapshot& snapshot, std::span<const NodeId> selected,
                           const WalkConfig& cfg,
                           std::vector<std::vector<NodeId>>* walk_log = nullptr);

}  // namespace dynembed
