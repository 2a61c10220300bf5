#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dynembed/graph.hpp"
#include "dynembed/rng.hpp"

namespace dynembed {

// Per-node accumulator of changes not yet spent by selecting the node for
// retraining. Zero-count entries are never stored.
class Reservoir {
  public:
    std::uint64_t count(NodeId v) const {
        auto it = counts_.find(v);
        return it == counts_.end() ? 0 : it->second;
    }
    bool contains(NodeId v) const { return counts_.contains(v); }
    std::size_t size() const { return counts_.size(); }
    bool empty() const { return counts_.empty(); }

    void add(NodeId v, std::uint64_t n) {
        if (n > 0) counts_[v] += n;
    }
    void erase(NodeId v) { counts_.erase(v); }

    // Entries in ascending NodeId order.
    std::vector<std::pair<NodeId, std::uint64_t>> sorted_entries() const;

  private:
    std::unordered_map<NodeId, std::uint64_t> counts_;
};

struct SelectorConfig {
    double alpha = 0.2;  // fraction of nodes selected per step
    double beta = 0.5;   // fraction of the budget going to most-affected nodes
    // Algorithm-variant switch: assign (1-beta) of the budget to the
    // most-affected nodes instead of beta.
    bool swap_beta = false;
};

struct Selection {
    std::vector<NodeId> unseen;    // V_u, ascending
    std::vector<NodeId> affected;  // V_m, ascending
    std::vector<NodeId> diverse;   // V_d, ascending

    std::vector<NodeId> all() const;  // union, ascending
    std::size_t total() const { return unseen.size() + affected.size() + diverse.size(); }
};

// Both endpoints of every triple gain one count; nodes with zero edges in
// curr are purged afterwards (nothing to walk from).
void update_reservoir(Reservoir& reservoir, const EdgeDelta& delta, const Snapshot& curr);

// Inertia score: (changes this step + accumulated reservoir count before this
// step) / max(prior degree, 1). `reservoir` holds the pre-update counts.
double score_node(NodeId v, const Reservoir& reservoir, const Snapshot& prev,
                  const Snapshot& curr);

// The k highest-scoring nodes, ties to the smaller NodeId; returned
// ascending. Partial selection, no full sort.
std::vector<NodeId> top_k_affected(std::vector<std::pair<NodeId, double>> scores, std::size_t k);

// Half-up rounding used for all budget arithmetic.
inline std::size_t round_half_up(double x) {
    return static_cast<std::size_t>(x + 0.5);
}

// One selection round: updates the reservoir with delta, picks unseen /
// most-affected / diverse nodes, and removes everything selected from the
// reservoir. Degenerate inputs yield smaller selections, never errors.
Selection select_nodes(const Snapshot& prev, const Snapshot& curr, const EdgeDelta& delta,
                       Reservoir& reservoir, const SelectorConfig& cfg, Rng& rng);

}  // namespace dynembed
