#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dynembed/error.hpp"

namespace dynembed {

// Dense internal node index. Indices are handed out once per label by the
// NodeInterner and never recycled, so embeddings stay addressable even after
// a node loses all of its edges.
using NodeId = std::uint32_t;
inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();

class NodeInterner {
  public:
    NodeId intern(std::string_view label) {
        auto it = ids_.find(std::string(label));
        if (it != ids_.end()) return it->second;
        const NodeId id = static_cast<NodeId>(labels_.size());
        labels_.emplace_back(label);
        ids_.emplace(labels_.back(), id);
        return id;
    }

    std::optional<NodeId> find(std::string_view label) const {
        auto it = ids_.find(std::string(label));
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& label(NodeId id) const { return labels_.at(id); }
    std::size_t size() const { return labels_.size(); }

  private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> ids_;
};

enum class EdgeOp : std::uint8_t { Add = 0, Del = 1 };

// Normalized edge change: u < v always.
struct EdgeChange {
    NodeId u;
    NodeId v;
    EdgeOp op;

    bool operator==(const EdgeChange&) const = default;
};

struct EdgeDelta {
    int time_index = 0;
    std::vector<EdgeChange> changes;  // sorted by (u, v)

    std::size_t size() const { return changes.size(); }
    bool empty() const { return changes.empty(); }
};

// Immutable undirected simple graph at one time step. Nodes with zero edges
// are not present; adjacency lists are sorted.
class Snapshot {
  public:
    Snapshot() = default;

    int time_index() const { return time_index_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    bool has_node(NodeId v) const { return v < adjacency_.size() && !adjacency_[v].empty(); }

    std::span<const NodeId> neighbors(NodeId v) const {
        if (v >= adjacency_.size()) return {};
        return adjacency_[v];
    }

    std::size_t degree(NodeId v) const { return neighbors(v).size(); }

    bool has_edge(NodeId u, NodeId v) const;

    // Nodes with at least one edge, ascending.
    const std::vector<NodeId>& nodes() const { return nodes_; }

    std::vector<std::pair<NodeId, NodeId>> edges() const;  // u < v, sorted

  private:
    friend class SnapshotBuilder;
    friend Snapshot apply_delta(const Snapshot& prev, const EdgeDelta& delta);

    int time_index_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<NodeId>> adjacency_;  // indexed by NodeId
    std::vector<NodeId> nodes_;
};

// Accumulates raw (possibly duplicated) edges; duplicates and self-loops are
// collapsed/dropped when the snapshot is built.
class SnapshotBuilder {
  public:
    void add_edge(NodeId u, NodeId v) {
        if (u == v) return;
        if (u > v) std::swap(u, v);
        edges_.emplace_back(u, v);
    }

    Snapshot build(int time_index) const;

  private:
    std::vector<std::pair<NodeId, NodeId>> edges_;
};

// A snapshot sequence together with the label table its NodeIds refer to.
struct SnapshotSequence {
    std::shared_ptr<NodeInterner> interner = std::make_shared<NodeInterner>();
    std::vector<Snapshot> snapshots;

    std::size_t size() const { return snapshots.size(); }
    const Snapshot& operator[](std::size_t i) const { return snapshots[i]; }
};

// Minimal change set transforming prev into curr, sorted by (u, v).
EdgeDelta compute_delta(const Snapshot& prev, const Snapshot& curr);

// Inverse of compute_delta. Throws NoOpTripleError if a triple adds an
// existing edge or deletes an absent one (corrupt stream).
Snapshot apply_delta(const Snapshot& prev, const EdgeDelta& delta);

// |N(v, curr) symmetric-difference N(v, prev)|. A node absent at t-1
// contributes an empty prior neighbor set.
std::size_t neighbor_change_count(const Snapshot& prev, const Snapshot& curr, NodeId v);

}  // namespace dynembed
