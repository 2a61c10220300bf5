#include "dynembed/graph.hpp"

#include <algorithm>

namespace dynembed {

bool Snapshot::has_edge(NodeId u, NodeId v) const {
    if (u >= adjacency_.size()) return false;
    const auto& adj = adjacency_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Snapshot::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count_);
    for (NodeId u : nodes_) {
        for (NodeId v : adjacency_[u]) {
            if (v > u) out.emplace_back(u, v);
        }
    }
    return out;
}

Snapshot SnapshotBuilder::build(int time_index) const {
    auto edges = edges_;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Snapshot snap;
    snap.time_index_ = time_index;
    snap.edge_count_ = edges.size();
    NodeId max_node = 0;
    for (const auto& [u, v] : edges) max_node = std::max(max_node, v);
    if (!edges.empty()) snap.adjacency_.resize(static_cast<std::size_t>(max_node) + 1);
    for (const auto& [u, v] : edges) {
        snap.adjacency_[u].push_back(v);
        snap.adjacency_[v].push_back(u);
    }
    for (NodeId v = 0; v < snap.adjacency_.size(); ++v) {
        auto& adj = snap.adjacency_[v];
        if (adj.empty()) continue;
        std::sort(adj.begin(), adj.end());
        snap.nodes_.push_back(v);
    }
    return snap;
}

EdgeDelta compute_delta(const Snapshot& prev, const Snapshot& curr) {
    EdgeDelta delta;
    delta.time_index = curr.time_index();

    const NodeId limit = static_cast<NodeId>(
        std::max(prev.nodes().empty() ? 0 : prev.nodes().back() + 1,
                 curr.nodes().empty() ? 0 : curr.nodes().back() + 1));

    for (NodeId u = 0; u < limit; ++u) {
        auto a = prev.neighbors(u);
        auto b = curr.neighbors(u);
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i] < b[j])) {
                if (a[i] > u) delta.changes.push_back({u, a[i], EdgeOp::Del});
                ++i;
            } else if (i == a.size() || b[j] < a[i]) {
                if (b[j] > u) delta.changes.push_back({u, b[j], EdgeOp::Add});
                ++j;
            } else {
                ++i;
                ++j;
            }
        }
    }
    return delta;
}

Snapshot apply_delta(const Snapshot& prev, const EdgeDelta& delta) {
    Snapshot snap;
    snap.time_index_ = delta.time_index;
    snap.adjacency_ = prev.adjacency_;
    snap.edge_count_ = prev.edge_count_;

    NodeId max_node = 0;
    for (const auto& c : delta.changes) max_node = std::max(max_node, c.v);
    if (static_cast<std::size_t>(max_node) + 1 > snap.adjacency_.size() && !delta.changes.empty())
        snap.adjacency_.resize(static_cast<std::size_t>(max_node) + 1);

    auto insert_sorted = [](std::vector<NodeId>& adj, NodeId v) {
        auto it = std::lower_bound(adj.begin(), adj.end(), v);
        if (it != adj.end() && *it == v) return false;
        adj.insert(it, v);
        return true;
    };
    auto erase_sorted = [](std::vector<NodeId>& adj, NodeId v) {
        auto it = std::lower_bound(adj.begin(), adj.end(), v);
        if (it == adj.end() || *it != v) return false;
        adj.erase(it);
        return true;
    };

    for (const auto& c : delta.changes) {
        if (c.op == EdgeOp::Add) {
            if (!insert_sorted(snap.adjacency_[c.u], c.v))
                throw NoOpTripleError("add of existing edge " + std::to_string(c.u) + "-" +
                                      std::to_string(c.v));
            insert_sorted(snap.adjacency_[c.v], c.u);
            ++snap.edge_count_;
        } else {
            if (!erase_sorted(snap.adjacency_[c.u], c.v))
                throw NoOpTripleError("del of absent edge " + std::to_string(c.u) + "-" +
                                      std::to_string(c.v));
            erase_sorted(snap.adjacency_[c.v], c.u);
            --snap.edge_count_;
        }
    }

    snap.nodes_.clear();
    for (NodeId v = 0; v < snap.adjacency_.size(); ++v) {
        if (!snap.adjacency_[v].empty()) snap.nodes_.push_back(v);
    }
    return snap;
}

std::size_t neighbor_change_count(const Snapshot& prev, const Snapshot& curr, NodeId v) {
    auto a = prev.neighbors(v);
    auto b = curr.neighbors(v);
    std::size_t i = 0, j = 0, diff = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            ++diff;
            ++i;
        } else if (i == a.size() || b[j] < a[i]) {
            ++diff;
            ++j;
        } else {
            ++i;
            ++j;
        }
    }
    return diff;
}

}  // namespace dynembed
