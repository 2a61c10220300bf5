#include "dynembed/selector.hpp"

#include <algorithm>

namespace dynembed {

std::vector<std::pair<NodeId, std::uint64_t>> Reservoir::sorted_entries() const {
    std::vector<std::pair<NodeId, std::uint64_t>> entries(counts_.begin(), counts_.end());
    std::sort(entries.begin(), entries.end());
    return entries;
}

std::vector<NodeId> Selection::all() const {
    std::vector<NodeId> out;
    out.reserve(total());
    out.insert(out.end(), unseen.begin(), unseen.end());
    out.insert(out.end(), affected.begin(), affected.end());
    out.insert(out.end(), diverse.begin(), diverse.end());
    std::sort(out.begin(), out.end());
    return out;
}

void update_reservoir(Reservoir& reservoir, const EdgeDelta& delta, const Snapshot& curr) {
    for (const auto& c : delta.changes) {
        reservoir.add(c.u, 1);
        reservoir.add(c.v, 1);
    }
    std::vector<NodeId> dead;
    for (const auto& [v, n] : reservoir.sorted_entries()) {
        if (!curr.has_node(v)) dead.push_back(v);
    }
    for (NodeId v : dead) reservoir.erase(v);
}

double score_node(NodeId v, const Reservoir& reservoir, const Snapshot& prev,
                  const Snapshot& curr) {
    const std::uint64_t numerator = neighbor_change_count(prev, curr, v) + reservoir.count(v);
    const std::size_t degree = std::max<std::size_t>(prev.degree(v), 1);
    return static_cast<double>(numerator) / static_cast<double>(degree);
}

std::vector<NodeId> top_k_affected(std::vector<std::pair<NodeId, double>> scores, std::size_t k) {
    if (k > scores.size()) k = scores.size();
    if (k == 0) return {};
    auto better = [](const std::pair<NodeId, double>& a, const std::pair<NodeId, double>& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    };
    std::nth_element(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(k) - 1,
                     scores.end(), better);
    std::vector<NodeId> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(scores[i].first);
    std::sort(out.begin(), out.end());
    return out;
}

Selection select_nodes(const Snapshot& prev, const Snapshot& curr, const EdgeDelta& delta,
                       Reservoir& reservoir, const SelectorConfig& cfg, Rng& rng) {
    update_reservoir(reservoir, delta, curr);

    Selection sel;
    for (NodeId v : curr.nodes()) {
        if (!prev.has_node(v)) sel.unseen.push_back(v);
    }

    const std::size_t budget = round_half_up(cfg.alpha * static_cast<double>(curr.node_count()));
    const double affected_fraction = cfg.swap_beta ? 1.0 - cfg.beta : cfg.beta;
    const std::size_t target_affected = round_half_up(affected_fraction * static_cast<double>(budget));

    // Post-update reservoir counts already fold in this step's changes, so
    // the score is count / max(prior degree, 1).
    std::vector<std::pair<NodeId, double>> scored;
    for (const auto& [v, count] : reservoir.sorted_entries()) {
        if (!prev.has_node(v)) continue;  // unseen nodes bypass scoring
        const std::size_t degree = std::max<std::size_t>(prev.degree(v), 1);
        scored.emplace_back(v, static_cast<double>(count) / static_cast<double>(degree));
    }
    sel.affected = top_k_affected(std::move(scored), target_affected);

    // Any budget the affected pool could not fill shifts to diverse nodes.
    std::vector<NodeId> pool;
    pool.reserve(curr.node_count());
    {
        auto in_sorted = [](const std::vector<NodeId>& xs, NodeId v) {
            return std::binary_search(xs.begin(), xs.end(), v);
        };
        for (NodeId v : curr.nodes()) {
            if (in_sorted(sel.unseen, v) || in_sorted(sel.affected, v)) continue;
            pool.push_back(v);
        }
    }
    const std::size_t want_diverse = std::min(budget - sel.affected.size(), pool.size());
    sel.diverse = sample_without_replacement(std::span<const NodeId>(pool), want_diverse, rng);
    std::sort(sel.diverse.begin(), sel.diverse.end());

    for (NodeId v : sel.unseen) reservoir.erase(v);
    for (NodeId v : sel.affected) reservoir.erase(v);
    for (NodeId v : sel.diverse) reservoir.erase(v);
    return sel;
}

}  // namespace dynembed
