#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "dynembed/selector.hpp"
#include "test_util.hpp"

using namespace dynembed;
using testutil::EdgeSet;

TEST_SUITE_BEGIN("selector");

namespace {

EdgeDelta delta_from_sets(const EdgeSet& prev, const EdgeSet& curr, int t) {
    EdgeDelta delta;
    delta.time_index = t;
    for (const auto& [u, v] : curr)
        if (!prev.contains({u, v})) delta.changes.push_back({u, v, EdgeOp::Add});
    for (const auto& [u, v] : prev)
        if (!curr.contains({u, v})) delta.changes.push_back({u, v, EdgeOp::Del});
    std::sort(delta.changes.begin(), delta.changes.end(), [](const auto& a, const auto& b) {
        return std::make_pair(a.u, a.v) < std::make_pair(b.u, b.v);
    });
    return delta;
}

}  // namespace

TEST_CASE("update_reservoir increments both endpoints") {
    Reservoir res;
    const auto curr = testutil::make_snapshot({{3, 4}}, 1);
    EdgeDelta delta{1, {{3, 4, EdgeOp::Add}}};
    update_reservoir(res, delta, curr);
    CHECK(res.count(3) == 1);
    CHECK(res.count(4) == 1);
    CHECK(res.size() == 2);
}

TEST_CASE("update_reservoir with an empty delta changes nothing") {
    Reservoir res;
    res.add(7, 2);
    const auto curr = testutil::make_snapshot({{7, 8}}, 1);
    update_reservoir(res, EdgeDelta{1, {}}, curr);
    CHECK(res.count(7) == 2);
    CHECK(res.size() == 1);
}

TEST_CASE("update_reservoir purges nodes without edges at t") {
    Reservoir res;
    const auto curr = testutil::make_snapshot({{0, 1}}, 1);
    // node 2 loses its only edge: counted by the delta but purged afterwards
    EdgeDelta delta{1, {{0, 1, EdgeOp::Add}, {1, 2, EdgeOp::Del}}};
    update_reservoir(res, delta, curr);
    CHECK(res.count(0) == 1);
    CHECK(res.count(1) == 2);
    CHECK(!res.contains(2));
}

TEST_CASE("reservoir counts equal per-node incidence over random triples") {
    Rng rng(3);
    SnapshotBuilder all_edges;
    for (NodeId v = 0; v + 1 < 10; ++v) all_edges.add_edge(v, v + 1);
    const Snapshot curr = all_edges.build(1);  // every node keeps an edge: no purge

    EdgeDelta delta{1, {}};
    std::map<NodeId, std::uint64_t> tally;
    for (int i = 0; i < 30; ++i) {
        NodeId u = static_cast<NodeId>(rng.below(10));
        NodeId v = static_cast<NodeId>(rng.below(10));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        delta.changes.push_back({u, v, EdgeOp::Add});
        tally[u] += 1;
        tally[v] += 1;
    }
    Reservoir res;
    update_reservoir(res, delta, curr);
    CHECK(res.size() == tally.size());
    for (const auto& [v, n] : tally) CHECK(res.count(v) == n);
}

TEST_CASE("score: (changes + prior reservoir) / prior degree") {
    // node 0 with prior degree 4, two changes this step, reservoir 1
    const auto prev = testutil::make_snapshot({{0, 1}, {0, 2}, {0, 3}, {0, 4}}, 0);
    const auto curr = testutil::make_snapshot({{0, 1}, {0, 2}, {0, 3}, {0, 5}}, 1);
    Reservoir res;
    res.add(0, 1);
    CHECK(score_node(0, res, prev, curr) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("score: unchanged node with empty reservoir scores zero") {
    const auto snap = testutil::make_snapshot({{0, 1}}, 0);
    Reservoir res;
    CHECK(score_node(0, res, snap, snap) == 0.0);
}

TEST_CASE("score: degree guard for prior-zero-degree nodes") {
    const auto prev = testutil::make_snapshot({{1, 2}}, 0);
    const auto curr = testutil::make_snapshot({{0, 1}, {1, 2}}, 1);
    Reservoir res;
    CHECK(score_node(0, res, prev, curr) == 1.0);  // 1 change / max(0, 1)
}

TEST_CASE("score monotonicity and degree scaling") {
    // equal degree, more accumulated changes => strictly greater score
    const auto prev = testutil::make_snapshot({{0, 1}, {0, 2}, {3, 4}, {3, 5}}, 0);
    const auto curr = testutil::make_snapshot({{0, 1}, {0, 2}, {3, 4}, {3, 5}}, 1);
    Reservoir res;
    res.add(0, 3);
    res.add(3, 2);
    CHECK(score_node(0, res, prev, curr) > score_node(3, res, prev, curr));

    // doubling prior degree with a fixed numerator halves the score
    const auto prev2 = testutil::make_snapshot({{0, 1}, {0, 2}, {3, 4}, {3, 5}, {3, 6}, {3, 7}}, 0);
    Reservoir res2;
    res2.add(0, 4);
    res2.add(3, 4);
    CHECK(score_node(0, res2, prev2, prev2) ==
          doctest::Approx(2.0 * score_node(3, res2, prev2, prev2)).epsilon(1e-12));
}

TEST_CASE("score equals an independent replay over an evolving graph") {
    Rng rng(17);
    const auto history = testutil::evolve_edge_sets(20, 6, 0.15, 5, 3, rng);

    // replay reservoir independently: per-node incidence tallies with purge
    std::map<NodeId, std::uint64_t> oracle_res;
    Reservoir res;
    for (std::size_t t = 1; t < history.size(); ++t) {
        const auto prev = testutil::from_edge_set(history[t - 1], static_cast<int>(t) - 1);
        const auto curr = testutil::from_edge_set(history[t], static_cast<int>(t));
        const EdgeDelta delta = delta_from_sets(history[t - 1], history[t],
                                                static_cast<int>(t));

        // scores from the pre-update state must match the oracle formula
        for (NodeId v : prev.nodes()) {
            if (!curr.has_node(v)) continue;
            std::size_t incident = 0;
            for (const auto& c : delta.changes)
                if (c.u == v || c.v == v) ++incident;
            const auto it = oracle_res.find(v);
            const double expected =
                static_cast<double>(incident + (it == oracle_res.end() ? 0 : it->second)) /
                static_cast<double>(std::max<std::size_t>(prev.degree(v), 1));
            CHECK(score_node(v, res, prev, curr) == expected);
        }

        update_reservoir(res, delta, curr);
        for (const auto& c : delta.changes) {
            oracle_res[c.u] += 1;
            oracle_res[c.v] += 1;
        }
        std::erase_if(oracle_res, [&](const auto& kv) { return !curr.has_node(kv.first); });

        CHECK(res.size() == oracle_res.size());
        for (const auto& [v, n] : oracle_res) CHECK(res.count(v) == n);
    }
}

TEST_CASE("top_k_affected basics") {
    std::vector<std::pair<NodeId, double>> scores{{0, 3.0}, {1, 1.0}, {2, 2.0}};
    CHECK(top_k_affected(scores, 2) == std::vector<NodeId>{0, 2});
    CHECK(top_k_affected(scores, 0).empty());
    CHECK(top_k_affected(scores, 10) == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("top_k_affected matches a full sort under the tie rule") {
    Rng rng(29);
    std::vector<std::pair<NodeId, double>> scores;
    for (NodeId v = 0; v < 1000; ++v)
        scores.emplace_back(v, static_cast<double>(rng.below(50)));  // many ties

    auto sorted = scores;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<NodeId> expected;
    for (std::size_t i = 0; i < 137; ++i) expected.push_back(sorted[i].first);
    std::sort(expected.begin(), expected.end());

    CHECK(top_k_affected(scores, 137) == expected);
}

TEST_CASE("select_nodes: full budget split 10 affected / 10 diverse") {
    // |V| = 100, alpha=0.2, beta=0.5, 40 scored candidates
    EdgeSet prev_edges, curr_edges;
    for (NodeId v = 0; v + 1 < 100; ++v) prev_edges.insert({v, static_cast<NodeId>(v + 1)});
    curr_edges = prev_edges;
    // touch nodes 0..39 via 20 extra edges (0,1), (2,3), ...
    for (NodeId v = 0; v < 40; v += 2) curr_edges.insert(testutil::norm_edge(v, v + 40));

    const auto prev = testutil::from_edge_set(prev_edges, 0);
    const auto curr = testutil::from_edge_set(curr_edges, 1);
    const auto delta = delta_from_sets(prev_edges, curr_edges, 1);
    REQUIRE(curr.node_count() == 100);

    Reservoir res;
    Rng rng(1);
    const Selection sel = select_nodes(prev, curr, delta, res, {0.2, 0.5, false}, rng);
    CHECK(sel.unseen.empty());
    CHECK(sel.affected.size() == 10);
    CHECK(sel.diverse.size() == 10);
}

TEST_CASE("select_nodes: deficit shifts to diverse nodes") {
    // |V| = 100, alpha=0.2, beta=0.5, only 4 candidates -> 4 affected + 16 diverse
    EdgeSet prev_edges, curr_edges;
    for (NodeId v = 0; v + 1 < 100; ++v) prev_edges.insert({v, static_cast<NodeId>(v + 1)});
    curr_edges = prev_edges;
    curr_edges.insert(testutil::norm_edge(0, 50));
    curr_edges.insert(testutil::norm_edge(1, 60));

    const auto prev = testutil::from_edge_set(prev_edges, 0);
    const auto curr = testutil::from_edge_set(curr_edges, 1);
    const auto delta = delta_from_sets(prev_edges, curr_edges, 1);

    Reservoir res;
    Rng rng(2);
    const Selection sel = select_nodes(prev, curr, delta, res, {0.2, 0.5, false}, rng);
    CHECK(sel.affected.size() == 4);
    CHECK(sel.diverse.size() == 16);
    CHECK(res.empty());  // all four candidates were selected and removed
}

TEST_CASE("select_nodes: sets are disjoint, budget holds, reservoir cleared of selected") {
    Rng rng(31);
    const auto history = testutil::evolve_edge_sets(40, 8, 0.1, 6, 3, rng);
    Reservoir res;
    for (std::size_t t = 1; t < history.size(); ++t) {
        const auto prev = testutil::from_edge_set(history[t - 1], static_cast<int>(t) - 1);
        const auto curr = testutil::from_edge_set(history[t], static_cast<int>(t));
        const auto delta = delta_from_sets(history[t - 1], history[t], static_cast<int>(t));
        Rng step_rng(1000 + t);
        const Selection sel = select_nodes(prev, curr, delta, res, {0.3, 0.5, false}, step_rng);

        std::set<NodeId> seen;
        for (NodeId v : sel.unseen) CHECK(seen.insert(v).second);
        for (NodeId v : sel.affected) CHECK(seen.insert(v).second);
        for (NodeId v : sel.diverse) CHECK(seen.insert(v).second);
        for (NodeId v : seen) {
            CHECK(curr.has_node(v));
            CHECK(!res.contains(v));
        }

        const std::size_t budget = round_half_up(0.3 * static_cast<double>(curr.node_count()));
        const std::size_t non_unseen = curr.node_count() - sel.unseen.size();
        if (non_unseen >= budget) CHECK(sel.affected.size() + sel.diverse.size() == budget);
    }
}

TEST_CASE("select_nodes: beta=1 takes exactly the changed seen nodes when few") {
    // 20x8 grid with a localized change smaller than the affected budget
    auto base = testutil::grid_edges(20, 8);
    auto changed = base;
    // densify a small patch: connect diagonal pairs around the middle-right
    const std::vector<std::pair<NodeId, NodeId>> extra = {
        {12, 33}, {13, 34}, {14, 35}, {32, 53}, {33, 54}};
    for (const auto& e : extra) changed.insert(testutil::norm_edge(e.first, e.second));

    const auto prev = testutil::from_edge_set(base, 0);
    const auto curr = testutil::from_edge_set(changed, 1);
    const auto delta = delta_from_sets(base, changed, 1);

    std::set<NodeId> expected;
    for (const auto& c : delta.changes) {
        expected.insert(c.u);
        expected.insert(c.v);
    }
    const std::size_t budget = round_half_up(1.0 * 0.2 * static_cast<double>(curr.node_count()));
    REQUIRE(expected.size() < budget);

    Reservoir res;
    Rng rng(4);
    const Selection sel = select_nodes(prev, curr, delta, res, {0.2, 1.0, false}, rng);
    CHECK(std::set<NodeId>(sel.affected.begin(), sel.affected.end()) == expected);
    CHECK(sel.unseen.empty());
    // deficit shifted to diverse
    CHECK(sel.diverse.size() == budget - expected.size());
}

TEST_CASE("select_nodes: beta=0 selects no affected nodes") {
    auto base = testutil::grid_edges(20, 8);
    auto changed = base;
    changed.insert(testutil::norm_edge(12, 33));
    const auto prev = testutil::from_edge_set(base, 0);
    const auto curr = testutil::from_edge_set(changed, 1);
    const auto delta = delta_from_sets(base, changed, 1);

    Reservoir res;
    Rng rng(5);
    const Selection sel = select_nodes(prev, curr, delta, res, {0.2, 0.0, false}, rng);
    CHECK(sel.affected.empty());
    CHECK(sel.diverse.size() == round_half_up(0.2 * static_cast<double>(curr.node_count())));
}

TEST_CASE("swap_beta flips the fraction assignment") {
    auto base = testutil::grid_edges(20, 8);
    auto changed = base;
    for (NodeId v = 0; v < 30; ++v) changed.insert(testutil::norm_edge(v, static_cast<NodeId>(v + 60)));
    const auto prev = testutil::from_edge_set(base, 0);
    const auto curr = testutil::from_edge_set(changed, 1);
    const auto delta = delta_from_sets(base, changed, 1);

    Reservoir res_a, res_b;
    Rng rng_a(6), rng_b(6);
    const Selection plain =
        select_nodes(prev, curr, delta, res_a, {0.2, 0.75, false}, rng_a);
    const Selection swapped =
        select_nodes(prev, curr, delta, res_b, {0.2, 0.75, true}, rng_b);
    const std::size_t budget = round_half_up(0.2 * static_cast<double>(curr.node_count()));
    CHECK(plain.affected.size() == round_half_up(0.75 * static_cast<double>(budget)));
    CHECK(swapped.affected.size() == round_half_up(0.25 * static_cast<double>(budget)));
}

TEST_CASE("unseen nodes are always selected and do not consume the budget") {
    EdgeSet prev_edges = {{0, 1}, {1, 2}, {2, 3}};
    EdgeSet curr_edges = prev_edges;
    curr_edges.insert({10, 11});  // two brand-new nodes
    const auto prev = testutil::from_edge_set(prev_edges, 0);
    const auto curr = testutil::from_edge_set(curr_edges, 1);
    const auto delta = delta_from_sets(prev_edges, curr_edges, 1);

    Reservoir res;
    Rng rng(7);
    const Selection sel = select_nodes(prev, curr, delta, res, {0.5, 0.5, false}, rng);
    CHECK(sel.unseen == std::vector<NodeId>{10, 11});
    const std::size_t budget = round_half_up(0.5 * 6.0);
    CHECK(sel.affected.size() + sel.diverse.size() == budget);
}

TEST_CASE("beta=0 with no unseen nodes samples the diverse set uniformly") {
    // 10,000 trials, pool of 10 nodes, 3 diverse picks each time: per-node
    // selection count is Binomial(10000, 0.3).
    EdgeSet edges;
    for (NodeId v = 0; v < 10; ++v) edges.insert(testutil::norm_edge(v, (v + 1) % 10));
    const auto prev = testutil::from_edge_set(edges, 0);
    const auto curr = testutil::from_edge_set(edges, 1);
    const EdgeDelta delta{1, {}};

    std::vector<int> hits(10, 0);
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        Reservoir res;
        Rng rng(9000 + i);
        const Selection sel = select_nodes(prev, curr, delta, res, {0.3, 0.0, false}, rng);
        REQUIRE(sel.diverse.size() == 3);
        for (NodeId v : sel.diverse) hits[v]++;
    }
    const double expected = trials * 0.3;
    const double sigma = std::sqrt(trials * 0.3 * 0.7);
    for (int v = 0; v < 10; ++v) CHECK(std::abs(hits[v] - expected) <= 3.0 * sigma);
}

TEST_CASE("reservoir counts of never-selected nodes never decrease") {
    Rng rng(37);
    const auto history = testutil::evolve_edge_sets(30, 8, 0.15, 5, 0, rng);
    Reservoir res;
    std::map<NodeId, std::uint64_t> last_seen;
    std::set<NodeId> ever_selected;
    for (std::size_t t = 1; t < history.size(); ++t) {
        const auto prev = testutil::from_edge_set(history[t - 1], static_cast<int>(t) - 1);
        const auto curr = testutil::from_edge_set(history[t], static_cast<int>(t));
        const auto delta = delta_from_sets(history[t - 1], history[t], static_cast<int>(t));
        Rng step_rng(7000 + t);
        // alpha=0: only unseen nodes get selected, counts only accumulate
        const Selection sel = select_nodes(prev, curr, delta, res, {0.0, 0.5, false}, step_rng);
        CHECK(sel.total() == sel.unseen.size());
        for (NodeId v : sel.all()) ever_selected.insert(v);
        for (const auto& [v, n] : res.sorted_entries()) {
            if (ever_selected.contains(v)) continue;
            auto it = last_seen.find(v);
            if (it != last_seen.end()) CHECK(n >= it->second);
            last_seen[v] = n;
        }
    }
}

TEST_SUITE_END();
