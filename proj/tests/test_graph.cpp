#include <doctest.h>

#include <set>

#include "dynembed/graph.hpp"
#include "test_util.hpp"

using namespace dynembed;
using testutil::EdgeSet;

TEST_SUITE_BEGIN("graph");

TEST_CASE("builder collapses duplicates and drops self loops") {
    SnapshotBuilder builder;
    builder.add_edge(0, 1);
    builder.add_edge(1, 0);
    builder.add_edge(0, 1);
    builder.add_edge(2, 2);
    const Snapshot snap = builder.build(0);
    CHECK(snap.edge_count() == 1);
    CHECK(snap.node_count() == 2);
    CHECK(!snap.has_node(2));
    CHECK(snap.has_edge(0, 1));
    CHECK(snap.has_edge(1, 0));
}

TEST_CASE("adjacency is sorted and symmetric, degree sums match") {
    Rng rng(42);
    const auto edges = testutil::random_edge_set(20, 0.3, rng);
    const Snapshot snap = testutil::from_edge_set(edges, 0);

    std::size_t degree_sum = 0;
    for (NodeId u : snap.nodes()) {
        auto nbrs = snap.neighbors(u);
        degree_sum += nbrs.size();
        for (std::size_t i = 0; i + 1 < nbrs.size(); ++i) CHECK(nbrs[i] < nbrs[i + 1]);
        for (NodeId v : nbrs) {
            CHECK(v != u);
            CHECK(snap.has_edge(v, u));
        }
        CHECK(snap.degree(u) == nbrs.size());
    }
    CHECK(degree_sum == 2 * snap.edge_count());
}

TEST_CASE("compute_delta: single added edge") {
    const auto prev = testutil::make_snapshot({{0, 1}}, 0);
    const auto curr = testutil::make_snapshot({{0, 1}, {1, 2}}, 1);
    const EdgeDelta delta = compute_delta(prev, curr);
    REQUIRE(delta.size() == 1);
    CHECK(delta.changes[0] == EdgeChange{1, 2, EdgeOp::Add});
    CHECK(delta.time_index == 1);
}

TEST_CASE("compute_delta: identical snapshots give an empty delta") {
    const auto snap = testutil::make_snapshot({{0, 1}, {2, 3}}, 0);
    CHECK(compute_delta(snap, snap).empty());
}

TEST_CASE("compute_delta matches brute-force symmetric difference on random graphs") {
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const auto e_prev = testutil::random_edge_set(20, 0.2, rng);
        const auto e_curr = testutil::random_edge_set(20, 0.2, rng);
        const auto prev = testutil::from_edge_set(e_prev, 0);
        const auto curr = testutil::from_edge_set(e_curr, 1);

        const EdgeDelta delta = compute_delta(prev, curr);

        EdgeSet adds, dels;
        for (const auto& e : e_curr)
            if (!e_prev.contains(e)) adds.insert(e);
        for (const auto& e : e_prev)
            if (!e_curr.contains(e)) dels.insert(e);

        EdgeSet got_adds, got_dels;
        for (const auto& c : delta.changes) {
            CHECK(c.u < c.v);
            (c.op == EdgeOp::Add ? got_adds : got_dels).insert({c.u, c.v});
        }
        CHECK(got_adds == adds);
        CHECK(got_dels == dels);
        CHECK(delta.size() == adds.size() + dels.size());

        // sorted by (u, v)
        for (std::size_t i = 0; i + 1 < delta.changes.size(); ++i) {
            const auto& a = delta.changes[i];
            const auto& b = delta.changes[i + 1];
            CHECK(std::make_pair(a.u, a.v) < std::make_pair(b.u, b.v));
        }

        // round trip
        const Snapshot rebuilt = apply_delta(prev, delta);
        CHECK(rebuilt.edges() == curr.edges());
    }
}

TEST_CASE("apply_delta: removal empties the graph") {
    const auto prev = testutil::make_snapshot({{0, 1}}, 0);
    EdgeDelta delta{1, {{0, 1, EdgeOp::Del}}};
    const Snapshot out = apply_delta(prev, delta);
    CHECK(out.node_count() == 0);
    CHECK(out.edge_count() == 0);
}

TEST_CASE("apply_delta: builds a path from an empty graph") {
    const Snapshot empty = testutil::make_snapshot({}, 0);
    EdgeDelta delta{1, {{0, 1, EdgeOp::Add}, {1, 2, EdgeOp::Add}}};
    const Snapshot out = apply_delta(empty, delta);
    CHECK(out.edge_count() == 2);
    CHECK(out.has_edge(0, 1));
    CHECK(out.has_edge(1, 2));
    CHECK(!out.has_edge(0, 2));
}

TEST_CASE("apply_delta rejects no-op triples") {
    const auto prev = testutil::make_snapshot({{0, 1}}, 0);
    CHECK_THROWS_AS(apply_delta(prev, EdgeDelta{1, {{0, 1, EdgeOp::Add}}}), NoOpTripleError);
    CHECK_THROWS_AS(apply_delta(prev, EdgeDelta{1, {{1, 2, EdgeOp::Del}}}), NoOpTripleError);
}

TEST_CASE("replaying 50 random deltas equals direct construction") {
    Rng rng(99);
    auto history = testutil::evolve_edge_sets(25, 51, 0.1, 4, 2, rng);
    Snapshot current = testutil::from_edge_set(history[0], 0);
    for (std::size_t t = 1; t < history.size(); ++t) {
        const Snapshot direct = testutil::from_edge_set(history[t], static_cast<int>(t));
        const EdgeDelta delta = compute_delta(current, direct);
        current = apply_delta(current, delta);
        CHECK(current.edges() == direct.edges());
        CHECK(current.time_index() == static_cast<int>(t));
    }
}

TEST_CASE("neighbor_change_count: symmetric difference of neighbor sets") {
    // N_prev(0) = {1,2,3}, N_curr(0) = {1,2,4,5} -> |{3,4,5}| = 3
    const auto prev = testutil::make_snapshot({{0, 1}, {0, 2}, {0, 3}}, 0);
    const auto curr = testutil::make_snapshot({{0, 1}, {0, 2}, {0, 4}, {0, 5}}, 1);
    CHECK(neighbor_change_count(prev, curr, 0) == 3);
}

TEST_CASE("neighbor_change_count: unchanged node scores zero") {
    const auto snap = testutil::make_snapshot({{0, 1}, {1, 2}}, 0);
    CHECK(neighbor_change_count(snap, snap, 1) == 0);
}

TEST_CASE("neighbor_change_count equals incident delta triples on random graphs") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto e_prev = testutil::random_edge_set(15, 0.25, rng);
        const auto e_curr = testutil::random_edge_set(15, 0.25, rng);
        const auto prev = testutil::from_edge_set(e_prev, 0);
        const auto curr = testutil::from_edge_set(e_curr, 1);
        const EdgeDelta delta = compute_delta(prev, curr);

        std::size_t total = 0;
        for (NodeId v = 0; v < 15; ++v) {
            std::size_t incident = 0;
            for (const auto& c : delta.changes)
                if (c.u == v || c.v == v) ++incident;
            CHECK(neighbor_change_count(prev, curr, v) == incident);
            total += incident;
        }
        // every edge change touches exactly two endpoints
        CHECK(total == 2 * delta.size());
    }
}

TEST_CASE("interner hands out dense stable ids") {
    NodeInterner interner;
    CHECK(interner.intern("a") == 0);
    CHECK(interner.intern("b") == 1);
    CHECK(interner.intern("a") == 0);
    CHECK(interner.size() == 2);
    CHECK(interner.label(1) == "b");
    CHECK(!interner.find("c").has_value());
    CHECK(interner.find("b") == NodeId{1});
}

TEST_SUITE_END();
