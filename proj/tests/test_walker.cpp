#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <map>

#include "dynembed/walker.hpp"
#include "test_util.hpp"

using namespace dynembed;

TEST_SUITE_BEGIN("walker");

TEST_CASE("isolated start yields the length-1 walk") {
    const auto snap = testutil::make_snapshot({{1, 2}}, 0);
    Rng rng(1);
    CHECK(random_walk(snap, 0, 80, rng) == std::vector<NodeId>{0});
}

TEST_CASE("walk on a single edge is forced to alternate") {
    const auto snap = testutil::make_snapshot({{0, 1}}, 0);
    Rng rng(1);
    CHECK(random_walk(snap, 0, 3, rng) == std::vector<NodeId>{0, 1, 0});
}

TEST_CASE("walk has exactly l nodes when no dead end exists") {
    Rng rng(2);
    const auto snap = testutil::from_edge_set(testutil::grid_edges(6, 6), 0);
    for (int i = 0; i < 10; ++i) {
        const auto walk = random_walk(snap, static_cast<NodeId>(rng.below(36)), 40, rng);
        CHECK(walk.size() == 40);
        for (std::size_t j = 1; j < walk.size(); ++j) CHECK(snap.has_edge(walk[j - 1], walk[j]));
    }
}

TEST_CASE("next-hop distribution on a triangle is uniform (chi-square)") {
    const auto snap = testutil::make_snapshot({{0, 1}, {1, 2}, {0, 2}}, 0);
    Rng rng(3);
    const int steps = 30000;
    const auto walk = random_walk(snap, 0, steps + 1, rng);
    REQUIRE(walk.size() == static_cast<std::size_t>(steps) + 1);
    // every transition chooses between exactly two neighbors
    std::size_t lower = 0, total = 0;
    for (std::size_t i = 1; i < walk.size(); ++i) {
        auto nbrs = snap.neighbors(walk[i - 1]);
        REQUIRE(nbrs.size() == 2);
        if (walk[i] == nbrs[0]) ++lower;
        ++total;
    }
    const double expected = static_cast<double>(total) / 2.0;
    const double d0 = static_cast<double>(lower) - expected;
    const double d1 = static_cast<double>(total - lower) - expected;
    const double chi2 = d0 * d0 / expected + d1 * d1 / expected;
    CHECK(chi2 < 6.635);  // chi-square 99% bound, 1 dof
}

TEST_CASE("window pair enumeration on a tiny walk") {
    PairCorpusBuilder builder;
    const std::vector<NodeId> walk{10, 11, 12};  // a, b, c
    builder.add_walk(walk, 1);
    const PairCorpus corpus = builder.build();
    CHECK(corpus.total_pairs() == 4);
    CHECK(corpus.count(10, 11) == 1);
    CHECK(corpus.count(11, 10) == 1);
    CHECK(corpus.count(11, 12) == 1);
    CHECK(corpus.count(12, 11) == 1);
    CHECK(corpus.count(10, 12) == 0);
    CHECK(corpus.frequency(11) == 4);  // twice center, twice context
}

TEST_CASE("a single isolated selected node produces an empty corpus") {
    const auto snap = testutil::make_snapshot({{1, 2}}, 0);
    const std::vector<NodeId> selected{5};
    const PairCorpus corpus = generate_corpus(snap, selected, {2, 10, 2, 77});
    CHECK(corpus.empty());
}

TEST_CASE("corpus equals a naive re-enumeration of the recorded walks") {
    Rng rng(5);
    const auto snap = testutil::from_edge_set(testutil::random_edge_set(10, 0.35, rng), 0);
    WalkConfig cfg{2, 5, 2, 123};
    std::vector<std::vector<NodeId>> walks;
    const PairCorpus corpus = generate_corpus(snap, snap.nodes(), cfg, &walks);

    CHECK(walks.size() == snap.node_count() * 2);
    std::map<std::pair<NodeId, NodeId>, std::uint64_t> naive;
    for (const auto& walk : walks) {
        const int n = static_cast<int>(walk.size());
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j || std::abs(i - j) > cfg.window) continue;
                naive[{walk[i], walk[j]}] += 1;
            }
        }
    }
    std::uint64_t naive_total = 0;
    for (const auto& [pair, count] : naive) {
        CHECK(corpus.count(pair.first, pair.second) == count);
        naive_total += count;
    }
    CHECK(corpus.total_pairs() == naive_total);
    CHECK(corpus.pairs().size() == naive.size());

    // no pair the naive double loop did not produce
    for (const auto& pair : corpus.pairs())
        CHECK(naive.contains({pair.center, pair.context}));
}

TEST_CASE("full-length walks emit 2(l*w - w(w+1)/2) pairs") {
    // cycle graph: no dead ends, every walk reaches full length
    testutil::EdgeSet edges;
    for (NodeId v = 0; v < 12; ++v) edges.insert(testutil::norm_edge(v, (v + 1) % 12));
    const auto snap = testutil::from_edge_set(edges, 0);

    const int l = 20, w = 4;
    const std::vector<NodeId> selected{0};
    const PairCorpus corpus = generate_corpus(snap, selected, {3, l, w, 9});
    const std::uint64_t per_walk = 2ull * (l * w - w * (w + 1) / 2);
    CHECK(corpus.total_pairs() == 3 * per_walk);
}

TEST_CASE("node frequencies sum to twice total pairs; all-node coverage") {
    const auto snap = testutil::from_edge_set(testutil::grid_edges(5, 4), 0);
    const PairCorpus corpus = generate_corpus(snap, snap.nodes(), {3, 10, 3, 10});
    std::uint64_t freq_total = 0;
    for (const auto& [v, f] : corpus.frequency_items()) freq_total += f;
    CHECK(freq_total == 2 * corpus.total_pairs());
    // connected graph, every node starts walks: frequency > 0 everywhere
    for (NodeId v : snap.nodes()) CHECK(corpus.frequency(v) > 0);
}

TEST_CASE("same seed, same walks; different seed, different walks") {
    Rng rng(8);
    const auto snap = testutil::from_edge_set(testutil::random_edge_set(15, 0.3, rng), 0);
    std::vector<std::vector<NodeId>> walks_a, walks_b, walks_c;
    generate_corpus(snap, snap.nodes(), {2, 10, 2, 42}, &walks_a);
    generate_corpus(snap, snap.nodes(), {2, 10, 2, 42}, &walks_b);
    generate_corpus(snap, snap.nodes(), {2, 10, 2, 43}, &walks_c);
    CHECK(walks_a == walks_b);
    CHECK(walks_a != walks_c);
}

TEST_SUITE_END();
