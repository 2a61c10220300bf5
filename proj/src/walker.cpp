#include "dynembed/walker.hpp"

#include <algorithm>

namespace dynembed {

namespace {
constexpr std::uint64_t kWalkStream = 0x77616c6bULL;  // per-walk seed derivation tag

std::uint64_t pair_key(NodeId center, NodeId context) {
    return (static_cast<std::uint64_t>(center) << 32) | context;
}
}  // namespace

std::uint64_t PairCorpus::count(NodeId center, NodeId context) const {
    Pair probe{center, context, 0};
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), probe,
                               [](const Pair& a, const Pair& b) {
                                   return std::make_pair(a.center, a.context) <
                                          std::make_pair(b.center, b.context);
                               });
    if (it == pairs_.end() || it->center != center || it->context != context) return 0;
    return it->count;
}

void PairCorpusBuilder::add_pair(NodeId center, NodeId context, std::uint64_t count) {
    if (count > 0) counts_[pair_key(center, context)] += count;
}

void PairCorpusBuilder::add_walk(std::span<const NodeId> walk, int window) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(walk.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - window);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + window);
        for (std::ptrdiff_t j = lo; j <= hi; ++j) {
            if (j == i) continue;
            counts_[pair_key(walk[i], walk[j])] += 1;
        }
    }
}

PairCorpus PairCorpusBuilder::build() const {
    PairCorpus corpus;
    corpus.pairs_.reserve(counts_.size());
    for (const auto& [key, count] : counts_) {
        corpus.pairs_.push_back(
            {static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffULL), count});
        corpus.total_ += count;
        corpus.frequency_[static_cast<NodeId>(key >> 32)] += count;
        corpus.frequency_[static_cast<NodeId>(key & 0xffffffffULL)] += count;
    }
    std::sort(corpus.pairs_.begin(), corpus.pairs_.end(), [](const auto& a, const auto& b) {
        return std::make_pair(a.center, a.context) < std::make_pair(b.center, b.context);
    });
    corpus.frequency_items_.assign(corpus.frequency_.begin(), corpus.frequency_.end());
    std::sort(corpus.frequency_items_.begin(), corpus.frequency_items_.end());
    return corpus;
}

std::vector<NodeId> random_walk(const Snapshot& snapshot, NodeId start, int length, Rng& rng) {
    std::vector<NodeId> walk;
    walk.reserve(static_cast<std::size_t>(std::max(length, 1)));
    walk.push_back(start);
    NodeId at = start;
    while (static_cast<int>(walk.size()) < length) {
        auto nbrs = snapshot.neighbors(at);
        if (nbrs.empty()) break;  // dead end truncates, no restart
        at = nbrs[rng.below(nbrs.size())];
        walk.push_back(at);
    }
    return walk;
}

PairCorpus generate_corpus(const Snapshot& snapshot, std::span<const NodeId> selected,
                           const WalkConfig& cfg, std::vector<std::vector<NodeId>>* walk_log) {
    std::vector<NodeId> order(selected.begin(), selected.end());
    std::sort(order.begin(), order.end());

    PairCorpusBuilder builder;
    const Rng base(cfg.seed);
    for (NodeId start : order) {
        for (int i = 0; i < cfg.walks_per_node; ++i) {
            Rng walk_rng = base.derive(kWalkStream ^ start, static_cast<std::uint64_t>(i));
            auto walk = random_walk(snapshot, start, cfg.walk_length, walk_rng);
            builder.add_walk(walk, cfg.window);
            if (walk_log) walk_log->push_back(std::move(walk));
        }
    }
    return builder.build();
}

}  // namespace dynembed
