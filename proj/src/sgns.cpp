#include "dynembed/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <thread>

#include "dynembed/sgns_math.hpp"

namespace dynembed {

namespace {
constexpr char kModelMagic[8] = {'D', 'Y', 'N', 'E', 'M', 'B', '0', '1'};
constexpr std::uint64_t kEpochStream = 0x65706f6368ULL;
constexpr std::uint64_t kNegStream = 0x6e656773ULL;
constexpr int kNegativeRedrawAttempts = 8;

// Sixteen independent accumulator lanes; a plain reduction loop cannot be
// vectorized under strict FP semantics and costs 8x as much.
inline float dotf(const float* __restrict a, const float* __restrict b, int d) {
    float lanes[16] = {0};
    int i = 0;
    for (; i + 16 <= d; i += 16)
        for (int j = 0; j < 16; ++j) lanes[j] += a[i + j] * b[i + j];
    float acc = 0.f;
    for (int j = 0; j < 16; ++j) acc += lanes[j];
    for (; i < d; ++i) acc += a[i] * b[i];
    return acc;
}

// Gradient-ascent step for one (center, rows[0]=context, rows[1..]=negatives)
// occurrence. All coefficients come from the pre-update vectors, so the
// applied change equals lr times the exact gradient even with repeated
// negatives. coeff_buf and grad_buf must hold n_rows and d floats.
inline void pair_step(float* __restrict center, float* const* rows, std::size_t n_rows, int d,
                      float lr, float* __restrict coeff_buf, float* __restrict grad_buf) {
    coeff_buf[0] = (1.f - sgnsmath::sigmoid(dotf(center, rows[0], d))) * lr;
    for (std::size_t k = 1; k < n_rows; ++k)
        coeff_buf[k] = -sgnsmath::sigmoid(dotf(center, rows[k], d)) * lr;

    for (int i = 0; i < d; ++i) grad_buf[i] = 0.f;
    for (std::size_t k = 0; k < n_rows; ++k) {
        const float g = coeff_buf[k];
        const float* __restrict row = rows[k];
        for (int i = 0; i < d; ++i) grad_buf[i] += g * row[i];
    }
    for (std::size_t k = 0; k < n_rows; ++k) {
        const float g = coeff_buf[k];
        float* __restrict row = rows[k];
        for (int i = 0; i < d; ++i) row[i] += g * center[i];
    }
    for (int i = 0; i < d; ++i) center[i] += grad_buf[i];
}

}  // namespace

EmbeddingModel EmbeddingModel::random_init(std::span<const NodeId> nodes, int dim, int negatives,
                                           Rng& rng) {
    if (dim < 1) throw InvalidArgumentError("embedding dimension must be >= 1");
    EmbeddingModel model(dim, negatives);
    std::vector<NodeId> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    for (NodeId v : sorted) model.add_node(v, rng);
    return model;
}

void EmbeddingModel::add_node(NodeId v, Rng& rng) {
    if (contains(v)) throw DuplicateNodeError("node " + std::to_string(v) + " already in vocabulary");
    if (v >= row_of_.size()) row_of_.resize(v + 1, -1);
    row_of_[v] = static_cast<std::int64_t>(node_of_row_.size());
    node_of_row_.push_back(v);
    const float bound = 0.5f / static_cast<float>(dim_);
    for (int i = 0; i < dim_; ++i) input_.push_back(rng.uniform(-bound, bound));
    output_.insert(output_.end(), dim_, 0.f);
}

void EmbeddingModel::extend_vocab(std::span<const NodeId> new_nodes, Rng& rng) {
    std::vector<NodeId> sorted(new_nodes.begin(), new_nodes.end());
    std::sort(sorted.begin(), sorted.end());
    for (NodeId v : sorted) add_node(v, rng);
}

std::vector<NodeId> EmbeddingModel::vocab_sorted() const {
    std::vector<NodeId> nodes = node_of_row_;
    std::sort(nodes.begin(), nodes.end());
    return nodes;
}

Embedding EmbeddingModel::embeddings() const {
    Embedding emb(dim_);
    for (NodeId v : node_of_row_) {
        const float* in = input_row(v);
        const float* out = output_row(v);
        std::vector<float> sum(dim_);
        for (int i = 0; i < dim_; ++i) sum[i] = in[i] + out[i];
        emb.set(v, std::move(sum));
    }
    return emb;
}

NegativeTable::NegativeTable(const PairCorpus& corpus, double power) {
    // Vose alias method: exact probabilities, O(1) draws.
    std::vector<double> weights;
    double total = 0.0;
    for (const auto& [node, freq] : corpus.frequency_items()) {
        const double w = std::pow(static_cast<double>(freq), power);
        nodes_.push_back(node);
        weights.push_back(w);
        total += w;
    }
    const std::size_t n = nodes_.size();
    accept_.assign(n, 1.0);
    alias_.assign(n, 0);
    if (n == 0) return;

    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = weights[i] * static_cast<double>(n) / total;
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        const std::uint32_t s = small.back();
        const std::uint32_t l = large.back();
        small.pop_back();
        large.pop_back();
        accept_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    for (std::uint32_t i : large) accept_[i] = 1.0;
    for (std::uint32_t i : small) accept_[i] = 1.0;
}

NodeId NegativeTable::draw(Rng& rng) const {
    const std::size_t slot = static_cast<std::size_t>(rng.below(nodes_.size()));
    return rng.unit() < accept_[slot] ? nodes_[slot] : nodes_[alias_[slot]];
}

bool NegativeTable::supports(NodeId v) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

void sgd_pair(EmbeddingModel& model, NodeId center, NodeId context,
              std::span<const NodeId> negatives, float lr) {
    const int d = model.dim();
    std::vector<float*> rows(1 + negatives.size());
    rows[0] = model.output_row(context);
    for (std::size_t k = 0; k < negatives.size(); ++k)
        rows[k + 1] = model.output_row(negatives[k]);
    std::vector<float> coeffs(rows.size());
    std::vector<float> grad(d);
    pair_step(model.input_row(center), rows.data(), rows.size(), d, lr, coeffs.data(),
              grad.data());
}

namespace {

// Flat occurrence list: one pair index per occurrence, count-weighted.
std::vector<std::uint32_t> occurrence_list(const PairCorpus& corpus) {
    std::vector<std::uint32_t> occ;
    occ.reserve(corpus.total_pairs());
    for (std::size_t i = 0; i < corpus.pairs().size(); ++i) {
        for (std::uint64_t c = 0; c < corpus.pairs()[i].count; ++c)
            occ.push_back(static_cast<std::uint32_t>(i));
    }
    return occ;
}

struct TrainContext {
    EmbeddingModel* model;
    const PairCorpus* corpus;
    const NegativeTable* table;
    const TrainConfig* cfg;
    std::uint64_t total_steps;
    std::atomic<std::uint64_t> processed{0};
};

void train_range(TrainContext& ctx, std::span<const std::uint32_t> occ, Rng rng) {
    EmbeddingModel& model = *ctx.model;
    const auto& pairs = ctx.corpus->pairs();
    const int d = model.dim();
    const int m = model.negatives();
    const double lr_start = ctx.cfg->lr_start;
    const double lr_slope =
        (ctx.cfg->lr_end - ctx.cfg->lr_start) / static_cast<double>(std::max<std::uint64_t>(ctx.total_steps - 1, 1));

    std::vector<float*> rows(1 + m);
    std::vector<float> coeffs(1 + m);
    std::vector<float> grad(d);

    constexpr std::uint64_t kBatch = 64;
    std::uint64_t local = 0;
    std::uint64_t base = ctx.processed.fetch_add(std::min<std::uint64_t>(kBatch, occ.size()),
                                                 std::memory_order_relaxed);
    for (std::size_t idx = 0; idx < occ.size(); ++idx) {
        if (local == kBatch) {
            const std::uint64_t grab = std::min<std::uint64_t>(kBatch, occ.size() - idx);
            base = ctx.processed.fetch_add(grab, std::memory_order_relaxed);
            local = 0;
        }
        const float lr = static_cast<float>(lr_start + lr_slope * static_cast<double>(base + local));
        ++local;

        const auto& pair = pairs[occ[idx]];
        rows[0] = model.output_row(pair.context);
        std::size_t n_rows = 1;
        for (int k = 0; k < m; ++k) {
            NodeId neg = kInvalidNode;
            for (int attempt = 0; attempt < kNegativeRedrawAttempts; ++attempt) {
                const NodeId candidate = ctx.table->draw(rng);
                if (candidate != pair.context) {
                    neg = candidate;
                    break;
                }
            }
            if (neg == kInvalidNode) continue;  // all attempts hit the context
            rows[n_rows++] = model.output_row(neg);
        }
        pair_step(model.input_row(pair.center), rows.data(), n_rows, d, lr, coeffs.data(),
                  grad.data());
    }
}

}  // namespace

void train(EmbeddingModel& model, const PairCorpus& corpus, const NegativeTable& table,
           const TrainConfig& cfg) {
    if (corpus.empty()) throw EmptyCorpusError("training corpus has no pairs");
    for (const auto& pair : corpus.pairs()) {
        if (!model.contains(pair.center) || !model.contains(pair.context))
            throw MissingNodeError("corpus node missing from vocabulary; extend_vocab first");
    }

    auto occ = occurrence_list(corpus);
    TrainContext ctx{&model, &corpus, &table, &cfg,
                     static_cast<std::uint64_t>(occ.size()) * static_cast<std::uint64_t>(cfg.epochs)};

    const Rng base(cfg.seed);
    const int threads = std::max(1, cfg.threads);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        Rng shuffle_rng = base.derive(kEpochStream, static_cast<std::uint64_t>(epoch));
        shuffle(occ, shuffle_rng);
        if (threads == 1) {
            train_range(ctx, occ, base.derive(kNegStream, static_cast<std::uint64_t>(epoch)));
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (occ.size() + threads - 1) / threads;
            for (int tid = 0; tid < threads; ++tid) {
                const std::size_t lo = std::min(occ.size(), chunk * tid);
                const std::size_t hi = std::min(occ.size(), lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back([&ctx, &occ, &base, epoch, tid, lo, hi] {
                    train_range(ctx, std::span<const std::uint32_t>(occ).subspan(lo, hi - lo),
                                base.derive(kNegStream ^ (0x1000ULL + tid),
                                            static_cast<std::uint64_t>(epoch)));
                });
            }
            for (auto& t : pool) t.join();
        }
    }
}

void save_model(const EmbeddingModel& model, const NodeInterner& interner,
                const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(kModelMagic, sizeof(kModelMagic));
    const auto nodes = model.vocab_sorted();
    const std::uint32_t header[3] = {static_cast<std::uint32_t>(nodes.size()),
                                     static_cast<std::uint32_t>(model.dim()),
                                     static_cast<std::uint32_t>(model.negatives())};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    for (NodeId v : nodes) {
        const std::string& label = interner.label(v);
        const auto len = static_cast<std::uint32_t>(label.size());
        out.write(reinterpret_cast<const char*>(&len), sizeof(len));
        out.write(label.data(), len);
        out.write(reinterpret_cast<const char*>(model.input_row(v)), sizeof(float) * model.dim());
        out.write(reinterpret_cast<const char*>(model.output_row(v)), sizeof(float) * model.dim());
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

EmbeddingModel load_model(const std::string& path, NodeInterner& interner) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model '" + path + "'");
    char magic[sizeof(kModelMagic)];
    std::uint32_t header[3];
    in.read(magic, sizeof(magic));
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!in || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0)
        throw ParseError("'" + path + "' is not a model checkpoint");

    EmbeddingModel model(static_cast<int>(header[1]), static_cast<int>(header[2]));
    const int d = model.dim();
    std::vector<float> row_in(d), row_out(d);
    std::string label;
    for (std::uint32_t i = 0; i < header[0]; ++i) {
        std::uint32_t len = 0;
        in.read(reinterpret_cast<char*>(&len), sizeof(len));
        label.resize(len);
        in.read(label.data(), len);
        in.read(reinterpret_cast<char*>(row_in.data()), sizeof(float) * d);
        in.read(reinterpret_cast<char*>(row_out.data()), sizeof(float) * d);
        if (!in) throw ParseError("truncated model checkpoint '" + path + "'");
        model.insert_row(interner.intern(label), row_in, row_out);
    }
    return model;
}

void EmbeddingModel::insert_row(NodeId v, std::span<const float> input,
                                std::span<const float> output) {
    if (contains(v)) throw DuplicateNodeError("node " + std::to_string(v) + " already in vocabulary");
    if (input.size() != static_cast<std::size_t>(dim_) ||
        output.size() != static_cast<std::size_t>(dim_))
        throw InvalidArgumentError("row size does not match model dimension");
    if (v >= row_of_.size()) row_of_.resize(v + 1, -1);
    row_of_[v] = static_cast<std::int64_t>(node_of_row_.size());
    node_of_row_.push_back(v);
    input_.insert(input_.end(), input.begin(), input.end());
    output_.insert(output_.end(), output.begin(), output.end());
}

}  // namespace dynembed
