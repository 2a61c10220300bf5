#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynembed/error.hpp"
#include "dynembed/graph.hpp"

namespace dynembed {

// Published node vectors (one d-dimensional vector per node).
class Embedding {
  public:
    Embedding() = default;
    explicit Embedding(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }
    bool contains(NodeId v) const { return vectors_.contains(v); }

    std::span<const float> vec(NodeId v) const {
        auto it = vectors_.find(v);
        if (it == vectors_.end())
            throw MissingNodeError("node " + std::to_string(v) + " has no embedding");
        return it->second;
    }

    void set(NodeId v, std::vector<float> values) { vectors_[v] = std::move(values); }

    // Node ids, ascending.
    std::vector<NodeId> nodes_sorted() const;

  private:
    int dim_ = 0;
    std::unordered_map<NodeId, std::vector<float>> vectors_;
};

// word2vec text convention: "N d" header, then "label f_1 ... f_d" per node.
// Floats are written shortest-round-trip so a load restores the exact values.
void write_embedding_text(const Embedding& emb, const NodeInterner& interner,
                          const std::string& path);
Embedding load_embedding_text(const std::string& path, NodeInterner& interner);

}  // namespace dynembed
