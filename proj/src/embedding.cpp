#include "dynembed/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace dynembed {

std::vector<NodeId> Embedding::nodes_sorted() const {
    std::vector<NodeId> nodes;
    nodes.reserve(vectors_.size());
    for (const auto& [v, _] : vectors_) nodes.push_back(v);
    std::sort(nodes.begin(), nodes.end());
    return nodes;
}

void write_embedding_text(const Embedding& emb, const NodeInterner& interner,
                          const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << emb.size() << ' ' << emb.dim() << '\n';
    char buf[64];
    for (NodeId v : emb.nodes_sorted()) {
        out << interner.label(v);
        for (float x : emb.vec(v)) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
            out << ' ';
            out.write(buf, ptr - buf);
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

Embedding load_embedding_text(const std::string& path, NodeInterner& interner) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open embedding '" + path + "'");
    std::size_t count = 0;
    int dim = 0;
    if (!(in >> count >> dim) || dim < 1)
        throw ParseError("'" + path + "': bad embedding header");

    Embedding emb(dim);
    std::string label, token;
    for (std::size_t i = 0; i < count; ++i) {
        if (!(in >> label)) throw ParseError("'" + path + "': truncated at row " + std::to_string(i));
        std::vector<float> vec(dim);
        for (int j = 0; j < dim; ++j) {
            if (!(in >> token))
                throw ParseError("'" + path + "': truncated vector for '" + label + "'");
            float x = 0.f;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
            if (ec != std::errc() || ptr != token.data() + token.size())
                throw ParseError("'" + path + "': bad float '" + token + "'");
            vec[j] = x;
        }
        emb.set(interner.intern(label), std::move(vec));
    }
    return emb;
}

}  // namespace dynembed
