#include "hwm/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hwm/error.hpp"

namespace hwm {

std::string to_string(const PortRef& port) {
    return "(" + port.vertex + "," + std::to_string(port.slot) + ")";
}

int Hypergraph::vertex_arity(const std::string& id) const {
    return alphabet.arity(vertex(id).label);
}

const Vertex& Hypergraph::vertex(const std::string& id) const {
    for (const auto& v : vertices)
        if (v.id == id) return v;
    throw Error(ErrorCode::UnknownVertex, "vertex '" + id + "' not in graph");
}

std::size_t Hypergraph::port_count() const {
    std::size_t n = 0;
    for (const auto& v : vertices) n += static_cast<std::size_t>(alphabet.arity(v.label));
    return n;
}

void validate_hypergraph(const Hypergraph& g) {
    if (g.vertices.empty())
        throw Error(ErrorCode::EmptyGraph, "hypergraphs need a nonempty vertex set");

    std::map<std::string, int> arity_of; // vertex id -> arity
    for (const auto& v : g.vertices) {
        if (!g.alphabet.contains(v.label))
            throw Error(ErrorCode::UnknownSymbol,
                        "vertex '" + v.id + "' labeled with unknown symbol '" + v.label + "'");
        if (!arity_of.emplace(v.id, g.alphabet.arity(v.label)).second)
            throw Error(ErrorCode::DuplicateVertex, "vertex id '" + v.id + "' used twice");
    }

    std::set<PortRef> seen;
    for (std::size_t e = 0; e < g.hyperedges.size(); ++e) {
        const auto& edge = g.hyperedges[e];
        if (edge.empty())
            throw Error(ErrorCode::EmptyHyperedge,
                        "hyperedge #" + std::to_string(e) + " is empty");
        for (const auto& port : edge) {
            auto it = arity_of.find(port.vertex);
            if (it == arity_of.end())
                throw Error(ErrorCode::UnknownVertex,
                            "port " + to_string(port) + " references an unknown vertex");
            if (port.slot < 1 || port.slot > it->second)
                throw Error(ErrorCode::ArityMismatch,
                            "port " + to_string(port) + " out of range [1," +
                                std::to_string(it->second) + "]");
            if (!seen.insert(port).second)
                throw Error(ErrorCode::DuplicatePort,
                            "port " + to_string(port) + " covered by two hyperedges");
        }
    }

    for (const auto& v : g.vertices) {
        const int arity = arity_of.at(v.id);
        for (int slot = 1; slot <= arity; ++slot) {
            PortRef p{v.id, slot};
            if (!seen.count(p))
                throw Error(ErrorCode::MissingPort,
                            "port " + to_string(p) + " covered by no hyperedge");
        }
    }
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

ComponentPartition connected_components(const Hypergraph& g) {
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) pos[g.vertices[i].id] = i;

    UnionFind uf(g.vertices.size());
    for (const auto& edge : g.hyperedges) {
        for (std::size_t k = 1; k < edge.size(); ++k)
            uf.unite(pos.at(edge[0].vertex), pos.at(edge[k].vertex));
    }

    ComponentPartition result;
    std::map<std::size_t, int> root_index;
    for (const auto& v : g.vertices) {
        std::size_t root = uf.find(pos.at(v.id));
        auto [it, inserted] = root_index.emplace(root, result.count);
        if (inserted) ++result.count;
        result.assignment[v.id] = it->second;
    }
    return result;
}

bool is_connected(const Hypergraph& g) { return connected_components(g).count == 1; }

Hypergraph disjoint_union(const Hypergraph& g1, const Hypergraph& g2) {
    if (g1.alphabet != g2.alphabet)
        throw Error(ErrorCode::AlphabetMismatch, "disjoint_union needs a shared alphabet");

    std::set<std::string> taken;
    for (const auto& v : g1.vertices) taken.insert(v.id);

    std::map<std::string, std::string> rename;
    for (const auto& v : g2.vertices) {
        std::string candidate = v.id;
        for (int k = 1; taken.count(candidate); ++k)
            candidate = v.id + "~" + std::to_string(k);
        taken.insert(candidate);
        rename[v.id] = candidate;
    }

    Hypergraph out = g1;
    for (const auto& v : g2.vertices) out.vertices.push_back({rename.at(v.id), v.label});
    for (const auto& edge : g2.hyperedges) {
        Hyperedge mapped;
        mapped.reserve(edge.size());
        for (const auto& p : edge) mapped.push_back({rename.at(p.vertex), p.slot});
        out.hyperedges.push_back(std::move(mapped));
    }
    return out;
}

Hypergraph canonical_form(const Hypergraph& g) {
    Hypergraph out = g;
    std::sort(out.vertices.begin(), out.vertices.end(),
              [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
    for (auto& edge : out.hyperedges) std::sort(edge.begin(), edge.end());
    std::sort(out.hyperedges.begin(), out.hyperedges.end());
    return out;
}

bool all_edges_binary(const Hypergraph& g) {
    return std::all_of(g.hyperedges.begin(), g.hyperedges.end(),
                       [](const Hyperedge& h) { return h.size() == 2; });
}

} // namespace hwm
