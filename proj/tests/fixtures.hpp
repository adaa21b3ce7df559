#pragma once

#include <string>
#include <vector>

#include "hwm/hypergraph.hpp"

namespace hwm::testing {

/// The running worked example: three vertices over {(a,3),(b,2)} with edges
/// h1={v1^1,v3^3}, h2={v1^2,v2^1,v3^2}, h3={v1^3,v2^2}, h4={v3^1}.
inline Hypergraph example1_graph() {
    Hypergraph g;
    g.alphabet = RankedAlphabet({{"a", 3}, {"b", 2}});
    g.vertices = {{"v1", "a"}, {"v2", "b"}, {"v3", "a"}};
    g.hyperedges = {
        {{"v1", 1}, {"v3", 3}},
        {{"v1", 2}, {"v2", 1}, {"v3", 2}},
        {{"v1", 3}, {"v2", 2}},
        {{"v3", 1}},
    };
    return g;
}

inline Hypergraph single_vertex_graph(const std::string& symbol, int arity) {
    Hypergraph g;
    g.alphabet = RankedAlphabet({{symbol, arity}});
    g.vertices = {{"v", symbol}};
    for (int s = 1; s <= arity; ++s) g.hyperedges.push_back({{"v", s}});
    return g;
}

} // namespace hwm::testing
