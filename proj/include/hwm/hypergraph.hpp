#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "hwm/alphabet.hpp"

namespace hwm {

/// A port (v, j): slot j of vertex v, 1 <= j <= arity(label(v)).
struct PortRef {
    std::string vertex;
    int slot = 1;

    auto operator<=>(const PortRef&) const = default;
};

std::string to_string(const PortRef& port);

struct Vertex {
    std::string id;
    std::string label;

    auto operator<=>(const Vertex&) const = default;
};

using Hyperedge = std::vector<PortRef>;

/// Labeled hypergraph: vertices plus a partition of the port set into
/// hyperedges. Values are plain data; use validate_hypergraph to check the
/// partition invariants.
struct Hypergraph {
    RankedAlphabet alphabet;
    std::vector<Vertex> vertices;
    std::vector<Hyperedge> hyperedges;

    int vertex_arity(const std::string& id) const;
    const Vertex& vertex(const std::string& id) const;
    std::size_t port_count() const;
};

struct ComponentPartition {
    std::map<std::string, int> assignment; // vertex id -> component index
    int count = 0;
};

/// Checks all structural invariants; throws Error naming the first violation
/// and the offending vertex/port.
void validate_hypergraph(const Hypergraph& g);

/// Equivalence classes of "share a hyperedge", transitively closed.
/// Component indices follow first appearance in vertex order.
ComponentPartition connected_components(const Hypergraph& g);

bool is_connected(const Hypergraph& g);

/// Disjoint union; vertex ids of g2 are remapped (suffix ~k) when they
/// collide with ids of g1. Throws AlphabetMismatch.
Hypergraph disjoint_union(const Hypergraph& g1, const Hypergraph& g2);

/// Sorted vertices, sorted ports within each hyperedge, sorted hyperedge
/// list. Evaluation semantics are invariant under this reordering.
Hypergraph canonical_form(const Hypergraph& g);

bool all_edges_binary(const Hypergraph& g);

} // namespace hwm
