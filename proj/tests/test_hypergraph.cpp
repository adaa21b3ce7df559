#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>

#include "fixtures.hpp"
#include "hwm/error.hpp"
#include "hwm/hypergraph.hpp"

using namespace hwm;
using hwm::testing::example1_graph;
using hwm::testing::single_vertex_graph;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an hwm::Error");
    return ErrorCode::SchemaError;
}

} // namespace

TEST_CASE("ranked alphabet invariants") {
    RankedAlphabet alphabet({{"a", 3}, {"b", 2}});
    CHECK(alphabet.arity("a") == 3);
    CHECK(alphabet.contains("b"));
    CHECK_FALSE(alphabet.contains("c"));
    CHECK(code_of([] { RankedAlphabet({{"a", 0}}); }) == ErrorCode::ArityMismatch);
    CHECK(code_of([] { RankedAlphabet({{"a", 1}, {"a", 2}}); }) == ErrorCode::DuplicateSymbol);
    CHECK(code_of([&] { alphabet.arity("zz"); }) == ErrorCode::UnknownSymbol);
}

TEST_CASE("validate accepts the worked example graph") {
    CHECK_NOTHROW(validate_hypergraph(example1_graph()));
}

TEST_CASE("validate accepts a singleton-edge partition") {
    CHECK_NOTHROW(validate_hypergraph(single_vertex_graph("a", 3)));
}

TEST_CASE("validate reports the missing port") {
    Hypergraph g = single_vertex_graph("a", 3);
    g.hyperedges.pop_back(); // drop {(v,3)}
    try {
        validate_hypergraph(g);
        FAIL("expected MissingPort");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingPort);
        CHECK(std::string(e.what()).find("(v,3)") != std::string::npos);
    }
}

TEST_CASE("validate rejects each structural violation") {
    SUBCASE("duplicate port") {
        Hypergraph g = single_vertex_graph("a", 2);
        g.hyperedges = {{{"v", 1}, {"v", 2}}, {{"v", 2}}};
        CHECK(code_of([&] { validate_hypergraph(g); }) == ErrorCode::DuplicatePort);
    }
    SUBCASE("unknown symbol") {
        Hypergraph g = single_vertex_graph("a", 1);
        g.vertices[0].label = "zz";
        CHECK(code_of([&] { validate_hypergraph(g); }) == ErrorCode::UnknownSymbol);
    }
    SUBCASE("empty hyperedge") {
        Hypergraph g = single_vertex_graph("a", 1);
        g.hyperedges.push_back({});
        CHECK(code_of([&] { validate_hypergraph(g); }) == ErrorCode::EmptyHyperedge);
    }
    SUBCASE("arity out of range") {
        Hypergraph g = single_vertex_graph("a", 2);
        g.hyperedges = {{{"v", 1}}, {{"v", 3}}};
        CHECK(code_of([&] { validate_hypergraph(g); }) == ErrorCode::ArityMismatch);
    }
    SUBCASE("duplicate vertex id") {
        Hypergraph g = single_vertex_graph("a", 1);
        g.vertices.push_back({"v", "a"});
        CHECK(code_of([&] { validate_hypergraph(g); }) == ErrorCode::DuplicateVertex);
    }
    SUBCASE("port of an unknown vertex") {
        Hypergraph g = single_vertex_graph("a", 1);
        g.hyperedges = {{{"w", 1}}};
        CHECK(code_of([&] { validate_hypergraph(g); }) == ErrorCode::UnknownVertex);
    }
    SUBCASE("empty vertex set") {
        Hypergraph g;
        g.alphabet = RankedAlphabet({{"a", 1}});
        CHECK(code_of([&] { validate_hypergraph(g); }) == ErrorCode::EmptyGraph);
    }
}

TEST_CASE("partition property: edge sizes sum to total arity") {
    Hypergraph g = example1_graph();
    std::size_t edge_total = 0;
    for (const auto& h : g.hyperedges) edge_total += h.size();
    CHECK(edge_total == g.port_count());
}

TEST_CASE("connected components") {
    Hypergraph g = example1_graph();
    CHECK(connected_components(g).count == 1); // union-find over its 4 edges
    CHECK(is_connected(g));

    Hypergraph gg = disjoint_union(g, g);
    CHECK_NOTHROW(validate_hypergraph(gg));
    CHECK(connected_components(gg).count == 2);

    CHECK(connected_components(single_vertex_graph("a", 1)).count == 1);
}

namespace {

// one isolated vertex carrying example1's alphabet, ports in singleton edges
Hypergraph isolated_a_vertex() {
    Hypergraph g;
    g.alphabet = example1_graph().alphabet;
    g.vertices = {{"w", "a"}};
    g.hyperedges = {{{"w", 1}}, {{"w", 2}}, {{"w", 3}}};
    return g;
}

} // namespace

TEST_CASE("component indices are contiguous and consistent") {
    Hypergraph g = disjoint_union(example1_graph(), isolated_a_vertex());
    ComponentPartition parts = connected_components(g);
    CHECK(parts.count == 2);
    for (const auto& [id, index] : parts.assignment) {
        CHECK(index >= 0);
        CHECK(index < parts.count);
    }
    for (const auto& edge : g.hyperedges)
        for (const auto& p : edge)
            CHECK(parts.assignment.at(p.vertex) == parts.assignment.at(edge[0].vertex));
}

TEST_CASE("components are invariant under reordering") {
    Hypergraph g = example1_graph();
    Hypergraph permuted = g;
    std::reverse(permuted.vertices.begin(), permuted.vertices.end());
    std::reverse(permuted.hyperedges.begin(), permuted.hyperedges.end());
    CHECK(connected_components(permuted).count == connected_components(g).count);
}

TEST_CASE("disjoint union remaps colliding ids and adds counts") {
    Hypergraph g = example1_graph();
    Hypergraph gg = disjoint_union(g, g);
    CHECK(gg.vertices.size() == 2 * g.vertices.size());
    CHECK(gg.hyperedges.size() == 2 * g.hyperedges.size());

    Hypergraph with_single = disjoint_union(g, isolated_a_vertex());
    CHECK_FALSE(is_connected(with_single));
    CHECK(connected_components(with_single).count ==
          connected_components(g).count + 1);

    Hypergraph other;
    other.alphabet = RankedAlphabet({{"c", 1}});
    other.vertices = {{"v", "c"}};
    other.hyperedges = {{{"v", 1}}};
    CHECK(code_of([&] { disjoint_union(g, other); }) == ErrorCode::AlphabetMismatch);
}

TEST_CASE("canonical form sorts and is idempotent") {
    Hypergraph g = example1_graph();
    std::reverse(g.vertices.begin(), g.vertices.end());
    std::reverse(g.hyperedges.begin(), g.hyperedges.end());
    for (auto& h : g.hyperedges) std::reverse(h.begin(), h.end());

    Hypergraph c = canonical_form(g);
    CHECK_NOTHROW(validate_hypergraph(c));
    CHECK(std::is_sorted(c.vertices.begin(), c.vertices.end(),
                         [](const Vertex& a, const Vertex& b) { return a.id < b.id; }));
    Hypergraph c2 = canonical_form(c);
    CHECK(c.vertices == c2.vertices);
    CHECK(c.hyperedges == c2.hyperedges);
    CHECK(c.hyperedges == canonical_form(example1_graph()).hyperedges);
}
