#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hwm/crosswords.hpp"
#include "hwm/engines.hpp"
#include "hwm/error.hpp"
#include "hwm/generators.hpp"
#include "hwm/tiling.hpp"

using namespace hwm;

namespace {

Crossword sample_2x3() { return parse_crossword("aca\ndbb\n"); }

/// Extracts one connected component as a standalone graph.
Hypergraph component_subgraph(const Hypergraph& g, int component) {
    ComponentPartition parts = connected_components(g);
    Hypergraph out;
    out.alphabet = g.alphabet;
    for (const auto& v : g.vertices)
        if (parts.assignment.at(v.id) == component) out.vertices.push_back(v);
    for (const auto& e : g.hyperedges)
        if (parts.assignment.at(e[0].vertex) == component) out.hyperedges.push_back(e);
    return out;
}

} // namespace

TEST_CASE("crossword parsing") {
    Crossword w = sample_2x3();
    CHECK(w.rows == 2);
    CHECK(w.cols == 3);
    CHECK(w.row(1) == Word{"a", "c", "a"});
    CHECK(w.column(2) == Word{"c", "b"});
    CHECK_THROWS_AS(parse_crossword("ab\nabc\n"), Error);
    CHECK_THROWS_AS(parse_crossword(""), Error);
}

TEST_CASE("crossword graph encoding") {
    Hypergraph g = encode_crossword(sample_2x3());
    CHECK(g.vertices.size() == 6);
    // |E_H| = 2*2 + 2*2 = 8, |E_V| = 3*1 + 3*2 = 9
    CHECK(g.hyperedges.size() == 17);
    CHECK_NOTHROW(validate_hypergraph(g));

    Crossword single;
    single.rows = single.cols = 1;
    single.cells = {{"a"}};
    Hypergraph one = encode_crossword(single);
    CHECK(one.vertices.size() == 1);
    CHECK(one.hyperedges.size() == 4);
    for (const auto& e : one.hyperedges) CHECK(e.size() == 1);

    gen::Rng rng(301);
    for (int trial = 0; trial < 10; ++trial) {
        Crossword random = gen::random_crossword(
            rng, {"a", "b"}, std::uniform_int_distribution<int>(1, 3)(rng),
            std::uniform_int_distribution<int>(1, 3)(rng));
        CHECK_NOTHROW(validate_hypergraph(encode_crossword(random)));
    }
}

TEST_CASE("crossword split components and row isomorphism") {
    CrosswordSplit split = crossword_split(sample_2x3());
    CHECK_NOTHROW(validate_hypergraph(split.horizontal));
    CHECK_NOTHROW(validate_hypergraph(split.vertical));
    CHECK(connected_components(split.horizontal).count == 2); // one per row
    CHECK(connected_components(split.vertical).count == 3);   // one per column

    // each row component is the bare string graph of that row
    Crossword w = sample_2x3();
    ComponentPartition parts = connected_components(split.horizontal);
    for (int m = 1; m <= w.rows; ++m) {
        const int component = parts.assignment.at(std::to_string(m) + ".1");
        Hypergraph row_graph = component_subgraph(split.horizontal, component);
        Hypergraph bare = encode_string_bare(w.row(m), {"a", "b", "c", "d"});
        CHECK(is_isomorphic(row_graph, bare));
    }

    Crossword single;
    single.rows = single.cols = 1;
    single.cells = {{"a"}};
    CrosswordSplit tiny = crossword_split(single);
    CHECK(tiny.horizontal.vertices.size() == 1);
    CHECK(tiny.horizontal.hyperedges.size() == 2);
    CHECK(tiny.vertical.hyperedges.size() == 2);
}

TEST_CASE("trivial one-dimensional combine evaluates to 1 everywhere") {
    RankedAlphabet arity2({{"a", 2}, {"b", 2}});
    HWM unit;
    unit.alphabet = arity2;
    unit.algebra = ProductAlgebra::identity_ones(1);
    SparseTensor t(2);
    t.set(dense_index({1, 1}), 1.0);
    unit.tensors["a"] = t;
    unit.tensors["b"] = t;

    HWM combined = crossword_combine_hwm(unit, unit);
    CHECK(combined.algebra.dim() == 2);
    gen::Rng rng(307);
    for (int trial = 0; trial < 5; ++trial) {
        Crossword w = gen::random_crossword(rng, {"a", "b"}, 2, 2);
        CHECK(approx_equal(eval(combined, encode_crossword(w)).value, Complex(1.0)));
    }
}

TEST_CASE("combined model factorizes over the split") {
    gen::Rng rng(311);
    RankedAlphabet arity2({{"a", 2}, {"b", 2}});
    for (int trial = 0; trial < 15; ++trial) {
        const int d1 = std::uniform_int_distribution<int>(1, 2)(rng);
        const int d2 = std::uniform_int_distribution<int>(1, 2)(rng);
        HWM a = gen::random_hwm(rng, arity2, d1);
        HWM b = gen::random_hwm(rng, arity2, d2);
        HWM c = crossword_combine_hwm(a, b);
        CHECK(c.algebra.dim() == d1 + d2);
        CHECK(c.algebra.symmetry_defect() <= 1e-12);
        CHECK(c.algebra.associativity_defect() <= 1e-9);

        Crossword w = gen::random_crossword(rng, {"a", "b"},
                                            std::uniform_int_distribution<int>(1, 2)(rng),
                                            std::uniform_int_distribution<int>(1, 3)(rng));
        CrosswordSplit split = crossword_split(w);
        Complex expected =
            eval(a, split.horizontal).value * eval(b, split.vertical).value;
        CHECK(approx_equal(eval(c, encode_crossword(w)).value, expected));
    }
}

TEST_CASE("row/column corollary against the classical oracles") {
    // counting rep on rows, doubling rep on columns, 2x2 all-a crossword
    StringLinearRep counting;
    counting.d = 2;
    counting.iota = Eigen::VectorXcd(2);
    counting.iota << 1.0, 0.0;
    counting.tau = Eigen::VectorXcd(2);
    counting.tau << 0.0, 1.0;
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, 1.0, 0.0, 1.0;
    counting.matrices["a"] = m;
    counting.matrices["b"] = Eigen::MatrixXcd::Identity(2, 2);

    StringLinearRep doubling;
    doubling.d = 1;
    doubling.iota = Eigen::VectorXcd::Ones(1);
    doubling.tau = Eigen::VectorXcd::Ones(1);
    doubling.matrices["a"] = Eigen::MatrixXcd::Constant(1, 1, 2.0);
    doubling.matrices["b"] = Eigen::MatrixXcd::Ones(1, 1);

    Crossword all_a;
    all_a.rows = all_a.cols = 2;
    all_a.cells = {{"a", "a"}, {"a", "a"}};

    HWM combined = crossword_row_col_hwm(counting, doubling, 5);
    Complex lhs = eval(combined, encode_crossword(all_a)).value;
    Complex rhs(1.0);
    for (int row = 1; row <= 2; ++row) rhs *= string_series_eval(counting, all_a.row(row));
    for (int col = 1; col <= 2; ++col) rhs *= string_series_eval(doubling, all_a.column(col));
    CHECK(approx_equal(lhs, rhs));
    CHECK(approx_equal(rhs, Complex(2.0 * 2.0 * 4.0 * 4.0))); // r(aa) = 2 and 4

    // 1x1 crossword: r_A(a) * r_B(a)
    Crossword single;
    single.rows = single.cols = 1;
    single.cells = {{"a"}};
    Complex one_lhs = eval(combined, encode_crossword(single)).value;
    CHECK(approx_equal(one_lhs, string_series_eval(counting, {"a"}) *
                                    string_series_eval(doubling, {"a"})));

    // a degenerate representation propagates DegenerateRep
    StringLinearRep degenerate = counting;
    degenerate.tau = Eigen::VectorXcd::Zero(2);
    CHECK_THROWS_AS(crossword_row_col_hwm(degenerate, doubling, 5), Error);
}
