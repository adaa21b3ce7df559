#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "hwm/engines.hpp"
#include "hwm/error.hpp"
#include "hwm/generators.hpp"

using namespace hwm;
using hwm::testing::example1_graph;

namespace {

HWM example1_model(gen::Rng& rng, int d, bool identity_ones) {
    return gen::random_hwm(rng, example1_graph().alphabet, d, /*real_only=*/false,
                           identity_ones);
}

/// The worked 8-index expansion of the series on the example graph:
/// sum T^a_{i1 i2 i3} T^b_{i4 i5} T^a_{i6 i7 i8} f(i1,i8) f(i2,i4,i7) f(i3,i5) f(i6).
Complex example1_formula(const HWM& m) {
    const int d = m.algebra.dim();
    const SparseTensor& ta = m.tensor("a");
    const SparseTensor& tb = m.tensor("b");
    auto f2 = [&](int x, int y) {
        const BasisLabel labels[2] = {BasisLabel::dense(x), BasisLabel::dense(y)};
        return m.algebra.edge_form(labels);
    };
    auto f3 = [&](int x, int y, int z) {
        const BasisLabel labels[3] = {BasisLabel::dense(x), BasisLabel::dense(y),
                                      BasisLabel::dense(z)};
        return m.algebra.edge_form(labels);
    };
    auto f1 = [&](int x) {
        const BasisLabel labels[1] = {BasisLabel::dense(x)};
        return m.algebra.edge_form(labels);
    };

    Complex total(0.0);
    for (int i1 = 1; i1 <= d; ++i1)
        for (int i2 = 1; i2 <= d; ++i2)
            for (int i3 = 1; i3 <= d; ++i3)
                for (int i4 = 1; i4 <= d; ++i4)
                    for (int i5 = 1; i5 <= d; ++i5)
                        for (int i6 = 1; i6 <= d; ++i6)
                            for (int i7 = 1; i7 <= d; ++i7)
                                for (int i8 = 1; i8 <= d; ++i8)
                                    total += ta.at(dense_index({i1, i2, i3})) *
                                             tb.at(dense_index({i4, i5})) *
                                             ta.at(dense_index({i6, i7, i8})) * f2(i1, i8) *
                                             f3(i2, i4, i7) * f2(i3, i5) * f1(i6);
    return total;
}

} // namespace

TEST_CASE("eval_naive matches the literal worked-example expansion") {
    gen::Rng rng(101);
    for (int trial = 0; trial < 5; ++trial) {
        HWM m = example1_model(rng, 2, trial % 2 == 0);
        Complex expected = example1_formula(m);
        Complex actual = eval_naive(m, example1_graph()).value;
        CHECK(approx_equal(expected, actual, 1e-10));
    }
}

TEST_CASE("rank one: all-ones model evaluates to 1 on any valid graph") {
    HWM m;
    m.alphabet = example1_graph().alphabet;
    m.algebra = ProductAlgebra::identity_ones(1);
    SparseTensor t3(3), t2(2);
    t3.set(dense_index({1, 1, 1}), 1.0);
    t2.set(dense_index({1, 1}), 1.0);
    m.tensors["a"] = t3;
    m.tensors["b"] = t2;
    CHECK(eval_naive(m, example1_graph()).value == Complex(1.0));
    CHECK(eval_gamma_id(m, example1_graph()).value == Complex(1.0));
}

TEST_CASE("gamma_id reproduces the shared-index contraction of the example") {
    gen::Rng rng(103);
    HWM m = example1_model(rng, 3, /*identity_ones=*/true);
    const SparseTensor& ta = m.tensor("a");
    const SparseTensor& tb = m.tensor("b");
    // indices per hyperedge: h1 -> i1, h2 -> i2, h3 -> i3, h4 -> i6
    Complex expected(0.0);
    for (int i1 = 1; i1 <= 3; ++i1)
        for (int i2 = 1; i2 <= 3; ++i2)
            for (int i3 = 1; i3 <= 3; ++i3)
                for (int i6 = 1; i6 <= 3; ++i6)
                    expected += ta.at(dense_index({i1, i2, i3})) *
                                tb.at(dense_index({i2, i3})) *
                                ta.at(dense_index({i6, i2, i1}));
    CHECK(approx_equal(expected, eval_gamma_id(m, example1_graph()).value, 1e-10));
    CHECK(approx_equal(expected, eval_naive(m, example1_graph()).value, 1e-10));
}

TEST_CASE("all engines agree on random dense instances") {
    gen::Rng rng(107);
    for (int trial = 0; trial < 40; ++trial) {
        RankedAlphabet alphabet = gen::random_alphabet(rng, 3, 3);
        const int d = std::uniform_int_distribution<int>(1, 3)(rng);
        const bool ones = trial % 3 == 0;
        HWM m = gen::random_hwm(rng, alphabet, d, false, ones);
        Hypergraph g = gen::random_hypergraph(rng, alphabet, 5, 8);

        Complex reference = eval_naive(m, g).value;
        CHECK(approx_equal(reference, eval_support_restricted(m, g).value));
        CHECK(approx_equal(reference, eval_factored(m, g).value));
        CHECK(approx_equal(reference,
                           eval_factored_order(m, g, ContractionOrder::RightToLeft).value,
                           1e-7));
        if (ones) CHECK(approx_equal(reference, eval_gamma_id(m, g).value));
    }
}

TEST_CASE("support restriction: zero tensor annihilates, dense equals naive") {
    gen::Rng rng(109);
    HWM m = example1_model(rng, 2, false);
    m.tensors["b"] = SparseTensor(2); // all-zero tensor for a present symbol
    CHECK(eval_support_restricted(m, example1_graph()).value == Complex(0.0));
    CHECK(eval_naive(m, example1_graph()).value == Complex(0.0));
}

TEST_CASE("multiplicativity over disjoint components, all engines") {
    gen::Rng rng(113);
    for (int trial = 0; trial < 10; ++trial) {
        RankedAlphabet alphabet = gen::random_alphabet(rng, 2, 2);
        const int d = std::uniform_int_distribution<int>(1, 2)(rng);
        HWM m = gen::random_hwm(rng, alphabet, d);
        Hypergraph g1 = gen::random_hypergraph(rng, alphabet, 2, 4);
        Hypergraph g2 = gen::random_hypergraph(rng, alphabet, 2, 4);
        Hypergraph joint = disjoint_union(g1, g2);

        Complex product = eval_naive(m, g1).value * eval_naive(m, g2).value;
        CHECK(approx_equal(product, eval_naive(m, joint).value));
        CHECK(approx_equal(product, eval_support_restricted(m, joint).value));
        CHECK(approx_equal(product, eval_factored(m, joint).value));
    }
}

TEST_CASE("evaluation is invariant under relabeling and edge reorder") {
    gen::Rng rng(127);
    for (int trial = 0; trial < 10; ++trial) {
        RankedAlphabet alphabet = gen::random_alphabet(rng, 2, 3);
        const int d = std::uniform_int_distribution<int>(1, 2)(rng);
        HWM m = gen::random_hwm(rng, alphabet, d);
        Hypergraph g = gen::random_hypergraph(rng, alphabet, 4, 8);

        Hypergraph renamed = g;
        for (auto& v : renamed.vertices) v.id = "x_" + v.id;
        for (auto& e : renamed.hyperedges)
            for (auto& p : e) p.vertex = "x_" + p.vertex;
        std::reverse(renamed.hyperedges.begin(), renamed.hyperedges.end());
        std::reverse(renamed.vertices.begin(), renamed.vertices.end());

        CHECK(approx_equal(eval_naive(m, g).value, eval_naive(m, renamed).value, 1e-12));
        CHECK(approx_equal(eval_factored(m, g).value, eval_factored(m, renamed).value));
    }
}

TEST_CASE("edge weight tensors") {
    SparseTensor identity2 = edge_weight_tensor(ProductAlgebra::identity_ones(3), 2);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            CHECK(identity2.at(dense_index({i, j})) == Complex(i == j ? 1.0 : 0.0));

    SparseTensor identity3 = edge_weight_tensor(ProductAlgebra::identity_ones(2), 3);
    CHECK(identity3.nnz() == 2); // the diagonal indicator entries only
    CHECK(identity3.at(dense_index({1, 1, 1})) == Complex(1.0));
    CHECK(identity3.at(dense_index({2, 2, 2})) == Complex(1.0));

    // the iota=tau diag algebra gives the identity matrix at k = 2
    std::vector<Complex> alpha{Complex(2.0), Complex(4.0)};
    std::vector<Complex> weights{Complex(0.5), Complex(0.25)};
    SparseTensor diag2 = edge_weight_tensor(ProductAlgebra::diag_scaled(2, weights, alpha), 2);
    CHECK(approx_equal(diag2.at(dense_index({1, 1})), Complex(1.0)));
    CHECK(approx_equal(diag2.at(dense_index({2, 2})), Complex(1.0)));
    CHECK(diag2.at(dense_index({1, 2})) == Complex(0.0));

    // symmetric under index permutation for any algebra
    gen::Rng rng(131);
    ProductAlgebra table = gen::random_table_algebra(rng, 2);
    SparseTensor w3 = edge_weight_tensor(table, 3);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k) {
                Complex v = w3.at(dense_index({i, j, k}));
                CHECK(approx_equal(v, w3.at(dense_index({j, i, k})), 1e-10));
                CHECK(approx_equal(v, w3.at(dense_index({k, j, i})), 1e-10));
            }
}

TEST_CASE("engine preconditions and budgets") {
    gen::Rng rng(137);
    HWM m = example1_model(rng, 2, false);
    Hypergraph g = example1_graph();

    SUBCASE("gamma_id needs the identity-ones pair") {
        try {
            eval_gamma_id(m, g);
            FAIL("expected WrongAlgebra");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::WrongAlgebra);
        }
    }
    SUBCASE("term budget is enforced with exit code 3") {
        RunConfig config;
        config.term_budget = 10;
        try {
            eval_naive(m, g, config);
            FAIL("expected BudgetExceeded");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::BudgetExceeded);
            CHECK(e.exit_code() == 3);
        }
    }
    SUBCASE("naive needs a dense algebra") {
        HWM subset;
        subset.alphabet = RankedAlphabet({{"a", 1}});
        subset.algebra = ProductAlgebra::subset({{"v", 1}}, {{{"v", 1}}}, Complex(1.0));
        SparseTensor t(1);
        t.set({BasisLabel::subset({{"v", 1}})}, 1.0);
        subset.tensors["a"] = t;
        Hypergraph single;
        single.alphabet = subset.alphabet;
        single.vertices = {{"v", "a"}};
        single.hyperedges = {{{"v", 1}}};
        CHECK_THROWS_AS(eval_naive(subset, single), Error);
        CHECK(eval_support_restricted(subset, single).value == Complex(1.0));
    }
    SUBCASE("unknown symbol in the graph") {
        HWM small = m;
        small.tensors.erase("b");
        small.alphabet = RankedAlphabet({{"a", 3}});
        CHECK_THROWS_AS(eval_naive(small, g), Error);
    }
}

TEST_CASE("dispatch picks the expected engine") {
    gen::Rng rng(139);
    Hypergraph g = example1_graph();

    HWM ones = example1_model(rng, 2, true);
    CHECK(eval(ones, g).engine == Engine::GammaId);

    HWM dense = example1_model(rng, 2, false);
    while (dense.algebra.is_identity_ones()) dense = example1_model(rng, 2, false);
    CHECK(eval(dense, g).engine == Engine::Factored);

    HWM subset;
    subset.alphabet = RankedAlphabet({{"a", 1}});
    subset.algebra = ProductAlgebra::subset({{"v", 1}}, {{{"v", 1}}}, Complex(1.0));
    SparseTensor t(1);
    t.set({BasisLabel::subset({{"v", 1}})}, 1.0);
    subset.tensors["a"] = t;
    Hypergraph single;
    single.alphabet = subset.alphabet;
    single.vertices = {{"v", "a"}};
    single.hyperedges = {{{"v", 1}}};
    CHECK(eval(subset, single).engine == Engine::Support);

    CHECK(eval(ones, g, Engine::Naive).engine == Engine::Naive);
}

TEST_CASE("worker partitioning is reproducible and consistent") {
    gen::Rng rng(149);
    RankedAlphabet alphabet = gen::random_alphabet(rng, 2, 3);
    HWM m = gen::random_hwm(rng, alphabet, 3);
    Hypergraph g = gen::random_hypergraph(rng, alphabet, 5, 8);

    RunConfig two;
    two.workers = 2;
    Complex first = eval_naive(m, g, two).value;
    Complex second = eval_naive(m, g, two).value;
    CHECK(first == second); // bit-for-bit at equal worker count
    CHECK(approx_equal(first, eval_naive(m, g).value, 1e-10));
    CHECK(approx_equal(eval_support_restricted(m, g, two).value,
                       eval_support_restricted(m, g).value, 1e-10));
}
