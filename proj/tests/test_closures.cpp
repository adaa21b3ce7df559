#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hwm/closures.hpp"
#include "hwm/encodings.hpp"
#include "hwm/engines.hpp"
#include "hwm/error.hpp"
#include "hwm/generators.hpp"

using namespace hwm;

namespace {

HWM scalar_trace_model(double value) {
    return circular_trace_hwm({{"a", Eigen::MatrixXcd::Constant(1, 1, value)}});
}

Hypergraph circular_aa() { return encode_circular(word_from_chars("aa"), {"a"}); }

} // namespace

TEST_CASE("sum adds series values on connected graphs") {
    HWM a = scalar_trace_model(2.0); // Tr([2]^2) = 4
    HWM b = scalar_trace_model(3.0); // Tr([3]^2) = 9
    HWM c = hwm_sum(a, b);
    CHECK(c.algebra.dim() == 2);
    CHECK(approx_equal(eval(c, circular_aa()).value, Complex(13.0)));

    // A = B doubles the value
    HWM twice = hwm_sum(a, a);
    CHECK(approx_equal(eval(twice, circular_aa()).value, Complex(8.0)));
}

TEST_CASE("sum additivity on random connected graphs") {
    gen::Rng rng(211);
    for (int trial = 0; trial < 20; ++trial) {
        RankedAlphabet alphabet = gen::random_alphabet(rng, 2, 3);
        const int da = std::uniform_int_distribution<int>(1, 2)(rng);
        const int db = std::uniform_int_distribution<int>(1, 2)(rng);
        HWM a = gen::random_hwm(rng, alphabet, da);
        HWM b = gen::random_hwm(rng, alphabet, db);
        HWM c = hwm_sum(a, b);
        CHECK(c.algebra.dim() == da + db);

        Hypergraph g = gen::random_connected_hypergraph(rng, alphabet, 4, 8);
        REQUIRE(is_connected(g));
        Complex expected = eval(a, g).value + eval(b, g).value;
        CHECK(approx_equal(eval(c, g).value, expected));
    }
}

TEST_CASE("sum requires a shared alphabet and dense algebras") {
    HWM a = scalar_trace_model(2.0);
    HWM other = circular_trace_hwm({{"z", Eigen::MatrixXcd::Identity(1, 1)}});
    CHECK_THROWS_AS(hwm_sum(a, other), Error);
}

TEST_CASE("hadamard multiplies series values everywhere") {
    HWM a = scalar_trace_model(2.0);
    HWM b = scalar_trace_model(3.0);
    HWM d = hwm_hadamard(a, b);
    CHECK(d.algebra.dim() == 1);
    CHECK(approx_equal(eval(d, circular_aa()).value, Complex(36.0)));

    // the all-ones one-dimensional model is a multiplicative identity
    HWM ones;
    ones.alphabet = a.alphabet;
    ones.algebra = ProductAlgebra::identity_ones(1);
    SparseTensor t(2);
    t.set(dense_index({1, 1}), 1.0);
    ones.tensors["a"] = t;
    HWM same = hwm_hadamard(a, ones);
    CHECK(approx_equal(eval(same, circular_aa()).value, eval(a, circular_aa()).value));
}

TEST_CASE("hadamard product identity on random graphs incl. disconnected") {
    gen::Rng rng(223);
    int disconnected_seen = 0;
    for (int trial = 0; trial < 20; ++trial) {
        RankedAlphabet alphabet = gen::random_alphabet(rng, 2, 3);
        const int da = std::uniform_int_distribution<int>(1, 2)(rng);
        const int db = std::uniform_int_distribution<int>(1, 2)(rng);
        HWM a = gen::random_hwm(rng, alphabet, da);
        HWM b = gen::random_hwm(rng, alphabet, db);
        HWM d = hwm_hadamard(a, b);
        CHECK(d.algebra.dim() == da * db);

        Hypergraph g = gen::random_hypergraph(rng, alphabet, 4, 8);
        if (!is_connected(g)) ++disconnected_seen;
        Complex expected = eval(a, g).value * eval(b, g).value;
        CHECK(approx_equal(eval(d, g).value, expected));
    }
    CHECK(disconnected_seen > 0); // the sample genuinely covers disconnected graphs
}

TEST_CASE("composed algebras pass the structural checks") {
    gen::Rng rng(227);
    RankedAlphabet alphabet({{"a", 2}});
    HWM a = gen::random_hwm(rng, alphabet, 2);
    HWM b = gen::random_hwm(rng, alphabet, 2);
    for (const HWM& m : {hwm_sum(a, b), hwm_hadamard(a, b)}) {
        CHECK(m.algebra.symmetry_defect() <= 1e-12);
        CHECK(m.algebra.associativity_defect() <= 1e-9);
    }
}

TEST_CASE("normalization leaves identity-ones models untouched") {
    gen::Rng rng(229);
    RankedAlphabet alphabet({{"a", 2}, {"b", 1}});
    HWM a = gen::random_hwm(rng, alphabet, 3, /*real_only=*/true, /*identity_ones=*/true);
    HWM b = normalize_closed_graph(a);
    // M = I gives Q = I exactly, so the tensors survive unchanged
    for (const auto& [symbol, tensor] : a.tensors)
        CHECK(tensor.approx_equal_to(b.tensor(symbol), 1e-15));
}

TEST_CASE("normalization preserves values on binary-edge graphs") {
    // diag-scaled real algebra on the circular triple
    std::vector<Complex> alpha{Complex(0.7), Complex(-1.3)};
    std::vector<Complex> weights{Complex(1.9), Complex(0.4)};
    HWM a;
    a.alphabet = RankedAlphabet({{"a", 2}});
    a.algebra = ProductAlgebra::diag_scaled(2, weights, alpha);
    gen::Rng rng(233);
    a.tensors["a"] = gen::random_tensor(rng, 2, 2, /*real_only=*/true);

    HWM b = normalize_closed_graph(a);
    CHECK(b.algebra.is_identity_ones());
    Hypergraph circ3 = encode_circular(word_from_chars("aaa"), {"a"});
    CHECK(approx_equal(eval(a, circ3).value, eval(b, circ3).value));

    // random real table algebras on random all-binary graphs
    for (int trial = 0; trial < 15; ++trial) {
        RankedAlphabet alphabet = gen::random_alphabet(rng, 2, 3);
        const int d = std::uniform_int_distribution<int>(1, 3)(rng);
        HWM model = gen::random_hwm(rng, alphabet, d, /*real_only=*/true);
        HWM normalized = normalize_closed_graph(model);
        Hypergraph g = gen::random_binary_edge_hypergraph(rng, alphabet, 4, 8);
        CHECK(approx_equal(eval(model, g).value, eval(normalized, g).value, 1e-7));
    }
}

TEST_CASE("normalization rejects complex models") {
    HWM a;
    a.alphabet = RankedAlphabet({{"a", 2}});
    a.algebra = ProductAlgebra::identity(1, {Complex(0.0, 1.0)});
    SparseTensor t(2);
    t.set(dense_index({1, 1}), 1.0);
    a.tensors["a"] = t;
    try {
        normalize_closed_graph(a);
        FAIL("expected NotReal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotReal);
    }
}
