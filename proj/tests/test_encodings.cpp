#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hwm/encodings.hpp"
#include "hwm/engines.hpp"
#include "hwm/error.hpp"
#include "hwm/generators.hpp"

using namespace hwm;

namespace {

/// iota = [1,0], M_a = [[1,1],[0,1]], tau = [0,1]: r(a^k) = k.
StringLinearRep counting_rep() {
    StringLinearRep rep;
    rep.d = 2;
    rep.iota = Eigen::VectorXcd(2);
    rep.iota << 1.0, 0.0;
    rep.tau = Eigen::VectorXcd(2);
    rep.tau << 0.0, 1.0;
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, 1.0, 0.0, 1.0;
    rep.matrices["a"] = m;
    return rep;
}

/// d = 1, M_a = [2], iota = tau = [1]: r(a^k) = 2^k.
StringLinearRep doubling_rep() {
    StringLinearRep rep;
    rep.d = 1;
    rep.iota = Eigen::VectorXcd::Ones(1);
    rep.tau = Eigen::VectorXcd::Ones(1);
    rep.matrices["a"] = Eigen::MatrixXcd::Constant(1, 1, 2.0);
    return rep;
}

/// Leaf count as the standard bilinear (count, flag) pair, lambda = (1, 0).
TreeLinearRep leaf_count_rep() {
    TreeLinearRep rep;
    rep.d = 2;
    rep.lambda = Eigen::VectorXcd(2);
    rep.lambda << 1.0, 0.0;
    SparseTensor ta(1);
    ta.set({BasisLabel::dense(1)}, 1.0);
    ta.set({BasisLabel::dense(2)}, 1.0);
    SparseTensor tf(3);
    tf.set(dense_index({1, 1, 2}), 1.0);
    tf.set(dense_index({1, 2, 1}), 1.0);
    tf.set(dense_index({2, 2, 2}), 1.0);
    rep.mu["a"] = ta;
    rep.mu["f"] = tf;
    return rep;
}

Word aaa() { return word_from_chars("aaa"); }

} // namespace

TEST_CASE("classical string series evaluation") {
    CHECK(approx_equal(string_series_eval(counting_rep(), aaa()), Complex(3.0)));
    CHECK(string_series_eval(counting_rep(), {}) == Complex(0.0)); // iota^T tau
    for (int k = 0; k <= 6; ++k) {
        Word w(static_cast<std::size_t>(k), "a");
        CHECK(approx_equal(string_series_eval(doubling_rep(), w),
                           Complex(std::pow(2.0, k))));
    }
    CHECK_THROWS_AS(string_series_eval(counting_rep(), word_from_chars("z")), Error);
}

TEST_CASE("string graph encoding") {
    Hypergraph g = encode_string(word_from_chars("ab"));
    CHECK(g.vertices.size() == 4); // iota, a, b, tau
    CHECK(g.hyperedges.size() == 3);
    CHECK_NOTHROW(validate_hypergraph(g));

    Hypergraph empty = encode_string({});
    CHECK(empty.vertices.size() == 2);
    CHECK(empty.hyperedges.size() == 1);
    CHECK_NOTHROW(validate_hypergraph(empty));

    gen::Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Word w = gen::random_word(rng, {"a", "b", "c"},
                                  std::uniform_int_distribution<int>(0, 10)(rng));
        CHECK_NOTHROW(validate_hypergraph(encode_string(w, {"a", "b", "c"})));
    }
}

TEST_CASE("string lift reproduces the classical series") {
    HWM lift = lift_string_series(counting_rep());
    CHECK(approx_equal(eval(lift, encode_string(aaa(), {"a"})).value, Complex(3.0)));
    CHECK(approx_equal(eval(lift, encode_string({}, {"a"})).value, Complex(0.0)));

    gen::Rng rng(5);
    StringLinearRep rep = gen::random_string_rep(rng, {"a", "b"}, 3, /*real_only=*/false);
    HWM lifted = lift_string_series(rep);
    for (int trial = 0; trial < 20; ++trial) {
        Word w = gen::random_word(rng, {"a", "b"},
                                  std::uniform_int_distribution<int>(0, 6)(rng));
        CHECK(approx_equal(string_series_eval(rep, w),
                           eval(lifted, encode_string(w, {"a", "b"})).value));
    }
}

TEST_CASE("bare string graphs") {
    Hypergraph one = encode_string_bare(word_from_chars("a"));
    CHECK(one.vertices.size() == 1);
    CHECK(one.hyperedges.size() == 2); // {(1,1)} and {(1,2)}
    CHECK_NOTHROW(validate_hypergraph(one));

    Hypergraph two = encode_string_bare(word_from_chars("ab"));
    CHECK(two.vertices.size() == 2);
    CHECK(two.hyperedges.size() == 3);
    CHECK_NOTHROW(validate_hypergraph(two));

    CHECK_THROWS_AS(encode_string_bare({}), Error);

    gen::Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        Word w = gen::random_word(rng, {"a", "b"},
                                  std::uniform_int_distribution<int>(1, 8)(rng));
        CHECK_NOTHROW(validate_hypergraph(encode_string_bare(w, {"a", "b"})));
    }
}

TEST_CASE("iota=tau lift evaluates the series on bare graphs") {
    // iota = tau = [1,1], M = I: r(a) = iota^T tau = 2
    StringLinearRep flat;
    flat.d = 2;
    flat.iota = Eigen::VectorXcd::Ones(2);
    flat.tau = Eigen::VectorXcd::Ones(2);
    flat.matrices["a"] = Eigen::MatrixXcd::Identity(2, 2);
    HWM lifted = lift_string_series_iota_eq_tau(flat, 1);
    CHECK(approx_equal(eval(lifted, encode_string_bare(word_from_chars("a"), {"a"})).value,
                       Complex(2.0)));

    HWM counting = lift_string_series_iota_eq_tau(counting_rep(), 1);
    CHECK(approx_equal(eval(counting, encode_string_bare(aaa(), {"a"})).value, Complex(3.0)));

    StringLinearRep degenerate = counting_rep();
    degenerate.tau = Eigen::VectorXcd::Zero(2);
    try {
        lift_string_series_iota_eq_tau(degenerate, 1);
        FAIL("expected DegenerateRep");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateRep);
    }
}

TEST_CASE("tree parsing and validation") {
    Tree t = parse_tree("f(a,f(a,a))");
    CHECK(t.size() == 5);
    CHECK(t.arities.at("f") == 2);
    CHECK(t.arities.at("a") == 0);
    CHECK(t.labels.at({}) == "f");
    CHECK(t.labels.at({2, 1}) == "a");

    CHECK_THROWS_AS(parse_tree("f(a,f(a))"), Error);   // inconsistent arity
    CHECK_THROWS_AS(parse_tree("f(a,"), Error);        // truncated
    CHECK_THROWS_AS(parse_tree(""), Error);
}

TEST_CASE("tree graph encoding") {
    Hypergraph g = encode_tree(parse_tree("f(a,f(a,a))"));
    CHECK(g.vertices.size() == 6); // lambda + 5 positions
    CHECK(g.hyperedges.size() == 5);
    CHECK_NOTHROW(validate_hypergraph(g));

    Hypergraph leaf = encode_tree(parse_tree("a"));
    CHECK(leaf.vertices.size() == 2);
    CHECK(leaf.hyperedges.size() == 1);

    gen::Rng rng(11);
    const std::map<std::string, int> arities{{"a", 0}, {"f", 2}, {"g", 1}};
    for (int trial = 0; trial < 10; ++trial) {
        Tree random = gen::random_tree(rng, arities, 10);
        CHECK(random.size() <= 10);
        CHECK_NOTHROW(validate_hypergraph(encode_tree(random)));
    }
}

TEST_CASE("tree oracle and lift agree") {
    TreeLinearRep rep = leaf_count_rep();
    CHECK(approx_equal(tree_oracle_mu(rep, parse_tree("f(a,f(a,a))")), Complex(3.0)));
    CHECK(approx_equal(tree_oracle_mu(rep, parse_tree("a")), Complex(1.0)));

    HWM lift = lift_tree_series(rep);
    CHECK(approx_equal(eval(lift, encode_tree(parse_tree("f(a,f(a,a))"))).value,
                       Complex(3.0)));

    gen::Rng rng(13);
    const std::map<std::string, int> arities{{"a", 0}, {"f", 2}};
    TreeLinearRep random_rep = gen::random_tree_rep(rng, arities, 2);
    HWM lifted = lift_tree_series(random_rep);
    for (int trial = 0; trial < 15; ++trial) {
        Tree t = gen::random_tree(rng, arities, 8);
        CHECK(approx_equal(tree_oracle_mu(random_rep, t),
                           eval(lifted, encode_tree(t)).value));
    }
}

TEST_CASE("circular string encoding and trace evaluation") {
    Hypergraph loop = encode_circular(word_from_chars("a"));
    CHECK(loop.vertices.size() == 1);
    REQUIRE(loop.hyperedges.size() == 1);
    CHECK(loop.hyperedges[0].size() == 2); // {(1,2),(1,1)}

    Hypergraph two = encode_circular(word_from_chars("ab"));
    CHECK(two.vertices.size() == 2);
    CHECK(two.hyperedges.size() == 2);
    CHECK_NOTHROW(validate_hypergraph(two));
    CHECK_THROWS_AS(encode_circular({}), Error);

    // swap matrix: Tr(S^2) = 2, Tr(S^3) = 0
    Eigen::MatrixXcd swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    HWM m = circular_trace_hwm({{"a", swap}});
    CHECK(approx_equal(eval(m, encode_circular(word_from_chars("aa"), {"a"})).value,
                       Complex(2.0)));
    CHECK(approx_equal(eval(m, encode_circular(aaa(), {"a"})).value, Complex(0.0)));

    // identity matrices: any a^k evaluates to d
    HWM id3 = circular_trace_hwm({{"a", Eigen::MatrixXcd::Identity(3, 3)}});
    CHECK(approx_equal(eval(id3, encode_circular(aaa(), {"a"})).value, Complex(3.0)));

    // rotation invariance against the trace-cyclicity oracle
    gen::Rng rng(17);
    std::map<std::string, Eigen::MatrixXcd> matrices{
        {"a", gen::random_matrix(rng, 2, 2)}, {"b", gen::random_matrix(rng, 2, 2)},
        {"c", gen::random_matrix(rng, 2, 2)}};
    HWM random_m = circular_trace_hwm(matrices);
    Word abc = word_from_chars("abc");
    Word bca = word_from_chars("bca");
    CHECK(approx_equal(eval(random_m, encode_circular(abc, {"a", "b", "c"})).value,
                       eval(random_m, encode_circular(bca, {"a", "b", "c"})).value));
}

TEST_CASE("trace lemma checker") {
    Eigen::MatrixXd nilpotent(2, 2);
    nilpotent << 0.0, 1.0, 0.0, 0.0;
    TraceLemmaReport r1 = check_trace_lemma(nilpotent, 4);
    CHECK(r1.premise_holds);
    CHECK(r1.conclusion_holds);

    Eigen::MatrixXd reflection(2, 2);
    reflection << 1.0, 0.0, 0.0, -1.0;
    CHECK_FALSE(check_trace_lemma(reflection, 4).premise_holds); // Tr(M^2) = 2

    gen::Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXd upper = Eigen::MatrixXd::Zero(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                upper(i, j) = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
        TraceLemmaReport r = check_trace_lemma(upper, 6);
        CHECK(r.premise_holds);
        CHECK(r.conclusion_holds);
    }

    CHECK_THROWS_AS(check_trace_lemma(Eigen::MatrixXd::Zero(2, 3), 5), Error);
    CHECK_THROWS_AS(check_trace_lemma(nilpotent, 2), Error); // kmax < dim+1
}

TEST_CASE("rooted circular strings") {
    Hypergraph g = encode_rooted_circular(word_from_chars("ab"));
    CHECK(g.vertices.size() == 3);
    CHECK(g.hyperedges.size() == 3);
    CHECK_NOTHROW(validate_hypergraph(g));

    Hypergraph loop = encode_rooted_circular({});
    CHECK(loop.vertices.size() == 1);
    CHECK(loop.hyperedges.size() == 1);
    CHECK_NOTHROW(validate_hypergraph(loop));

    // a single counting-rep pair reproduces the series
    StringLinearRep rep = counting_rep();
    RootedCircularRep rooted;
    rooted.d = rep.d;
    rooted.matrices = rep.matrices;
    rooted.pairs.emplace_back(rep.iota, rep.tau);
    HWM m = rooted_circular_hwm(rooted);
    CHECK(approx_equal(eval(m, encode_rooted_circular(aaa(), {"a"})).value, Complex(3.0)));
    // empty word: sum of iota_i^T tau_i
    CHECK(approx_equal(eval(m, encode_rooted_circular({}, {"a"})).value, Complex(0.0)));

    // two pairs: values add while the dimension stays d
    RootedCircularRep two = rooted;
    two.pairs.emplace_back(rep.tau, rep.tau); // second series: tau^T M^k tau
    HWM m2 = rooted_circular_hwm(two);
    Complex expected = string_series_eval(rep, aaa());
    StringLinearRep alt = rep;
    alt.iota = rep.tau;
    expected += string_series_eval(alt, aaa());
    CHECK(approx_equal(eval(m2, encode_rooted_circular(aaa(), {"a"})).value, expected));

    gen::Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        StringLinearRep r = gen::random_string_rep(rng, {"a", "b"}, 2);
        RootedCircularRep rc;
        rc.d = 2;
        rc.matrices = r.matrices;
        rc.pairs.emplace_back(r.iota, r.tau);
        HWM lifted = rooted_circular_hwm(rc);
        Word w = gen::random_word(rng, {"a", "b"},
                                  std::uniform_int_distribution<int>(0, 5)(rng));
        CHECK(approx_equal(eval(lifted, encode_rooted_circular(w, {"a", "b"})).value,
                           string_series_eval(r, w)));
    }
}

TEST_CASE("3-ary graphs of even words") {
    Hypergraph abaa = encode_anbn_graph(word_from_chars("abaa"));
    CHECK(abaa.vertices.size() == 6);
    CHECK(abaa.hyperedges.size() == 7);
    CHECK_NOTHROW(validate_hypergraph(abaa));

    Hypergraph ab = encode_anbn_graph(word_from_chars("ab"));
    CHECK(ab.vertices.size() == 4);
    CHECK(ab.hyperedges.size() == 4);
    CHECK_NOTHROW(validate_hypergraph(ab));

    CHECK_THROWS_AS(encode_anbn_graph(word_from_chars("aba")), Error);
    CHECK_THROWS_AS(encode_anbn_graph({}), Error);
}

TEST_CASE("the a^n b^n model") {
    HWM m = anbn_hwm();
    auto value = [&](const char* text) {
        return eval_support_restricted(m, encode_anbn_graph(word_from_chars(text))).value;
    };
    CHECK(approx_equal(value("ab"), Complex(1.0)));
    CHECK(value("ba") == Complex(0.0));
    CHECK(value("aa") == Complex(0.0));
    CHECK(value("bb") == Complex(0.0));
    CHECK(approx_equal(value("aabb"), Complex(1.0)));
    CHECK(value("abab") == Complex(0.0));

    // the naive engine agrees where it is feasible (length 2: 5^8 terms)
    CHECK(approx_equal(eval_naive(m, encode_anbn_graph(word_from_chars("ab"))).value,
                       Complex(1.0)));
    CHECK(eval_naive(m, encode_anbn_graph(word_from_chars("ba"))).value == Complex(0.0));
}
