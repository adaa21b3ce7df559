#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hwm/hypergraph.hpp"
#include "hwm/model.hpp"

namespace hwm {

/// Words are symbol sequences; CLI input splits a line into one-character
/// symbols.
using Word = std::vector<std::string>;

Word word_from_chars(const std::string& text);

/// Classical linear representation <iota, {M_sigma}, tau> of a string series.
struct StringLinearRep {
    int d = 0;
    Eigen::VectorXcd iota;
    Eigen::VectorXcd tau;
    std::map<std::string, Eigen::MatrixXcd> matrices;

    std::vector<std::string> symbols() const;
};

/// iota^T M_{w1} ... M_{wn} tau; the oracle for every string lift.
Complex string_series_eval(const StringLinearRep& rep, const Word& word);

/// String graph with iota/tau boundary vertices (vertices 0..n+1).
/// `sigma` lists the ambient alphabet; defaults to the word's symbols.
Hypergraph encode_string(const Word& word, const std::vector<std::string>& sigma = {});

/// T^iota = iota, T^tau = tau, T^sigma = M_sigma, identity product, alpha=1.
HWM lift_string_series(const StringLinearRep& rep);

/// Bare string graph H_w: vertices [n], singleton edges {(1,1)}, {(n,2)}.
Hypergraph encode_string_bare(const Word& word, const std::vector<std::string>& sigma = {});

/// Complex HWM with a diagonal-scaled product evaluating the series on bare
/// graphs: a seeded change of basis makes all iota/tau coordinates nonzero,
/// D_ii = (tau'_i)^(1/2)/(iota'_i)^(1/2) merges them into one alpha vector.
/// Throws DegenerateRep when no usable basis exists (e.g. tau = 0).
HWM lift_string_series_iota_eq_tau(const StringLinearRep& rep, std::uint64_t seed);

struct Tree {
    using Position = std::vector<int>;
    std::map<Position, std::string> labels; // root at {}, prefix-closed
    std::map<std::string, int> arities;     // symbol -> child count, >= 0

    std::size_t size() const { return labels.size(); }
};

/// Parses s-expressions like f(a,f(a,a)); arities inferred from use.
Tree parse_tree(const std::string& text);
void validate_tree(const Tree& t); // throws InvalidTree

std::string tree_position_id(const Tree::Position& p); // root -> "e"

/// Tree graph over (Sigma u {lambda}, arity+1): root edge {(0,1),(e,1)},
/// child edges {(p, j+1), (p.j, 1)}; slot 1 faces the parent.
Hypergraph encode_tree(const Tree& t);

struct TreeLinearRep {
    int d = 0;
    Eigen::VectorXcd lambda;
    std::map<std::string, SparseTensor> mu; // order arity(f)+1, parent index first
};

/// Recursive bottom-up mu evaluation, then lambda^T mu(t).
Complex tree_oracle_mu(const TreeLinearRep& rep, const Tree& t);

/// T^lambda = lambda, T^f = the (arity+1)-order mu tensor; identity, alpha=1.
HWM lift_tree_series(const TreeLinearRep& rep);

/// Circular string graph: n vertices, edges {(i,2),(i mod n + 1,1)}.
Hypergraph encode_circular(const Word& word, const std::vector<std::string>& sigma = {});

/// Identity product, alpha=1, T^sigma = M_sigma; evaluates to
/// Tr(M_{w1} ... M_{wn}) on circular graphs.
HWM circular_trace_hwm(const std::map<std::string, Eigen::MatrixXcd>& matrices);

struct TraceLemmaReport {
    bool premise_holds = false;    // Tr(M^k) ~ 0 for k = 2..kmax
    bool conclusion_holds = false; // Tr(M) ~ 0
};

/// Numeric check of: Tr(M^k) = 0 for all k >= 2 implies Tr(M) = 0.
/// Premise within tol * max(1, ||M||_F); conclusion within 100x that.
TraceLemmaReport check_trace_lemma(const Eigen::MatrixXd& m, int kmax,
                                   double tol = 1e-9);

/// Rooted circular string: lambda vertex 0 closes the cycle. Accepts the
/// empty word (one-vertex lambda loop).
Hypergraph encode_rooted_circular(const Word& word, const std::vector<std::string>& sigma = {});

/// m linear representations sharing {M_sigma}: pairs (iota_i, tau_i).
struct RootedCircularRep {
    int d = 0;
    std::map<std::string, Eigen::MatrixXcd> matrices;
    std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>> pairs;
};

/// T^sigma = M_sigma, T^lambda = sum_i tau_i iota_i^T (oriented so the cycle
/// contraction equals sum_i iota_i^T M_{w1} ... M_{wn} tau_i).
HWM rooted_circular_hwm(const RootedCircularRep& rep);

/// 3-ary graph of an even-length word: chain plus pairing edges
/// {(i,3),(n+i,3)} connecting the two halves.
Hypergraph encode_anbn_graph(const Word& word);

/// Fixed 5-dimensional table-product HWM whose support over 3-ary graphs of
/// even {a,b}-words is exactly { a^n b^n : n >= 1 }, with value 1 there.
HWM anbn_hwm();

} // namespace hwm
