#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hwm/crosswords.hpp"
#include "hwm/encodings.hpp"
#include "hwm/hypergraph.hpp"
#include "hwm/model.hpp"

namespace hwm::gen {

/// Seeded random instances for property suites and the acceptance runner.
/// Everything is deterministic in the passed engine state.
using Rng = std::mt19937_64;

Complex random_complex(Rng& rng, bool real_only = false);
Eigen::MatrixXd random_orthogonal(Rng& rng, int d);
Eigen::MatrixXcd random_matrix(Rng& rng, int rows, int cols, bool real_only = false);
Eigen::VectorXcd random_vector(Rng& rng, int d, bool real_only = false);

/// Conjugated pointwise product: c_ijk = sum_t s_t P_it P_jt P_kt for a
/// random rotation P and scaling s. Symmetric by construction, associative
/// because P's columns are orthonormal.
ProductAlgebra random_table_algebra(Rng& rng, int d, bool real_only = false);

/// Mix of identity / diag-scaled / table algebras with random alpha.
ProductAlgebra random_dense_algebra(Rng& rng, int d, bool real_only = false);

SparseTensor random_tensor(Rng& rng, int order, int d, bool real_only = false);

HWM random_hwm(Rng& rng, const RankedAlphabet& alphabet, int d, bool real_only = false,
               bool identity_ones = false);

RankedAlphabet random_alphabet(Rng& rng, int max_symbols, int max_arity);

/// Random labels plus a uniform random partition of the ports. Vertex count
/// adapts downward so the port count stays within max_ports.
Hypergraph random_hypergraph(Rng& rng, const RankedAlphabet& alphabet, int max_vertices,
                             int max_ports);

/// As above, then hyperedges of distinct components are merged until the
/// graph is connected (edge unions keep the partition property).
Hypergraph random_connected_hypergraph(Rng& rng, const RankedAlphabet& alphabet,
                                       int max_vertices, int max_ports);

/// Random labels with an even port total, ports paired by a random perfect
/// matching (every hyperedge has size exactly 2).
Hypergraph random_binary_edge_hypergraph(Rng& rng, const RankedAlphabet& alphabet,
                                         int max_vertices, int max_ports);

StringLinearRep random_string_rep(Rng& rng, const std::vector<std::string>& symbols, int d,
                                  bool real_only = true);

Word random_word(Rng& rng, const std::vector<std::string>& symbols, int length);

/// Arities map must contain at least one nullary symbol.
Tree random_tree(Rng& rng, const std::map<std::string, int>& arities, int max_nodes);

TreeLinearRep random_tree_rep(Rng& rng, const std::map<std::string, int>& arities, int d);

Crossword random_crossword(Rng& rng, const std::vector<std::string>& symbols, int rows,
                           int cols);

/// Every valid hypergraph with 1..max_vertices vertices over the alphabet,
/// up to permutation of same-label vertex ids: label vectors are enumerated
/// in sorted order, hyperedge partitions exhaustively (restricted growth
/// strings over the ports).
std::vector<Hypergraph> enumerate_small_graphs(const RankedAlphabet& alphabet,
                                               int max_vertices);

} // namespace hwm::gen
