#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hwm/encodings.hpp"
#include "hwm/hypergraph.hpp"
#include "hwm/model.hpp"

namespace hwm {

/// M x N array of arity-4 symbols; ports ordered W, E, N, S (slots 1..4).
struct Crossword {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::string>> cells; // rows x cols

    Word row(int m) const;    // w_{m:}, 1-based
    Word column(int n) const; // w_{:n}, 1-based
};

/// Parses lines of one-character symbols, one row per line.
Crossword parse_crossword(const std::string& text);
void validate_crossword(const Crossword& w);

/// Grid graph: horizontal chain edges + W/E boundary singletons, vertical
/// chain edges + N/S boundary singletons. Vertex ids "m.n".
Hypergraph encode_crossword(const Crossword& w);

struct CrosswordSplit {
    Hypergraph horizontal; // (V, E_H) over arity 2, slots (W,E) -> (1,2)
    Hypergraph vertical;   // (V, E_V) over arity 2, slots (N,S) -> (1,2)
};

CrosswordSplit crossword_split(const Crossword& w);

/// Model of dimension d1+d2 over the arity-4 alphabet with
/// eval(C, G_w) = eval(A, G_w^H) * eval(B, G_w^V): the W/E modes carry A's
/// tensors on the first block, N/S carry B's on the shifted block, and the
/// block product annihilates cross terms.
HWM crossword_combine_hwm(const HWM& a, const HWM& b);

/// iota=tau lifts of both representations composed with the combine step;
/// evaluates to prod_m r_A(w_{m:}) * prod_n r_B(w_{:n}).
HWM crossword_row_col_hwm(const StringLinearRep& rep_a, const StringLinearRep& rep_b,
                          std::uint64_t seed);

} // namespace hwm
