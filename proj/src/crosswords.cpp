#include "hwm/crosswords.hpp"

#include <set>
#include <sstream>

#include "hwm/error.hpp"

namespace hwm {

namespace {

// port slots in W, E, N, S order
constexpr int kWest = 1;
constexpr int kEast = 2;
constexpr int kNorth = 3;
constexpr int kSouth = 4;

std::string cell_id(int m, int n) {
    return std::to_string(m) + "." + std::to_string(n);
}

std::vector<std::string> crossword_symbols(const Crossword& w) {
    std::set<std::string> seen;
    for (const auto& row : w.cells) seen.insert(row.begin(), row.end());
    return {seen.begin(), seen.end()};
}

RankedAlphabet arity_alphabet(const std::vector<std::string>& symbols, int arity) {
    std::vector<std::pair<std::string, int>> entries;
    for (const auto& s : symbols) entries.emplace_back(s, arity);
    return RankedAlphabet(entries);
}

} // namespace

Word Crossword::row(int m) const { return cells.at(static_cast<std::size_t>(m - 1)); }

Word Crossword::column(int n) const {
    Word out;
    out.reserve(static_cast<std::size_t>(rows));
    for (int m = 1; m <= rows; ++m)
        out.push_back(cells.at(static_cast<std::size_t>(m - 1)).at(static_cast<std::size_t>(n - 1)));
    return out;
}

Crossword parse_crossword(const std::string& text) {
    Crossword w;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> row;
        for (char c : line) row.emplace_back(1, c);
        w.cells.push_back(std::move(row));
    }
    w.rows = static_cast<int>(w.cells.size());
    w.cols = w.rows == 0 ? 0 : static_cast<int>(w.cells.front().size());
    validate_crossword(w);
    return w;
}

void validate_crossword(const Crossword& w) {
    if (w.rows < 1 || w.cols < 1)
        throw Error(ErrorCode::EmptyWord, "crosswords need at least one cell");
    if (static_cast<int>(w.cells.size()) != w.rows)
        throw Error(ErrorCode::ShapeMismatch, "row count does not match the cell array");
    for (const auto& row : w.cells)
        if (static_cast<int>(row.size()) != w.cols)
            throw Error(ErrorCode::ShapeMismatch, "crossword rows have unequal lengths");
}

Hypergraph encode_crossword(const Crossword& w) {
    validate_crossword(w);
    Hypergraph g;
    g.alphabet = arity_alphabet(crossword_symbols(w), 4);
    for (int m = 1; m <= w.rows; ++m)
        for (int n = 1; n <= w.cols; ++n)
            g.vertices.push_back({cell_id(m, n), w.cells[m - 1][n - 1]});

    // E_H: horizontal chains plus W/E boundary singletons
    for (int m = 1; m <= w.rows; ++m) {
        for (int n = 1; n + 1 <= w.cols; ++n)
            g.hyperedges.push_back({{cell_id(m, n), kEast}, {cell_id(m, n + 1), kWest}});
        g.hyperedges.push_back({{cell_id(m, 1), kWest}});
        g.hyperedges.push_back({{cell_id(m, w.cols), kEast}});
    }
    // E_V: vertical chains plus N/S boundary singletons
    for (int n = 1; n <= w.cols; ++n) {
        for (int m = 1; m + 1 <= w.rows; ++m)
            g.hyperedges.push_back({{cell_id(m, n), kSouth}, {cell_id(m + 1, n), kNorth}});
        g.hyperedges.push_back({{cell_id(1, n), kNorth}});
        g.hyperedges.push_back({{cell_id(w.rows, n), kSouth}});
    }
    return g;
}

CrosswordSplit crossword_split(const Crossword& w) {
    validate_crossword(w);
    RankedAlphabet arity2 = arity_alphabet(crossword_symbols(w), 2);

    CrosswordSplit split;
    split.horizontal.alphabet = arity2;
    split.vertical.alphabet = arity2;
    for (int m = 1; m <= w.rows; ++m)
        for (int n = 1; n <= w.cols; ++n) {
            split.horizontal.vertices.push_back({cell_id(m, n), w.cells[m - 1][n - 1]});
            split.vertical.vertices.push_back({cell_id(m, n), w.cells[m - 1][n - 1]});
        }

    // horizontal: slots (W, E) -> (1, 2)
    for (int m = 1; m <= w.rows; ++m) {
        for (int n = 1; n + 1 <= w.cols; ++n)
            split.horizontal.hyperedges.push_back(
                {{cell_id(m, n), 2}, {cell_id(m, n + 1), 1}});
        split.horizontal.hyperedges.push_back({{cell_id(m, 1), 1}});
        split.horizontal.hyperedges.push_back({{cell_id(m, w.cols), 2}});
    }
    // vertical: slots (N, S) -> (1, 2)
    for (int n = 1; n <= w.cols; ++n) {
        for (int m = 1; m + 1 <= w.rows; ++m)
            split.vertical.hyperedges.push_back(
                {{cell_id(m, n), 2}, {cell_id(m + 1, n), 1}});
        split.vertical.hyperedges.push_back({{cell_id(1, n), 1}});
        split.vertical.hyperedges.push_back({{cell_id(w.rows, n), 2}});
    }
    return split;
}

HWM crossword_combine_hwm(const HWM& a, const HWM& b) {
    if (a.alphabet != b.alphabet)
        throw Error(ErrorCode::AlphabetMismatch, "crossword combine needs a shared alphabet");
    if (!a.algebra.is_dense() || !b.algebra.is_dense())
        throw Error(ErrorCode::NotDense, "crossword combine needs dense algebras");
    for (const auto& [symbol, arity] : a.alphabet.symbols())
        if (arity != 2)
            throw Error(ErrorCode::ArityMismatch,
                        "crossword operands live on an arity-2 alphabet");

    const int d1 = a.algebra.dim();

    HWM c;
    std::vector<std::pair<std::string, int>> symbols;
    for (const auto& [symbol, arity] : a.alphabet.symbols()) symbols.emplace_back(symbol, 4);
    c.alphabet = RankedAlphabet(symbols);
    c.algebra = direct_sum(a.algebra, b.algebra);

    // modes (W, E) carry A on block 1..d1, modes (N, S) carry B shifted
    for (const auto& [symbol, arity] : a.alphabet.symbols()) {
        SparseTensor tc(4);
        for (const auto& [ia, va] : a.tensor(symbol).entries()) {
            for (const auto& [ib, vb] : b.tensor(symbol).entries()) {
                MultiIndex idx{ia[0], ia[1], BasisLabel::dense(ib[0].index() + d1),
                               BasisLabel::dense(ib[1].index() + d1)};
                tc.add(std::move(idx), va * vb);
            }
        }
        c.tensors[symbol] = std::move(tc);
    }
    return c;
}

HWM crossword_row_col_hwm(const StringLinearRep& rep_a, const StringLinearRep& rep_b,
                          std::uint64_t seed) {
    HWM lifted_a = lift_string_series_iota_eq_tau(rep_a, seed);
    HWM lifted_b = lift_string_series_iota_eq_tau(rep_b, seed + 1);
    return crossword_combine_hwm(lifted_a, lifted_b);
}

} // namespace hwm
