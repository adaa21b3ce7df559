#include "hwm/generators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <Eigen/QR>

#include "hwm/error.hpp"

namespace hwm::gen {

namespace {

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

} // namespace

Complex random_complex(Rng& rng, bool real_only) {
    double re = uniform(rng, -1.0, 1.0);
    double im = real_only ? 0.0 : uniform(rng, -1.0, 1.0);
    return {re, im};
}

Eigen::MatrixXd random_orthogonal(Rng& rng, int d) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd gaussian(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) gaussian(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i)
        if (r(i, i) < 0) q.col(i) = -q.col(i);
    return q;
}

Eigen::MatrixXcd random_matrix(Rng& rng, int rows, int cols, bool real_only) {
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = random_complex(rng, real_only);
    return m;
}

Eigen::VectorXcd random_vector(Rng& rng, int d, bool real_only) {
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = random_complex(rng, real_only);
    return v;
}

ProductAlgebra random_table_algebra(Rng& rng, int d, bool real_only) {
    Eigen::MatrixXd p = random_orthogonal(rng, d);
    std::vector<Complex> scale(static_cast<std::size_t>(d));
    for (auto& s : scale) {
        double magnitude = uniform(rng, 0.3, 1.2);
        s = real_only ? Complex(magnitude, 0.0)
                      : std::polar(magnitude, uniform(rng, 0.0, 6.283185307179586));
    }

    std::vector<Complex> coeffs(static_cast<std::size_t>(d) * d * d, Complex(0.0));
    auto coeff_at = [&](int i, int j, int k) -> Complex& {
        return coeffs[static_cast<std::size_t>(i - 1) * d * d +
                      static_cast<std::size_t>(j - 1) * d + static_cast<std::size_t>(k - 1)];
    };
    for (int i = 1; i <= d; ++i)
        for (int j = i; j <= d; ++j)
            for (int k = 1; k <= d; ++k) {
                Complex total(0.0);
                for (int t = 0; t < d; ++t)
                    total += scale[static_cast<std::size_t>(t)] * p(i - 1, t) * p(j - 1, t) *
                             p(k - 1, t);
                coeff_at(i, j, k) = total;
                coeff_at(j, i, k) = total; // mirror, exact symmetry
            }

    std::vector<Complex> alpha(static_cast<std::size_t>(d));
    for (auto& a : alpha) a = random_complex(rng, real_only);
    return ProductAlgebra::table(d, std::move(coeffs), std::move(alpha));
}

ProductAlgebra random_dense_algebra(Rng& rng, int d, bool real_only) {
    std::vector<Complex> alpha(static_cast<std::size_t>(d));
    for (auto& a : alpha) a = random_complex(rng, real_only);
    switch (uniform_int(rng, 0, 2)) {
        case 0: return ProductAlgebra::identity(d, std::move(alpha));
        case 1: {
            std::vector<Complex> weights(static_cast<std::size_t>(d));
            for (auto& w : weights) w = random_complex(rng, real_only);
            return ProductAlgebra::diag_scaled(d, std::move(weights), std::move(alpha));
        }
        default: return random_table_algebra(rng, d, real_only);
    }
}

SparseTensor random_tensor(Rng& rng, int order, int d, bool real_only) {
    SparseTensor t(order);
    std::vector<int> digits(static_cast<std::size_t>(order), 1);
    std::uint64_t count = 1;
    for (int i = 0; i < order; ++i) count *= static_cast<std::uint64_t>(d);
    for (std::uint64_t it = 0; it < count; ++it) {
        if (uniform(rng, 0.0, 1.0) < 0.85) { // keep most entries, drop some
            MultiIndex idx;
            idx.reserve(static_cast<std::size_t>(order));
            for (int s = 0; s < order; ++s) idx.push_back(BasisLabel::dense(digits[s]));
            t.set(std::move(idx), random_complex(rng, real_only));
        }
        for (int s = 0; s < order; ++s) {
            if (digits[s] < d) {
                ++digits[s];
                break;
            }
            digits[s] = 1;
        }
    }
    return t;
}

HWM random_hwm(Rng& rng, const RankedAlphabet& alphabet, int d, bool real_only,
               bool identity_ones) {
    HWM m;
    m.alphabet = alphabet;
    m.algebra = identity_ones ? ProductAlgebra::identity_ones(d)
                              : random_dense_algebra(rng, d, real_only);
    for (const auto& [symbol, arity] : alphabet.symbols())
        m.tensors[symbol] = random_tensor(rng, arity, d, real_only);
    return m;
}

RankedAlphabet random_alphabet(Rng& rng, int max_symbols, int max_arity) {
    const int count = uniform_int(rng, 1, max_symbols);
    std::vector<std::pair<std::string, int>> symbols;
    for (int i = 0; i < count; ++i)
        symbols.emplace_back(std::string(1, static_cast<char>('a' + i)),
                             uniform_int(rng, 1, max_arity));
    return RankedAlphabet(symbols);
}

Hypergraph random_hypergraph(Rng& rng, const RankedAlphabet& alphabet, int max_vertices,
                             int max_ports) {
    const auto& symbols = alphabet.symbols();
    Hypergraph g;
    g.alphabet = alphabet;

    const int wanted = uniform_int(rng, 1, max_vertices);
    int ports = 0;
    for (int i = 0; i < wanted; ++i) {
        const auto& [symbol, arity] = symbols[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(symbols.size()) - 1))];
        if (ports + arity > max_ports) continue;
        ports += arity;
        g.vertices.push_back({"v" + std::to_string(i + 1), symbol});
    }
    if (g.vertices.empty()) {
        // fall back to the smallest symbol
        auto smallest = *std::min_element(
            symbols.begin(), symbols.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
        g.vertices.push_back({"v1", smallest.first});
        ports = smallest.second;
    }

    std::vector<PortRef> all_ports;
    for (const auto& v : g.vertices) {
        const int arity = alphabet.arity(v.label);
        for (int slot = 1; slot <= arity; ++slot) all_ports.push_back({v.id, slot});
    }
    std::shuffle(all_ports.begin(), all_ports.end(), rng);

    const int blocks = uniform_int(rng, 1, static_cast<int>(all_ports.size()));
    std::vector<Hyperedge> edges(static_cast<std::size_t>(blocks));
    for (std::size_t i = 0; i < all_ports.size(); ++i)
        edges[static_cast<std::size_t>(uniform_int(rng, 0, blocks - 1))].push_back(all_ports[i]);
    for (auto& e : edges) {
        if (e.empty()) continue;
        std::sort(e.begin(), e.end());
        g.hyperedges.push_back(std::move(e));
    }
    return g;
}

Hypergraph random_connected_hypergraph(Rng& rng, const RankedAlphabet& alphabet,
                                       int max_vertices, int max_ports) {
    Hypergraph g = random_hypergraph(rng, alphabet, max_vertices, max_ports);
    while (true) {
        ComponentPartition parts = connected_components(g);
        if (parts.count <= 1) return g;
        // merge one hyperedge of component 0 with one of another component
        std::size_t inside = static_cast<std::size_t>(-1);
        std::size_t outside = static_cast<std::size_t>(-1);
        for (std::size_t e = 0; e < g.hyperedges.size(); ++e) {
            const int component = parts.assignment.at(g.hyperedges[e][0].vertex);
            if (component == 0 && inside == static_cast<std::size_t>(-1)) inside = e;
            if (component != 0 && outside == static_cast<std::size_t>(-1)) outside = e;
        }
        auto& target = g.hyperedges[inside];
        target.insert(target.end(), g.hyperedges[outside].begin(),
                      g.hyperedges[outside].end());
        std::sort(target.begin(), target.end());
        g.hyperedges.erase(g.hyperedges.begin() + static_cast<std::ptrdiff_t>(outside));
    }
}

Hypergraph random_binary_edge_hypergraph(Rng& rng, const RankedAlphabet& alphabet,
                                         int max_vertices, int max_ports) {
    const auto& symbols = alphabet.symbols();
    Hypergraph g;
    g.alphabet = alphabet;

    int ports = 0;
    const int wanted = uniform_int(rng, 1, max_vertices);
    for (int i = 0; i < wanted; ++i) {
        const auto& [symbol, arity] = symbols[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(symbols.size()) - 1))];
        if (ports + arity > max_ports) continue;
        ports += arity;
        g.vertices.push_back({"v" + std::to_string(i + 1), symbol});
    }
    if (ports % 2 != 0) {
        // append a vertex with an odd arity to even the total
        for (const auto& [symbol, arity] : symbols) {
            if (arity % 2 == 1) {
                g.vertices.push_back(
                    {"v" + std::to_string(g.vertices.size() + 1), symbol});
                ports += arity;
                break;
            }
        }
    }
    if (g.vertices.empty() || ports % 2 != 0)
        throw Error(ErrorCode::ShapeMismatch,
                    "alphabet cannot produce an even port total for a binary-edge graph");

    std::vector<PortRef> all_ports;
    for (const auto& v : g.vertices) {
        const int arity = alphabet.arity(v.label);
        for (int slot = 1; slot <= arity; ++slot) all_ports.push_back({v.id, slot});
    }
    std::shuffle(all_ports.begin(), all_ports.end(), rng);
    for (std::size_t i = 0; i + 1 < all_ports.size(); i += 2) {
        Hyperedge e{all_ports[i], all_ports[i + 1]};
        std::sort(e.begin(), e.end());
        g.hyperedges.push_back(std::move(e));
    }
    return g;
}

StringLinearRep random_string_rep(Rng& rng, const std::vector<std::string>& symbols, int d,
                                  bool real_only) {
    StringLinearRep rep;
    rep.d = d;
    rep.iota = random_vector(rng, d, real_only);
    rep.tau = random_vector(rng, d, real_only);
    for (const auto& s : symbols) rep.matrices[s] = random_matrix(rng, d, d, real_only);
    return rep;
}

Word random_word(Rng& rng, const std::vector<std::string>& symbols, int length) {
    Word w;
    w.reserve(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i)
        w.push_back(symbols[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(symbols.size()) - 1))]);
    return w;
}

Tree random_tree(Rng& rng, const std::map<std::string, int>& arities, int max_nodes) {
    std::vector<std::string> nullary, all;
    for (const auto& [symbol, arity] : arities) {
        all.push_back(symbol);
        if (arity == 0) nullary.push_back(symbol);
    }
    if (nullary.empty())
        throw Error(ErrorCode::InvalidTree, "tree generation needs a nullary symbol");

    Tree t;
    t.arities = arities;
    int remaining = uniform_int(rng, 1, max_nodes);
    int pending = 1; // nodes promised but not yet grown
    std::function<void(const Tree::Position&)> grow = [&](const Tree::Position& at) {
        --pending;
        // every pending node and every new child must fit in the budget
        std::vector<const std::string*> choices;
        for (const auto& symbol : all)
            if (arities.at(symbol) <= remaining - 1 - pending) choices.push_back(&symbol);
        const std::string& symbol =
            choices.empty()
                ? nullary[static_cast<std::size_t>(
                      uniform_int(rng, 0, static_cast<int>(nullary.size()) - 1))]
                : *choices[static_cast<std::size_t>(
                      uniform_int(rng, 0, static_cast<int>(choices.size()) - 1))];
        t.labels[at] = symbol;
        --remaining;
        pending += arities.at(symbol);
        for (int j = 1; j <= arities.at(symbol); ++j) {
            Tree::Position child = at;
            child.push_back(j);
            grow(child);
        }
    };
    grow({});
    validate_tree(t);
    return t;
}

TreeLinearRep random_tree_rep(Rng& rng, const std::map<std::string, int>& arities, int d) {
    TreeLinearRep rep;
    rep.d = d;
    rep.lambda = random_vector(rng, d, /*real_only=*/false);
    for (const auto& [symbol, arity] : arities)
        rep.mu[symbol] = random_tensor(rng, arity + 1, d, /*real_only=*/false);
    return rep;
}

Crossword random_crossword(Rng& rng, const std::vector<std::string>& symbols, int rows,
                           int cols) {
    Crossword w;
    w.rows = rows;
    w.cols = cols;
    for (int m = 0; m < rows; ++m) {
        std::vector<std::string> row;
        for (int n = 0; n < cols; ++n)
            row.push_back(symbols[static_cast<std::size_t>(
                uniform_int(rng, 0, static_cast<int>(symbols.size()) - 1))]);
        w.cells.push_back(std::move(row));
    }
    return w;
}

std::vector<Hypergraph> enumerate_small_graphs(const RankedAlphabet& alphabet,
                                               int max_vertices) {
    const auto& symbols = alphabet.symbols();
    std::vector<Hypergraph> out;

    // nondecreasing label vectors of each length
    std::vector<std::vector<std::size_t>> label_vectors;
    std::vector<std::size_t> current;
    std::function<void(std::size_t)> pick = [&](std::size_t from) {
        if (!current.empty()) label_vectors.push_back(current);
        if (static_cast<int>(current.size()) == max_vertices) return;
        for (std::size_t s = from; s < symbols.size(); ++s) {
            current.push_back(s);
            pick(s);
            current.pop_back();
        }
    };
    pick(0);

    for (const auto& labels : label_vectors) {
        Hypergraph base;
        base.alphabet = alphabet;
        std::vector<PortRef> ports;
        for (std::size_t v = 0; v < labels.size(); ++v) {
            const auto& [symbol, arity] = symbols[labels[v]];
            std::string id = "v" + std::to_string(v + 1);
            base.vertices.push_back({id, symbol});
            for (int slot = 1; slot <= arity; ++slot) ports.push_back({id, slot});
        }

        // all set partitions of the ports via restricted growth strings
        const std::size_t n = ports.size();
        std::vector<int> rgs(n, 0);
        std::function<void(std::size_t, int)> grow = [&](std::size_t i, int max_block) {
            if (i == n) {
                Hypergraph g = base;
                g.hyperedges.assign(static_cast<std::size_t>(max_block) + 1, {});
                for (std::size_t p = 0; p < n; ++p)
                    g.hyperedges[static_cast<std::size_t>(rgs[p])].push_back(ports[p]);
                out.push_back(std::move(g));
                return;
            }
            for (int b = 0; b <= max_block + 1; ++b) {
                rgs[i] = b;
                grow(i + 1, std::max(max_block, b));
            }
        };
        grow(1, 0); // rgs[0] = 0 fixed
    }
    return out;
}

} // namespace hwm::gen
