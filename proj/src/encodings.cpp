#include "hwm/encodings.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cctype>
#include <functional>
#include <random>
#include <set>

#include "hwm/error.hpp"

namespace hwm {

namespace {

const char* kIota = "iota";
const char* kTau = "tau";
const char* kLambda = "lambda";

std::vector<std::string> merged_sigma(const Word& word, const std::vector<std::string>& sigma) {
    std::set<std::string> seen(sigma.begin(), sigma.end());
    std::vector<std::string> out(sigma.begin(), sigma.end());
    for (const auto& s : word) {
        if (seen.insert(s).second) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    for (const auto& s : out) {
        if (s == kIota || s == kTau || s == kLambda)
            throw Error(ErrorCode::UnknownSymbol,
                        "'" + s + "' is reserved for boundary vertices");
    }
    return out;
}

RankedAlphabet string_alphabet(const std::vector<std::string>& sigma, bool decorated) {
    std::vector<std::pair<std::string, int>> symbols;
    for (const auto& s : sigma) symbols.emplace_back(s, 2);
    if (decorated) {
        symbols.emplace_back(kIota, 1);
        symbols.emplace_back(kTau, 1);
    }
    return RankedAlphabet(symbols);
}

bool matrix_is_real(const Eigen::MatrixXcd& m, double tol) {
    return m.imag().cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

} // namespace

Word word_from_chars(const std::string& text) {
    Word out;
    out.reserve(text.size());
    for (char c : text) out.emplace_back(1, c);
    return out;
}

std::vector<std::string> StringLinearRep::symbols() const {
    std::vector<std::string> out;
    out.reserve(matrices.size());
    for (const auto& [name, m] : matrices) out.push_back(name);
    return out;
}

Complex string_series_eval(const StringLinearRep& rep, const Word& word) {
    Eigen::RowVectorXcd state = rep.iota.transpose();
    for (const auto& symbol : word) {
        auto it = rep.matrices.find(symbol);
        if (it == rep.matrices.end())
            throw Error(ErrorCode::UnknownSymbol, "no matrix for symbol '" + symbol + "'");
        state = state * it->second;
    }
    return (state * rep.tau).value();
}

Hypergraph encode_string(const Word& word, const std::vector<std::string>& sigma) {
    const std::size_t n = word.size();
    Hypergraph g;
    g.alphabet = string_alphabet(merged_sigma(word, sigma), /*decorated=*/true);
    g.vertices.push_back({"0", kIota});
    for (std::size_t i = 1; i <= n; ++i)
        g.vertices.push_back({std::to_string(i), word[i - 1]});
    g.vertices.push_back({std::to_string(n + 1), kTau});

    // h_0 = {(0,1),(1,1)}; h_i = {(i,2),(i+1,1)}
    g.hyperedges.push_back({{"0", 1}, {"1", 1}});
    for (std::size_t i = 1; i <= n; ++i)
        g.hyperedges.push_back({{std::to_string(i), 2}, {std::to_string(i + 1), 1}});
    return g;
}

HWM lift_string_series(const StringLinearRep& rep) {
    HWM m;
    m.alphabet = string_alphabet(rep.symbols(), /*decorated=*/true);
    m.algebra = ProductAlgebra::identity_ones(rep.d);
    m.tensors[kIota] = SparseTensor::from_vector(rep.iota);
    m.tensors[kTau] = SparseTensor::from_vector(rep.tau);
    for (const auto& [symbol, matrix] : rep.matrices)
        m.tensors[symbol] = SparseTensor::from_matrix(matrix);
    return m;
}

Hypergraph encode_string_bare(const Word& word, const std::vector<std::string>& sigma) {
    if (word.empty())
        throw Error(ErrorCode::EmptyWord, "bare string graphs need a nonempty word");
    const std::size_t n = word.size();
    Hypergraph g;
    g.alphabet = string_alphabet(merged_sigma(word, sigma), /*decorated=*/false);
    for (std::size_t i = 1; i <= n; ++i)
        g.vertices.push_back({std::to_string(i), word[i - 1]});
    g.hyperedges.push_back({{"1", 1}});
    g.hyperedges.push_back({{std::to_string(n), 2}});
    for (std::size_t i = 1; i + 1 <= n; ++i)
        g.hyperedges.push_back({{std::to_string(i), 2}, {std::to_string(i + 1), 1}});
    return g;
}

HWM lift_string_series_iota_eq_tau(const StringLinearRep& rep, std::uint64_t seed) {
    constexpr double kCoordFloor = 1e-6; // below this the rep counts as degenerate
    constexpr double kGoodCoord = 0.05;  // early-accept relative quality
    constexpr int kMaxAttempts = 64;

    for (const auto& [name, matrix] : rep.matrices)
        if (!matrix_is_real(matrix, 1e-12))
            throw Error(ErrorCode::NotReal, "the iota=tau lift needs a real representation");
    if (!matrix_is_real(rep.iota, 1e-12) || !matrix_is_real(rep.tau, 1e-12))
        throw Error(ErrorCode::NotReal, "the iota=tau lift needs a real representation");

    const int d = rep.d;
    const Eigen::VectorXd iota = rep.iota.real();
    const Eigen::VectorXd tau = rep.tau.real();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_rotation = [&]() {
        Eigen::MatrixXd gaussian(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) gaussian(i, j) = gauss(rng);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
        Eigen::MatrixXd q = qr.householderQ();
        Eigen::MatrixXd r = qr.matrixQR().template triangularView<Eigen::Upper>();
        for (int i = 0; i < d; ++i) // fix signs for a deterministic rotation
            if (r(i, i) < 0) q.col(i) = -q.col(i);
        return q;
    };

    Eigen::MatrixXd best_p;
    double best_quality = -1.0;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Eigen::MatrixXd p = random_rotation();
        Eigen::VectorXd it = p.transpose() * iota;
        Eigen::VectorXd tt = p.transpose() * tau;
        double min_coord = std::min(it.cwiseAbs().minCoeff(), tt.cwiseAbs().minCoeff());
        if (min_coord > best_quality) {
            best_quality = min_coord;
            best_p = p;
        }
        double scale = std::max({1.0, it.cwiseAbs().maxCoeff(), tt.cwiseAbs().maxCoeff()});
        if (min_coord >= kGoodCoord * scale) break;
    }
    if (best_quality < kCoordFloor)
        throw Error(ErrorCode::DegenerateRep,
                    "no basis with nonzero iota/tau coordinates found after " +
                        std::to_string(kMaxAttempts) + " rotations");

    const Eigen::MatrixXd& p = best_p;
    const Eigen::VectorXd iota_t = p.transpose() * iota;
    const Eigen::VectorXd tau_t = p.transpose() * tau;

    // D_ii = sqrt(tau'_i) / sqrt(iota'_i), principal complex roots
    Eigen::VectorXcd diag(d), diag_inv(d);
    for (int i = 0; i < d; ++i) {
        diag(i) = principal_sqrt(tau_t(i)) / principal_sqrt(iota_t(i));
        diag_inv(i) = Complex(1.0) / diag(i);
    }

    Eigen::VectorXcd alpha = diag.cwiseProduct(iota_t.cast<Complex>());
    Eigen::VectorXcd alpha_check = diag_inv.cwiseProduct(tau_t.cast<Complex>());
    for (int i = 0; i < d; ++i)
        if (!approx_equal(alpha(i), alpha_check(i)))
            throw Error(ErrorCode::DegenerateRep,
                        "D^T iota' and D^-1 tau' disagree; basis too ill-conditioned");

    HWM m;
    m.alphabet = string_alphabet(rep.symbols(), /*decorated=*/false);
    std::vector<Complex> weights(static_cast<std::size_t>(d));
    std::vector<Complex> alpha_vec(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        alpha_vec[static_cast<std::size_t>(i)] = alpha(i);
        weights[static_cast<std::size_t>(i)] = Complex(1.0) / alpha(i);
    }
    m.algebra = ProductAlgebra::diag_scaled(d, std::move(weights), std::move(alpha_vec));
    for (const auto& [symbol, matrix] : rep.matrices) {
        Eigen::MatrixXcd conjugated = diag_inv.asDiagonal() *
                                      (p.transpose() * matrix.real() * p).cast<Complex>() *
                                      diag.asDiagonal();
        m.tensors[symbol] = SparseTensor::from_matrix(conjugated);
    }
    return m;
}

Tree parse_tree(const std::string& text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto parse_ident = [&]() -> std::string {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (start == pos)
            throw Error(ErrorCode::InvalidTree,
                        "expected a symbol at offset " + std::to_string(pos));
        return text.substr(start, pos - start);
    };

    Tree t;
    std::function<void(const Tree::Position&)> parse_node = [&](const Tree::Position& at) {
        std::string symbol = parse_ident();
        t.labels[at] = symbol;
        int children = 0;
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            for (int j = 1;; ++j) {
                Tree::Position child = at;
                child.push_back(j);
                parse_node(child);
                ++children;
                skip_ws();
                if (pos < text.size() && text[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (pos < text.size() && text[pos] == ')') {
                    ++pos;
                    break;
                }
                throw Error(ErrorCode::InvalidTree,
                            "expected ',' or ')' at offset " + std::to_string(pos));
            }
        }
        auto [it, inserted] = t.arities.emplace(symbol, children);
        if (!inserted && it->second != children)
            throw Error(ErrorCode::InvalidTree,
                        "symbol '" + symbol + "' used with arities " +
                            std::to_string(it->second) + " and " + std::to_string(children));
    };
    parse_node({});
    skip_ws();
    if (pos != text.size())
        throw Error(ErrorCode::InvalidTree, "trailing input at offset " + std::to_string(pos));
    validate_tree(t);
    return t;
}

void validate_tree(const Tree& t) {
    if (t.labels.empty()) throw Error(ErrorCode::InvalidTree, "trees are nonempty");
    if (!t.labels.count({})) throw Error(ErrorCode::InvalidTree, "missing root position");
    for (const auto& [pos, symbol] : t.labels) {
        if (!pos.empty()) {
            Tree::Position parent(pos.begin(), pos.end() - 1);
            if (!t.labels.count(parent))
                throw Error(ErrorCode::InvalidTree, "positions are not prefix-closed");
        }
        auto it = t.arities.find(symbol);
        if (it == t.arities.end())
            throw Error(ErrorCode::InvalidTree, "symbol '" + symbol + "' has no arity");
        const int arity = it->second;
        for (int j = 1; j <= arity; ++j) {
            Tree::Position child = pos;
            child.push_back(j);
            if (!t.labels.count(child))
                throw Error(ErrorCode::InvalidTree,
                            "position " + tree_position_id(pos) + " lacks child " +
                                std::to_string(j));
        }
        Tree::Position extra = pos;
        extra.push_back(arity + 1);
        if (t.labels.count(extra))
            throw Error(ErrorCode::InvalidTree,
                        "position " + tree_position_id(pos) + " has too many children");
    }
}

std::string tree_position_id(const Tree::Position& p) {
    if (p.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(p[i]);
    }
    return out;
}

Hypergraph encode_tree(const Tree& t) {
    validate_tree(t);
    Hypergraph g;
    std::vector<std::pair<std::string, int>> symbols;
    for (const auto& [symbol, arity] : t.arities) symbols.emplace_back(symbol, arity + 1);
    symbols.emplace_back(kLambda, 1);
    g.alphabet = RankedAlphabet(symbols);

    g.vertices.push_back({"0", kLambda});
    for (const auto& [pos, symbol] : t.labels)
        g.vertices.push_back({tree_position_id(pos), symbol});

    g.hyperedges.push_back({{"0", 1}, {"e", 1}});
    for (const auto& [pos, symbol] : t.labels) {
        if (pos.empty()) continue;
        Tree::Position parent(pos.begin(), pos.end() - 1);
        const int j = pos.back();
        g.hyperedges.push_back({{tree_position_id(parent), j + 1}, {tree_position_id(pos), 1}});
    }
    return g;
}

Complex tree_oracle_mu(const TreeLinearRep& rep, const Tree& t) {
    validate_tree(t);
    // children before parents: sort positions by depth descending
    std::vector<const Tree::Position*> order;
    order.reserve(t.labels.size());
    for (const auto& [pos, symbol] : t.labels) order.push_back(&pos);
    std::sort(order.begin(), order.end(),
              [](const Tree::Position* a, const Tree::Position* b) {
                  return a->size() > b->size();
              });

    std::map<Tree::Position, Eigen::VectorXcd> mu;
    for (const Tree::Position* pos : order) {
        const std::string& symbol = t.labels.at(*pos);
        auto it = rep.mu.find(symbol);
        if (it == rep.mu.end())
            throw Error(ErrorCode::UnknownSymbol, "no mu tensor for symbol '" + symbol + "'");
        const SparseTensor& tensor = it->second;
        const int arity = t.arities.at(symbol);
        if (tensor.order() != arity + 1)
            throw Error(ErrorCode::ShapeMismatch,
                        "mu tensor for '" + symbol + "' has order " +
                            std::to_string(tensor.order()) + ", expected " +
                            std::to_string(arity + 1));

        if (tensor.max_dense_index() > rep.d)
            throw Error(ErrorCode::BasisMismatch,
                        "mu tensor for '" + symbol + "' indexes beyond dimension " +
                            std::to_string(rep.d));
        Eigen::VectorXcd value = Eigen::VectorXcd::Zero(rep.d);
        for (const auto& [idx, coeff] : tensor.entries()) {
            Complex term = coeff;
            for (int j = 1; j <= arity && term != Complex(0.0); ++j) {
                Tree::Position child = *pos;
                child.push_back(j);
                term *= mu.at(child)(idx[static_cast<std::size_t>(j)].index() - 1);
            }
            value(idx[0].index() - 1) += term;
        }
        mu[*pos] = std::move(value);
    }
    return rep.lambda.cwiseProduct(mu.at({})).sum();
}

HWM lift_tree_series(const TreeLinearRep& rep) {
    HWM m;
    std::vector<std::pair<std::string, int>> symbols;
    for (const auto& [symbol, tensor] : rep.mu) symbols.emplace_back(symbol, tensor.order());
    symbols.emplace_back(kLambda, 1);
    m.alphabet = RankedAlphabet(symbols);
    m.algebra = ProductAlgebra::identity_ones(rep.d);
    m.tensors[kLambda] = SparseTensor::from_vector(rep.lambda);
    for (const auto& [symbol, tensor] : rep.mu) m.tensors[symbol] = tensor;
    return m;
}

Hypergraph encode_circular(const Word& word, const std::vector<std::string>& sigma) {
    if (word.empty())
        throw Error(ErrorCode::EmptyWord, "circular strings need a nonempty word");
    const std::size_t n = word.size();
    Hypergraph g;
    g.alphabet = string_alphabet(merged_sigma(word, sigma), /*decorated=*/false);
    for (std::size_t i = 1; i <= n; ++i)
        g.vertices.push_back({std::to_string(i), word[i - 1]});
    for (std::size_t i = 1; i <= n; ++i)
        g.hyperedges.push_back(
            {{std::to_string(i), 2}, {std::to_string(i % n + 1), 1}});
    return g;
}

HWM circular_trace_hwm(const std::map<std::string, Eigen::MatrixXcd>& matrices) {
    if (matrices.empty())
        throw Error(ErrorCode::DimensionMismatch, "need at least one matrix");
    const int d = static_cast<int>(matrices.begin()->second.rows());
    HWM m;
    std::vector<std::pair<std::string, int>> symbols;
    for (const auto& [name, matrix] : matrices) {
        if (matrix.rows() != d || matrix.cols() != d)
            throw Error(ErrorCode::DimensionMismatch,
                        "matrix for '" + name + "' is not " + std::to_string(d) + "x" +
                            std::to_string(d));
        symbols.emplace_back(name, 2);
        m.tensors[name] = SparseTensor::from_matrix(matrix);
    }
    m.alphabet = RankedAlphabet(symbols);
    m.algebra = ProductAlgebra::identity_ones(d);
    return m;
}

TraceLemmaReport check_trace_lemma(const Eigen::MatrixXd& m, int kmax, double tol) {
    if (m.rows() != m.cols())
        throw Error(ErrorCode::NotSquare, "trace lemma applies to square matrices");
    if (kmax < m.rows() + 1)
        throw Error(ErrorCode::InvalidConfig,
                    "kmax must be at least dim+1 = " + std::to_string(m.rows() + 1));

    const double scale = std::max(1.0, m.norm());
    TraceLemmaReport report;
    report.premise_holds = true;
    Eigen::MatrixXd power = m;
    for (int k = 2; k <= kmax; ++k) {
        power = power * m;
        if (std::abs(power.trace()) > tol * scale) {
            report.premise_holds = false;
            break;
        }
    }
    report.conclusion_holds = std::abs(m.trace()) <= 100.0 * tol * scale;
    return report;
}

Hypergraph encode_rooted_circular(const Word& word, const std::vector<std::string>& sigma) {
    const std::size_t n = word.size();
    Hypergraph g;
    std::vector<std::pair<std::string, int>> symbols;
    for (const auto& s : merged_sigma(word, sigma)) symbols.emplace_back(s, 2);
    symbols.emplace_back(kLambda, 2);
    g.alphabet = RankedAlphabet(symbols);

    g.vertices.push_back({"0", kLambda});
    for (std::size_t i = 1; i <= n; ++i)
        g.vertices.push_back({std::to_string(i), word[i - 1]});
    for (std::size_t i = 0; i <= n; ++i)
        g.hyperedges.push_back(
            {{std::to_string(i), 2}, {std::to_string((i + 1) % (n + 1)), 1}});
    return g;
}

HWM rooted_circular_hwm(const RootedCircularRep& rep) {
    const int d = rep.d;
    HWM m;
    std::vector<std::pair<std::string, int>> symbols;
    for (const auto& [name, matrix] : rep.matrices) {
        if (matrix.rows() != d || matrix.cols() != d)
            throw Error(ErrorCode::DimensionMismatch,
                        "matrix for '" + name + "' does not match dimension " +
                            std::to_string(d));
        symbols.emplace_back(name, 2);
        m.tensors[name] = SparseTensor::from_matrix(matrix);
    }
    symbols.emplace_back(kLambda, 2);
    m.alphabet = RankedAlphabet(symbols);
    m.algebra = ProductAlgebra::identity_ones(d);

    // T^lambda = sum_i tau_i iota_i^T: with edges oriented (i,2) -> (i+1,1),
    // the cycle contracts to Tr(T^lambda M_w1 ... M_wn) = sum_i iota_i^T M.. tau_i
    Eigen::MatrixXcd root = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& [iota, tau] : rep.pairs) {
        if (iota.size() != d || tau.size() != d)
            throw Error(ErrorCode::DimensionMismatch, "iota/tau pair dimension mismatch");
        root += tau * iota.transpose();
    }
    m.tensors[kLambda] = SparseTensor::from_matrix(root);
    return m;
}

Hypergraph encode_anbn_graph(const Word& word) {
    if (word.empty()) throw Error(ErrorCode::EmptyWord, "3-ary graphs need a nonempty word");
    if (word.size() % 2 != 0)
        throw Error(ErrorCode::OddLength, "3-ary graph representation needs an even length");
    const std::size_t two_n = word.size();
    const std::size_t n = two_n / 2;

    Hypergraph g;
    std::vector<std::pair<std::string, int>> symbols;
    for (const auto& s : merged_sigma(word, {})) symbols.emplace_back(s, 3);
    symbols.emplace_back(kIota, 1);
    symbols.emplace_back(kTau, 1);
    g.alphabet = RankedAlphabet(symbols);

    g.vertices.push_back({"0", kIota});
    for (std::size_t i = 1; i <= two_n; ++i)
        g.vertices.push_back({std::to_string(i), word[i - 1]});
    g.vertices.push_back({std::to_string(two_n + 1), kTau});

    g.hyperedges.push_back({{"0", 1}, {"1", 1}});
    // the chain-edge range 1 <= i <= 2n includes the edge into tau
    for (std::size_t i = 1; i <= two_n; ++i)
        g.hyperedges.push_back({{std::to_string(i), 2}, {std::to_string(i + 1), 1}});
    for (std::size_t i = 1; i <= n; ++i)
        g.hyperedges.push_back({{std::to_string(i), 3}, {std::to_string(n + i), 3}});
    return g;
}

HWM anbn_hwm() {
    // basis: 1 = s1, 2 = s2, 3 = pa, 4 = pb, 5 = m
    const int d = 5;
    const int s1 = 1, s2 = 2, pa = 3, pb = 4, mm = 5;

    // e_i (.) e_j = B_ij e_m with B(s1,s1) = B(s2,s2) = B(pa,pb) = 1; the m
    // row/column is zero, which makes the product associative (all triple
    // products vanish)
    std::vector<Complex> coeffs(static_cast<std::size_t>(d) * d * d, Complex(0.0));
    auto set_pair = [&](int i, int j) {
        coeffs[static_cast<std::size_t>(i - 1) * d * d + static_cast<std::size_t>(j - 1) * d +
               (mm - 1)] = Complex(1.0);
        coeffs[static_cast<std::size_t>(j - 1) * d * d + static_cast<std::size_t>(i - 1) * d +
               (mm - 1)] = Complex(1.0);
    };
    set_pair(s1, s1);
    set_pair(s2, s2);
    set_pair(pa, pb);

    std::vector<Complex> alpha(d, Complex(0.0));
    alpha[mm - 1] = Complex(1.0);

    HWM m;
    m.alphabet = RankedAlphabet({{"a", 3}, {"b", 3}, {kIota, 1}, {kTau, 1}});
    m.algebra = ProductAlgebra::table(d, std::move(coeffs), std::move(alpha));

    SparseTensor t_iota(1);
    t_iota.set({BasisLabel::dense(s1)}, Complex(1.0));
    SparseTensor t_tau(1);
    t_tau.set({BasisLabel::dense(s2)}, Complex(1.0));
    SparseTensor t_a(3);
    t_a.set(dense_index({s1, s1, pa}), Complex(1.0));
    SparseTensor t_b(3);
    t_b.set(dense_index({s1, s2, pb}), Complex(1.0));
    t_b.set(dense_index({s2, s2, pb}), Complex(1.0));

    m.tensors[kIota] = std::move(t_iota);
    m.tensors[kTau] = std::move(t_tau);
    m.tensors["a"] = std::move(t_a);
    m.tensors["b"] = std::move(t_b);
    return m;
}

} // namespace hwm
