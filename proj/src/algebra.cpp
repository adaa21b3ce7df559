#include "hwm/algebra.hpp"

#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>

#include "hwm/error.hpp"

namespace hwm {

namespace {

constexpr double kTableAssociativityTol = 1e-9;

void add_scaled(SparseVec& target, const SparseVec& v, Complex scale) {
    if (scale == Complex(0.0)) return;
    for (const auto& [label, value] : v) {
        Complex next = target[label] + scale * value;
        if (next == Complex(0.0)) target.erase(label);
        else target[label] = next;
    }
}

double max_coeff_deviation(const SparseVec& a, const SparseVec& b) {
    double defect = 0.0;
    for (const auto& [label, value] : a) {
        auto it = b.find(label);
        Complex other = it == b.end() ? Complex(0.0) : it->second;
        defect = std::max(defect, std::abs(value - other));
    }
    for (const auto& [label, value] : b) {
        if (!a.count(label)) defect = std::max(defect, std::abs(value));
    }
    return defect;
}

} // namespace

bool SubsetProduct::uniform_weight() const {
    if (edge_weights.empty()) return true;
    return std::all_of(edge_weights.begin(), edge_weights.end(),
                       [&](Complex w) { return w == edge_weights.front(); });
}

ProductAlgebra::ProductAlgebra() : product_(IdentityProduct{1}), alpha_{Complex(1.0)} {}

ProductAlgebra ProductAlgebra::identity(int dim, std::vector<Complex> alpha) {
    if (dim < 1) throw Error(ErrorCode::DimensionMismatch, "algebra dimension must be >= 1");
    ProductAlgebra a;
    a.product_ = IdentityProduct{dim};
    a.alpha_ = std::move(alpha);
    a.check_dense_sizes();
    return a;
}

ProductAlgebra ProductAlgebra::identity_ones(int dim) {
    return identity(dim, std::vector<Complex>(static_cast<std::size_t>(dim), Complex(1.0)));
}

ProductAlgebra ProductAlgebra::table(int dim, std::vector<Complex> coeffs,
                                     std::vector<Complex> alpha) {
    if (dim < 1) throw Error(ErrorCode::DimensionMismatch, "algebra dimension must be >= 1");
    if (coeffs.size() != static_cast<std::size_t>(dim) * dim * dim)
        throw Error(ErrorCode::ShapeMismatch,
                    "table algebra needs dim^3 coefficients, got " +
                        std::to_string(coeffs.size()));
    ProductAlgebra a;
    a.product_ = TableProduct{dim, std::move(coeffs)};
    a.alpha_ = std::move(alpha);
    a.check_dense_sizes();

    // reject invalid tables at load time: symmetry exact, associativity 1e-9
    const auto& t = a.table_data();
    for (int i = 1; i <= dim; ++i)
        for (int j = i + 1; j <= dim; ++j)
            for (int k = 1; k <= dim; ++k)
                if (t.coeff(i, j, k) != t.coeff(j, i, k))
                    throw Error(ErrorCode::NotSymmetric,
                                "table coefficient c[" + std::to_string(i) + "][" +
                                    std::to_string(j) + "][" + std::to_string(k) +
                                    "] differs from its transpose");
    double defect = a.associativity_defect();
    if (defect > kTableAssociativityTol)
        throw Error(ErrorCode::NotAssociative,
                    "table product fails associativity by " + std::to_string(defect));
    return a;
}

ProductAlgebra ProductAlgebra::diag_scaled(int dim, std::vector<Complex> weights,
                                           std::vector<Complex> alpha) {
    if (dim < 1) throw Error(ErrorCode::DimensionMismatch, "algebra dimension must be >= 1");
    if (weights.size() != static_cast<std::size_t>(dim))
        throw Error(ErrorCode::ShapeMismatch, "diag_scaled needs one weight per basis vector");
    ProductAlgebra a;
    a.product_ = DiagScaledProduct{dim, std::move(weights)};
    a.alpha_ = std::move(alpha);
    a.check_dense_sizes();
    return a;
}

ProductAlgebra ProductAlgebra::subset(PortSet ports, std::vector<PortSet> edges,
                                      Complex edge_weight) {
    std::vector<Complex> weights(edges.size(), edge_weight);
    return subset_weighted(std::move(ports), std::move(edges), std::move(weights));
}

ProductAlgebra ProductAlgebra::subset_weighted(PortSet ports, std::vector<PortSet> edges,
                                               std::vector<Complex> edge_weights) {
    if (edge_weights.size() != edges.size())
        throw Error(ErrorCode::ShapeMismatch, "subset algebra needs one weight per edge");
    for (auto& e : edges) {
        e = make_port_set(std::move(e));
        if (e.empty())
            throw Error(ErrorCode::EmptyHyperedge, "subset algebra edges must be nonempty");
    }
    ProductAlgebra a;
    a.product_ = SubsetProduct{std::move(ports), std::move(edges), std::move(edge_weights)};
    a.alpha_.clear();
    return a;
}

bool ProductAlgebra::is_dense() const { return !is_subset(); }

bool ProductAlgebra::is_identity_ones() const {
    if (!is_identity()) return false;
    return std::all_of(alpha_.begin(), alpha_.end(),
                       [](Complex v) { return v == Complex(1.0); });
}

int ProductAlgebra::dim() const {
    if (auto* p = std::get_if<IdentityProduct>(&product_)) return p->dim;
    if (auto* p = std::get_if<TableProduct>(&product_)) return p->dim;
    if (auto* p = std::get_if<DiagScaledProduct>(&product_)) return p->dim;
    throw Error(ErrorCode::NotDense, "subset algebras have no dense dimension");
}

const std::vector<Complex>& ProductAlgebra::dense_alpha() const {
    if (!is_dense()) throw Error(ErrorCode::NotDense, "subset algebras store alpha per edge");
    return alpha_;
}

const TableProduct& ProductAlgebra::table_data() const {
    if (auto* p = std::get_if<TableProduct>(&product_)) return *p;
    throw Error(ErrorCode::WrongAlgebra, "not a table algebra");
}

const DiagScaledProduct& ProductAlgebra::diag_data() const {
    if (auto* p = std::get_if<DiagScaledProduct>(&product_)) return *p;
    throw Error(ErrorCode::WrongAlgebra, "not a diag_scaled algebra");
}

const SubsetProduct& ProductAlgebra::subset_data() const {
    if (auto* p = std::get_if<SubsetProduct>(&product_)) return *p;
    throw Error(ErrorCode::WrongAlgebra, "not a subset algebra");
}

void ProductAlgebra::check_dense_sizes() const {
    if (alpha_.size() != static_cast<std::size_t>(dim()))
        throw Error(ErrorCode::ShapeMismatch,
                    "alpha has " + std::to_string(alpha_.size()) + " entries for dimension " +
                        std::to_string(dim()));
}

SparseVec ProductAlgebra::multiply(const BasisLabel& a, const BasisLabel& b) const {
    if (auto* p = std::get_if<IdentityProduct>(&product_)) {
        const int i = a.index(), j = b.index();
        if (i < 1 || i > p->dim || j < 1 || j > p->dim)
            throw Error(ErrorCode::InvalidLabel, "basis index out of range");
        if (i != j) return {};
        return {{a, Complex(1.0)}};
    }
    if (auto* p = std::get_if<DiagScaledProduct>(&product_)) {
        const int i = a.index(), j = b.index();
        if (i < 1 || i > p->dim || j < 1 || j > p->dim)
            throw Error(ErrorCode::InvalidLabel, "basis index out of range");
        if (i != j) return {};
        if (p->weights[i - 1] == Complex(0.0)) return {};
        return {{a, p->weights[i - 1]}};
    }
    if (auto* p = std::get_if<TableProduct>(&product_)) {
        const int i = a.index(), j = b.index();
        if (i < 1 || i > p->dim || j < 1 || j > p->dim)
            throw Error(ErrorCode::InvalidLabel, "basis index out of range");
        SparseVec out;
        for (int k = 1; k <= p->dim; ++k) {
            Complex c = p->coeff(i, j, k);
            if (c != Complex(0.0)) out[BasisLabel::dense(k)] = c;
        }
        return out;
    }
    // subset: e_S (.) e_T = e_{S u T} if S, T nonempty and disjoint, else e_{}
    const PortSet& s = a.ports();
    const PortSet& t = b.ports();
    if (s.empty() || t.empty() || !port_sets_disjoint(s, t))
        return {{BasisLabel::empty_set(), Complex(1.0)}};
    return {{BasisLabel::subset(port_set_union(s, t)), Complex(1.0)}};
}

SparseVec ProductAlgebra::multiply(const SparseVec& a, const BasisLabel& b) const {
    SparseVec out;
    for (const auto& [label, value] : a) add_scaled(out, multiply(label, b), value);
    return out;
}

SparseVec ProductAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
    SparseVec out;
    for (const auto& [lb, vb] : b) add_scaled(out, multiply(a, lb), vb);
    return out;
}

Complex ProductAlgebra::alpha(const BasisLabel& label) const {
    if (auto* p = std::get_if<SubsetProduct>(&product_)) {
        if (label.is_dense())
            throw Error(ErrorCode::InvalidLabel, "subset algebra expects subset labels");
        const PortSet& s = label.ports();
        if (s.empty()) return Complex(0.0); // the empty set is never an edge
        for (std::size_t k = 0; k < p->edges.size(); ++k)
            if (p->edges[k] == s) return p->edge_weights[k];
        return Complex(0.0);
    }
    const int i = label.index();
    if (i < 1 || i > dim())
        throw Error(ErrorCode::InvalidLabel, "basis index out of range");
    return alpha_[static_cast<std::size_t>(i - 1)];
}

Complex ProductAlgebra::alpha_apply(const SparseVec& v) const {
    Complex total(0.0);
    for (const auto& [label, value] : v) total += alpha(label) * value;
    return total;
}

SparseVec ProductAlgebra::product_fold(std::span<const BasisLabel> labels) const {
    if (labels.empty())
        throw Error(ErrorCode::InvalidLabel, "product_fold needs at least one label");
    SparseVec acc{{labels[0], Complex(1.0)}};
    for (std::size_t i = 1; i < labels.size(); ++i) acc = multiply(acc, labels[i]);
    return acc;
}

Complex ProductAlgebra::edge_form(std::span<const BasisLabel> labels) const {
    if (labels.empty())
        throw Error(ErrorCode::InvalidLabel, "edge_form needs at least one label");
    // closed forms for the diagonal products; a flat fold for tables. These
    // are the hot paths of the evaluation engines.
    if (auto* p = std::get_if<IdentityProduct>(&product_)) {
        const int first = labels[0].index();
        if (first < 1 || first > p->dim)
            throw Error(ErrorCode::InvalidLabel, "basis index out of range");
        for (std::size_t i = 1; i < labels.size(); ++i)
            if (labels[i].index() != first) return Complex(0.0);
        return alpha_[static_cast<std::size_t>(first - 1)];
    }
    if (auto* p = std::get_if<DiagScaledProduct>(&product_)) {
        const int first = labels[0].index();
        if (first < 1 || first > p->dim)
            throw Error(ErrorCode::InvalidLabel, "basis index out of range");
        for (std::size_t i = 1; i < labels.size(); ++i)
            if (labels[i].index() != first) return Complex(0.0);
        Complex total = alpha_[static_cast<std::size_t>(first - 1)];
        for (std::size_t i = 1; i < labels.size(); ++i)
            total *= p->weights[static_cast<std::size_t>(first - 1)];
        return total;
    }
    if (auto* p = std::get_if<TableProduct>(&product_)) {
        const int d = p->dim;
        std::vector<Complex> acc(static_cast<std::size_t>(d), Complex(0.0));
        std::vector<Complex> next(static_cast<std::size_t>(d));
        const int first = labels[0].index();
        if (first < 1 || first > d)
            throw Error(ErrorCode::InvalidLabel, "basis index out of range");
        acc[static_cast<std::size_t>(first - 1)] = Complex(1.0);
        for (std::size_t step = 1; step < labels.size(); ++step) {
            const int b = labels[step].index();
            if (b < 1 || b > d)
                throw Error(ErrorCode::InvalidLabel, "basis index out of range");
            std::fill(next.begin(), next.end(), Complex(0.0));
            for (int i = 1; i <= d; ++i) {
                const Complex a = acc[static_cast<std::size_t>(i - 1)];
                if (a == Complex(0.0)) continue;
                for (int k = 1; k <= d; ++k) next[static_cast<std::size_t>(k - 1)] +=
                    a * p->coeff(i, b, k);
            }
            acc.swap(next);
        }
        Complex total(0.0);
        for (int k = 0; k < d; ++k) total += alpha_[static_cast<std::size_t>(k)] *
                                             acc[static_cast<std::size_t>(k)];
        return total;
    }
    return alpha_apply(product_fold(labels));
}

double ProductAlgebra::symmetry_defect() const {
    if (is_dense()) {
        const int d = dim();
        double defect = 0.0;
        for (int i = 1; i <= d; ++i)
            for (int j = i + 1; j <= d; ++j)
                defect = std::max(defect,
                                  max_coeff_deviation(
                                      multiply(BasisLabel::dense(i), BasisLabel::dense(j)),
                                      multiply(BasisLabel::dense(j), BasisLabel::dense(i))));
        return defect;
    }
    // the subset product is symmetric by set algebra; sample pairs anyway
    const auto& sp = subset_data();
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> coin(0, 1);
    double defect = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        PortSet s, t;
        for (const auto& p : sp.ports) {
            if (coin(rng)) s.push_back(p);
            if (coin(rng)) t.push_back(p);
        }
        BasisLabel a = BasisLabel::subset(make_port_set(s));
        BasisLabel b = BasisLabel::subset(make_port_set(t));
        defect = std::max(defect, max_coeff_deviation(multiply(a, b), multiply(b, a)));
    }
    return defect;
}

double ProductAlgebra::associativity_defect() const {
    if (is_dense()) {
        const int d = dim();
        double defect = 0.0;
        for (int i = 1; i <= d; ++i) {
            for (int j = 1; j <= d; ++j) {
                SparseVec ij = multiply(BasisLabel::dense(i), BasisLabel::dense(j));
                for (int k = 1; k <= d; ++k) {
                    SparseVec left = multiply(ij, BasisLabel::dense(k));
                    SparseVec jk = multiply(BasisLabel::dense(j), BasisLabel::dense(k));
                    SparseVec right = multiply(SparseVec{{BasisLabel::dense(i), Complex(1.0)}}, jk);
                    defect = std::max(defect, max_coeff_deviation(left, right));
                }
            }
        }
        return defect;
    }
    // subset: associativity holds by set algebra (union on disjoint sets plus
    // the empty-set absorber); sample triples
    const auto& sp = subset_data();
    std::mt19937_64 rng(54321);
    std::uniform_int_distribution<int> coin(0, 2);
    double defect = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        PortSet sets[3];
        for (const auto& p : sp.ports) {
            int pick = coin(rng);
            if (pick < 3) sets[pick].push_back(p);
        }
        BasisLabel a = BasisLabel::subset(make_port_set(sets[0]));
        BasisLabel b = BasisLabel::subset(make_port_set(sets[1]));
        BasisLabel c = BasisLabel::subset(make_port_set(sets[2]));
        SparseVec left = multiply(multiply(a, b), SparseVec{{c, Complex(1.0)}});
        SparseVec right = multiply(SparseVec{{a, Complex(1.0)}}, multiply(b, c));
        defect = std::max(defect, max_coeff_deviation(left, right));
    }
    return defect;
}

bool ProductAlgebra::operator==(const ProductAlgebra& other) const {
    if (product_.index() != other.product_.index()) return false;
    if (alpha_ != other.alpha_) return false;
    if (auto* p = std::get_if<IdentityProduct>(&product_))
        return p->dim == std::get<IdentityProduct>(other.product_).dim;
    if (auto* p = std::get_if<TableProduct>(&product_)) {
        const auto& q = std::get<TableProduct>(other.product_);
        return p->dim == q.dim && p->coeffs == q.coeffs;
    }
    if (auto* p = std::get_if<DiagScaledProduct>(&product_)) {
        const auto& q = std::get<DiagScaledProduct>(other.product_);
        return p->dim == q.dim && p->weights == q.weights;
    }
    const auto& p = std::get<SubsetProduct>(product_);
    const auto& q = std::get<SubsetProduct>(other.product_);
    return p.ports == q.ports && p.edges == q.edges && p.edge_weights == q.edge_weights;
}

ProductAlgebra direct_sum(const ProductAlgebra& a, const ProductAlgebra& b) {
    if (!a.is_dense() || !b.is_dense())
        throw Error(ErrorCode::NotDense, "direct_sum needs dense algebras");
    const int m = a.dim();
    const int n = b.dim();
    const int d = m + n;

    std::vector<Complex> coeffs(static_cast<std::size_t>(d) * d * d, Complex(0.0));
    auto coeff_at = [&](int i, int j, int k) -> Complex& {
        return coeffs[static_cast<std::size_t>(i - 1) * d * d +
                      static_cast<std::size_t>(j - 1) * d + static_cast<std::size_t>(k - 1)];
    };
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            for (const auto& [label, value] :
                 a.multiply(BasisLabel::dense(i), BasisLabel::dense(j)))
                coeff_at(i, j, label.index()) = value;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (const auto& [label, value] :
                 b.multiply(BasisLabel::dense(i), BasisLabel::dense(j)))
                coeff_at(m + i, m + j, m + label.index()) = value;

    std::vector<Complex> alpha(static_cast<std::size_t>(d));
    for (int i = 0; i < m; ++i)
        alpha[static_cast<std::size_t>(i)] = a.dense_alpha()[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i)
        alpha[static_cast<std::size_t>(m + i)] = b.dense_alpha()[static_cast<std::size_t>(i)];
    return ProductAlgebra::table(d, std::move(coeffs), std::move(alpha));
}

Eigen::MatrixXcd bilinear_form_matrix(const ProductAlgebra& alg) {
    if (!alg.is_dense())
        throw Error(ErrorCode::NotDense, "bilinear_form_matrix needs a dense algebra");
    const int d = alg.dim();
    Eigen::MatrixXcd m(d, d);
    for (int i = 1; i <= d; ++i) {
        for (int j = 1; j <= d; ++j) {
            const BasisLabel labels[2] = {BasisLabel::dense(i), BasisLabel::dense(j)};
            m(i - 1, j - 1) = alg.edge_form(labels);
        }
    }
    return m;
}

Eigen::MatrixXcd symmetric_factor(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols())
        throw Error(ErrorCode::NotSquare, "symmetric_factor needs a square matrix");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale)
        throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric within tolerance");

    // already diagonal: take principal roots directly (identity stays identity)
    if (m.cwiseAbs().sum() == m.diagonal().cwiseAbs().sum()) {
        Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i) q(i, i) = principal_sqrt(m(i, i));
        return q;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()));
    const Eigen::VectorXd eigenvalues = solver.eigenvalues();
    const Eigen::MatrixXd u = solver.eigenvectors();

    Eigen::MatrixXcd q(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        q.row(r) = principal_sqrt(eigenvalues(r)) * u.col(r).transpose().cast<Complex>();
    return q;
}

} // namespace hwm
