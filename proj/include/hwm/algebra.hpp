#pragma once

#include <map>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "hwm/tensor.hpp"

namespace hwm {

/// Sparse vector over the basis-label family.
using SparseVec = std::map<BasisLabel, Complex>;

struct IdentityProduct {
    int dim = 1; // e_i (.) e_j = delta_ij e_i
};

struct TableProduct {
    int dim = 1;
    // c[(i-1)*d*d + (j-1)*d + (k-1)]: coefficient of e_k in e_i (.) e_j
    std::vector<Complex> coeffs;

    Complex coeff(int i, int j, int k) const {
        return coeffs[static_cast<std::size_t>(i - 1) * dim * dim +
                      static_cast<std::size_t>(j - 1) * dim + static_cast<std::size_t>(k - 1)];
    }
};

struct DiagScaledProduct {
    int dim = 1;
    std::vector<Complex> weights; // e_i (.) e_j = delta_ij w_i e_i
};

/// Basis indexed by subsets of the ports of a reference hypergraph:
/// e_S (.) e_T = e_{S u T} when S, T nonempty and disjoint, else e_{}.
/// alpha(e_S) = weight of the reference edge equal to S, 0 otherwise.
struct SubsetProduct {
    PortSet ports;                     // P of the reference graph
    std::vector<PortSet> edges;        // its hyperedges, canonically sorted
    std::vector<Complex> edge_weights; // alpha weight per edge

    bool uniform_weight() const;
};

/// A symmetric associative product (.) together with the linear form alpha.
/// Dense variants carry an explicit dimension; the subset variant's basis
/// (2^|P|) is functional and never materialized.
class ProductAlgebra {
public:
    ProductAlgebra(); // identity, d = 1, alpha = (1)

    static ProductAlgebra identity(int dim, std::vector<Complex> alpha);
    static ProductAlgebra identity_ones(int dim);
    /// Validates the table: exact symmetry, associativity within 1e-9.
    static ProductAlgebra table(int dim, std::vector<Complex> coeffs,
                                std::vector<Complex> alpha);
    static ProductAlgebra diag_scaled(int dim, std::vector<Complex> weights,
                                      std::vector<Complex> alpha);
    static ProductAlgebra subset(PortSet ports, std::vector<PortSet> edges,
                                 Complex edge_weight);
    static ProductAlgebra subset_weighted(PortSet ports, std::vector<PortSet> edges,
                                          std::vector<Complex> edge_weights);

    bool is_dense() const;
    bool is_identity() const { return std::holds_alternative<IdentityProduct>(product_); }
    bool is_table() const { return std::holds_alternative<TableProduct>(product_); }
    bool is_diag_scaled() const { return std::holds_alternative<DiagScaledProduct>(product_); }
    bool is_subset() const { return std::holds_alternative<SubsetProduct>(product_); }
    /// Identity product with alpha == 1 everywhere (the <(.)_id, 1> pair).
    bool is_identity_ones() const;

    /// Dense dimension; throws NotDense for the subset variant.
    int dim() const;

    const std::vector<Complex>& dense_alpha() const; // throws NotDense
    const TableProduct& table_data() const;
    const DiagScaledProduct& diag_data() const;
    const SubsetProduct& subset_data() const;

    SparseVec multiply(const BasisLabel& a, const BasisLabel& b) const;
    SparseVec multiply(const SparseVec& a, const BasisLabel& b) const;
    SparseVec multiply(const SparseVec& a, const SparseVec& b) const;

    Complex alpha(const BasisLabel& label) const;
    Complex alpha_apply(const SparseVec& v) const;

    /// e_{l1} (.) e_{l2} (.) ... folded left. Labels must be nonempty.
    SparseVec product_fold(std::span<const BasisLabel> labels) const;
    /// alpha applied to product_fold; alpha(e_l) for a single label.
    Complex edge_form(std::span<const BasisLabel> labels) const;

    /// Exhaustive symmetry check over basis pairs (dense) or sampled subset
    /// pairs; returns max |e_i(.)e_j - e_j(.)e_i| coefficient deviation.
    double symmetry_defect() const;
    /// Exhaustive associativity check over basis triples (dense, O(d^5)).
    double associativity_defect() const;

    bool operator==(const ProductAlgebra& other) const;

private:
    std::variant<IdentityProduct, TableProduct, DiagScaledProduct, SubsetProduct> product_;
    std::vector<Complex> alpha_; // dense variants only

    void check_dense_sizes() const;
};

/// Block table algebra on dim(a)+dim(b): each operand's product on its own
/// block, cross products zero, alpha = (alpha_a; alpha_b). Dense only.
ProductAlgebra direct_sum(const ProductAlgebra& a, const ProductAlgebra& b);

/// M_ij = edge_form(alg, (i, j)); symmetric by product symmetry. Dense only.
Eigen::MatrixXcd bilinear_form_matrix(const ProductAlgebra& alg);

/// Q with Q^T Q ~ M (plain transpose, no conjugation) via eigendecomposition
/// M = U diag(l) U^T, Q = diag(l)^(1/2) U^T with principal complex roots.
/// Throws NotSymmetric when ||M - M^T||_max > tol * max(1, ||M||_max).
Eigen::MatrixXcd symmetric_factor(const Eigen::MatrixXd& m, double tol = kDefaultTolerance);

} // namespace hwm
