#pragma once

#include <initializer_list>
#include <map>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "hwm/hypergraph.hpp"
#include "hwm/numeric.hpp"

namespace hwm {

/// Sorted, duplicate-free set of ports of a reference hypergraph. Used as
/// basis labels by the subset product algebra.
using PortSet = std::vector<PortRef>;

PortSet make_port_set(std::vector<PortRef> ports);
PortSet port_set_union(const PortSet& a, const PortSet& b);
bool port_sets_disjoint(const PortSet& a, const PortSet& b);

/// Canonical basis label: either a dense index in [1, d] or a port subset of
/// a reference hypergraph (subset algebra only).
class BasisLabel {
public:
    BasisLabel() : value_(1) {}

    static BasisLabel dense(int index) { return BasisLabel(index); }
    static BasisLabel subset(PortSet ports) { return BasisLabel(std::move(ports)); }
    static BasisLabel empty_set() { return BasisLabel(PortSet{}); }

    bool is_dense() const { return std::holds_alternative<int>(value_); }
    int index() const;             // throws InvalidLabel on subset labels
    const PortSet& ports() const;  // throws InvalidLabel on dense labels

    auto operator<=>(const BasisLabel&) const = default;

private:
    explicit BasisLabel(int index) : value_(index) {}
    explicit BasisLabel(PortSet ports) : value_(std::move(ports)) {}

    std::variant<int, PortSet> value_;
};

std::string to_string(const BasisLabel& label);

using MultiIndex = std::vector<BasisLabel>;

MultiIndex dense_index(std::initializer_list<int> indices);

/// Order-k complex tensor stored as multi-index -> value entries. Exact
/// zeros are never stored; an order-0 tensor holds one scalar entry.
class SparseTensor {
public:
    SparseTensor() = default;
    explicit SparseTensor(int order) : order_(order) {}

    static SparseTensor scalar(Complex value);
    /// Order-1 tensor from a dense vector (dense labels 1..d).
    static SparseTensor from_vector(const Eigen::VectorXcd& v);
    /// Order-2 tensor from a dense matrix, entry (i, j) at index (i, j).
    static SparseTensor from_matrix(const Eigen::MatrixXcd& m);

    int order() const { return order_; }
    std::size_t nnz() const { return entries_.size(); }
    const std::map<MultiIndex, Complex>& entries() const { return entries_; }

    Complex at(const MultiIndex& idx) const;
    /// Inserts or overwrites; storing an exact zero erases the entry.
    void set(MultiIndex idx, Complex value);
    void add(MultiIndex idx, Complex value);

    /// Largest dense index used, 0 when empty or subset-labeled.
    int max_dense_index() const;
    bool all_dense() const;

    bool approx_equal_to(const SparseTensor& other, double tol = kDefaultTolerance) const;

private:
    int order_ = 0;
    std::map<MultiIndex, Complex> entries_;
};

/// (T (x) U)_{i..j..} = T_{i..} U_{j..}; BasisMismatch when the operands mix
/// dense and subset label families.
SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b);

/// Contracts Q (d' x d) against the given 0-based mode of a dense-labeled
/// tensor: out_{.. r ..} = sum_i Q(r, i) T_{.. i ..}.
SparseTensor mode_apply(const Eigen::MatrixXcd& q, const SparseTensor& t, int mode);

/// Q applied on every mode.
SparseTensor mode_apply_all(const Eigen::MatrixXcd& q, const SparseTensor& t);

} // namespace hwm
