#include "hwm/tensor.hpp"

#include <algorithm>

#include "hwm/error.hpp"

namespace hwm {

PortSet make_port_set(std::vector<PortRef> ports) {
    std::sort(ports.begin(), ports.end());
    ports.erase(std::unique(ports.begin(), ports.end()), ports.end());
    return ports;
}

PortSet port_set_union(const PortSet& a, const PortSet& b) {
    PortSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool port_sets_disjoint(const PortSet& a, const PortSet& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else return false;
    }
    return true;
}

int BasisLabel::index() const {
    if (!is_dense()) throw Error(ErrorCode::InvalidLabel, "expected a dense basis label");
    return std::get<int>(value_);
}

const PortSet& BasisLabel::ports() const {
    if (is_dense()) throw Error(ErrorCode::InvalidLabel, "expected a subset basis label");
    return std::get<PortSet>(value_);
}

std::string to_string(const BasisLabel& label) {
    if (label.is_dense()) return std::to_string(label.index());
    std::string out = "{";
    for (std::size_t i = 0; i < label.ports().size(); ++i) {
        if (i) out += ",";
        out += to_string(label.ports()[i]);
    }
    return out + "}";
}

MultiIndex dense_index(std::initializer_list<int> indices) {
    MultiIndex idx;
    idx.reserve(indices.size());
    for (int i : indices) idx.push_back(BasisLabel::dense(i));
    return idx;
}

SparseTensor SparseTensor::scalar(Complex value) {
    SparseTensor t(0);
    t.set({}, value);
    return t;
}

SparseTensor SparseTensor::from_vector(const Eigen::VectorXcd& v) {
    SparseTensor t(1);
    for (int i = 0; i < v.size(); ++i) t.set({BasisLabel::dense(i + 1)}, v(i));
    return t;
}

SparseTensor SparseTensor::from_matrix(const Eigen::MatrixXcd& m) {
    SparseTensor t(2);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            t.set({BasisLabel::dense(i + 1), BasisLabel::dense(j + 1)}, m(i, j));
    return t;
}

Complex SparseTensor::at(const MultiIndex& idx) const {
    auto it = entries_.find(idx);
    return it == entries_.end() ? Complex(0.0) : it->second;
}

void SparseTensor::set(MultiIndex idx, Complex value) {
    if (static_cast<int>(idx.size()) != order_)
        throw Error(ErrorCode::ShapeMismatch,
                    "multi-index of length " + std::to_string(idx.size()) +
                        " for an order-" + std::to_string(order_) + " tensor");
    if (value == Complex(0.0)) {
        entries_.erase(idx);
    } else {
        entries_[std::move(idx)] = value;
    }
}

void SparseTensor::add(MultiIndex idx, Complex value) {
    set(idx, at(idx) + value);
}

int SparseTensor::max_dense_index() const {
    int max_index = 0;
    for (const auto& [idx, v] : entries_)
        for (const auto& label : idx)
            if (label.is_dense()) max_index = std::max(max_index, label.index());
    return max_index;
}

bool SparseTensor::all_dense() const {
    for (const auto& [idx, v] : entries_)
        for (const auto& label : idx)
            if (!label.is_dense()) return false;
    return true;
}

bool SparseTensor::approx_equal_to(const SparseTensor& other, double tol) const {
    if (order_ != other.order_) return false;
    for (const auto& [idx, v] : entries_)
        if (!approx_equal(v, other.at(idx), tol)) return false;
    for (const auto& [idx, v] : other.entries_)
        if (!approx_equal(at(idx), v, tol)) return false;
    return true;
}

namespace {

bool same_basis_family(const SparseTensor& a, const SparseTensor& b) {
    // mixing is only possible when both have entries
    if (a.nnz() == 0 || b.nnz() == 0) return true;
    return a.all_dense() == b.all_dense();
}

} // namespace

SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b) {
    if (!same_basis_family(a, b))
        throw Error(ErrorCode::BasisMismatch, "tensor_product operands mix basis families");
    SparseTensor out(a.order() + b.order());
    for (const auto& [ia, va] : a.entries()) {
        for (const auto& [ib, vb] : b.entries()) {
            MultiIndex idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            out.add(std::move(idx), va * vb);
        }
    }
    return out;
}

SparseTensor mode_apply(const Eigen::MatrixXcd& q, const SparseTensor& t, int mode) {
    if (mode < 0 || mode >= t.order())
        throw Error(ErrorCode::ModeOutOfRange,
                    "mode " + std::to_string(mode) + " for an order-" +
                        std::to_string(t.order()) + " tensor");
    SparseTensor out(t.order());
    for (const auto& [idx, v] : t.entries()) {
        const int i = idx[mode].index(); // 1-based
        if (i < 1 || i > q.cols())
            throw Error(ErrorCode::ShapeMismatch,
                        "tensor index " + std::to_string(i) + " exceeds matrix width " +
                            std::to_string(q.cols()));
        for (int r = 0; r < q.rows(); ++r) {
            const Complex coeff = q(r, i - 1);
            if (coeff == Complex(0.0)) continue;
            MultiIndex target = idx;
            target[mode] = BasisLabel::dense(r + 1);
            out.add(std::move(target), coeff * v);
        }
    }
    return out;
}

SparseTensor mode_apply_all(const Eigen::MatrixXcd& q, const SparseTensor& t) {
    SparseTensor out = t;
    for (int mode = 0; mode < t.order(); ++mode) out = mode_apply(q, out, mode);
    return out;
}

} // namespace hwm
