#include "hwm/closures.hpp"

#include <vector>

#include "hwm/error.hpp"

namespace hwm {

namespace {

void require_dense_pair(const HWM& a, const HWM& b, const char* op) {
    if (a.alphabet != b.alphabet)
        throw Error(ErrorCode::AlphabetMismatch, std::string(op) + " needs a shared alphabet");
    if (!a.algebra.is_dense() || !b.algebra.is_dense())
        throw Error(ErrorCode::NotDense, std::string(op) + " needs dense algebras");
}

/// Coefficients of e_i (.) e_j as a dense vector of length d.
std::vector<Complex> product_coeffs(const ProductAlgebra& alg, int i, int j) {
    std::vector<Complex> out(static_cast<std::size_t>(alg.dim()), Complex(0.0));
    for (const auto& [label, value] : alg.multiply(BasisLabel::dense(i), BasisLabel::dense(j)))
        out[static_cast<std::size_t>(label.index() - 1)] = value;
    return out;
}

bool tensor_is_real(const SparseTensor& t, double tol) {
    for (const auto& [idx, v] : t.entries())
        if (std::abs(v.imag()) > tol * std::max(1.0, std::abs(v))) return false;
    return true;
}

bool algebra_is_real(const ProductAlgebra& alg, double tol) {
    auto vec_real = [&](const std::vector<Complex>& values) {
        for (Complex v : values)
            if (std::abs(v.imag()) > tol * std::max(1.0, std::abs(v))) return false;
        return true;
    };
    if (!vec_real(alg.dense_alpha())) return false;
    if (alg.is_table()) return vec_real(alg.table_data().coeffs);
    if (alg.is_diag_scaled()) return vec_real(alg.diag_data().weights);
    return true; // identity
}

} // namespace

HWM hwm_sum(const HWM& a, const HWM& b) {
    require_dense_pair(a, b, "hwm_sum");
    const int m = a.algebra.dim();

    HWM c;
    c.alphabet = a.alphabet;
    c.algebra = direct_sum(a.algebra, b.algebra);
    for (const auto& [symbol, arity] : a.alphabet.symbols()) {
        const SparseTensor& ta = a.tensor(symbol);
        const SparseTensor& tb = b.tensor(symbol);
        SparseTensor tc(arity);
        for (const auto& [idx, v] : ta.entries()) tc.set(idx, v); // A-block as-is
        for (const auto& [idx, v] : tb.entries()) {               // B-block shifted by m
            MultiIndex shifted;
            shifted.reserve(idx.size());
            for (const auto& label : idx) shifted.push_back(BasisLabel::dense(label.index() + m));
            tc.set(std::move(shifted), v);
        }
        c.tensors[symbol] = std::move(tc);
    }
    return c;
}

HWM hwm_hadamard(const HWM& a, const HWM& b) {
    require_dense_pair(a, b, "hwm_hadamard");
    const int m = a.algebra.dim();
    const int n = b.algebra.dim();
    const int d = m * n;
    auto pair_index = [n](int i, int j) { return n * (i - 1) + j; }; // 1-based

    std::vector<Complex> coeffs(static_cast<std::size_t>(d) * d * d, Complex(0.0));
    auto coeff_at = [&](int i, int j, int k) -> Complex& {
        return coeffs[static_cast<std::size_t>(i - 1) * d * d +
                      static_cast<std::size_t>(j - 1) * d + static_cast<std::size_t>(k - 1)];
    };
    for (int i1 = 1; i1 <= m; ++i1)
        for (int i2 = 1; i2 <= m; ++i2) {
            std::vector<Complex> pa = product_coeffs(a.algebra, i1, i2);
            for (int j1 = 1; j1 <= n; ++j1)
                for (int j2 = 1; j2 <= n; ++j2) {
                    std::vector<Complex> pb = product_coeffs(b.algebra, j1, j2);
                    for (int k1 = 1; k1 <= m; ++k1) {
                        if (pa[static_cast<std::size_t>(k1 - 1)] == Complex(0.0)) continue;
                        for (int k2 = 1; k2 <= n; ++k2) {
                            Complex v = pa[static_cast<std::size_t>(k1 - 1)] *
                                        pb[static_cast<std::size_t>(k2 - 1)];
                            if (v != Complex(0.0))
                                coeff_at(pair_index(i1, j1), pair_index(i2, j2),
                                         pair_index(k1, k2)) = v;
                        }
                    }
                }
        }

    std::vector<Complex> delta(static_cast<std::size_t>(d));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j)
            delta[static_cast<std::size_t>(pair_index(i, j) - 1)] =
                a.algebra.dense_alpha()[static_cast<std::size_t>(i - 1)] *
                b.algebra.dense_alpha()[static_cast<std::size_t>(j - 1)];

    HWM c;
    c.alphabet = a.alphabet;
    c.algebra = ProductAlgebra::table(d, std::move(coeffs), std::move(delta));
    for (const auto& [symbol, arity] : a.alphabet.symbols()) {
        SparseTensor tc(arity);
        for (const auto& [ia, va] : a.tensor(symbol).entries()) {
            for (const auto& [ib, vb] : b.tensor(symbol).entries()) {
                MultiIndex idx;
                idx.reserve(static_cast<std::size_t>(arity));
                for (int s = 0; s < arity; ++s)
                    idx.push_back(BasisLabel::dense(
                        pair_index(ia[static_cast<std::size_t>(s)].index(),
                                   ib[static_cast<std::size_t>(s)].index())));
                tc.add(std::move(idx), va * vb);
            }
        }
        c.tensors[symbol] = std::move(tc);
    }
    return c;
}

HWM normalize_closed_graph(const HWM& a, double tol) {
    if (!a.algebra.is_dense())
        throw Error(ErrorCode::NotDense, "normalize_closed_graph needs a dense algebra");
    if (!algebra_is_real(a.algebra, tol))
        throw Error(ErrorCode::NotReal, "normalize_closed_graph needs a real model");
    for (const auto& [symbol, tensor] : a.tensors)
        if (!tensor_is_real(tensor, tol))
            throw Error(ErrorCode::NotReal,
                        "tensor for '" + symbol + "' is not real within tolerance");

    const Eigen::MatrixXcd form = bilinear_form_matrix(a.algebra);
    const Eigen::MatrixXcd q = symmetric_factor(form.real(), tol);

    HWM b;
    b.alphabet = a.alphabet;
    b.algebra = ProductAlgebra::identity_ones(a.algebra.dim());
    for (const auto& [symbol, tensor] : a.tensors)
        b.tensors[symbol] = mode_apply_all(q, tensor);
    return b;
}

} // namespace hwm
