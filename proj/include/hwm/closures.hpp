#pragma once

#include "hwm/model.hpp"

namespace hwm {

/// Block-diagonal sum model of dimension m+n: eval(C, g) = eval(A, g) +
/// eval(B, g) on every CONNECTED graph (the construction does not claim the
/// identity on disconnected input). Dense algebras only; output is a table
/// algebra with zero cross-block products and tau = (alpha; beta).
HWM hwm_sum(const HWM& a, const HWM& b);

/// Kronecker (Hadamard) product model of dimension m*n under the pairing
/// (i, j) -> n(i-1)+j: eval(D, g) = eval(A, g) * eval(B, g) for all graphs.
HWM hwm_hadamard(const HWM& a, const HWM& b);

/// Rewrites a real model into an identity-product, alpha = 1 model that
/// agrees on every graph whose hyperedges are all binary: factor the edge
/// bilinear form M = Q^T Q and absorb Q into every tensor mode.
HWM normalize_closed_graph(const HWM& a, double tol = kDefaultTolerance);

} // namespace hwm
