#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hwm/algebra.hpp"
#include "hwm/alphabet.hpp"
#include "hwm/tensor.hpp"

namespace hwm {

/// Hypergraph Weighted Model: one tensor per symbol (order = arity), a
/// product algebra and its alpha vector.
struct HWM {
    RankedAlphabet alphabet;
    ProductAlgebra algebra;
    std::map<std::string, SparseTensor> tensors;

    const SparseTensor& tensor(const std::string& symbol) const;
};

/// Checks that every symbol has a tensor of matching order and that tensor
/// labels belong to the algebra's basis family (and range for dense).
void validate_hwm(const HWM& m);

struct RunConfig {
    std::uint64_t term_budget = 100'000'000;        // max enumerated terms
    std::uint64_t intermediate_budget = 10'000'000; // max intermediate entries
    double tolerance = 1e-8;
    int workers = 1;
    std::uint64_t seed = 1;
};

/// Positive budgets, workers >= 1, tolerance in (0, 1e-2].
void validate_config(const RunConfig& config);

} // namespace hwm
