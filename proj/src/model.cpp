#include "hwm/model.hpp"

#include "hwm/error.hpp"

namespace hwm {

const SparseTensor& HWM::tensor(const std::string& symbol) const {
    auto it = tensors.find(symbol);
    if (it == tensors.end())
        throw Error(ErrorCode::UnknownSymbol, "model has no tensor for symbol '" + symbol + "'");
    return it->second;
}

void validate_hwm(const HWM& m) {
    for (const auto& [symbol, arity] : m.alphabet.symbols()) {
        const SparseTensor& t = m.tensor(symbol);
        if (t.order() != arity)
            throw Error(ErrorCode::ShapeMismatch,
                        "tensor for '" + symbol + "' has order " + std::to_string(t.order()) +
                            ", symbol arity is " + std::to_string(arity));
        if (m.algebra.is_dense()) {
            if (!t.all_dense())
                throw Error(ErrorCode::BasisMismatch,
                            "tensor for '" + symbol + "' uses subset labels with a dense algebra");
            if (t.max_dense_index() > m.algebra.dim())
                throw Error(ErrorCode::BasisMismatch,
                            "tensor for '" + symbol + "' indexes beyond dimension " +
                                std::to_string(m.algebra.dim()));
        } else if (t.nnz() > 0 && t.all_dense() && t.order() > 0) {
            throw Error(ErrorCode::BasisMismatch,
                        "tensor for '" + symbol + "' uses dense labels with a subset algebra");
        }
    }
}

void validate_config(const RunConfig& config) {
    if (config.term_budget == 0 || config.intermediate_budget == 0)
        throw Error(ErrorCode::InvalidConfig, "budgets must be positive");
    if (config.workers < 1)
        throw Error(ErrorCode::InvalidConfig, "worker count must be >= 1");
    if (!(config.tolerance > 0.0) || config.tolerance > 1e-2)
        throw Error(ErrorCode::InvalidConfig, "tolerance must lie in (0, 1e-2]");
}

} // namespace hwm
