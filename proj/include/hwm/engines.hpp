#pragma once

#include <cstdint>
#include <string>

#include "hwm/hypergraph.hpp"
#include "hwm/model.hpp"

namespace hwm {

enum class Engine { Auto, Naive, Support, Factored, GammaId };

const char* engine_name(Engine engine);
Engine engine_from_name(const std::string& name); // throws SchemaError

struct EvalResult {
    Complex value;
    Engine engine = Engine::Naive;
    std::uint64_t terms = 0; // engine-specific work count, see README
};

/// Literal enumeration of all d^|P_G| assignments; the reference oracle.
/// Dense algebras only; throws BudgetExceeded past config.term_budget.
EvalResult eval_naive(const HWM& m, const Hypergraph& g, const RunConfig& config = {});

/// Enumerates one stored tensor entry per vertex (works for any algebra,
/// including the subset algebra's virtual basis). Equal to eval_naive
/// whenever both apply; prunes exact-zero partial products.
EvalResult eval_support_restricted(const HWM& m, const Hypergraph& g,
                                   const RunConfig& config = {});

/// Tensor-network contraction: one factor per vertex, one per hyperedge,
/// greedy pairwise order minimizing the product of entry counts.
EvalResult eval_factored(const HWM& m, const Hypergraph& g, const RunConfig& config = {});

enum class ContractionOrder { Greedy, RightToLeft };

/// eval_factored with an explicit contraction order (the right-to-left
/// fold is used by tests to check order invariance).
EvalResult eval_factored_order(const HWM& m, const Hypergraph& g, ContractionOrder order,
                               const RunConfig& config = {});

/// One shared index per hyperedge; requires the identity product with
/// alpha == 1 (throws WrongAlgebra otherwise).
EvalResult eval_gamma_id(const HWM& m, const Hypergraph& g, const RunConfig& config = {});

/// Dispatch. Auto picks gamma_id when applicable, else factored for dense
/// algebras, else the support-restricted engine.
EvalResult eval(const HWM& m, const Hypergraph& g, Engine engine = Engine::Auto,
                const RunConfig& config = {});

/// W_h[i_1..i_k] = edge_form(alg, (i_1..i_k)) over all dense index tuples.
SparseTensor edge_weight_tensor(const ProductAlgebra& alg, int k, const RunConfig& config = {});

} // namespace hwm
