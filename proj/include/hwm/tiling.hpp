#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hwm/hypergraph.hpp"
#include "hwm/model.hpp"

namespace hwm {

/// Label-preserving vertex map G -> template whose induced port map sends
/// every hyperedge bijectively onto a template hyperedge.
struct TilingMap {
    std::map<std::string, std::string> f; // vertex id of G -> vertex id of the template
};

struct TilingReport {
    std::vector<TilingMap> maps;               // sorted for determinism
    std::map<std::string, int> fiber_sizes;    // template vertex -> |f^-1|, first map
};

inline constexpr std::size_t kDefaultTilingVertexBound = 12;

/// Exhaustive backtracking over label-compatible assignments with per-edge
/// constraint propagation; the independent oracle for tiling_hwm.
/// Throws AlphabetMismatch / BudgetExceeded (vertex bound, default 12).
TilingReport find_tilings(const Hypergraph& g, const Hypergraph& template_g,
                          std::size_t limit = static_cast<std::size_t>(-1),
                          std::size_t max_vertices = kDefaultTilingVertexBound);

/// True when a bijective tiling map exists; labels must match up to renaming
/// of vertex ids (an injective tiling map between equal-size graphs is an
/// isomorphism).
bool is_isomorphic(const Hypergraph& a, const Hypergraph& b,
                   std::size_t max_vertices = kDefaultTilingVertexBound);

/// Quotient by equal f-image (vertices) and equal g-image (edges); verifies
/// via the induced bijection that the result is isomorphic to the template.
/// The template must be connected.
Hypergraph quotient_hypergraph(const Hypergraph& g, const Hypergraph& template_g,
                               const TilingMap& m);

/// The tiling-indicator model: subset-algebra HWM over the template's ports
/// whose value on G is edge_weight^|E(G)| times the number of tiling maps.
/// Evaluate with the support-restricted engine (the 2^|P| basis is virtual).
HWM tiling_hwm(const Hypergraph& template_g, Complex edge_weight = Complex(1.0));

/// Rescales alpha so the model evaluates to `target` on the template itself:
/// edge_weight = (target/z)^(1/|E|) with z the unscaled self-value.
HWM scaled_tiling_hwm(const Hypergraph& template_g, Complex target,
                      const RunConfig& config = {});

/// One model whose value is y_k on template k and 0 on every other member of
/// a tiling-free family: a subset-algebra model over the disjoint union of
/// the templates, each block's edges weighted like its scaled tiling model.
HWM finite_support_hwm(const std::vector<std::pair<Hypergraph, Complex>>& pairs,
                       const RunConfig& config = {});

struct TilingFreeWitness {
    std::size_t tiled_index = 0;  // the larger graph (a tiling ...)
    std::size_t template_index = 0; // ... of this one
    TilingMap map;
};

struct TilingFreeReport {
    bool tiling_free = true;
    std::optional<TilingFreeWitness> witness;
};

/// A family is tiling-free when no member is a non-trivial tiling (strictly
/// more vertices) of another.
TilingFreeReport is_tiling_free(const std::vector<Hypergraph>& family,
                                std::size_t max_vertices = kDefaultTilingVertexBound);

} // namespace hwm
