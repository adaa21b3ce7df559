#pragma once

#include <string>

#include "hwm/crosswords.hpp"
#include "hwm/encodings.hpp"
#include "hwm/hypergraph.hpp"
#include "hwm/model.hpp"

namespace hwm {

/// Graph document:
///   {"alphabet":[{"symbol","arity"}...], "vertices":[{"id","label"}...],
///    "hyperedges":[[["id",slot],...],...]}
/// Parsing is strict (unknown fields rejected, SchemaError carries a JSON
/// pointer) and the result is validated. Emission is canonical: sorted
/// vertices, sorted ports per edge, sorted edge list, sorted keys.
Hypergraph parse_graph(const std::string& bytes);
std::string emit_graph(const Hypergraph& g);

/// Model document: {"version":1, "alphabet":[...], "algebra":{...},
/// "tensors":{symbol: {"order":k, "entries":[{"idx":[...],"re","im"}...]}}}.
/// Algebra kinds: identity | table | diag_scaled | subset; alpha is a dense
/// array for dense kinds, {"edge_weight":...} (or "edge_weights" when
/// non-uniform) for the subset kind. parse(emit(m)) round-trips exactly.
HWM parse_model(const std::string& bytes);
std::string emit_model(const HWM& m);

/// {"d":n, "iota":[...], "tau":[...], "matrices":{symbol:[[...]...]}}
/// Scalars may be numbers or {"re","im"} objects.
StringLinearRep parse_string_rep(const std::string& bytes);

/// {"d":n, "lambda":[...], "mu":{symbol: nested array of depth arity+1}}
TreeLinearRep parse_tree_rep(const std::string& bytes);

/// {"d":n, "matrices":{...}, "pairs":[{"iota":[...],"tau":[...]}...]}
RootedCircularRep parse_rooted_rep(const std::string& bytes);

/// {"matrices":{symbol:[[...]...]}}  (dimension inferred)
std::map<std::string, Eigen::MatrixXcd> parse_matrix_family(const std::string& bytes);

} // namespace hwm
