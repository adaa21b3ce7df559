#include "hwm/json_io.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "hwm/error.hpp"

namespace hwm {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& path, const std::string& message) {
    throw Error(ErrorCode::SchemaError, path + ": " + message);
}

json parse_bytes(const std::string& bytes) {
    json j = json::parse(bytes, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) schema_fail("/", "not valid JSON");
    return j;
}

void expect_keys(const json& j, const std::string& path, const std::set<std::string>& allowed,
                 const std::set<std::string>& required) {
    if (!j.is_object()) schema_fail(path, "expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) schema_fail(path + "/" + key, "unknown field");
    for (const auto& key : required)
        if (!j.contains(key)) schema_fail(path, "missing field '" + key + "'");
}

const json& field(const json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) schema_fail(path, "missing field '" + key + "'");
    return j.at(key);
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_fail(path, "expected an integer");
    return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) schema_fail(path, "expected a string");
    return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) schema_fail(path, "expected an array");
    return j;
}

Complex as_complex(const json& j, const std::string& path) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_object()) {
        expect_keys(j, path, {"re", "im"}, {"re"});
        if (!j.at("re").is_number()) schema_fail(path + "/re", "expected a number");
        double re = j.at("re").get<double>();
        double im = 0.0;
        if (j.contains("im")) {
            if (!j.at("im").is_number()) schema_fail(path + "/im", "expected a number");
            im = j.at("im").get<double>();
        }
        return {re, im};
    }
    schema_fail(path, "expected a number or {re, im}");
}

json complex_json(Complex v) { return json{{"im", v.imag()}, {"re", v.real()}}; }

RankedAlphabet parse_alphabet(const json& j, const std::string& path) {
    std::vector<std::pair<std::string, int>> symbols;
    for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
        const std::string at = path + "/" + std::to_string(i);
        const json& entry = j.at(i);
        expect_keys(entry, at, {"symbol", "arity"}, {"symbol", "arity"});
        symbols.emplace_back(as_string(entry.at("symbol"), at + "/symbol"),
                             as_int(entry.at("arity"), at + "/arity"));
    }
    try {
        return RankedAlphabet(symbols);
    } catch (const Error& e) {
        schema_fail(path, e.what());
    }
}

json emit_alphabet(const RankedAlphabet& alphabet) {
    json out = json::array();
    auto symbols = alphabet.symbols();
    std::sort(symbols.begin(), symbols.end());
    for (const auto& [symbol, arity] : symbols)
        out.push_back({{"arity", arity}, {"symbol", symbol}});
    return out;
}

PortRef parse_port(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) schema_fail(path, "expected [\"vertex\", slot]");
    return {as_string(j.at(0), path + "/0"), as_int(j.at(1), path + "/1")};
}

json port_json(const PortRef& p) { return json::array({p.vertex, p.slot}); }

PortSet parse_port_set(const json& j, const std::string& path) {
    PortSet out;
    for (std::size_t i = 0; i < as_array(j, path).size(); ++i)
        out.push_back(parse_port(j.at(i), path + "/" + std::to_string(i)));
    return make_port_set(std::move(out));
}

json port_set_json(const PortSet& s) {
    json out = json::array();
    for (const auto& p : s) out.push_back(port_json(p));
    return out;
}

BasisLabel parse_label(const json& j, const std::string& path) {
    if (j.is_number_integer()) return BasisLabel::dense(j.get<int>());
    if (j.is_array()) return BasisLabel::subset(parse_port_set(j, path));
    schema_fail(path, "expected a dense index or a port-set array");
}

json label_json(const BasisLabel& label) {
    if (label.is_dense()) return label.index();
    return port_set_json(label.ports());
}

SparseTensor parse_tensor(const json& j, const std::string& path) {
    expect_keys(j, path, {"order", "entries"}, {"order", "entries"});
    SparseTensor t(as_int(j.at("order"), path + "/order"));
    const json& entries = as_array(j.at("entries"), path + "/entries");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string at = path + "/entries/" + std::to_string(i);
        const json& entry = entries.at(i);
        expect_keys(entry, at, {"idx", "re", "im"}, {"idx", "re"});
        MultiIndex idx;
        const json& raw = as_array(entry.at("idx"), at + "/idx");
        for (std::size_t s = 0; s < raw.size(); ++s)
            idx.push_back(parse_label(raw.at(s), at + "/idx/" + std::to_string(s)));
        if (static_cast<int>(idx.size()) != t.order())
            schema_fail(at + "/idx", "length does not match the tensor order");
        if (!entry.at("re").is_number()) schema_fail(at + "/re", "expected a number");
        double re = entry.at("re").get<double>();
        double im = 0.0;
        if (entry.contains("im")) {
            if (!entry.at("im").is_number()) schema_fail(at + "/im", "expected a number");
            im = entry.at("im").get<double>();
        }
        t.add(std::move(idx), Complex(re, im));
    }
    return t;
}

json tensor_json(const SparseTensor& t) {
    json entries = json::array();
    for (const auto& [idx, value] : t.entries()) {
        json raw = json::array();
        for (const auto& label : idx) raw.push_back(label_json(label));
        entries.push_back({{"idx", std::move(raw)}, {"im", value.imag()}, {"re", value.real()}});
    }
    return json{{"entries", std::move(entries)}, {"order", t.order()}};
}

std::vector<Complex> parse_complex_array(const json& j, const std::string& path) {
    std::vector<Complex> out;
    for (std::size_t i = 0; i < as_array(j, path).size(); ++i)
        out.push_back(as_complex(j.at(i), path + "/" + std::to_string(i)));
    return out;
}

json complex_array_json(const std::vector<Complex>& values) {
    json out = json::array();
    for (Complex v : values) out.push_back(complex_json(v));
    return out;
}

ProductAlgebra parse_algebra(const json& j, const std::string& path) {
    const std::string kind = as_string(field(j, path, "kind"), path + "/kind");
    if (kind == "identity") {
        expect_keys(j, path, {"kind", "dim", "alpha"}, {"kind", "dim", "alpha"});
        return ProductAlgebra::identity(as_int(j.at("dim"), path + "/dim"),
                                        parse_complex_array(j.at("alpha"), path + "/alpha"));
    }
    if (kind == "diag_scaled") {
        expect_keys(j, path, {"kind", "dim", "alpha", "weights"},
                    {"kind", "dim", "alpha", "weights"});
        return ProductAlgebra::diag_scaled(
            as_int(j.at("dim"), path + "/dim"),
            parse_complex_array(j.at("weights"), path + "/weights"),
            parse_complex_array(j.at("alpha"), path + "/alpha"));
    }
    if (kind == "table") {
        expect_keys(j, path, {"kind", "dim", "alpha", "coeffs"},
                    {"kind", "dim", "alpha", "coeffs"});
        const int d = as_int(j.at("dim"), path + "/dim");
        if (d < 1) schema_fail(path + "/dim", "dimension must be >= 1");
        std::vector<Complex> coeffs(static_cast<std::size_t>(d) * d * d, Complex(0.0));
        const json& raw = as_array(j.at("coeffs"), path + "/coeffs");
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const std::string at = path + "/coeffs/" + std::to_string(i);
            const json& entry = raw.at(i);
            expect_keys(entry, at, {"i", "j", "k", "re", "im"}, {"i", "j", "k", "re"});
            const int ii = as_int(entry.at("i"), at + "/i");
            const int jj = as_int(entry.at("j"), at + "/j");
            const int kk = as_int(entry.at("k"), at + "/k");
            if (ii < 1 || ii > d || jj < 1 || jj > d || kk < 1 || kk > d)
                schema_fail(at, "coefficient index out of range");
            double re = entry.at("re").get<double>();
            double im = entry.contains("im") ? entry.at("im").get<double>() : 0.0;
            coeffs[static_cast<std::size_t>(ii - 1) * d * d +
                   static_cast<std::size_t>(jj - 1) * d + static_cast<std::size_t>(kk - 1)] =
                Complex(re, im);
        }
        return ProductAlgebra::table(d, std::move(coeffs),
                                     parse_complex_array(j.at("alpha"), path + "/alpha"));
    }
    if (kind == "subset") {
        expect_keys(j, path, {"kind", "ports", "edges", "edge_weight", "edge_weights"},
                    {"kind", "ports", "edges"});
        PortSet ports = parse_port_set(j.at("ports"), path + "/ports");
        std::vector<PortSet> edges;
        const json& raw = as_array(j.at("edges"), path + "/edges");
        for (std::size_t i = 0; i < raw.size(); ++i)
            edges.push_back(parse_port_set(raw.at(i), path + "/edges/" + std::to_string(i)));
        if (j.contains("edge_weight") && j.contains("edge_weights"))
            schema_fail(path, "give either edge_weight or edge_weights, not both");
        if (j.contains("edge_weights")) {
            std::vector<Complex> weights =
                parse_complex_array(j.at("edge_weights"), path + "/edge_weights");
            if (weights.size() != edges.size())
                schema_fail(path + "/edge_weights", "needs one weight per edge");
            return ProductAlgebra::subset_weighted(std::move(ports), std::move(edges),
                                                   std::move(weights));
        }
        Complex weight(1.0);
        if (j.contains("edge_weight"))
            weight = as_complex(j.at("edge_weight"), path + "/edge_weight");
        return ProductAlgebra::subset(std::move(ports), std::move(edges), weight);
    }
    schema_fail(path + "/kind", "unknown algebra kind '" + kind + "'");
}

json algebra_json(const ProductAlgebra& alg) {
    json out;
    if (alg.is_identity()) {
        out["kind"] = "identity";
        out["dim"] = alg.dim();
        out["alpha"] = complex_array_json(alg.dense_alpha());
    } else if (alg.is_diag_scaled()) {
        out["kind"] = "diag_scaled";
        out["dim"] = alg.dim();
        out["alpha"] = complex_array_json(alg.dense_alpha());
        out["weights"] = complex_array_json(alg.diag_data().weights);
    } else if (alg.is_table()) {
        out["kind"] = "table";
        const TableProduct& t = alg.table_data();
        out["dim"] = t.dim;
        out["alpha"] = complex_array_json(alg.dense_alpha());
        json coeffs = json::array();
        for (int i = 1; i <= t.dim; ++i)
            for (int jj = 1; jj <= t.dim; ++jj)
                for (int k = 1; k <= t.dim; ++k) {
                    Complex v = t.coeff(i, jj, k);
                    if (v == Complex(0.0)) continue;
                    coeffs.push_back({{"i", i},
                                      {"im", v.imag()},
                                      {"j", jj},
                                      {"k", k},
                                      {"re", v.real()}});
                }
        out["coeffs"] = std::move(coeffs);
    } else {
        const SubsetProduct& s = alg.subset_data();
        out["kind"] = "subset";
        out["ports"] = port_set_json(s.ports);
        json edges = json::array();
        for (const auto& e : s.edges) edges.push_back(port_set_json(e));
        out["edges"] = std::move(edges);
        if (s.uniform_weight()) {
            out["edge_weight"] =
                complex_json(s.edge_weights.empty() ? Complex(1.0) : s.edge_weights.front());
        } else {
            out["edge_weights"] = complex_array_json(s.edge_weights);
        }
    }
    return out;
}

} // namespace

Hypergraph parse_graph(const std::string& bytes) {
    json j = parse_bytes(bytes);
    expect_keys(j, "", {"alphabet", "vertices", "hyperedges"},
                {"alphabet", "vertices", "hyperedges"});
    Hypergraph g;
    g.alphabet = parse_alphabet(j.at("alphabet"), "/alphabet");

    const json& vertices = as_array(j.at("vertices"), "/vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const std::string at = "/vertices/" + std::to_string(i);
        const json& v = vertices.at(i);
        expect_keys(v, at, {"id", "label"}, {"id", "label"});
        g.vertices.push_back(
            {as_string(v.at("id"), at + "/id"), as_string(v.at("label"), at + "/label")});
    }
    const json& edges = as_array(j.at("hyperedges"), "/hyperedges");
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const std::string at = "/hyperedges/" + std::to_string(e);
        Hyperedge edge;
        for (std::size_t p = 0; p < as_array(edges.at(e), at).size(); ++p)
            edge.push_back(parse_port(edges.at(e).at(p), at + "/" + std::to_string(p)));
        g.hyperedges.push_back(std::move(edge));
    }
    validate_hypergraph(g);
    return g;
}

std::string emit_graph(const Hypergraph& g) {
    const Hypergraph c = canonical_form(g);
    json out;
    out["alphabet"] = emit_alphabet(c.alphabet);
    json vertices = json::array();
    for (const auto& v : c.vertices) vertices.push_back({{"id", v.id}, {"label", v.label}});
    out["vertices"] = std::move(vertices);
    json edges = json::array();
    for (const auto& edge : c.hyperedges) {
        json e = json::array();
        for (const auto& p : edge) e.push_back(port_json(p));
        edges.push_back(std::move(e));
    }
    out["hyperedges"] = std::move(edges);
    return out.dump(2) + "\n";
}

HWM parse_model(const std::string& bytes) {
    json j = parse_bytes(bytes);
    expect_keys(j, "", {"version", "alphabet", "algebra", "tensors"},
                {"version", "alphabet", "algebra", "tensors"});
    if (as_int(j.at("version"), "/version") != 1)
        schema_fail("/version", "only version 1 documents are supported");

    HWM m;
    m.alphabet = parse_alphabet(j.at("alphabet"), "/alphabet");
    try {
        m.algebra = parse_algebra(j.at("algebra"), "/algebra");
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError) throw;
        throw Error(e.code(), std::string("/algebra: ") + e.what());
    }
    if (!j.at("tensors").is_object()) schema_fail("/tensors", "expected an object");
    for (const auto& [symbol, tensor] : j.at("tensors").items()) {
        if (!m.alphabet.contains(symbol))
            schema_fail("/tensors/" + symbol, "symbol not in the alphabet");
        m.tensors[symbol] = parse_tensor(tensor, "/tensors/" + symbol);
    }
    validate_hwm(m);
    return m;
}

std::string emit_model(const HWM& m) {
    json out;
    out["version"] = 1;
    out["alphabet"] = emit_alphabet(m.alphabet);
    out["algebra"] = algebra_json(m.algebra);
    json tensors;
    for (const auto& [symbol, tensor] : m.tensors) tensors[symbol] = tensor_json(tensor);
    out["tensors"] = std::move(tensors);
    return out.dump(2) + "\n";
}

namespace {

Eigen::VectorXcd parse_complex_vector(const json& j, const std::string& path) {
    std::vector<Complex> values = parse_complex_array(j, path);
    Eigen::VectorXcd out(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = values[i];
    return out;
}

Eigen::MatrixXcd parse_complex_matrix(const json& j, const std::string& path) {
    const json& rows = as_array(j, path);
    if (rows.empty()) schema_fail(path, "matrices are nonempty");
    const std::size_t cols = as_array(rows.at(0), path + "/0").size();
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::string at = path + "/" + std::to_string(r);
        const json& row = as_array(rows.at(r), at);
        if (row.size() != cols) schema_fail(at, "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                as_complex(row.at(c), at + "/" + std::to_string(c));
    }
    return out;
}

std::map<std::string, Eigen::MatrixXcd> parse_matrices_field(const json& j,
                                                             const std::string& path) {
    if (!j.is_object()) schema_fail(path, "expected an object of matrices");
    std::map<std::string, Eigen::MatrixXcd> out;
    for (const auto& [symbol, matrix] : j.items())
        out[symbol] = parse_complex_matrix(matrix, path + "/" + symbol);
    return out;
}

} // namespace

StringLinearRep parse_string_rep(const std::string& bytes) {
    json j = parse_bytes(bytes);
    expect_keys(j, "", {"d", "iota", "tau", "matrices"}, {"d", "iota", "tau", "matrices"});
    StringLinearRep rep;
    rep.d = as_int(j.at("d"), "/d");
    rep.iota = parse_complex_vector(j.at("iota"), "/iota");
    rep.tau = parse_complex_vector(j.at("tau"), "/tau");
    rep.matrices = parse_matrices_field(j.at("matrices"), "/matrices");
    if (rep.iota.size() != rep.d || rep.tau.size() != rep.d)
        schema_fail("/", "iota/tau length does not match d");
    for (const auto& [symbol, matrix] : rep.matrices)
        if (matrix.rows() != rep.d || matrix.cols() != rep.d)
            schema_fail("/matrices/" + symbol, "matrix is not d x d");
    return rep;
}

namespace {

void flatten_mu(const json& j, const std::string& path, int depth, int d, MultiIndex& prefix,
                SparseTensor& out) {
    if (depth == 0) {
        out.add(prefix, as_complex(j, path));
        return;
    }
    const json& arr = as_array(j, path);
    if (static_cast<int>(arr.size()) != d) schema_fail(path, "expected d entries per level");
    for (int i = 0; i < d; ++i) {
        prefix.push_back(BasisLabel::dense(i + 1));
        flatten_mu(arr.at(static_cast<std::size_t>(i)), path + "/" + std::to_string(i),
                   depth - 1, d, prefix, out);
        prefix.pop_back();
    }
}

int nesting_depth(const json& j) {
    int depth = 0;
    const json* cur = &j;
    while (cur->is_array()) {
        if (cur->empty()) break;
        ++depth;
        cur = &cur->at(0);
    }
    return depth;
}

} // namespace

TreeLinearRep parse_tree_rep(const std::string& bytes) {
    json j = parse_bytes(bytes);
    expect_keys(j, "", {"d", "lambda", "mu"}, {"d", "lambda", "mu"});
    TreeLinearRep rep;
    rep.d = as_int(j.at("d"), "/d");
    rep.lambda = parse_complex_vector(j.at("lambda"), "/lambda");
    if (rep.lambda.size() != rep.d) schema_fail("/lambda", "length does not match d");
    if (!j.at("mu").is_object()) schema_fail("/mu", "expected an object");
    for (const auto& [symbol, tensor] : j.at("mu").items()) {
        const std::string at = "/mu/" + symbol;
        const int order = nesting_depth(tensor);
        if (order < 1) schema_fail(at, "expected a nested array of depth arity+1");
        SparseTensor t(order);
        MultiIndex prefix;
        flatten_mu(tensor, at, order, rep.d, prefix, t);
        rep.mu[symbol] = std::move(t);
    }
    return rep;
}

RootedCircularRep parse_rooted_rep(const std::string& bytes) {
    json j = parse_bytes(bytes);
    expect_keys(j, "", {"d", "matrices", "pairs"}, {"d", "matrices", "pairs"});
    RootedCircularRep rep;
    rep.d = as_int(j.at("d"), "/d");
    rep.matrices = parse_matrices_field(j.at("matrices"), "/matrices");
    const json& pairs = as_array(j.at("pairs"), "/pairs");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string at = "/pairs/" + std::to_string(i);
        expect_keys(pairs.at(i), at, {"iota", "tau"}, {"iota", "tau"});
        rep.pairs.emplace_back(parse_complex_vector(pairs.at(i).at("iota"), at + "/iota"),
                               parse_complex_vector(pairs.at(i).at("tau"), at + "/tau"));
    }
    return rep;
}

std::map<std::string, Eigen::MatrixXcd> parse_matrix_family(const std::string& bytes) {
    json j = parse_bytes(bytes);
    expect_keys(j, "", {"matrices"}, {"matrices"});
    return parse_matrices_field(j.at("matrices"), "/matrices");
}

} // namespace hwm
