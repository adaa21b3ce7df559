#include "hwm/tiling.hpp"

#include <algorithm>
#include <set>

#include "hwm/engines.hpp"
#include "hwm/error.hpp"
#include "tiling_search.hpp"

namespace hwm {

namespace {

using detail::IndexedGraph;
using detail::TilingSearch;

std::vector<std::vector<int>> search_maps(const Hypergraph& g, const Hypergraph& t,
                                          std::size_t limit, bool injective) {
    IndexedGraph ig(g), it(t);
    TilingSearch search(ig, it, injective);
    return search.run(limit);
}

} // namespace

TilingReport find_tilings(const Hypergraph& g, const Hypergraph& template_g,
                          std::size_t limit, std::size_t max_vertices) {
    if (g.alphabet != template_g.alphabet)
        throw Error(ErrorCode::AlphabetMismatch, "tilings are defined over a shared alphabet");
    if (g.vertices.size() > max_vertices)
        throw Error(ErrorCode::BudgetExceeded,
                    "graph has " + std::to_string(g.vertices.size()) +
                        " vertices, tiling search bound is " + std::to_string(max_vertices));

    IndexedGraph ig(g), it(template_g);
    TilingSearch search(ig, it, /*injective=*/false);
    std::vector<std::vector<int>> raw = search.run(limit);
    std::sort(raw.begin(), raw.end());

    TilingReport report;
    report.maps.reserve(raw.size());
    for (const auto& assignment : raw) {
        TilingMap m;
        for (std::size_t v = 0; v < assignment.size(); ++v)
            m.f[ig.ids[v]] = it.ids[static_cast<std::size_t>(assignment[v])];
        report.maps.push_back(std::move(m));
    }
    if (!report.maps.empty()) {
        for (const auto& id : it.ids) report.fiber_sizes[id] = 0;
        for (const auto& [from, to] : report.maps.front().f) report.fiber_sizes[to] += 1;
    }
    return report;
}

bool is_isomorphic(const Hypergraph& a, const Hypergraph& b, std::size_t max_vertices) {
    if (a.vertices.size() != b.vertices.size()) return false;
    if (a.hyperedges.size() != b.hyperedges.size()) return false;
    if (a.vertices.size() > max_vertices)
        throw Error(ErrorCode::BudgetExceeded, "isomorphism search bound exceeded");

    auto label_counts = [](const Hypergraph& g) {
        std::map<std::string, int> counts;
        for (const auto& v : g.vertices) ++counts[v.label];
        return counts;
    };
    if (label_counts(a) != label_counts(b)) return false;
    auto arity_of_used = [](const Hypergraph& g) {
        std::map<std::string, int> out;
        for (const auto& v : g.vertices) out[v.label] = g.alphabet.arity(v.label);
        return out;
    };
    if (arity_of_used(a) != arity_of_used(b)) return false;

    return !search_maps(a, b, 1, /*injective=*/true).empty();
}

Hypergraph quotient_hypergraph(const Hypergraph& g, const Hypergraph& template_g,
                               const TilingMap& m) {
    if (!is_connected(template_g))
        throw Error(ErrorCode::InvalidMap, "quotients are taken over a connected template");

    // check the map is a valid tiling map
    std::map<std::string, std::string> label_of;
    for (const auto& v : template_g.vertices) label_of[v.id] = v.label;
    for (const auto& v : g.vertices) {
        auto it = m.f.find(v.id);
        if (it == m.f.end())
            throw Error(ErrorCode::InvalidMap, "map does not cover vertex '" + v.id + "'");
        auto lt = label_of.find(it->second);
        if (lt == label_of.end() || lt->second != v.label)
            throw Error(ErrorCode::InvalidMap,
                        "map sends '" + v.id + "' to a vertex with a different label");
    }
    std::map<PortSet, std::size_t> template_edges; // sorted edge -> index
    for (std::size_t e = 0; e < template_g.hyperedges.size(); ++e) {
        Hyperedge sorted = template_g.hyperedges[e];
        std::sort(sorted.begin(), sorted.end());
        template_edges[sorted] = e;
    }
    std::vector<int> edge_class; // source edge -> template edge index
    for (const auto& edge : g.hyperedges) {
        PortSet image;
        for (const auto& p : edge) image.push_back({m.f.at(p.vertex), p.slot});
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end())
            throw Error(ErrorCode::InvalidMap, "induced port map is not injective on an edge");
        auto it = template_edges.find(image);
        if (it == template_edges.end())
            throw Error(ErrorCode::InvalidMap,
                        "an edge does not map bijectively onto a template edge");
        edge_class.push_back(static_cast<int>(it->second));
    }

    // vertex classes keyed by f-image; representative = least source id
    std::map<std::string, std::string> class_rep;
    for (const auto& v : g.vertices) {
        auto [it, inserted] = class_rep.emplace(m.f.at(v.id), v.id);
        if (!inserted && v.id < it->second) it->second = v.id;
    }

    Hypergraph quotient;
    quotient.alphabet = g.alphabet;
    for (const auto& v : g.vertices) {
        const std::string& rep = class_rep.at(m.f.at(v.id));
        if (rep == v.id) quotient.vertices.push_back({rep, v.label});
    }
    std::set<int> emitted_edges;
    for (std::size_t e = 0; e < g.hyperedges.size(); ++e) {
        if (!emitted_edges.insert(edge_class[e]).second) continue;
        Hyperedge edge;
        for (const auto& p : g.hyperedges[e])
            edge.push_back({class_rep.at(m.f.at(p.vertex)), p.slot});
        std::sort(edge.begin(), edge.end());
        quotient.hyperedges.push_back(std::move(edge));
    }

    // the induced bijection [v] -> f(v) must carry the quotient onto the
    // template exactly
    if (quotient.vertices.size() != template_g.vertices.size() ||
        quotient.hyperedges.size() != template_g.hyperedges.size())
        throw Error(ErrorCode::InvalidMap, "quotient is not isomorphic to the template");
    validate_hypergraph(quotient);
    return quotient;
}

namespace {

HWM tiling_hwm_weighted(const Hypergraph& template_g, std::vector<Complex> edge_weights) {
    validate_hypergraph(template_g);

    PortSet all_ports;
    for (const auto& v : template_g.vertices) {
        const int arity = template_g.alphabet.arity(v.label);
        for (int slot = 1; slot <= arity; ++slot) all_ports.push_back({v.id, slot});
    }
    all_ports = make_port_set(std::move(all_ports));

    std::vector<PortSet> edges;
    edges.reserve(template_g.hyperedges.size());
    for (const auto& edge : template_g.hyperedges) edges.push_back(make_port_set(edge));

    HWM m;
    m.alphabet = template_g.alphabet;
    m.algebra = ProductAlgebra::subset_weighted(std::move(all_ports), std::move(edges),
                                                std::move(edge_weights));
    for (const auto& [symbol, arity] : template_g.alphabet.symbols()) {
        SparseTensor t(arity);
        for (const auto& v : template_g.vertices) {
            if (v.label != symbol) continue;
            MultiIndex idx;
            idx.reserve(static_cast<std::size_t>(arity));
            for (int slot = 1; slot <= arity; ++slot)
                idx.push_back(BasisLabel::subset({{v.id, slot}}));
            t.add(std::move(idx), Complex(1.0));
        }
        if (t.nnz() == 0) {
            MultiIndex empty(static_cast<std::size_t>(arity), BasisLabel::empty_set());
            t.set(std::move(empty), Complex(1.0));
        }
        m.tensors[symbol] = std::move(t);
    }
    return m;
}

} // namespace

HWM tiling_hwm(const Hypergraph& template_g, Complex edge_weight) {
    return tiling_hwm_weighted(
        template_g, std::vector<Complex>(template_g.hyperedges.size(), edge_weight));
}

HWM scaled_tiling_hwm(const Hypergraph& template_g, Complex target, const RunConfig& config) {
    HWM unit = tiling_hwm(template_g);
    Complex self = eval_support_restricted(unit, template_g, config).value;
    if (self == Complex(0.0))
        throw Error(ErrorCode::ZeroSelfValue,
                    "template does not tile itself; the identity map should always count");
    const int edge_count = static_cast<int>(template_g.hyperedges.size());
    Complex weight = principal_root(target / self, edge_count);
    return tiling_hwm(template_g, weight);
}

HWM finite_support_hwm(const std::vector<std::pair<Hypergraph, Complex>>& pairs,
                       const RunConfig& config) {
    if (pairs.empty())
        throw Error(ErrorCode::InvalidMap, "finite_support_hwm needs at least one template");
    const RankedAlphabet& alphabet = pairs.front().first.alphabet;
    for (const auto& [g, y] : pairs)
        if (g.alphabet != alphabet)
            throw Error(ErrorCode::AlphabetMismatch, "templates must share one alphabet");
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            if (is_isomorphic(pairs[i].first, pairs[j].first))
                throw Error(ErrorCode::InvalidMap,
                            "templates " + std::to_string(i) + " and " + std::to_string(j) +
                                " are isomorphic");

    // one subset-algebra model over the disjoint union of the templates;
    // block k's edges carry the weight of its scaled tiling model
    Hypergraph merged;
    merged.alphabet = alphabet;
    std::vector<Complex> weights;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const Hypergraph& g = pairs[k].first;
        const Complex y = pairs[k].second;

        HWM unit = tiling_hwm(g);
        Complex self = eval_support_restricted(unit, g, config).value;
        if (self == Complex(0.0))
            throw Error(ErrorCode::ZeroSelfValue, "template does not tile itself");
        Complex weight = principal_root(y / self, static_cast<int>(g.hyperedges.size()));

        const std::string prefix = std::to_string(k) + ":";
        for (const auto& v : g.vertices) merged.vertices.push_back({prefix + v.id, v.label});
        for (const auto& edge : g.hyperedges) {
            Hyperedge renamed;
            for (const auto& p : edge) renamed.push_back({prefix + p.vertex, p.slot});
            merged.hyperedges.push_back(std::move(renamed));
            weights.push_back(weight);
        }
    }
    return tiling_hwm_weighted(merged, std::move(weights));
}

TilingFreeReport is_tiling_free(const std::vector<Hypergraph>& family,
                                std::size_t max_vertices) {
    TilingFreeReport report;
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = 0; j < family.size(); ++j) {
            if (i == j) continue;
            // non-trivial tilings have strictly more vertices than the template
            if (family[i].vertices.size() <= family[j].vertices.size()) continue;
            TilingReport tilings = find_tilings(family[i], family[j], 1, max_vertices);
            if (!tilings.maps.empty()) {
                report.tiling_free = false;
                report.witness = TilingFreeWitness{i, j, tilings.maps.front()};
                return report;
            }
        }
    }
    return report;
}

} // namespace hwm
