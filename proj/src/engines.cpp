#include "hwm/engines.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <tuple>

#include "hwm/error.hpp"

namespace hwm {

const char* engine_name(Engine engine) {
    switch (engine) {
        case Engine::Auto: return "auto";
        case Engine::Naive: return "naive";
        case Engine::Support: return "support";
        case Engine::Factored: return "factored";
        case Engine::GammaId: return "gamma_id";
    }
    return "unknown";
}

Engine engine_from_name(const std::string& name) {
    if (name == "auto") return Engine::Auto;
    if (name == "naive") return Engine::Naive;
    if (name == "support") return Engine::Support;
    if (name == "factored") return Engine::Factored;
    if (name == "gamma_id") return Engine::GammaId;
    throw Error(ErrorCode::SchemaError, "unknown engine '" + name + "'");
}

namespace {

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                         std::uint64_t cap) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && result > cap / base) return std::nullopt;
        result *= base;
    }
    return result;
}

/// Port bookkeeping shared by the engines: global port ids in vertex order,
/// per-vertex ranges, per-edge port id lists.
struct PortLayout {
    std::vector<std::string> vertex_labels;
    std::vector<int> vertex_offset; // first port id of each vertex
    std::vector<int> vertex_arity;
    std::vector<std::vector<int>> edge_ports; // edge -> global port ids
    int total_ports = 0;

    explicit PortLayout(const Hypergraph& g) {
        std::map<std::string, std::size_t> pos;
        vertex_offset.reserve(g.vertices.size());
        for (std::size_t i = 0; i < g.vertices.size(); ++i) {
            pos[g.vertices[i].id] = i;
            vertex_labels.push_back(g.vertices[i].label);
            vertex_offset.push_back(total_ports);
            int arity = g.alphabet.arity(g.vertices[i].label);
            vertex_arity.push_back(arity);
            total_ports += arity;
        }
        edge_ports.reserve(g.hyperedges.size());
        for (const auto& edge : g.hyperedges) {
            std::vector<int> ids;
            ids.reserve(edge.size());
            for (const auto& p : edge)
                ids.push_back(vertex_offset[pos.at(p.vertex)] + p.slot - 1);
            edge_ports.push_back(std::move(ids));
        }
    }
};

void check_coverage(const HWM& m, const Hypergraph& g) {
    for (const auto& v : g.vertices) {
        const SparseTensor& t = m.tensor(v.label); // throws UnknownSymbol
        const int arity = g.alphabet.arity(v.label);
        if (t.order() != arity)
            throw Error(ErrorCode::ShapeMismatch,
                        "tensor for '" + v.label + "' has order " + std::to_string(t.order()) +
                            " but the graph uses arity " + std::to_string(arity));
    }
}

std::vector<const SparseTensor*> vertex_tensors(const HWM& m, const PortLayout& layout) {
    std::vector<const SparseTensor*> out;
    out.reserve(layout.vertex_labels.size());
    for (const auto& label : layout.vertex_labels) out.push_back(&m.tensor(label));
    return out;
}

/// Sequential sum over a contiguous range of naive assignments, odometer in
/// base d with port 0 least significant.
Complex naive_range_sum(const HWM& m, const PortLayout& layout, int d, std::uint64_t lo,
                        std::uint64_t hi) {
    const std::vector<const SparseTensor*> tensors = vertex_tensors(m, layout);
    const int ports = layout.total_ports;
    std::vector<int> digits(ports, 1); // 1-based basis indices
    std::uint64_t rest = lo;
    for (int p = 0; p < ports; ++p) {
        digits[p] = static_cast<int>(rest % d) + 1;
        rest /= d;
    }

    Complex total(0.0);
    MultiIndex scratch;
    std::vector<BasisLabel> edge_labels;
    for (std::uint64_t it = lo; it < hi; ++it) {
        Complex term(1.0);
        for (std::size_t v = 0; v < layout.vertex_labels.size() && term != Complex(0.0); ++v) {
            scratch.clear();
            const int off = layout.vertex_offset[v];
            for (int s = 0; s < layout.vertex_arity[v]; ++s)
                scratch.push_back(BasisLabel::dense(digits[off + s]));
            term *= tensors[v]->at(scratch);
        }
        if (term != Complex(0.0)) {
            for (const auto& ports_of_edge : layout.edge_ports) {
                edge_labels.clear();
                for (int pid : ports_of_edge) edge_labels.push_back(BasisLabel::dense(digits[pid]));
                term *= m.algebra.edge_form(edge_labels);
                if (term == Complex(0.0)) break;
            }
            total += term;
        }
        for (int p = 0; p < ports; ++p) { // odometer increment
            if (digits[p] < d) {
                ++digits[p];
                break;
            }
            digits[p] = 1;
        }
    }
    return total;
}

/// Overflow-safe balanced range bounds for worker w of n.
std::uint64_t chunk_bound(std::uint64_t total, int n, int w) {
    const std::uint64_t base = total / static_cast<std::uint64_t>(n);
    const std::uint64_t extra = total % static_cast<std::uint64_t>(n);
    return base * static_cast<std::uint64_t>(w) +
           std::min<std::uint64_t>(extra, static_cast<std::uint64_t>(w));
}

Complex parallel_chunk_sum(std::uint64_t total_terms, int workers,
                           const std::function<Complex(std::uint64_t, std::uint64_t)>& chunk) {
    if (workers <= 1 || total_terms < 4096) return chunk(0, total_terms);
    const int n = workers;
    std::vector<Complex> partial(n, Complex(0.0));
    std::vector<std::thread> threads;
    for (int w = 0; w < n; ++w) {
        std::uint64_t lo = chunk_bound(total_terms, n, w);
        std::uint64_t hi = chunk_bound(total_terms, n, w + 1);
        threads.emplace_back([&, w, lo, hi] { partial[w] = chunk(lo, hi); });
    }
    for (auto& t : threads) t.join();
    // fixed reduction order: reproducible at equal worker count
    Complex total(0.0);
    for (const Complex& p : partial) total += p;
    return total;
}

} // namespace

EvalResult eval_naive(const HWM& m, const Hypergraph& g, const RunConfig& config) {
    validate_config(config);
    if (!m.algebra.is_dense())
        throw Error(ErrorCode::BasisMismatch, "eval_naive needs a dense algebra");
    check_coverage(m, g);

    const PortLayout layout(g);
    const int d = m.algebra.dim();
    auto terms = checked_pow(static_cast<std::uint64_t>(d),
                             static_cast<std::uint64_t>(layout.total_ports), config.term_budget);
    if (!terms)
        throw Error(ErrorCode::BudgetExceeded,
                    "naive enumeration d^|P| exceeds the term budget of " +
                        std::to_string(config.term_budget));

    Complex value = parallel_chunk_sum(
        *terms, config.workers,
        [&](std::uint64_t lo, std::uint64_t hi) { return naive_range_sum(m, layout, d, lo, hi); });
    return {value, Engine::Naive, *terms};
}

namespace {

struct SupportEntry {
    const MultiIndex* idx;
    Complex value;
};

/// DFS over per-vertex stored entries; edges are scored as soon as their
/// last port is labeled, and exact-zero partial products prune the branch.
/// Subset algebras over at most 64 reference ports run on port bitmasks
/// instead of the generic sparse-set fold.
class SupportWalker {
public:
    SupportWalker(const HWM& m, const PortLayout& layout)
        : m_(m), layout_(layout), port_label_(layout.total_ports) {
        const std::size_t nv = layout.vertex_labels.size();
        entries_.resize(nv);
        for (std::size_t v = 0; v < nv; ++v) {
            for (const auto& [idx, value] : m.tensor(layout.vertex_labels[v]).entries())
                entries_[v].push_back({&idx, value});
        }
        // an edge completes once the latest of its ports' vertices is fixed
        std::vector<int> port_vertex(layout.total_ports);
        for (std::size_t v = 0; v < nv; ++v)
            for (int s = 0; s < layout.vertex_arity[v]; ++s)
                port_vertex[layout.vertex_offset[v] + s] = static_cast<int>(v);
        completes_at_.resize(nv);
        for (std::size_t e = 0; e < layout.edge_ports.size(); ++e) {
            int last = 0;
            for (int pid : layout.edge_ports[e]) last = std::max(last, port_vertex[pid]);
            completes_at_[last].push_back(static_cast<int>(e));
        }
        if (m.algebra.is_subset()) prepare_subset_masks();
    }

    /// Sums the branch where vertex 0 takes entries [lo, hi) of its list.
    Complex run(std::size_t lo, std::size_t hi, std::uint64_t& leaves) {
        total_ = Complex(0.0);
        leaves_ = 0;
        descend(0, Complex(1.0), lo, hi);
        leaves = leaves_;
        return total_;
    }

    std::size_t root_choices() const { return entries_.empty() ? 0 : entries_[0].size(); }

private:
    /// Interns the algebra's reference ports as bits so subset folds become
    /// mask unions; entries whose labels fall outside the reference port set
    /// keep the generic path.
    void prepare_subset_masks() {
        const SubsetProduct& sp = m_.algebra.subset_data();
        if (sp.ports.size() > 64) return;
        std::map<PortRef, int> bit_of;
        for (std::size_t i = 0; i < sp.ports.size(); ++i)
            bit_of[sp.ports[i]] = static_cast<int>(i);

        edge_mask_.clear();
        edge_weight_.clear();
        owner_edge_.assign(sp.ports.size(), -1);
        for (std::size_t e = 0; e < sp.edges.size(); ++e) {
            std::uint64_t mask = 0;
            for (const auto& p : sp.edges[e]) {
                auto it = bit_of.find(p);
                if (it == bit_of.end()) return; // edge outside the port set
                mask |= std::uint64_t{1} << it->second;
                owner_edge_[static_cast<std::size_t>(it->second)] = static_cast<int>(e);
            }
            edge_mask_.push_back(mask);
            edge_weight_.push_back(sp.edge_weights[e]);
        }

        entry_masks_.resize(entries_.size());
        for (std::size_t v = 0; v < entries_.size(); ++v) {
            for (const SupportEntry& entry : entries_[v]) {
                std::vector<std::uint64_t> row;
                row.reserve(entry.idx->size());
                for (const BasisLabel& label : *entry.idx) {
                    if (label.is_dense()) return;
                    std::uint64_t mask = 0;
                    for (const auto& p : label.ports()) {
                        auto it = bit_of.find(p);
                        if (it == bit_of.end()) return; // fall back to the fold
                        mask |= std::uint64_t{1} << it->second;
                    }
                    row.push_back(mask);
                }
                entry_masks_[v].push_back(std::move(row));
            }
        }
        port_mask_.assign(static_cast<std::size_t>(layout_.total_ports), 0);
        fast_subset_ = true;
    }

    /// alpha applied to the subset fold: zero on empty or overlapping labels,
    /// the edge weight when the union equals a reference edge.
    Complex masked_edge_form(const std::vector<int>& ports_of_edge) const {
        std::uint64_t acc = 0;
        for (int pid : ports_of_edge) {
            const std::uint64_t mask = port_mask_[static_cast<std::size_t>(pid)];
            if (mask == 0 || (acc & mask) != 0) return Complex(0.0);
            acc |= mask;
        }
        const int owner = owner_edge_[static_cast<std::size_t>(std::countr_zero(acc))];
        if (owner < 0) return Complex(0.0);
        return acc == edge_mask_[static_cast<std::size_t>(owner)]
                   ? edge_weight_[static_cast<std::size_t>(owner)]
                   : Complex(0.0);
    }

    void descend(std::size_t v, Complex partial, std::size_t lo, std::size_t hi) {
        if (v == entries_.size()) {
            total_ += partial;
            ++leaves_;
            return;
        }
        const std::size_t begin = v == 0 ? lo : 0;
        const std::size_t end = v == 0 ? hi : entries_[v].size();
        for (std::size_t choice = begin; choice < end; ++choice) {
            const SupportEntry& entry = entries_[v][choice];
            const int off = layout_.vertex_offset[v];
            Complex p = partial * entry.value;
            if (fast_subset_) {
                const std::vector<std::uint64_t>& masks = entry_masks_[v][choice];
                for (int s = 0; s < layout_.vertex_arity[v]; ++s)
                    port_mask_[static_cast<std::size_t>(off + s)] =
                        masks[static_cast<std::size_t>(s)];
                for (int e : completes_at_[v]) {
                    p *= masked_edge_form(layout_.edge_ports[static_cast<std::size_t>(e)]);
                    if (p == Complex(0.0)) break;
                }
            } else {
                for (int s = 0; s < layout_.vertex_arity[v]; ++s)
                    port_label_[off + s] = (*entry.idx)[s];
                for (int e : completes_at_[v]) {
                    edge_scratch_.clear();
                    for (int pid : layout_.edge_ports[e])
                        edge_scratch_.push_back(port_label_[pid]);
                    p *= m_.algebra.edge_form(edge_scratch_);
                    if (p == Complex(0.0)) break;
                }
            }
            if (p == Complex(0.0)) continue;
            descend(v + 1, p, lo, hi);
        }
    }

    const HWM& m_;
    const PortLayout& layout_;
    std::vector<std::vector<SupportEntry>> entries_;
    std::vector<std::vector<int>> completes_at_;
    std::vector<BasisLabel> port_label_;
    std::vector<BasisLabel> edge_scratch_;
    bool fast_subset_ = false;
    std::vector<std::vector<std::vector<std::uint64_t>>> entry_masks_; // [v][entry][slot]
    std::vector<std::uint64_t> port_mask_;
    std::vector<std::uint64_t> edge_mask_;
    std::vector<Complex> edge_weight_;
    std::vector<int> owner_edge_;
    Complex total_{0.0};
    std::uint64_t leaves_ = 0;
};

} // namespace

EvalResult eval_support_restricted(const HWM& m, const Hypergraph& g, const RunConfig& config) {
    validate_config(config);
    check_coverage(m, g);
    const PortLayout layout(g);

    long double bound = 1.0L;
    for (const auto& label : layout.vertex_labels) bound *= m.tensor(label).nnz();
    if (bound > static_cast<long double>(config.term_budget))
        throw Error(ErrorCode::BudgetExceeded,
                    "support enumeration exceeds the term budget of " +
                        std::to_string(config.term_budget));

    SupportWalker walker(m, layout);
    const std::size_t roots = walker.root_choices();
    if (roots == 0) return {Complex(0.0), Engine::Support, 0};

    if (config.workers <= 1 || roots < 2 || bound < 4096.0L) {
        std::uint64_t leaves = 0;
        Complex value = walker.run(0, roots, leaves);
        return {value, Engine::Support, leaves};
    }

    const std::size_t n = std::min<std::size_t>(config.workers, roots);
    std::vector<Complex> partial(n, Complex(0.0));
    std::vector<std::uint64_t> counts(n, 0);
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < n; ++w) {
        const std::size_t lo = chunk_bound(roots, static_cast<int>(n), static_cast<int>(w));
        const std::size_t hi =
            chunk_bound(roots, static_cast<int>(n), static_cast<int>(w) + 1);
        threads.emplace_back([&, w, lo, hi] {
            SupportWalker local(m, layout);
            partial[w] = local.run(lo, hi, counts[w]);
        });
    }
    for (auto& t : threads) t.join();
    Complex value(0.0);
    std::uint64_t leaves = 0;
    for (std::size_t w = 0; w < n; ++w) {
        value += partial[w];
        leaves += counts[w];
    }
    return {value, Engine::Support, leaves};
}

SparseTensor edge_weight_tensor(const ProductAlgebra& alg, int k, const RunConfig& config) {
    if (!alg.is_dense())
        throw Error(ErrorCode::NotDense, "edge_weight_tensor needs a dense algebra");
    if (k < 1) throw Error(ErrorCode::ShapeMismatch, "hyperedges have at least one port");
    const int d = alg.dim();
    auto count = checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k),
                             config.term_budget);
    if (!count)
        throw Error(ErrorCode::BudgetExceeded, "edge weight tensor d^k exceeds the term budget");

    SparseTensor w(k);
    std::vector<int> digits(k, 1);
    MultiIndex labels(k, BasisLabel::dense(1));
    for (std::uint64_t it = 0; it < *count; ++it) {
        for (int s = 0; s < k; ++s) labels[s] = BasisLabel::dense(digits[s]);
        Complex form = alg.edge_form(labels);
        if (form != Complex(0.0)) w.set(labels, form);
        for (int s = 0; s < k; ++s) {
            if (digits[s] < d) {
                ++digits[s];
                break;
            }
            digits[s] = 1;
        }
    }
    return w;
}

namespace {

struct Factor {
    int id = 0;
    std::vector<int> wires; // global port ids, parallel to tensor modes
    SparseTensor tensor;
};

/// Contracts all wires shared by a and b (each wire joins exactly two
/// factors, so shared wires vanish entirely).
Factor contract_pair(const Factor& a, const Factor& b, int new_id, std::uint64_t budget,
                     std::uint64_t& work) {
    std::vector<int> shared;
    for (int w : a.wires)
        if (std::find(b.wires.begin(), b.wires.end(), w) != b.wires.end()) shared.push_back(w);

    std::vector<int> a_keep, b_keep;   // mode positions that survive
    std::vector<int> a_proj, b_proj;   // mode positions of shared wires, aligned
    for (std::size_t i = 0; i < a.wires.size(); ++i) {
        if (std::find(shared.begin(), shared.end(), a.wires[i]) == shared.end())
            a_keep.push_back(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < b.wires.size(); ++i) {
        if (std::find(shared.begin(), shared.end(), b.wires[i]) == shared.end())
            b_keep.push_back(static_cast<int>(i));
    }
    for (int w : shared) {
        a_proj.push_back(static_cast<int>(
            std::find(a.wires.begin(), a.wires.end(), w) - a.wires.begin()));
        b_proj.push_back(static_cast<int>(
            std::find(b.wires.begin(), b.wires.end(), w) - b.wires.begin()));
    }

    Factor out;
    out.id = new_id;
    for (int i : a_keep) out.wires.push_back(a.wires[i]);
    for (int i : b_keep) out.wires.push_back(b.wires[i]);
    out.tensor = SparseTensor(static_cast<int>(out.wires.size()));

    // group b's entries by their shared-wire projection
    std::map<MultiIndex, std::vector<std::pair<MultiIndex, Complex>>> groups;
    for (const auto& [idx, value] : b.tensor.entries()) {
        MultiIndex key, kept;
        for (int i : b_proj) key.push_back(idx[i]);
        for (int i : b_keep) kept.push_back(idx[i]);
        groups[std::move(key)].emplace_back(std::move(kept), value);
    }

    for (const auto& [idx, value] : a.tensor.entries()) {
        MultiIndex key, kept;
        for (int i : a_proj) key.push_back(idx[i]);
        for (int i : a_keep) kept.push_back(idx[i]);
        auto it = groups.find(key);
        if (it == groups.end()) continue;
        for (const auto& [b_kept, b_value] : it->second) {
            MultiIndex target = kept;
            target.insert(target.end(), b_kept.begin(), b_kept.end());
            out.tensor.add(std::move(target), value * b_value);
            ++work;
            if (out.tensor.nnz() > budget)
                throw Error(ErrorCode::BudgetExceeded,
                            "intermediate tensor exceeds the entry budget of " +
                                std::to_string(budget));
        }
    }
    return out;
}

bool factors_share_wire(const Factor& a, const Factor& b) {
    for (int w : a.wires)
        if (std::find(b.wires.begin(), b.wires.end(), w) != b.wires.end()) return true;
    return false;
}

EvalResult run_factored(const HWM& m, const Hypergraph& g, ContractionOrder order,
                        const RunConfig& config) {
    validate_config(config);
    if (!m.algebra.is_dense())
        throw Error(ErrorCode::BasisMismatch, "eval_factored needs a dense algebra");
    check_coverage(m, g);

    const PortLayout layout(g);
    std::vector<Factor> factors;
    int next_id = 0;
    for (std::size_t v = 0; v < layout.vertex_labels.size(); ++v) {
        Factor f;
        f.id = next_id++;
        for (int s = 0; s < layout.vertex_arity[v]; ++s)
            f.wires.push_back(layout.vertex_offset[v] + s);
        f.tensor = m.tensor(layout.vertex_labels[v]);
        factors.push_back(std::move(f));
    }
    for (const auto& edge : layout.edge_ports) {
        Factor f;
        f.id = next_id++;
        f.wires = edge;
        f.tensor = edge_weight_tensor(m.algebra, static_cast<int>(edge.size()), config);
        factors.push_back(std::move(f));
    }

    std::uint64_t work = 0;
    if (order == ContractionOrder::RightToLeft) {
        while (factors.size() > 1) {
            Factor b = std::move(factors.back());
            factors.pop_back();
            Factor a = std::move(factors.back());
            factors.pop_back();
            factors.push_back(
                contract_pair(a, b, next_id++, config.intermediate_budget, work));
        }
    } else {
        // greedy: among wire-sharing pairs take the minimal entry-count
        // product; ties by smaller result order, then by factor ids
        while (true) {
            std::size_t best_a = 0, best_b = 0;
            bool found = false;
            std::uint64_t best_cost = 0;
            int best_order = 0;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                for (std::size_t j = i + 1; j < factors.size(); ++j) {
                    if (!factors_share_wire(factors[i], factors[j])) continue;
                    std::uint64_t cost =
                        static_cast<std::uint64_t>(factors[i].tensor.nnz()) *
                        std::max<std::uint64_t>(1, factors[j].tensor.nnz());
                    int shared = 0;
                    for (int w : factors[i].wires)
                        if (std::find(factors[j].wires.begin(), factors[j].wires.end(), w) !=
                            factors[j].wires.end())
                            ++shared;
                    int result_order = static_cast<int>(factors[i].wires.size() +
                                                        factors[j].wires.size()) -
                                       2 * shared;
                    auto candidate = std::make_tuple(cost, result_order,
                                                     std::min(factors[i].id, factors[j].id),
                                                     std::max(factors[i].id, factors[j].id));
                    auto incumbent = std::make_tuple(best_cost, best_order,
                                                     std::min(factors[best_a].id, factors[best_b].id),
                                                     std::max(factors[best_a].id, factors[best_b].id));
                    if (!found || candidate < incumbent) {
                        found = true;
                        best_a = i;
                        best_b = j;
                        best_cost = cost;
                        best_order = result_order;
                    }
                }
            }
            if (!found) break; // only disconnected scalar factors remain
            Factor merged = contract_pair(factors[best_a], factors[best_b], next_id++,
                                          config.intermediate_budget, work);
            factors.erase(factors.begin() + static_cast<std::ptrdiff_t>(best_b));
            factors.erase(factors.begin() + static_cast<std::ptrdiff_t>(best_a));
            factors.push_back(std::move(merged));
        }
    }

    Complex value(1.0);
    for (const auto& f : factors) {
        if (f.tensor.order() != 0)
            throw Error(ErrorCode::InvalidMap,
                        "contraction left a non-scalar factor; is the graph valid?");
        value *= f.tensor.at({});
    }
    return {value, Engine::Factored, work};
}

} // namespace

EvalResult eval_factored(const HWM& m, const Hypergraph& g, const RunConfig& config) {
    return run_factored(m, g, ContractionOrder::Greedy, config);
}

EvalResult eval_factored_order(const HWM& m, const Hypergraph& g, ContractionOrder order,
                               const RunConfig& config) {
    return run_factored(m, g, order, config);
}

EvalResult eval_gamma_id(const HWM& m, const Hypergraph& g, const RunConfig& config) {
    validate_config(config);
    if (!m.algebra.is_identity_ones())
        throw Error(ErrorCode::WrongAlgebra,
                    "eval_gamma_id needs the identity product with alpha == 1");
    check_coverage(m, g);

    const PortLayout layout(g);
    const int d = m.algebra.dim();
    const std::size_t edges = layout.edge_ports.size();
    auto terms = checked_pow(static_cast<std::uint64_t>(d), edges, config.term_budget);
    if (!terms)
        throw Error(ErrorCode::BudgetExceeded,
                    "gamma_id enumeration d^|E| exceeds the term budget");

    // port id -> owning edge
    std::vector<int> edge_of_port(layout.total_ports, -1);
    for (std::size_t e = 0; e < edges; ++e)
        for (int pid : layout.edge_ports[e]) edge_of_port[pid] = static_cast<int>(e);

    const std::vector<const SparseTensor*> tensors = vertex_tensors(m, layout);
    std::vector<int> digits(edges, 1);
    Complex total(0.0);
    MultiIndex scratch;
    for (std::uint64_t it = 0; it < *terms; ++it) {
        Complex term(1.0);
        for (std::size_t v = 0; v < layout.vertex_labels.size() && term != Complex(0.0); ++v) {
            scratch.clear();
            const int off = layout.vertex_offset[v];
            for (int s = 0; s < layout.vertex_arity[v]; ++s)
                scratch.push_back(BasisLabel::dense(digits[static_cast<std::size_t>(
                    edge_of_port[off + s])]));
            term *= tensors[v]->at(scratch);
        }
        total += term;
        for (std::size_t e = 0; e < edges; ++e) {
            if (digits[e] < d) {
                ++digits[e];
                break;
            }
            digits[e] = 1;
        }
    }
    return {total, Engine::GammaId, *terms};
}

EvalResult eval(const HWM& m, const Hypergraph& g, Engine engine, const RunConfig& config) {
    switch (engine) {
        case Engine::Naive: return eval_naive(m, g, config);
        case Engine::Support: return eval_support_restricted(m, g, config);
        case Engine::Factored: return eval_factored(m, g, config);
        case Engine::GammaId: return eval_gamma_id(m, g, config);
        case Engine::Auto: break;
    }
    if (m.algebra.is_identity_ones()) {
        auto fits = checked_pow(static_cast<std::uint64_t>(m.algebra.dim()),
                                g.hyperedges.size(), config.term_budget);
        if (fits) return eval_gamma_id(m, g, config);
    }
    if (m.algebra.is_dense()) return eval_factored(m, g, config);
    return eval_support_restricted(m, g, config);
}

} // namespace hwm
