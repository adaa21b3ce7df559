#pragma once

// Integer-indexed tiling-map search shared by find_tilings and the
// acceptance sweep (which runs it over millions of graph pairs and cannot
// afford to rebuild string-keyed indices per call).

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "hwm/hypergraph.hpp"

namespace hwm::detail {

struct IndexedGraph {
    std::vector<std::string> ids;
    std::vector<std::string> labels;
    std::vector<int> arity;
    std::vector<std::vector<std::pair<int, int>>> edges; // (vertex idx, slot)
    std::vector<int> port_edge;                          // global port -> edge
    std::vector<int> vertex_offset;                      // vertex -> first port
    int total_ports = 0;

    explicit IndexedGraph(const Hypergraph& g) {
        std::map<std::string, int> pos;
        for (const auto& v : g.vertices) {
            pos[v.id] = static_cast<int>(ids.size());
            ids.push_back(v.id);
            labels.push_back(v.label);
            vertex_offset.push_back(total_ports);
            arity.push_back(g.alphabet.arity(v.label));
            total_ports += arity.back();
        }
        port_edge.assign(static_cast<std::size_t>(total_ports), -1);
        for (const auto& edge : g.hyperedges) {
            std::vector<std::pair<int, int>> e;
            e.reserve(edge.size());
            for (const auto& p : edge) {
                int v = pos.at(p.vertex);
                e.emplace_back(v, p.slot);
                port_edge[static_cast<std::size_t>(vertex_offset[v] + p.slot - 1)] =
                    static_cast<int>(edges.size());
            }
            edges.push_back(std::move(e));
        }
    }

    int port_id(int vertex, int slot) const { return vertex_offset[vertex] + slot - 1; }
};

/// Backtracking over label-compatible vertex assignments. Each source edge
/// locks onto one template edge of equal size and collects distinct target
/// ports; bijectivity then follows from the size match.
class TilingSearch {
public:
    TilingSearch(const IndexedGraph& g, const IndexedGraph& t, bool injective)
        : g_(g), t_(t), injective_(injective) {
        for (std::size_t v = 0; v < g.labels.size(); ++v) {
            std::vector<int> c;
            for (std::size_t w = 0; w < t.labels.size(); ++w)
                if (t.labels[w] == g.labels[v]) c.push_back(static_cast<int>(w));
            candidates_.push_back(std::move(c));
        }
        edge_target_.assign(g.edges.size(), -1);
        edge_ports_.resize(g.edges.size());
        assignment_.assign(g.labels.size(), -1);
        used_target_.assign(t.labels.size(), false);
    }

    /// Collects full assignments (up to limit).
    std::vector<std::vector<int>> run(std::size_t limit) {
        limit_ = limit;
        collect_ = true;
        results_.clear();
        count_ = 0;
        descend(0);
        return std::move(results_);
    }

    /// Counting-only mode for bulk sweeps.
    std::size_t count(std::size_t limit) {
        limit_ = limit;
        collect_ = false;
        results_.clear();
        count_ = 0;
        descend(0);
        return count_;
    }

private:
    bool assign(std::size_t v, int target) {
        const int steps = g_.arity[v];
        for (int slot = 1; slot <= steps; ++slot) {
            const int ge =
                g_.port_edge[static_cast<std::size_t>(g_.port_id(static_cast<int>(v), slot))];
            const int tp = t_.port_id(target, slot);
            const int te = t_.port_edge[static_cast<std::size_t>(tp)];
            auto& ports = edge_ports_[static_cast<std::size_t>(ge)];
            if (edge_target_[static_cast<std::size_t>(ge)] == -1) {
                // a bijection needs equal sizes; prune as soon as the edge locks
                if (t_.edges[static_cast<std::size_t>(te)].size() !=
                    g_.edges[static_cast<std::size_t>(ge)].size()) {
                    unwind(v, slot - 1);
                    return false;
                }
                edge_target_[static_cast<std::size_t>(ge)] = te;
            } else if (edge_target_[static_cast<std::size_t>(ge)] != te) {
                unwind(v, slot - 1);
                return false;
            }
            if (std::find(ports.begin(), ports.end(), tp) != ports.end()) {
                unwind(v, slot - 1);
                return false;
            }
            ports.push_back(tp);
        }
        assignment_[v] = target;
        return true;
    }

    void unwind(std::size_t v, int placed_slots) {
        for (int slot = placed_slots; slot >= 1; --slot) {
            const int ge =
                g_.port_edge[static_cast<std::size_t>(g_.port_id(static_cast<int>(v), slot))];
            auto& ports = edge_ports_[static_cast<std::size_t>(ge)];
            ports.pop_back();
            if (ports.empty()) edge_target_[static_cast<std::size_t>(ge)] = -1;
        }
        assignment_[v] = -1;
    }

    void descend(std::size_t v) {
        if (count_ >= limit_) return;
        if (v == g_.labels.size()) {
            ++count_;
            if (collect_) results_.push_back(assignment_);
            return;
        }
        for (int target : candidates_[v]) {
            if (injective_ && used_target_[static_cast<std::size_t>(target)]) continue;
            if (!assign(v, target)) continue;
            if (injective_) used_target_[static_cast<std::size_t>(target)] = true;
            descend(v + 1);
            if (injective_) used_target_[static_cast<std::size_t>(target)] = false;
            unwind(v, g_.arity[v]);
            if (count_ >= limit_) return;
        }
    }

    const IndexedGraph& g_;
    const IndexedGraph& t_;
    bool injective_;
    std::vector<std::vector<int>> candidates_;
    std::vector<int> edge_target_;
    std::vector<std::vector<int>> edge_ports_;
    std::vector<int> assignment_;
    std::vector<bool> used_target_;
    std::vector<std::vector<int>> results_;
    std::size_t count_ = 0;
    std::size_t limit_ = 0;
    bool collect_ = true;
};

} // namespace hwm::detail
