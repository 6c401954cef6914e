/*
 * Copyright 2026 The chroma authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "arena.hpp"
#include "value.hpp"

// Weighted-graph routines over arenas, ignoring ownership.  Edge weights
// are the edge colors.

namespace chroma::graph {

using Weight = std::int64_t;

inline constexpr Weight kUnreachable = std::numeric_limits<Weight>::min() / 4;

/// Strongly connected components, sinks first (Tarjan order).
inline std::vector<std::vector<NodeId>> sccs(const Arena& a, const std::vector<char>& alive)
{
    const NodeId n = a.num_nodes();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<NodeId> stack;
    std::vector<std::vector<NodeId>> out;
    int counter = 0;

    struct Frame {
        NodeId v;
        std::size_t next;
    };
    for (NodeId root = 0; root < n; ++root) {
        if (!alive[root] || index[root] >= 0) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto outs = a.out_edges(f.v);
            if (f.next < outs.size()) {
                const NodeId t = a.target(outs[f.next++]);
                if (!alive[t]) continue;
                if (index[t] < 0) {
                    index[t] = low[t] = counter++;
                    stack.push_back(t);
                    on_stack[t] = 1;
                    call.push_back({t, 0});
                } else if (on_stack[t]) {
                    low[f.v] = std::min(low[f.v], index[t]);
                }
                continue;
            }
            const NodeId v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<NodeId> comp;
                NodeId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
        }
    }
    return out;
}

/// Nodes that can reach `targets` along edges between alive nodes.
inline std::vector<char> backward_reach(const Arena& a, const std::vector<char>& alive, const std::vector<char>& targets)
{
    std::vector<std::vector<EdgeId>> in(a.num_nodes());
    for (EdgeId e = 0; e < a.num_edges(); ++e) in[a.target(e)].push_back(e);
    std::vector<char> seen(a.num_nodes(), 0);
    std::deque<NodeId> queue;
    for (NodeId v = 0; v < a.num_nodes(); ++v) {
        if (alive[v] && targets[v]) {
            seen[v] = 1;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        for (EdgeId e : in[v]) {
            const NodeId u = a.source(e);
            if (alive[u] && !seen[u]) {
                seen[u] = 1;
                queue.push_back(u);
            }
        }
    }
    return seen;
}

struct CycleWithMean {
    Value mean;
    std::vector<EdgeId> edges;
};

/**
 * Minimum mean cycle inside one strongly connected component (Karp),
 * together with a cycle attaining it.  Returns nothing if the component
 * has no internal edge.
 */
inline std::optional<CycleWithMean> min_mean_cycle(const Arena& a, const std::vector<NodeId>& comp, Weight sign)
{
    const int k = static_cast<int>(comp.size());
    std::map<NodeId, int> local;
    for (int i = 0; i < k; ++i) local[comp[i]] = i;
    std::vector<EdgeId> internal;
    for (NodeId v : comp)
        for (EdgeId e : a.out_edges(v))
            if (local.count(a.target(e))) internal.push_back(e);
    if (internal.empty()) return std::nullopt;

    constexpr Weight inf = std::numeric_limits<Weight>::max() / 4;
    std::vector<std::vector<Weight>> dist(k + 1, std::vector<Weight>(k, inf));
    std::vector<std::vector<EdgeId>> parent(k + 1, std::vector<EdgeId>(k, kNoEdge));
    dist[0][0] = 0;
    for (int i = 1; i <= k; ++i) {
        for (EdgeId e : internal) {
            const int u = local[a.source(e)], v = local[a.target(e)];
            if (dist[i - 1][u] == inf) continue;
            const Weight d = dist[i - 1][u] + sign * a.color(e);
            if (d < dist[i][v]) {
                dist[i][v] = d;
                parent[i][v] = e;
            }
        }
    }

    std::optional<Value> best;
    int best_v = -1;
    for (int v = 0; v < k; ++v) {
        if (dist[k][v] == inf) continue;
        std::optional<Value> worst;
        for (int i = 0; i < k; ++i) {
            if (dist[i][v] == inf) continue;
            const Value r(dist[k][v] - dist[i][v], k - i);
            if (!worst || r > *worst) worst = r;
        }
        if (worst && (!best || *worst < *best)) {
            best = worst;
            best_v = v;
        }
    }
    if (!best) throw std::logic_error("min_mean_cycle: no walk of full length in a component with edges");

    // Walk of k edges ending at best_v.  Its first simple cycle is a
    // contiguous closed subwalk; dropping it leaves a shorter walk to best_v,
    // which bounds the cycle mean by the minimum.
    std::vector<EdgeId> walk(k);
    int at = best_v;
    for (int i = k; i >= 1; --i) {
        const EdgeId e = parent[i][at];
        walk[i - 1] = e;
        at = local[a.source(e)];
    }
    std::map<NodeId, int> position{{a.source(walk[0]), 0}};
    for (int t = 0; t < k; ++t) {
        const NodeId next = a.target(walk[t]);
        const auto it = position.find(next);
        if (it == position.end()) {
            position[next] = t + 1;
            continue;
        }
        CycleWithMean c{Value(0), std::vector<EdgeId>(walk.begin() + it->second, walk.begin() + t + 1)};
        Weight w = 0;
        for (EdgeId e : c.edges) w += sign * a.color(e);
        c.mean = Value(w, static_cast<std::int64_t>(c.edges.size()));
        if (c.mean != *best) throw std::logic_error("min_mean_cycle: extracted cycle is not optimal");
        return c;
    }
    throw std::logic_error("min_mean_cycle: walk has no cycle");
}

struct MeanSolution {
    std::vector<Value> values;   // optimal mean weight reachable from each node
    std::vector<EdgeId> choice;  // an edge per node realizing it
};

/**
 * Best mean weight of a cycle reachable from each node, maximizing or
 * minimizing, with a positional edge choice that attains it from every
 * node at once.
 */
inline MeanSolution optimal_mean_cycles(const Arena& a, bool maximize)
{
    const Weight sign = maximize ? -1 : 1; // internally always minimize
    const NodeId n = a.num_nodes();
    std::vector<char> alive(n, 1);
    const auto comps = sccs(a, alive);
    std::vector<int> comp_of(n, -1);
    for (int c = 0; c < static_cast<int>(comps.size()); ++c)
        for (NodeId v : comps[c]) comp_of[v] = c;

    std::vector<std::optional<CycleWithMean>> cycle(comps.size());
    std::vector<std::optional<Value>> best(comps.size());
    for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
        cycle[c] = min_mean_cycle(a, comps[c], sign);
        std::optional<Value> b;
        if (cycle[c]) b = cycle[c]->mean;
        for (NodeId v : comps[c]) {
            for (EdgeId e : a.out_edges(v)) {
                const int d = comp_of[a.target(e)];
                if (d == c) continue;
                // sinks come first, so d is already final
                if (best[d] && (!b || *best[d] < *b)) b = best[d];
            }
        }
        if (!b) throw std::logic_error("optimal_mean_cycles: node without reachable cycle");
        best[c] = b;
    }

    MeanSolution sol;
    sol.values.resize(n);
    sol.choice.assign(n, kNoEdge);
    std::vector<Value> internal(n);
    for (NodeId v = 0; v < n; ++v) internal[v] = *best[comp_of[v]];

    std::vector<std::vector<EdgeId>> in(n);
    for (EdgeId e = 0; e < a.num_edges(); ++e) in[a.target(e)].push_back(e);

    std::vector<Value> levels = internal;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (const Value& level : levels) {
        std::deque<NodeId> queue;
        for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
            if (!cycle[c] || cycle[c]->mean != level || *best[c] != level) continue;
            for (EdgeId e : cycle[c]->edges) {
                sol.choice[a.source(e)] = e;
                queue.push_back(a.source(e));
            }
        }
        while (!queue.empty()) {
            const NodeId v = queue.front();
            queue.pop_front();
            for (EdgeId e : in[v]) {
                const NodeId u = a.source(e);
                if (sol.choice[u] != kNoEdge || internal[u] != level) continue;
                sol.choice[u] = e;
                queue.push_back(u);
            }
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        if (sol.choice[v] == kNoEdge) throw std::logic_error("optimal_mean_cycles: unassigned node");
        sol.values[v] = maximize ? -internal[v] : internal[v];
    }
    return sol;
}

/**
 * Largest weight of a finite path (possibly empty) between alive nodes,
 * assuming no alive cycle has positive weight.  Pass sign = -1 to get the
 * negated smallest weight under the assumption that no cycle is negative.
 */
inline Weight path_weight_bound(const Arena& a, const std::vector<char>& alive, Weight sign)
{
    const NodeId n = a.num_nodes();
    std::vector<std::vector<Weight>> d(n, std::vector<Weight>(n, kUnreachable));
    for (NodeId v = 0; v < n; ++v)
        if (alive[v]) d[v][v] = 0;
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
        const NodeId u = a.source(e), v = a.target(e);
        if (alive[u] && alive[v]) d[u][v] = std::max(d[u][v], sign * a.color(e));
    }
    for (NodeId k = 0; k < n; ++k) {
        if (!alive[k]) continue;
        for (NodeId i = 0; i < n; ++i) {
            if (d[i][k] == kUnreachable) continue;
            for (NodeId j = 0; j < n; ++j) {
                if (d[k][j] == kUnreachable) continue;
                d[i][j] = std::max(d[i][j], d[i][k] + d[k][j]);
            }
        }
    }
    Weight bound = 0;
    for (NodeId i = 0; i < n; ++i) {
        if (alive[i] && d[i][i] > 0) throw std::logic_error("path_weight_bound: cycle of the excluded sign");
        for (NodeId j = 0; j < n; ++j) bound = std::max(bound, d[i][j]);
    }
    return bound;
}

} // namespace chroma::graph
