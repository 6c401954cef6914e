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

#include <optional>
#include <utility>
#include <vector>

#include "arena.hpp"
#include "memory.hpp"

namespace chroma {

/**
 * Product of a memory skeleton with an arena.  Node (m, v) has id
 * m * |V| + v and edge (m, e) has id m * |E| + e; the origin tables make
 * the pairing explicit.
 */
struct ProductArena {
    Arena arena;
    std::vector<std::pair<StateId, NodeId>> node_origin;
    std::vector<std::pair<StateId, EdgeId>> edge_origin;
    NodeId base_nodes = 0;
    EdgeId base_edges = 0;

    NodeId node(StateId m, NodeId v) const { return m * base_nodes + v; }
    EdgeId edge(StateId m, EdgeId e) const { return m * base_edges + e; }
};

/// Labeling of nodes by skeleton states.
using TrivialWitness = std::vector<StateId>;

inline ProductArena build_product(const MemorySkeleton& m, const Arena& a)
{
    if (!m.covers(a.alphabet()))
        throw Error(ErrorKind::UnknownColor, "skeleton alphabet does not cover the arena alphabet");
    ProductArena p;
    p.base_nodes = a.num_nodes();
    p.base_edges = a.num_edges();
    std::vector<Player> owners;
    owners.reserve(static_cast<std::size_t>(m.size()) * a.num_nodes());
    for (StateId s = 0; s < m.size(); ++s) {
        for (NodeId v = 0; v < a.num_nodes(); ++v) {
            owners.push_back(a.owner(v));
            p.node_origin.emplace_back(s, v);
        }
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m.size()) * a.num_edges());
    for (StateId s = 0; s < m.size(); ++s) {
        for (EdgeId e = 0; e < a.num_edges(); ++e) {
            const Edge& ed = a.edge(e);
            edges.push_back({p.node(s, ed.source), p.node(m.step(s, ed.color), ed.target), ed.color});
            p.edge_origin.emplace_back(s, e);
        }
    }
    p.arena = Arena(std::move(owners), std::move(edges), a.alphabet());
    return p;
}

/// The map (m, v) -> m, which makes every product an M-trivial pair.
inline TrivialWitness projection_witness(const ProductArena& p)
{
    TrivialWitness f;
    f.reserve(p.node_origin.size());
    for (const auto& [m, v] : p.node_origin) f.push_back(m);
    return f;
}

/// First edge breaking delta(f(source), col) == f(target), if any.
inline std::optional<EdgeId> check_trivial(const MemorySkeleton& m, const Arena& a, const TrivialWitness& f)
{
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
        const Edge& ed = a.edge(e);
        if (m.step(f[ed.source], ed.color) != f[ed.target]) return e;
    }
    return std::nullopt;
}

/// Nodes labeled with the initial state.
inline std::vector<NodeId> initial_nodes(const MemorySkeleton& m, const TrivialWitness& f)
{
    std::vector<NodeId> out;
    for (NodeId v = 0; v < static_cast<NodeId>(f.size()); ++v)
        if (f[v] == m.init()) out.push_back(v);
    return out;
}

/// Reads a positional strategy of the product as a chromatic strategy on the base arena.
inline ChromaticStrategy project_strategy(const MemorySkeleton& m, const Arena& a, const ProductArena& p,
                                          const PositionalStrategy& s)
{
    ChromaticStrategy out{s.owner, m, std::vector<std::vector<EdgeId>>(m.size(), std::vector<EdgeId>(a.num_nodes(), kNoEdge))};
    for (StateId st = 0; st < m.size(); ++st) {
        for (NodeId v = 0; v < a.num_nodes(); ++v) {
            if (a.owner(v) != s.owner) continue;
            const EdgeId pe = s.moves[p.node(st, v)];
            out.moves[st][v] = p.edge_origin[pe].second;
        }
    }
    return out;
}

inline std::pair<ChromaticStrategy, ChromaticStrategy> project_equilibrium(const MemorySkeleton& m, const Arena& a,
                                                                           const PositionalStrategy& sigma_hat,
                                                                           const PositionalStrategy& tau_hat)
{
    const ProductArena p = build_product(m, a);
    return {project_strategy(m, a, p, sigma_hat), project_strategy(m, a, p, tau_hat)};
}

/// Positional image of a chromatic strategy on the product arena.
inline PositionalStrategy lift_to_product(const ProductArena& p, const ChromaticStrategy& s)
{
    PositionalStrategy out{s.owner, std::vector<EdgeId>(p.arena.num_nodes(), kNoEdge)};
    for (NodeId pv = 0; pv < p.arena.num_nodes(); ++pv) {
        const auto [m, v] = p.node_origin[pv];
        if (p.arena.owner(pv) == s.owner) out.moves[pv] = p.edge(m, s.moves[m][v]);
    }
    return out;
}

/**
 * Positional strategy p(v) = s(f(v), v).  On an M-trivial pair it agrees
 * with s on every position whose source is labeled by the initial state.
 */
inline PositionalStrategy degenerate(const MemorySkeleton& m, const Arena& a, const TrivialWitness& f,
                                     const ChromaticStrategy& s)
{
    (void)m;
    PositionalStrategy out{s.owner, std::vector<EdgeId>(a.num_nodes(), kNoEdge)};
    for (NodeId v = 0; v < a.num_nodes(); ++v)
        if (a.owner(v) == s.owner) out.moves[v] = s.moves[f[v]][v];
    return out;
}

/// Restriction of the product by a chromatic strategy, with node back-map.
struct ChromaticRestriction {
    Arena arena;
    std::vector<std::pair<StateId, NodeId>> node_origin;
    std::vector<std::pair<StateId, EdgeId>> edge_origin;
    NodeId base_nodes = 0;

    NodeId node(StateId m, NodeId v) const { return m * base_nodes + v; }
};

inline ChromaticRestriction restrict_by_chromatic(const Arena& a, const ChromaticStrategy& s)
{
    const ProductArena p = build_product(s.skeleton, a);
    const SubArena r = restrict_mapped(p.arena, lift_to_product(p, s));
    ChromaticRestriction out{r.arena, p.node_origin, {}, a.num_nodes()};
    for (EdgeId e : r.edge_origin) out.edge_origin.push_back(p.edge_origin[e]);
    return out;
}

} // namespace chroma
