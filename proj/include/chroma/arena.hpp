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
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace chroma {

enum class Player : std::uint8_t { Max, Min };

constexpr Player opponent(Player p) { return p == Player::Max ? Player::Min : Player::Max; }

inline const char* to_string(Player p) { return p == Player::Max ? "Max" : "Min"; }

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using Color = std::int32_t;

inline constexpr EdgeId kNoEdge = -1;

struct Edge {
    NodeId source = 0;
    NodeId target = 0;
    Color color = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * Finite edge-colored game graph.  Nodes and edges are dense integer ids.
 * Parallel edges and self-loops are allowed.  The value is immutable once
 * constructed; out-edge lists are kept in increasing edge-id order.
 *
 * Construction does not reject malformed input so that validate() can
 * report every problem at once.  Out-edge lists skip edges whose source
 * is out of range.
 */
class Arena {
public:
    Arena() = default;

    Arena(std::vector<Player> owners, std::vector<Edge> edges, std::vector<Color> alphabet)
        : owners_(std::move(owners)), edges_(std::move(edges)), alphabet_(std::move(alphabet)),
          out_(owners_.size())
    {
        for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
            const NodeId s = edges_[e].source;
            if (s >= 0 && s < num_nodes()) out_[s].push_back(e);
        }
    }

    NodeId num_nodes() const { return static_cast<NodeId>(owners_.size()); }
    EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }

    Player owner(NodeId v) const { return owners_[v]; }
    const std::vector<Player>& owners() const { return owners_; }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    NodeId source(EdgeId e) const { return edges_[e].source; }
    NodeId target(EdgeId e) const { return edges_[e].target; }
    Color color(EdgeId e) const { return edges_[e].color; }

    std::span<const EdgeId> out_edges(NodeId v) const { return out_[v]; }
    std::size_t out_degree(NodeId v) const { return out_[v].size(); }

    const std::vector<Color>& alphabet() const { return alphabet_; }

    bool has_color(Color c) const
    {
        return std::find(alphabet_.begin(), alphabet_.end(), c) != alphabet_.end();
    }

    friend bool operator==(const Arena& a, const Arena& b)
    {
        return a.owners_ == b.owners_ && a.edges_ == b.edges_ && a.alphabet_ == b.alphabet_;
    }

private:
    std::vector<Player> owners_;
    std::vector<Edge> edges_;
    std::vector<Color> alphabet_;
    std::vector<std::vector<EdgeId>> out_;
};

struct ValidationIssue {
    ErrorKind kind;
    std::int32_t id; // node id for DeadEndNode, edge id otherwise
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

inline ValidationReport validate(const Arena& a)
{
    ValidationReport report;
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
        const Edge& ed = a.edge(e);
        if (ed.source < 0 || ed.source >= a.num_nodes() || ed.target < 0 || ed.target >= a.num_nodes())
            report.issues.push_back({ErrorKind::DanglingEdge, e});
        if (!a.has_color(ed.color)) report.issues.push_back({ErrorKind::UnknownColor, e});
    }
    for (NodeId v = 0; v < a.num_nodes(); ++v) {
        if (a.out_degree(v) == 0) report.issues.push_back({ErrorKind::DeadEndNode, v});
    }
    return report;
}

/// Throws the first issue of validate() as an Error.
inline void require_valid(const Arena& a)
{
    const auto report = validate(a);
    if (!report.ok()) {
        const auto& issue = report.issues.front();
        throw Error(issue.kind, "id " + std::to_string(issue.id));
    }
}

enum class OnePlayerKind { MinHasNoChoice, MaxHasNoChoice, TwoPlayer };

inline const char* to_string(OnePlayerKind k)
{
    switch (k) {
    case OnePlayerKind::MinHasNoChoice: return "MinHasNoChoice";
    case OnePlayerKind::MaxHasNoChoice: return "MaxHasNoChoice";
    case OnePlayerKind::TwoPlayer: return "TwoPlayer";
    }
    return "?";
}

inline bool has_no_choice(const Arena& a, Player p)
{
    for (NodeId v = 0; v < a.num_nodes(); ++v) {
        if (a.owner(v) == p && a.out_degree(v) != 1) return false;
    }
    return true;
}

// A choice-free arena is reported as MinHasNoChoice.
inline OnePlayerKind is_one_player(const Arena& a)
{
    if (has_no_choice(a, Player::Min)) return OnePlayerKind::MinHasNoChoice;
    if (has_no_choice(a, Player::Max)) return OnePlayerKind::MaxHasNoChoice;
    return OnePlayerKind::TwoPlayer;
}

/// The player that has choices in a one-player arena, Max if nobody does.
inline std::optional<Player> chooser(const Arena& a)
{
    switch (is_one_player(a)) {
    case OnePlayerKind::MinHasNoChoice: return Player::Max;
    case OnePlayerKind::MaxHasNoChoice: return Player::Min;
    case OnePlayerKind::TwoPlayer: return std::nullopt;
    }
    return std::nullopt;
}

/// Finite path.  An empty edge list is the zero-length path at `start`.
struct Path {
    NodeId start = 0;
    std::vector<EdgeId> edges;
};

/// Ultimately periodic play: prefix followed by the cycle repeated forever.
struct Lasso {
    std::vector<EdgeId> prefix;
    std::vector<EdgeId> cycle;

    NodeId start(const Arena& a) const
    {
        return prefix.empty() ? a.source(cycle.front()) : a.source(prefix.front());
    }

    friend bool operator==(const Lasso&, const Lasso&) = default;
};

/// Color word of a lasso: prefix word followed by the cycle word repeated.
struct LassoWord {
    std::vector<Color> prefix;
    std::vector<Color> cycle;

    friend bool operator==(const LassoWord&, const LassoWord&) = default;
};

inline bool is_path(const Arena& a, NodeId start, std::span<const EdgeId> edges)
{
    NodeId at = start;
    for (EdgeId e : edges) {
        if (e < 0 || e >= a.num_edges() || a.source(e) != at) return false;
        at = a.target(e);
    }
    return true;
}

inline void check_lasso(const Arena& a, const Lasso& l)
{
    if (l.cycle.empty()) throw Error(ErrorKind::NotAPath, "lasso with empty cycle");
    for (EdgeId e : l.prefix)
        if (e < 0 || e >= a.num_edges()) throw Error(ErrorKind::NotAPath, "edge " + std::to_string(e));
    for (EdgeId e : l.cycle)
        if (e < 0 || e >= a.num_edges()) throw Error(ErrorKind::NotAPath, "edge " + std::to_string(e));
    const NodeId s = l.start(a);
    if (!is_path(a, s, l.prefix)) throw Error(ErrorKind::NotAPath, "prefix does not chain");
    const NodeId loop = l.prefix.empty() ? s : a.target(l.prefix.back());
    if (!is_path(a, loop, l.cycle) || a.target(l.cycle.back()) != loop)
        throw Error(ErrorKind::NotAPath, "cycle does not close");
}

/// Same infinite play with the shortest prefix and the shortest cycle.
inline Lasso normalize(Lasso l)
{
    while (!l.prefix.empty() && l.prefix.back() == l.cycle.back()) {
        l.prefix.pop_back();
        std::rotate(l.cycle.rbegin(), l.cycle.rbegin() + 1, l.cycle.rend());
    }
    const std::size_t n = l.cycle.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = l.cycle[i] == l.cycle[i - p];
        if (periodic) {
            l.cycle.resize(p);
            break;
        }
    }
    return l;
}

inline std::vector<Color> color_word(const Arena& a, const Path& p)
{
    if (!is_path(a, p.start, p.edges)) throw Error(ErrorKind::NotAPath, "edges do not chain");
    std::vector<Color> word;
    word.reserve(p.edges.size());
    for (EdgeId e : p.edges) word.push_back(a.color(e));
    return word;
}

inline LassoWord color_word(const Arena& a, const Lasso& l)
{
    check_lasso(a, l);
    LassoWord w;
    for (EdgeId e : l.prefix) w.prefix.push_back(a.color(e));
    for (EdgeId e : l.cycle) w.cycle.push_back(a.color(e));
    return w;
}

/// Arena on the same nodes keeping only some edges; edges are renumbered.
struct SubArena {
    Arena arena;
    std::vector<EdgeId> edge_origin; // sub edge -> original edge
};

template <class Keep>
SubArena sub_arena(const Arena& a, Keep&& keep)
{
    SubArena out;
    std::vector<Edge> edges;
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
        if (keep(e)) {
            edges.push_back(a.edge(e));
            out.edge_origin.push_back(e);
        }
    }
    out.arena = Arena(a.owners(), std::move(edges), a.alphabet());
    return out;
}

/// Induced sub-arena on a node subset (ids renumbered in increasing order).
struct InducedArena {
    Arena arena;
    std::vector<NodeId> node_origin; // new node -> original node
    std::vector<EdgeId> edge_origin;
    std::vector<NodeId> node_image; // original node -> new node or -1
};

inline InducedArena induced_arena(const Arena& a, const std::vector<char>& keep_node)
{
    InducedArena out;
    out.node_image.assign(a.num_nodes(), -1);
    std::vector<Player> owners;
    for (NodeId v = 0; v < a.num_nodes(); ++v) {
        if (!keep_node[v]) continue;
        out.node_image[v] = static_cast<NodeId>(out.node_origin.size());
        out.node_origin.push_back(v);
        owners.push_back(a.owner(v));
    }
    std::vector<Edge> edges;
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
        const Edge& ed = a.edge(e);
        if (keep_node[ed.source] && keep_node[ed.target]) {
            edges.push_back({out.node_image[ed.source], out.node_image[ed.target], ed.color});
            out.edge_origin.push_back(e);
        }
    }
    out.arena = Arena(std::move(owners), std::move(edges), a.alphabet());
    return out;
}

struct RandomArenaOptions {
    int max_out_degree = 3;
    int max_edges = 0; // 0 means no cap beyond the out-degree bound
};

/**
 * Random valid arena with between 1 and n_max nodes.  If `no_choice_side`
 * is set, every node of that side has out-degree exactly 1.  Deterministic
 * for a fixed seed on a given standard library.
 */
inline Arena random_arena(int n_max, const std::vector<Color>& alphabet, std::uint64_t seed,
                          std::optional<Player> no_choice_side = std::nullopt,
                          RandomArenaOptions opts = {})
{
    if (n_max < 1) throw std::invalid_argument("random_arena: n_max must be >= 1");
    if (alphabet.empty()) throw std::invalid_argument("random_arena: empty alphabet");
    std::mt19937_64 rng(seed);
    auto uniform = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    const int n = uniform(1, n_max);
    std::vector<Player> owners(n);
    for (auto& o : owners) o = uniform(0, 1) == 0 ? Player::Max : Player::Min;

    std::vector<int> degree(n, 1);
    int budget = opts.max_edges > 0 ? std::max(0, opts.max_edges - n) : n * opts.max_out_degree;
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    for (int v : order) {
        if (budget == 0) break;
        if (no_choice_side && owners[v] == *no_choice_side) continue;
        const int extra = std::min(budget, uniform(0, std::max(0, opts.max_out_degree - 1)));
        degree[v] += extra;
        budget -= extra;
    }

    std::vector<Edge> edges;
    const int ncolors = static_cast<int>(alphabet.size());
    for (int v = 0; v < n; ++v) {
        for (int i = 0; i < degree[v]; ++i)
            edges.push_back({v, uniform(0, n - 1), alphabet[uniform(0, ncolors - 1)]});
    }
    // Shuffle edge ids so that the lowest-id edge of a node is not special.
    std::shuffle(edges.begin(), edges.end(), rng);
    return Arena(std::move(owners), std::move(edges), alphabet);
}

} // namespace chroma
