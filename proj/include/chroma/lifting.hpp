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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arena.hpp"
#include "equilibrium.hpp"
#include "memory.hpp"
#include "payoffs.hpp"
#include "product.hpp"

namespace chroma {

using PositionalPair = std::pair<PositionalStrategy, PositionalStrategy>; // (Max, Min)

/**
 * Solver for one-player arenas.  Given a one-player arena and, for
 * M-trivial inputs, its witness, returns a positional pair claimed to be an
 * equilibrium from every node (or from every node labeled m_init).
 */
using OnePlayerOracle = std::function<PositionalPair(const Arena&, const std::optional<TrivialWitness>&)>;

/// Thrown when a one-player oracle returns a pair that is not an equilibrium.
class OracleFailureError : public Error {
public:
    OracleFailureError(Arena arena, std::optional<TrivialWitness> witness, std::string what)
        : Error(ErrorKind::OracleFailure, std::move(what)), arena_(std::move(arena)), witness_(std::move(witness))
    {
    }

    const Arena& arena() const { return arena_; }
    const std::optional<TrivialWitness>& witness() const { return witness_; }

private:
    Arena arena_;
    std::optional<TrivialWitness> witness_;
};

// ---------------------------------------------------------------------------
// Building blocks.

/// Two arenas over the same nodes glued at w; the right copy of w is w itself.
struct Bridge {
    Arena arena;
    std::vector<NodeId> left;                        // node -> left copy
    std::vector<NodeId> right;                       // node -> right copy
    std::vector<NodeId> prototype;                   // bridge node -> original node
    std::vector<std::pair<int, EdgeId>> edge_origin; // bridge edge -> (0 left / 1 right, edge of that part)
    EdgeId left_edges = 0;                           // bridge edges [0, left_edges) come from the left part
};

inline Bridge build_bridge(const Arena& left_part, const Arena& right_part, NodeId w)
{
    const NodeId n = left_part.num_nodes();
    if (right_part.num_nodes() != n || left_part.owners() != right_part.owners())
        throw std::invalid_argument("build_bridge: parts must share their nodes");
    if (w < 0 || w >= n) throw std::invalid_argument("build_bridge: merge node out of range");

    Bridge b;
    std::vector<Player> owners = left_part.owners();
    b.left.resize(n);
    b.right.resize(n);
    b.prototype.resize(n);
    for (NodeId v = 0; v < n; ++v) {
        b.left[v] = v;
        b.prototype[v] = v;
    }
    for (NodeId v = 0; v < n; ++v) {
        if (v == w) {
            b.right[v] = w;
            continue;
        }
        b.right[v] = static_cast<NodeId>(owners.size());
        b.prototype.push_back(v);
        owners.push_back(left_part.owner(v));
    }

    std::vector<Edge> edges;
    for (EdgeId e = 0; e < left_part.num_edges(); ++e) {
        edges.push_back(left_part.edge(e));
        b.edge_origin.emplace_back(0, e);
    }
    b.left_edges = left_part.num_edges();
    for (EdgeId e = 0; e < right_part.num_edges(); ++e) {
        const Edge& ed = right_part.edge(e);
        edges.push_back({b.right[ed.source], b.right[ed.target], ed.color});
        b.edge_origin.emplace_back(1, e);
    }
    std::vector<Color> alphabet = left_part.alphabet();
    for (Color c : right_part.alphabet())
        if (std::find(alphabet.begin(), alphabet.end(), c) == alphabet.end()) alphabet.push_back(c);
    b.arena = Arena(std::move(owners), std::move(edges), std::move(alphabet));
    return b;
}

/**
 * Two-mode strategy that follows first in mode 0 and second in mode 1,
 * switching whenever the split node w is left through an edge outside the
 * current mode's part.  Initial part 1 gives tau_12, part 2 gives tau_21.
 */
inline GeneralCounterStrategy build_switch_strategy(const PositionalStrategy& first, const PositionalStrategy& second,
                                                    NodeId w, const std::vector<EdgeId>& part1,
                                                    const std::vector<EdgeId>& part2, int initial)
{
    if (first.owner != second.owner) throw std::invalid_argument("build_switch_strategy: owners differ");
    if (initial != 1 && initial != 2) throw std::invalid_argument("build_switch_strategy: initial part must be 1 or 2");
    (void)w;
    GeneralCounterStrategy s;
    s.owner = first.owner;
    s.num_modes = 2;
    s.initial_mode = initial - 1;
    s.next_mode = [part1, part2](int mode, EdgeId e) {
        const auto& other = mode == 0 ? part2 : part1;
        return std::find(other.begin(), other.end(), e) != other.end() ? 1 - mode : mode;
    };
    s.move = [m1 = first.moves, m2 = second.moves](int mode, const ThresholdView&, NodeId v) {
        return mode == 0 ? m1[v] : m2[v];
    };
    return s;
}

// ---------------------------------------------------------------------------
// Oracles.

/**
 * Oracle backed by a payoff's own one-player optimum.  The optimizing
 * player's witness must be positional (or a single-state chromatic
 * strategy); for the running-sum payoff on M-trivial inputs the zero
 * marks are read off the witness, which is exact when the skeleton is a
 * running-sum skeleton whose bound covers every path weight.
 */
inline OnePlayerOracle payoff_oracle(PayoffPtr payoff, std::optional<MemorySkeleton> skeleton = std::nullopt)
{
    return [payoff, skeleton](const Arena& a, const std::optional<TrivialWitness>& f) -> PositionalPair {
        const auto side = chooser(a);
        if (!side) throw Error(ErrorKind::NotOnePlayer, "oracle called on a two-player arena");
        PositionalStrategy mine;
        if (dynamic_cast<const PsiPayoff*>(payoff.get()) && f && skeleton) {
            std::vector<char> zero(a.num_nodes(), 0);
            for (NodeId v = 0; v < a.num_nodes(); ++v) zero[v] = (*f)[v] == skeleton->init();
            mine = detail::psi_marked(a, zero, *side).strategy;
        } else {
            const OnePlayerResult r = payoff->one_player_opt(a, *side);
            if (r.positional) mine = *r.positional;
            else if (r.witness && r.witness->skeleton.size() == 1) mine = PositionalStrategy{*side, r.witness->moves[0]};
            else throw Error(ErrorKind::OracleFailure, payoff->name() + " oracle has no positional witness");
        }
        PositionalStrategy other = lowest_edge_strategy(a, opponent(*side));
        return *side == Player::Max ? PositionalPair{mine, other} : PositionalPair{other, mine};
    };
}

// ---------------------------------------------------------------------------
// The lifting recursion.

/// One node split of the recursion.
struct SplitRecord {
    Player side = Player::Max;  // owner of the split node; Max splits decide sigma, Min splits tau
    NodeId w = 0;
    std::vector<EdgeId> part1;  // edge ids of the input arena
    std::vector<EdgeId> part2;
    int sub1 = -1;              // subproblem ids
    int sub2 = -1;
    int chosen = 0;             // 1 or 2
    NodeId bridge_nodes = 0;
};

struct Subproblem {
    std::vector<EdgeId> edges;  // kept edges of the input arena
    bool one_player = false;
    int max_split = -1;         // SplitRecord ids
    int min_split = -1;
};

struct LiftStats {
    std::int64_t oracle_calls = 0;
    std::int64_t oracle_cache_hits = 0;
    std::int64_t subproblems = 0;
    NodeId largest_oracle_arena = 0;
};

struct LiftResult {
    PositionalStrategy sigma;
    PositionalStrategy tau;
    std::vector<Subproblem> subproblems; // subproblems[0] is the input arena
    std::vector<SplitRecord> splits;
    LiftStats stats;
    EquilibriumReport check;             // final verification
};

namespace detail {

class Lifter {
public:
    Lifter(const Arena& a, const Payoff& payoff, const OnePlayerOracle& oracle,
           const MemorySkeleton* skeleton, const TrivialWitness* f)
        : a_(a), payoff_(payoff), oracle_(oracle), skeleton_(skeleton), f_(f)
    {
    }

    PositionalPair run(std::vector<char> mask) { return solve(std::move(mask)).second; }

    std::vector<Subproblem> subproblems;
    std::vector<SplitRecord> splits;
    LiftStats stats;

private:
    std::pair<int, PositionalPair> solve(std::vector<char> mask)
    {
        if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
        const SubArena sub = sub_arena(a_, [&](EdgeId e) { return mask[e] != 0; });
        const int id = static_cast<int>(subproblems.size());
        subproblems.push_back(Subproblem{sub.edge_origin, false, -1, -1});
        ++stats.subproblems;

        PositionalPair result;
        if (is_one_player(sub.arena) != OnePlayerKind::TwoPlayer) {
            subproblems[id].one_player = true;
            result = to_root(sub, call_oracle(sub.arena, f_ ? std::optional<TrivialWitness>(*f_) : std::nullopt));
        } else {
            auto [sigma, max_split] = decide(mask, sub.arena, sub.edge_origin, Player::Max);
            auto [tau, min_split] = decide(mask, sub.arena, sub.edge_origin, Player::Min);
            subproblems[id].max_split = max_split;
            subproblems[id].min_split = min_split;
            result = {sigma, tau};
        }
        memo_.emplace(std::move(mask), std::make_pair(id, result));
        return {id, result};
    }

    // Positional strategy of `side` that belongs to some equilibrium of the
    // subproblem, obtained by splitting a node of `side`.
    std::pair<PositionalStrategy, int> decide(const std::vector<char>& mask, const Arena& sub,
                                              const std::vector<EdgeId>& origin, Player side)
    {
        NodeId w = -1;
        for (NodeId v = 0; v < sub.num_nodes() && w < 0; ++v)
            if (sub.owner(v) == side && sub.out_degree(v) >= 2) w = v;
        const auto out = sub.out_edges(w);
        SplitRecord rec;
        rec.side = side;
        rec.w = w;
        rec.part1 = {origin[out[0]]};
        for (std::size_t i = 1; i < out.size(); ++i) rec.part2.push_back(origin[out[i]]);

        std::vector<char> mask1 = mask, mask2 = mask;
        for (EdgeId e : rec.part2) mask1[e] = 0;
        for (EdgeId e : rec.part1) mask2[e] = 0;
        const auto [sub1, pair1] = solve(mask1);
        const auto [sub2, pair2] = solve(mask2);
        rec.sub1 = sub1;
        rec.sub2 = sub2;

        // Each part restricted by the opponent's strategy from its own equilibrium.
        const auto& opp1 = side == Player::Max ? pair1.second : pair1.first;
        const auto& opp2 = side == Player::Max ? pair2.second : pair2.first;
        const SubArena part1 = restricted(mask1, opp1);
        const SubArena part2 = restricted(mask2, opp2);
        const Bridge b = build_bridge(part1.arena, part2.arena, w);
        rec.bridge_nodes = b.arena.num_nodes();

        std::optional<TrivialWitness> g;
        if (f_) {
            g.emplace();
            for (NodeId v : b.prototype) g->push_back((*f_)[v]);
        }
        const PositionalPair bp = call_oracle(b.arena, g);
        const EdgeId at_w = (side == Player::Max ? bp.first : bp.second).moves[w];
        rec.chosen = at_w < b.left_edges ? 1 : 2;

        PositionalStrategy pick = rec.chosen == 1 ? (side == Player::Max ? pair1.first : pair1.second)
                                                  : (side == Player::Max ? pair2.first : pair2.second);
        const int rid = static_cast<int>(splits.size());
        splits.push_back(std::move(rec));
        return {std::move(pick), rid};
    }

    SubArena restricted(const std::vector<char>& mask, const PositionalStrategy& s) const
    {
        return sub_arena(a_, [&](EdgeId e) {
            if (!mask[e]) return false;
            const NodeId v = a_.source(e);
            return a_.owner(v) != s.owner || s.moves[v] == e;
        });
    }

    PositionalPair to_root(const SubArena& sub, const PositionalPair& p) const
    {
        PositionalPair out = p;
        for (auto* s : {&out.first, &out.second})
            for (EdgeId& e : s->moves)
                if (e != kNoEdge) e = sub.edge_origin[e];
        return out;
    }

    PositionalPair call_oracle(const Arena& x, const std::optional<TrivialWitness>& g)
    {
        if (is_one_player(x) == OnePlayerKind::TwoPlayer)
            throw std::logic_error("lifting: oracle input is not one-player");
        if (x.num_nodes() > 2 * a_.num_nodes() - 1)
            throw std::logic_error("lifting: oracle input exceeds 2N-1 nodes");
        if (g && skeleton_ && check_trivial(*skeleton_, x, *g))
            throw std::logic_error("lifting: oracle input is not M-trivial");
        stats.largest_oracle_arena = std::max(stats.largest_oracle_arena, x.num_nodes());

        auto key = std::make_pair(x, g ? *g : TrivialWitness{});
        if (auto it = cache_.find(key); it != cache_.end()) {
            ++stats.oracle_cache_hits;
            return it->second;
        }
        ++stats.oracle_calls;
        PositionalPair p;
        try {
            p = oracle_(x, g);
        } catch (const OracleFailureError&) {
            throw;
        } catch (const Error& ex) {
            if (ex.kind() != ErrorKind::OracleFailure) throw;
            throw OracleFailureError(x, g, ex.detail());
        }
        check_strategy(x, p.first);
        check_strategy(x, p.second);
        const std::vector<NodeId> starts = g && skeleton_ ? initial_nodes(*skeleton_, *g) : all_nodes(x);
        const EquilibriumReport rep = check_equilibrium(x, payoff_, p.first, p.second, starts);
        if (!rep.verdict)
            throw OracleFailureError(x, g, "one-player oracle output is not an equilibrium (start " +
                                               std::to_string(rep.counterexample->start) + ")");
        cache_.emplace(std::move(key), p);
        return p;
    }

    struct ArenaLess {
        bool operator()(const std::pair<Arena, TrivialWitness>& x, const std::pair<Arena, TrivialWitness>& y) const
        {
            const auto tie = [](const std::pair<Arena, TrivialWitness>& p) {
                std::vector<std::int64_t> k;
                k.push_back(p.first.num_nodes());
                for (Player o : p.first.owners()) k.push_back(o == Player::Max ? 0 : 1);
                for (const Edge& e : p.first.edges()) {
                    k.push_back(e.source);
                    k.push_back(e.target);
                    k.push_back(e.color);
                }
                k.push_back(-1);
                k.insert(k.end(), p.second.begin(), p.second.end());
                return k;
            };
            return tie(x) < tie(y);
        }
    };

    const Arena& a_;
    const Payoff& payoff_;
    const OnePlayerOracle& oracle_;
    const MemorySkeleton* skeleton_;
    const TrivialWitness* f_;
    std::map<std::vector<char>, std::pair<int, PositionalPair>> memo_;
    std::map<std::pair<Arena, TrivialWitness>, PositionalPair, ArenaLess> cache_;
};

} // namespace detail

/**
 * Positional equilibrium of a two-player arena from a one-player oracle.
 * With a skeleton and witness f the input must be M-trivial and the result
 * is an equilibrium from every node labeled m_init.
 */
inline LiftResult positional_lift(const Arena& a, const Payoff& payoff, const OnePlayerOracle& oracle,
                                  const MemorySkeleton* skeleton = nullptr, const TrivialWitness* f = nullptr)
{
    require_valid(a);
    if (skeleton && f && check_trivial(*skeleton, a, *f))
        throw std::invalid_argument("positional_lift: witness does not make the arena M-trivial");
    detail::Lifter lifter(a, payoff, oracle, skeleton, f);
    const PositionalPair p = lifter.run(std::vector<char>(a.num_edges(), 1));
    LiftResult r;
    r.sigma = p.first;
    r.tau = p.second;
    r.subproblems = std::move(lifter.subproblems);
    r.splits = std::move(lifter.splits);
    r.stats = lifter.stats;
    const std::vector<NodeId> starts = skeleton && f ? initial_nodes(*skeleton, *f) : all_nodes(a);
    r.check = check_equilibrium(a, payoff, r.sigma, r.tau, starts);
    return r;
}

struct SkeletonLiftResult {
    ChromaticStrategy sigma;
    ChromaticStrategy tau;
    NodeId product_nodes = 0;
    LiftResult positional;   // the run on the product
    EquilibriumReport check; // verification on the input arena
};

/// Chromatic equilibrium with memory m, via the positional lift on m x a.
inline SkeletonLiftResult lift_with_skeleton(const Arena& a, const MemorySkeleton& m, const Payoff& payoff,
                                             const OnePlayerOracle& oracle)
{
    const ProductArena p = build_product(m, a);
    const TrivialWitness f = projection_witness(p);
    SkeletonLiftResult r;
    r.positional = positional_lift(p.arena, payoff, oracle, &m, &f);
    r.product_nodes = p.arena.num_nodes();
    std::tie(r.sigma, r.tau) = project_equilibrium(m, a, r.positional.sigma, r.positional.tau);
    r.check = check_equilibrium(a, payoff, r.sigma, r.tau, all_nodes(a));
    return r;
}

/**
 * g(n) = f(min{m : f(m)/(m+1) <= 1/(2n)}) over a table f(1..m_max),
 * given as table[m-1].  Returns nullopt when no m in the table qualifies.
 */
inline std::optional<std::int64_t> compute_g(const std::vector<std::int64_t>& table, std::int64_t n)
{
    if (n < 1) throw std::invalid_argument("compute_g: n must be positive");
    for (std::size_t i = 0; i < table.size(); ++i) {
        const std::int64_t m = static_cast<std::int64_t>(i) + 1;
        if (table[i] < 1) throw std::invalid_argument("compute_g: table values must be positive");
        if (static_cast<__int128>(table[i]) * 2 * n <= m + 1) return table[i];
    }
    return std::nullopt;
}

} // namespace chroma
