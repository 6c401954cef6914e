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
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arena.hpp"
#include "cycles.hpp"
#include "memory.hpp"
#include "parity.hpp"
#include "product.hpp"
#include "skeletons.hpp"
#include "value.hpp"

namespace chroma {

/// Optimum of a one-player arena for the player that has the choices.
struct OnePlayerResult {
    std::vector<Value> values;                    // per node
    std::optional<ChromaticStrategy> witness;     // optimizing player's strategy
    std::optional<PositionalStrategy> positional; // set when the witness needs no memory
    bool exact = true;                            // false for the simple-lasso fallback
};

/**
 * Payoff over infinite color words, evaluated on lassos.  Max maximizes.
 * one_player_opt() defaults to the best simple lasso from each node, which
 * is only exact for payoffs whose one-player optimum is always attained on
 * a simple lasso; the built-in payoffs override it with exact oracles.
 */
class Payoff {
public:
    virtual ~Payoff() = default;

    virtual std::string name() const = 0;
    virtual Value evaluate(const LassoWord& w) const = 0;
    virtual OnePlayerResult one_player_opt(const Arena& a, Player side) const;

    Value evaluate(const Arena& a, const Lasso& l) const { return evaluate(color_word(a, l)); }
};

using PayoffPtr = std::shared_ptr<const Payoff>;

inline void require_one_player(const Arena& a, Player side)
{
    if (!has_no_choice(a, opponent(side)))
        throw Error(ErrorKind::NotOnePlayer, std::string(to_string(opponent(side))) + " has a choice");
}

inline bool better_for(Player side, const Value& a, const Value& b)
{
    return side == Player::Max ? a > b : a < b;
}

/// Calls fn(lasso) for every lasso from `start` that visits no node twice
/// before closing its cycle.
template <class Fn>
void for_each_simple_lasso(const Arena& a, NodeId start, Fn&& fn)
{
    std::vector<EdgeId> path;
    std::vector<int> pos(a.num_nodes(), -1); // index in path where the node is left
    std::function<void(NodeId)> dfs = [&](NodeId v) {
        pos[v] = static_cast<int>(path.size());
        for (EdgeId e : a.out_edges(v)) {
            const NodeId t = a.target(e);
            path.push_back(e);
            if (pos[t] >= 0) {
                Lasso l;
                l.prefix.assign(path.begin(), path.begin() + pos[t]);
                l.cycle.assign(path.begin() + pos[t], path.end());
                fn(l);
            } else {
                dfs(t);
            }
            path.pop_back();
        }
        pos[v] = -1;
    };
    dfs(start);
}

inline OnePlayerResult Payoff::one_player_opt(const Arena& a, Player side) const
{
    require_one_player(a, side);
    OnePlayerResult r;
    r.exact = false;
    for (NodeId v = 0; v < a.num_nodes(); ++v) {
        std::optional<Value> best;
        for_each_simple_lasso(a, v, [&](const Lasso& l) {
            const Value x = evaluate(a, l);
            if (!best || better_for(side, x, *best)) best = x;
        });
        r.values.push_back(*best);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Running-sum payoff over {-1,+1}: Max wins iff the sum diverges to +inf or
// is 0 infinitely often.

inline void check_psi_letters(std::span<const Color> word)
{
    for (Color c : word)
        if (c != -1 && c != 1) throw Error(ErrorKind::BadLetter, "psi expects -1/+1, got " + std::to_string(c));
}

inline Value eval_psi(const LassoWord& w)
{
    if (w.cycle.empty()) throw Error(ErrorKind::NotAPath, "empty cycle");
    check_psi_letters(w.prefix);
    check_psi_letters(w.cycle);
    long long drift = 0;
    for (Color c : w.cycle) drift += c;
    if (drift > 0) return 1;
    if (drift < 0) return 0;
    long long sum = 0;
    for (Color c : w.prefix) sum += c;
    // With zero drift the sums repeat every period; scan two passes.
    for (int pass = 0; pass < 2; ++pass) {
        for (Color c : w.cycle) {
            sum += c;
            if (sum == 0) return 1;
        }
    }
    return 0;
}

namespace detail {

struct MarkedSolution {
    std::vector<Value> values;
    PositionalStrategy strategy; // for the optimizing side
};

/**
 * One-player running-sum game where the sum is tracked by node labels:
 * `zero[v]` marks nodes where the tracked sum is 0.  Max (choosing) wins
 * by reaching a positive cycle or by visiting marked nodes infinitely
 * often; Min (choosing) wins by reaching a negative cycle or a zero-weight
 * cycle avoiding marked nodes.
 */
inline MarkedSolution psi_marked(const Arena& x, const std::vector<char>& zero, Player side)
{
    const NodeId n = x.num_nodes();
    const bool max_side = side == Player::Max;
    const graph::MeanSolution mean = graph::optimal_mean_cycles(x, max_side);

    MarkedSolution out;
    out.values.assign(n, max_side ? Value(0) : Value(1));
    out.strategy = lowest_edge_strategy(x, side);

    std::vector<char> rest(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        const bool escapes = max_side ? mean.values[v] > Value(0) : mean.values[v] < Value(0);
        if (escapes) {
            out.values[v] = max_side ? 1 : 0;
            if (x.owner(v) == side) out.strategy.moves[v] = mean.choice[v];
        } else {
            rest[v] = 1;
        }
    }

    const InducedArena r = induced_arena(x, rest);
    if (r.arena.num_nodes() == 0) return out;

    if (max_side) {
        ParityGame g{r.arena, std::vector<int>(r.arena.num_edges()), Parity::Even};
        for (EdgeId e = 0; e < r.arena.num_edges(); ++e)
            g.priority[e] = zero[r.node_origin[r.arena.source(e)]] ? 2 : 1;
        const ParitySolution sol = solve(g);
        for (NodeId v = 0; v < r.arena.num_nodes(); ++v) {
            const NodeId orig = r.node_origin[v];
            out.values[orig] = sol.winner[v] == Player::Max ? 1 : 0;
            if (x.owner(orig) == Player::Max) out.strategy.moves[orig] = r.edge_origin[sol.max_strategy.moves[v]];
        }
        return out;
    }

    // Min: zero-weight cycles avoiding marked nodes.  Every cycle here is
    // non-negative, so with shortest-path potentials a cycle has weight 0
    // iff all of its edges are tight.
    const Arena& ra = r.arena;
    const NodeId rn = ra.num_nodes();
    std::vector<char> unmarked(rn, 0);
    for (NodeId v = 0; v < rn; ++v) unmarked[v] = !zero[r.node_origin[v]];
    std::vector<graph::Weight> pot(rn, 0);
    for (NodeId round = 0; round <= rn; ++round) {
        bool changed = false;
        for (EdgeId e = 0; e < ra.num_edges(); ++e) {
            const NodeId u = ra.source(e), v = ra.target(e);
            if (!unmarked[u] || !unmarked[v]) continue;
            if (pot[u] + ra.color(e) < pot[v]) {
                pot[v] = pot[u] + ra.color(e);
                changed = true;
            }
        }
        if (!changed) break;
        if (round == rn) throw std::logic_error("psi_marked: negative cycle in residual arena");
    }
    const SubArena tight = sub_arena(ra, [&](EdgeId e) {
        const NodeId u = ra.source(e), v = ra.target(e);
        return unmarked[u] && unmarked[v] && pot[u] + ra.color(e) == pot[v];
    });

    std::vector<EdgeId> cycle_move(rn, kNoEdge);
    std::vector<char> on_cycle(rn, 0);
    for (const auto& comp : graph::sccs(tight.arena, unmarked)) {
        // Find a simple cycle through comp[0] inside the component.
        std::vector<char> in_comp(rn, 0);
        for (NodeId v : comp) in_comp[v] = 1;
        const NodeId root = comp.front();
        std::vector<EdgeId> via(rn, kNoEdge);
        std::vector<char> seen(rn, 0);
        std::deque<NodeId> queue{root};
        seen[root] = 1;
        EdgeId closing = kNoEdge;
        while (!queue.empty() && closing == kNoEdge) {
            const NodeId v = queue.front();
            queue.pop_front();
            for (EdgeId e : tight.arena.out_edges(v)) {
                const NodeId t = tight.arena.target(e);
                if (!in_comp[t]) continue;
                if (t == root) {
                    closing = e;
                    break;
                }
                if (!seen[t]) {
                    seen[t] = 1;
                    via[t] = e;
                    queue.push_back(t);
                }
            }
        }
        if (closing == kNoEdge) continue; // trivial component without a tight loop
        for (EdgeId e = closing;;) {
            const NodeId s = tight.arena.source(e);
            cycle_move[s] = tight.edge_origin[e];
            on_cycle[s] = 1;
            if (s == root) break;
            e = via[s];
        }
    }

    // Shortest way to the chosen cycles, then around them forever.
    std::vector<std::vector<EdgeId>> in(rn);
    for (EdgeId e = 0; e < ra.num_edges(); ++e) in[ra.target(e)].push_back(e);
    std::vector<EdgeId> move = cycle_move;
    std::vector<char> good = on_cycle;
    std::deque<NodeId> queue;
    for (NodeId v = 0; v < rn; ++v)
        if (on_cycle[v]) queue.push_back(v);
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        for (EdgeId e : in[v]) {
            const NodeId u = ra.source(e);
            if (good[u]) continue;
            good[u] = 1;
            move[u] = e;
            queue.push_back(u);
        }
    }
    for (NodeId v = 0; v < rn; ++v) {
        const NodeId orig = r.node_origin[v];
        out.values[orig] = good[v] ? 0 : 1;
        if (x.owner(orig) == Player::Min && good[v]) out.strategy.moves[orig] = r.edge_origin[move[v]];
    }
    return out;
}

} // namespace detail

/**
 * Exact one-player optimum for the running-sum payoff.  The escaping
 * region (positive cycle reachable for Max, negative for Min) is settled
 * first; the rest is solved on the product with the running-sum skeleton
 * whose bound B is the largest path weight magnitude in the residual
 * (raised to min_bound when a fixed skeleton size is wanted).
 */
inline OnePlayerResult one_player_opt_psi(const Arena& a, Player side, int min_bound = 1)
{
    require_one_player(a, side);
    check_psi_letters(a.alphabet());
    const bool max_side = side == Player::Max;
    const graph::MeanSolution mean = graph::optimal_mean_cycles(a, max_side);
    std::vector<char> rest(a.num_nodes(), 0);
    for (NodeId v = 0; v < a.num_nodes(); ++v)
        rest[v] = max_side ? mean.values[v] <= Value(0) : mean.values[v] >= Value(0);
    const graph::Weight bound = graph::path_weight_bound(a, rest, max_side ? 1 : -1);

    const MemorySkeleton m = synth_Mn(static_cast<int>(std::max<graph::Weight>(std::max(1, min_bound), bound)));
    const ProductArena p = build_product(m, a);
    std::vector<char> zero(p.arena.num_nodes(), 0);
    for (NodeId v = 0; v < a.num_nodes(); ++v) zero[p.node(m.init(), v)] = 1;
    const detail::MarkedSolution sol = detail::psi_marked(p.arena, zero, side);

    OnePlayerResult r;
    for (NodeId v = 0; v < a.num_nodes(); ++v) r.values.push_back(sol.values[p.node(m.init(), v)]);
    r.witness = project_strategy(m, a, p, sol.strategy);
    return r;
}

class PsiPayoff : public Payoff {
public:
    using Payoff::evaluate;

    std::string name() const override { return "psi"; }
    Value evaluate(const LassoWord& w) const override { return eval_psi(w); }
    OnePlayerResult one_player_opt(const Arena& a, Player side) const override { return one_player_opt_psi(a, side); }
};

// ---------------------------------------------------------------------------
// Subword payoff over {0,1}: Max wins iff finitely many zeros occur or some
// 0 1^t 0 with t in T occurs.

using IntSet = std::set<long long>;

inline void check_phi_letters(std::span<const Color> word)
{
    for (Color c : word)
        if (c != 0 && c != 1) throw Error(ErrorKind::BadLetter, "phi expects 0/1, got " + std::to_string(c));
}

inline void check_phi_set(const IntSet& T)
{
    if (T.empty() || *T.begin() < 1) throw std::invalid_argument("phi: T must be a nonempty set of positive integers");
}

inline Value eval_phi(const LassoWord& w, const IntSet& T)
{
    if (w.cycle.empty()) throw Error(ErrorKind::NotAPath, "empty cycle");
    check_phi_letters(w.prefix);
    check_phi_letters(w.cycle);
    if (std::none_of(w.cycle.begin(), w.cycle.end(), [](Color c) { return c == 0; })) return 1;
    // Every run of ones closed by zeros shows up within prefix.cycle.cycle.
    std::vector<Color> scan = w.prefix;
    for (int pass = 0; pass < 2; ++pass) scan.insert(scan.end(), w.cycle.begin(), w.cycle.end());
    long long run = -1; // ones since the last zero, -1 before the first zero
    for (Color c : scan) {
        if (c == 1) {
            if (run >= 0) ++run;
            continue;
        }
        if (run >= 1 && T.count(run)) return 1;
        run = 0;
    }
    return 0;
}

/**
 * Exact one-player optimum for the subword payoff: product with the
 * run-counting skeleton for k = max(T), edges leaving F get priority 3,
 * zero edges 2, one edges 1, and Max wins on odd.
 */
inline OnePlayerResult one_player_opt_phi(const Arena& a, Player side, const IntSet& T)
{
    require_one_player(a, side);
    check_phi_letters(a.alphabet());
    check_phi_set(T);
    const MemorySkeleton m = synth_Mk(static_cast<int>(*T.rbegin()), T);
    const ProductArena p = build_product(m, a);
    ParityGame g{p.arena, std::vector<int>(p.arena.num_edges()), Parity::Odd};
    for (EdgeId e = 0; e < p.arena.num_edges(); ++e) {
        const auto [state, base] = p.edge_origin[e];
        g.priority[e] = state == mk::kFinal ? 3 : (a.color(base) == 0 ? 2 : 1);
    }
    const ParitySolution sol = solve(g);
    OnePlayerResult r;
    for (NodeId v = 0; v < a.num_nodes(); ++v)
        r.values.push_back(sol.winner[p.node(m.init(), v)] == Player::Max ? 1 : 0);
    r.witness = project_strategy(m, a, p, side == Player::Max ? sol.max_strategy : sol.min_strategy);
    return r;
}

class PhiPayoff : public Payoff {
public:
    using Payoff::evaluate;

    explicit PhiPayoff(IntSet T) : T_(std::move(T)) { check_phi_set(T_); }

    std::string name() const override { return "phi"; }
    const IntSet& T() const { return T_; }
    Value evaluate(const LassoWord& w) const override { return eval_phi(w, T_); }
    OnePlayerResult one_player_opt(const Arena& a, Player side) const override
    {
        return one_player_opt_phi(a, side, T_);
    }

private:
    IntSet T_;
};

// ---------------------------------------------------------------------------
// Parity payoff: colors are priorities.

class ParityPayoff : public Payoff {
public:
    using Payoff::evaluate;

    explicit ParityPayoff(Parity max_wins) : max_wins_(max_wins) {}

    std::string name() const override { return "parity"; }
    Parity convention() const { return max_wins_; }

    Value evaluate(const LassoWord& w) const override
    {
        if (w.cycle.empty()) throw Error(ErrorKind::NotAPath, "empty cycle");
        const Color top = *std::max_element(w.cycle.begin(), w.cycle.end());
        if (top < 0) throw Error(ErrorKind::BadLetter, "negative priority");
        return parity_winner(top, max_wins_) == Player::Max ? 1 : 0;
    }

    ParityGame game(const Arena& a) const
    {
        ParityGame g{a, std::vector<int>(a.num_edges()), max_wins_};
        for (EdgeId e = 0; e < a.num_edges(); ++e) {
            const Color c = a.color(e);
            if (c < 0 || c > kMaxPriority) throw Error(ErrorKind::BadLetter, "priority " + std::to_string(c));
            g.priority[e] = c;
        }
        return g;
    }

    OnePlayerResult one_player_opt(const Arena& a, Player side) const override
    {
        require_one_player(a, side);
        const ParitySolution sol = solve(game(a));
        OnePlayerResult r;
        for (NodeId v = 0; v < a.num_nodes(); ++v) r.values.push_back(sol.winner[v] == Player::Max ? 1 : 0);
        r.positional = side == Player::Max ? sol.max_strategy : sol.min_strategy;
        r.witness = as_chromatic(a, *r.positional);
        return r;
    }

private:
    Parity max_wins_;
};

// ---------------------------------------------------------------------------
// Mean payoff: colors are weights; the value of a lasso is its cycle average.

class MeanPayoff : public Payoff {
public:
    using Payoff::evaluate;

    std::string name() const override { return "mean"; }

    Value evaluate(const LassoWord& w) const override
    {
        if (w.cycle.empty()) throw Error(ErrorKind::NotAPath, "empty cycle");
        long long sum = 0;
        for (Color c : w.cycle) sum += c;
        return Value(sum, static_cast<std::int64_t>(w.cycle.size()));
    }

    OnePlayerResult one_player_opt(const Arena& a, Player side) const override
    {
        require_one_player(a, side);
        const graph::MeanSolution sol = graph::optimal_mean_cycles(a, side == Player::Max);
        OnePlayerResult r;
        r.values = sol.values;
        PositionalStrategy s{side, std::vector<EdgeId>(a.num_nodes(), kNoEdge)};
        for (NodeId v = 0; v < a.num_nodes(); ++v)
            if (a.owner(v) == side) s.moves[v] = sol.choice[v];
        r.positional = s;
        r.witness = as_chromatic(a, s);
        return r;
    }
};

inline PayoffPtr psi_payoff() { return std::make_shared<PsiPayoff>(); }
inline PayoffPtr phi_payoff(IntSet T) { return std::make_shared<PhiPayoff>(std::move(T)); }
inline PayoffPtr parity_payoff(Parity max_wins) { return std::make_shared<ParityPayoff>(max_wins); }
inline PayoffPtr mean_payoff() { return std::make_shared<MeanPayoff>(); }

} // namespace chroma
