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
#include <stdexcept>
#include <vector>

#include "arena.hpp"
#include "memory.hpp"

namespace chroma {

enum class Parity { Even, Odd };

inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

/**
 * Parity condition with priorities on edges.  Max wins a play iff the
 * largest priority seen infinitely often has parity `max_wins`.
 * Node-priority games are encoded by giving every out-edge of a node the
 * node's priority.
 */
struct ParityGame {
    Arena arena;
    std::vector<int> priority; // per edge
    Parity max_wins = Parity::Even;
};

struct ParitySolution {
    std::vector<Player> winner; // per node
    PositionalStrategy max_strategy;
    PositionalStrategy min_strategy;
};

inline constexpr int kMaxPriority = 64;

inline Player parity_winner(int top_priority, Parity max_wins)
{
    const bool even = top_priority % 2 == 0;
    return even == (max_wins == Parity::Even) ? Player::Max : Player::Min;
}

inline Player evaluate_parity(const ParityGame& g, const Lasso& l)
{
    check_lasso(g.arena, l);
    int top = -1;
    for (EdgeId e : l.cycle) top = std::max(top, g.priority[e]);
    return parity_winner(top, g.max_wins);
}

namespace detail {

// Node-priority game for the recursive solver.  Player 0 wins on even.
struct NodeGame {
    std::vector<int> owner;
    std::vector<int> prio;
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;

    int size() const { return static_cast<int>(owner.size()); }

    void finish()
    {
        pred.assign(owner.size(), {});
        for (int v = 0; v < size(); ++v)
            for (int t : succ[v]) pred[t].push_back(v);
    }
};

class Zielonka {
public:
    explicit Zielonka(const NodeGame& g) : g_(g), win_(g.size(), -1), strat_(g.size(), -1) {}

    void run()
    {
        std::vector<char> alive(g_.size(), 1);
        solve(alive);
    }

    const std::vector<int>& winner() const { return win_; }
    const std::vector<int>& strategy() const { return strat_; }

private:
    // Extends `set` (inside alive) to player p's attractor, recording p's moves.
    void attract(int p, const std::vector<char>& alive, std::vector<char>& set)
    {
        std::vector<int> count(g_.size(), 0);
        std::deque<int> queue;
        for (int v = 0; v < g_.size(); ++v) {
            if (!alive[v]) continue;
            if (set[v]) {
                queue.push_back(v);
                continue;
            }
            for (int t : g_.succ[v])
                if (alive[t]) ++count[v];
        }
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int u : g_.pred[v]) {
                if (!alive[u] || set[u]) continue;
                if (g_.owner[u] == p) {
                    set[u] = 1;
                    strat_[u] = v;
                    queue.push_back(u);
                } else if (--count[u] == 0) {
                    set[u] = 1;
                    queue.push_back(u);
                }
            }
        }
    }

    void solve(std::vector<char> alive)
    {
        for (;;) {
            int top = -1;
            for (int v = 0; v < g_.size(); ++v)
                if (alive[v]) top = std::max(top, g_.prio[v]);
            if (top < 0) return;
            const int p = top % 2;

            std::vector<char> a(g_.size(), 0);
            for (int v = 0; v < g_.size(); ++v)
                if (alive[v] && g_.prio[v] == top) a[v] = 1;
            std::vector<char> tops = a;
            attract(p, alive, a);

            std::vector<char> rest(g_.size(), 0);
            bool rest_empty = true;
            for (int v = 0; v < g_.size(); ++v) {
                rest[v] = alive[v] && !a[v];
                rest_empty &= !rest[v];
            }
            if (!rest_empty) solve(rest);

            std::vector<char> lost(g_.size(), 0);
            bool opponent_wins_somewhere = false;
            for (int v = 0; v < g_.size(); ++v) {
                if (rest[v] && win_[v] == 1 - p) {
                    lost[v] = 1;
                    opponent_wins_somewhere = true;
                }
            }

            if (!opponent_wins_somewhere) {
                for (int v = 0; v < g_.size(); ++v) {
                    if (!alive[v]) continue;
                    win_[v] = p;
                    if (tops[v] && g_.owner[v] == p) {
                        for (int t : g_.succ[v]) {
                            if (alive[t]) {
                                strat_[v] = t;
                                break;
                            }
                        }
                    }
                }
                return;
            }

            attract(1 - p, alive, lost);
            for (int v = 0; v < g_.size(); ++v) {
                if (lost[v]) {
                    win_[v] = 1 - p;
                    alive[v] = 0;
                }
            }
        }
    }

    const NodeGame& g_;
    std::vector<int> win_;
    std::vector<int> strat_;
};

} // namespace detail

inline ParitySolution solve(const ParityGame& g)
{
    const Arena& a = g.arena;
    require_valid(a);
    if (static_cast<EdgeId>(g.priority.size()) != a.num_edges())
        throw std::invalid_argument("parity game: priority map is not total");
    for (int p : g.priority)
        if (p < 0 || p > kMaxPriority) throw std::invalid_argument("parity game: priority out of range");

    const Player even_player = g.max_wins == Parity::Even ? Player::Max : Player::Min;
    auto side = [&](Player pl) { return pl == even_player ? 0 : 1; };

    bool node_uniform = true;
    for (NodeId v = 0; v < a.num_nodes() && node_uniform; ++v)
        for (EdgeId e : a.out_edges(v))
            node_uniform &= g.priority[e] == g.priority[a.out_edges(v).front()];

    detail::NodeGame ng;
    const NodeId n = a.num_nodes();
    if (node_uniform) {
        ng.owner.resize(n);
        ng.prio.resize(n);
        ng.succ.resize(n);
        for (NodeId v = 0; v < n; ++v) {
            ng.owner[v] = side(a.owner(v));
            ng.prio[v] = g.priority[a.out_edges(v).front()];
            for (EdgeId e : a.out_edges(v)) ng.succ[v].push_back(a.target(e));
        }
    } else {
        // One extra node per edge carries the edge's priority.
        const int total = n + a.num_edges();
        ng.owner.assign(total, 0);
        ng.prio.assign(total, 0);
        ng.succ.resize(total);
        for (NodeId v = 0; v < n; ++v) {
            ng.owner[v] = side(a.owner(v));
            for (EdgeId e : a.out_edges(v)) ng.succ[v].push_back(n + e);
        }
        for (EdgeId e = 0; e < a.num_edges(); ++e) {
            ng.prio[n + e] = g.priority[e];
            ng.succ[n + e].push_back(a.target(e));
        }
    }
    ng.finish();

    detail::Zielonka z(ng);
    z.run();

    ParitySolution sol;
    sol.winner.resize(n);
    sol.max_strategy = lowest_edge_strategy(a, Player::Max);
    sol.min_strategy = lowest_edge_strategy(a, Player::Min);
    for (NodeId v = 0; v < n; ++v) {
        const Player w = z.winner()[v] == 0 ? even_player : opponent(even_player);
        sol.winner[v] = w;
        if (a.owner(v) != w) continue;
        const int next = z.strategy()[v];
        EdgeId chosen = kNoEdge;
        if (node_uniform) {
            for (EdgeId e : a.out_edges(v)) {
                if (a.target(e) == next) {
                    chosen = e;
                    break;
                }
            }
        } else {
            chosen = next - n;
        }
        if (chosen == kNoEdge) throw std::logic_error("parity solver: missing winning move");
        (w == Player::Max ? sol.max_strategy : sol.min_strategy).moves[v] = chosen;
    }
    return sol;
}

} // namespace chroma
