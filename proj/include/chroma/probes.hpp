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

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena.hpp"
#include "equilibrium.hpp"
#include "memory.hpp"
#include "parity.hpp"
#include "payoffs.hpp"
#include "product.hpp"
#include "skeletons.hpp"

namespace chroma {

using json = nlohmann::json;

struct ProbeReport {
    std::string probe;
    json params = json::object();
    json trials = json::array();
    bool verdict = true;
    std::optional<std::uint64_t> seed;
    std::int64_t elapsed_ms = 0;

    json to_json() const
    {
        json j{{"probe", probe}, {"params", params}, {"trials", trials}, {"verdict", verdict ? "PASS" : "FAIL"},
               {"elapsed_ms", elapsed_ms}};
        j["seed"] = seed ? json(*seed) : json(nullptr);
        return j;
    }
};

/// Independent per-trial seed derived from a probe seed (splitmix64).
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace detail {

class Stopwatch {
public:
    std::int64_t ms() const
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace detail

// ---------------------------------------------------------------------------
// Named arenas.

namespace fig2 {
inline constexpr NodeId kSquare = 0;    // Max
inline constexpr NodeId kTriangle = 1;  // Min
inline constexpr EdgeId kSquareLoop = 0;     // -1
inline constexpr EdgeId kToTriangle = 1;     // +1
inline constexpr EdgeId kTriangleLoop = 2;   // +1
inline constexpr EdgeId kToSquare = 3;       // -1
} // namespace fig2

inline Arena build_fig2()
{
    using namespace fig2;
    return Arena({Player::Max, Player::Min},
                 {{kSquare, kSquare, -1}, {kSquare, kTriangle, 1}, {kTriangle, kTriangle, 1}, {kTriangle, kSquare, -1}},
                 {-1, 1});
}

/// Max keeps the sum from going positive at the square, then crosses over.
inline GeneralCounterStrategy fig2_max_counter()
{
    GeneralCounterStrategy s;
    s.owner = Player::Max;
    s.thresholds = {0};
    s.next_mode = [](int, EdgeId) { return 0; };
    s.move = [](int, const ThresholdView& view, NodeId) {
        return view.above[0] ? fig2::kSquareLoop : fig2::kToTriangle;
    };
    return s;
}

/// Min climbs at the triangle until the sum reaches s+2, then crosses over.
inline GeneralCounterStrategy fig2_min_counter(int s)
{
    GeneralCounterStrategy g;
    g.owner = Player::Min;
    g.thresholds = {static_cast<std::int64_t>(s) + 2};
    g.next_mode = [](int, EdgeId) { return 0; };
    g.move = [](int, const ThresholdView& view, NodeId) {
        return view.at_least[0] ? fig2::kToSquare : fig2::kTriangleLoop;
    };
    return g;
}

/// Layout of the one-player arena A_m; entries and exits are numbered 1..m.
struct AmArena {
    Arena arena;
    int m = 0;
    int k = 0;
    std::vector<NodeId> left;   // left[i-1]
    std::vector<NodeId> right;  // right[i-1]
    NodeId center = 0;
    std::vector<EdgeId> exits;  // exits[i-1]: the center's edge towards right i
};

/**
 * Left node i reaches the center along 0 1^i, the center reaches right
 * node i along 1^(k-i), and each right node has a 0 loop.  Max owns all.
 */
inline AmArena build_Am(int m, int k)
{
    if (m < 1 || k <= m) throw std::invalid_argument("build_Am: need k > m >= 1");
    AmArena out;
    out.m = m;
    out.k = k;
    std::vector<Edge> edges;
    NodeId next = 0;
    out.center = next++;
    std::vector<Edge> center_edges;
    for (int i = 1; i <= m; ++i) {
        const NodeId l = next++;
        out.left.push_back(l);
        NodeId at = l;
        Color c = 0;
        for (int j = 0; j < i; ++j) {
            const NodeId mid = next++;
            edges.push_back({at, mid, c});
            at = mid;
            c = 1;
        }
        edges.push_back({at, out.center, 1});
    }
    for (int i = 1; i <= m; ++i) {
        NodeId at = out.center;
        for (int j = 0; j < k - i - 1; ++j) {
            const NodeId mid = next++;
            (at == out.center ? center_edges : edges).push_back({at, mid, 1});
            at = mid;
        }
        const NodeId r = next++;
        (at == out.center ? center_edges : edges).push_back({at, r, 1});
        out.right.push_back(r);
        edges.push_back({r, r, 0});
    }
    // Center edges first so that exits[i-1] == i-1.
    for (int i = 0; i < m; ++i) out.exits.push_back(i);
    center_edges.insert(center_edges.end(), edges.begin(), edges.end());
    out.arena = Arena(std::vector<Player>(next, Player::Max), std::move(center_edges), {0, 1});
    return out;
}

// ---------------------------------------------------------------------------
// Sparse and isolated sets.

/// No other element of T lies strictly between k/2 and k^4.
inline bool is_isolated_element(const IntSet& T, long long k)
{
    if (!T.count(k) || k < 1) return false;
    const __int128 upper = static_cast<__int128>(k) * k * k * k;
    for (long long l : T)
        if (l != k && 2 * static_cast<__int128>(l) > k && l < upper) return false;
    return true;
}

/// No other element of T lies strictly between k-m and k+m.
inline bool is_isolated_window(const IntSet& T, long long k, long long m)
{
    if (!T.count(k)) return false;
    for (long long l : T)
        if (l != k && l > k - m && l < k + m) return false;
    return true;
}

/**
 * Finite check of sparseness: T has an element up to the horizon, and
 * every element k up to the horizon has no other element in (k, k^4).
 */
inline bool is_sparse(const IntSet& T, long long horizon)
{
    bool any = false;
    for (long long k : T) {
        if (k > horizon) break;
        any = true;
        const __int128 upper = static_cast<__int128>(k) * k * k * k;
        for (auto it = T.upper_bound(k); it != T.end() && *it < upper; ++it) return false;
    }
    return any;
}

/// The elements 2^(4^n), n = 1..count, that fit in 62 bits.
inline IntSet tower_set(int count)
{
    IntSet T;
    long long exponent = 1;
    for (int n = 1; n <= count; ++n) {
        exponent *= 4;
        if (exponent > 62) break;
        T.insert(1LL << exponent);
    }
    return T;
}

inline std::optional<long long> smallest_isolated_above(const IntSet& T, long long m)
{
    for (long long k : T)
        if (k > m && is_isolated_window(T, k, m)) return k;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Probes.

/**
 * Every Max strategy with at most s memory states loses from the square
 * against the threshold strategy of Min, for s = 1..s_max; and the
 * counter strategy of Max wins against every Min strategy with at most
 * min_states states.
 */
inline ProbeReport probe_fig2_lower(int s_max, int min_states = 2)
{
    detail::Stopwatch clock;
    ProbeReport rep;
    rep.probe = "fig2";
    rep.params = {{"s_max", s_max}, {"min_states", min_states}};
    const Arena a = build_fig2();
    const Weights w = identity_weights(a.alphabet());

    for (int s = 1; s <= s_max; ++s) {
        const GeneralCounterStrategy tau = fig2_min_counter(s);
        std::int64_t checked = 0, lost = 0;
        json first_win = nullptr;
        for (const MemorySkeleton& m : enumerate_skeletons(a.alphabet(), s)) {
            for (std::uint64_t bits = 0; bits < (1ULL << m.size()); ++bits) {
                ChromaticStrategy sigma{Player::Max, m,
                                        std::vector<std::vector<EdgeId>>(m.size(), std::vector<EdgeId>(2, kNoEdge))};
                for (StateId q = 0; q < m.size(); ++q)
                    sigma.moves[q][fig2::kSquare] = (bits >> q) & 1 ? fig2::kToTriangle : fig2::kSquareLoop;
                const CounterOutcome o = play_counter(a, fig2::kSquare, sigma, tau, w);
                ++checked;
                if (o.value == Value(0)) ++lost;
                else if (first_win.is_null()) first_win = {{"states", m.size()}, {"moves", bits}};
            }
        }
        const bool ok = checked == lost;
        rep.verdict = rep.verdict && ok;
        rep.trials.push_back({{"part", "max-finite-memory-loses"}, {"s", s}, {"strategies", checked},
                              {"losing", lost}, {"counterexample", first_win}, {"ok", ok}});
    }

    const GeneralCounterStrategy sigma = fig2_max_counter();
    std::int64_t checked = 0, won = 0;
    for (const MemorySkeleton& m : enumerate_skeletons(a.alphabet(), min_states)) {
        for (std::uint64_t bits = 0; bits < (1ULL << m.size()); ++bits) {
            ChromaticStrategy tau{Player::Min, m,
                                  std::vector<std::vector<EdgeId>>(m.size(), std::vector<EdgeId>(2, kNoEdge))};
            for (StateId q = 0; q < m.size(); ++q)
                tau.moves[q][fig2::kTriangle] = (bits >> q) & 1 ? fig2::kToSquare : fig2::kTriangleLoop;
            const CounterOutcome o = play_counter(a, fig2::kSquare, sigma, tau, w);
            ++checked;
            if (o.value == Value(1)) ++won;
        }
    }
    const bool ok = checked == won;
    rep.verdict = rep.verdict && ok;
    rep.trials.push_back({{"part", "max-counter-wins"}, {"min_states", min_states}, {"strategies", checked},
                          {"winning", won}, {"ok", ok}});
    rep.elapsed_ms = clock.ms();
    return rep;
}

/// Skeleton with m+2 states that remembers the length (capped at m) of the run of ones since the last zero.
inline MemorySkeleton run_counting_skeleton(int m)
{
    // state 0: before any zero; state 1+j: j ones since the last zero
    std::vector<std::vector<StateId>> delta(m + 2, std::vector<StateId>(2));
    delta[0] = {1, 0};
    for (int j = 0; j <= m; ++j) delta[1 + j] = {1, static_cast<StateId>(1 + std::min(j + 1, m))};
    return MemorySkeleton({0, 1}, 0, std::move(delta));
}

/// Strategy on A_m whose center move depends on the state of m.
inline ChromaticStrategy am_strategy(const AmArena& am, const MemorySkeleton& m, const std::vector<int>& exit_of_state)
{
    ChromaticStrategy s{Player::Max, m,
                        std::vector<std::vector<EdgeId>>(m.size(), std::vector<EdgeId>(am.arena.num_nodes(), kNoEdge))};
    for (StateId q = 0; q < m.size(); ++q) {
        for (NodeId v = 0; v < am.arena.num_nodes(); ++v) s.moves[q][v] = am.arena.out_edges(v)[0];
        s.moves[q][am.center] = am.exits[exit_of_state[q]];
    }
    return s;
}

/**
 * Pigeonhole on A_m: every skeleton with fewer than m states maps two of
 * the entry words 0 1^i to the same state.  Also plays every such
 * strategy exhaustively and confirms none wins from all left nodes, and
 * runs the counting skeleton as a negative control.
 */
inline ProbeReport probe_Am_lower(int m, const IntSet& T = {5})
{
    detail::Stopwatch clock;
    ProbeReport rep;
    rep.probe = "am";
    const auto k = smallest_isolated_above(T, m);
    rep.params = {{"m", m}, {"T", T}, {"window", "(k-m, k+m)"}};
    if (!k) throw std::invalid_argument("probe_Am_lower: T has no isolated element above m");
    rep.params["k"] = *k;
    const AmArena am = build_Am(m, static_cast<int>(*k));
    const PhiPayoff phi(T);

    const auto entry_word = [](int i) {
        std::vector<Color> w{0};
        w.insert(w.end(), i, 1);
        return w;
    };
    const auto wins_everywhere = [&](const ChromaticStrategy& s) {
        for (NodeId l : am.left) {
            const Lasso lasso = play(am.arena, l, s, lowest_edge_strategy(am.arena, Player::Min));
            if (phi.evaluate(am.arena, lasso) != Value(1)) return false;
        }
        return true;
    };

    std::int64_t skeletons = 0, collisions = 0, strategies = 0, winners = 0;
    if (m >= 2) {
        for (const MemorySkeleton& sk : enumerate_skeletons({0, 1}, m - 1)) {
            ++skeletons;
            std::vector<StateId> reached;
            for (int i = 1; i <= m; ++i) reached.push_back(sk.run(entry_word(i)));
            std::vector<StateId> sorted = reached;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) ++collisions;

            std::vector<int> choice(sk.size(), 0);
            for (;;) {
                ++strategies;
                if (wins_everywhere(am_strategy(am, sk, choice))) ++winners;
                std::size_t d = 0;
                while (d < choice.size() && ++choice[d] == m) choice[d++] = 0;
                if (d == choice.size()) break;
            }
        }
    }
    const bool pigeonhole = skeletons == collisions;
    const bool none_wins = winners == 0;
    rep.trials.push_back({{"part", "pigeonhole"}, {"skeletons", skeletons}, {"collisions", collisions},
                          {"ok", pigeonhole}});
    rep.trials.push_back({{"part", "exhaustive-play"}, {"strategies", strategies}, {"winning_everywhere", winners},
                          {"ok", none_wins}});

    // Negative control: counting runs separates all entries and wins.
    const MemorySkeleton counter = run_counting_skeleton(m);
    std::vector<StateId> reached;
    for (int i = 1; i <= m; ++i) reached.push_back(counter.run(entry_word(i)));
    std::vector<int> choice(counter.size(), 0);
    for (int i = 1; i <= m; ++i) choice[reached[i - 1]] = i - 1;
    std::vector<StateId> sorted = reached;
    std::sort(sorted.begin(), sorted.end());
    const bool separated = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    const bool control_wins = wins_everywhere(am_strategy(am, counter, choice));
    rep.trials.push_back({{"part", "counting-control"}, {"states", counter.size()}, {"separated", separated},
                          {"wins_everywhere", control_wins}, {"ok", separated && control_wins}});

    rep.verdict = pigeonhole && none_wins && separated && control_wins;
    rep.elapsed_ms = clock.ms();
    return rep;
}

/// One one-player instance of the running-sum sufficiency probe.
struct MnInstance {
    int trial = 0;
    Player side = Player::Max;
    Arena arena;
    MemorySkeleton skeleton;
    ChromaticStrategy sigma;
    ChromaticStrategy tau;
    EquilibriumReport report;
};

/**
 * Random one-player arenas with at most n nodes, alternating the side
 * that has choices.  The optimizing side plays the M_n strategy from the
 * one-player pipeline, the other side its only strategy; the pair must be
 * an equilibrium from every node.
 */
inline ProbeReport probe_Mn_sufficiency(int n, int trials, std::uint64_t seed,
                                        const std::function<void(const MnInstance&)>& on_instance = {})
{
    detail::Stopwatch clock;
    ProbeReport rep;
    rep.probe = "mn";
    rep.seed = seed;
    rep.params = {{"n", n}, {"trials", trials}};
    const MemorySkeleton mn = synth_Mn(n);
    const PsiPayoff psi;
    for (int t = 0; t < trials; ++t) {
        MnInstance inst;
        inst.trial = t;
        inst.side = t % 2 == 0 ? Player::Max : Player::Min;
        inst.arena = random_arena(n, {-1, 1}, trial_seed(seed, t), opponent(inst.side));
        inst.skeleton = mn;
        const OnePlayerResult r = one_player_opt_psi(inst.arena, inst.side, n);
        if (!r.witness || !(r.witness->skeleton == mn)) throw std::logic_error("probe_Mn: witness is not an M_n strategy");
        const ChromaticStrategy other = as_chromatic(mn, lowest_edge_strategy(inst.arena, opponent(inst.side)));
        inst.sigma = inst.side == Player::Max ? *r.witness : other;
        inst.tau = inst.side == Player::Max ? other : *r.witness;
        inst.report = check_equilibrium(inst.arena, psi, inst.sigma, inst.tau, all_nodes(inst.arena));
        rep.verdict = rep.verdict && inst.report.verdict;
        rep.trials.push_back({{"trial", t}, {"side", to_string(inst.side)}, {"nodes", inst.arena.num_nodes()},
                              {"edges", inst.arena.num_edges()}, {"equilibrium", inst.report.verdict}});
        if (on_instance) on_instance(inst);
    }
    rep.elapsed_ms = clock.ms();
    return rep;
}

/// Solution of the three-priority game on M_k x A, projected to A.
struct MkSolution {
    ProductArena product;
    ParitySolution solution;
    ChromaticStrategy sigma;
    ChromaticStrategy tau;
};

inline MkSolution solve_Mk_game(const Arena& a, int k, const IntSet& T)
{
    const MemorySkeleton m = synth_Mk(k, T);
    MkSolution out{build_product(m, a), {}, {}, {}};
    ParityGame g{out.product.arena, std::vector<int>(out.product.arena.num_edges()), Parity::Odd};
    for (EdgeId e = 0; e < out.product.arena.num_edges(); ++e) {
        const auto [state, base] = out.product.edge_origin[e];
        g.priority[e] = state == mk::kFinal ? 3 : (a.color(base) == 0 ? 2 : 1);
    }
    out.solution = solve(g);
    std::tie(out.sigma, out.tau) = project_equilibrium(m, a, out.solution.max_strategy, out.solution.min_strategy);
    return out;
}

/**
 * Random two-player arenas with at most min(k^2, cap) nodes: the M_k
 * strategies read off the three-priority game must form an equilibrium
 * for the subword payoff itself.  k is the given element of T.
 */
inline ProbeReport probe_Mk_equilibrium(const IntSet& T, int k, int trials, std::uint64_t seed, int max_nodes = 25,
                                        int cap = 64)
{
    detail::Stopwatch clock;
    ProbeReport rep;
    rep.probe = "mk";
    rep.seed = seed;
    const int n_max = std::min({k * k, cap, max_nodes});
    rep.params = {{"T", T}, {"k", k}, {"trials", trials}, {"max_nodes", n_max},
                  {"isolated", is_isolated_element(T, k)}, {"window", "(k/2, k^4)"}};
    const PhiPayoff phi(T);
    for (int t = 0; t < trials; ++t) {
        const Arena a = random_arena(n_max, {0, 1}, trial_seed(seed, t));
        const MkSolution s = solve_Mk_game(a, k, T);
        const EquilibriumReport r = check_equilibrium(a, phi, s.sigma, s.tau, all_nodes(a));
        rep.verdict = rep.verdict && r.verdict;
        json trial{{"trial", t}, {"nodes", a.num_nodes()}, {"edges", a.num_edges()}, {"equilibrium", r.verdict}};
        if (r.counterexample) {
            trial["counterexample"] = {{"start", r.counterexample->start},
                                       {"deviator", to_string(r.counterexample->deviator)},
                                       {"improved", r.counterexample->improved.str()}};
        }
        rep.trials.push_back(std::move(trial));
    }
    rep.elapsed_ms = clock.ms();
    return rep;
}

/**
 * Crafted instance where M_k is too small: from node 0 Max can either
 * drop into a 0 loop (edge 0) or spell 0 1^t 0 with t = max(T) > k.
 */
inline Arena mk_too_small_arena(long long t)
{
    std::vector<Edge> edges{{0, 1, 0}};
    NodeId next = 2;
    NodeId at = 0;
    Color c = 0;
    std::vector<Edge> chain;
    for (long long i = 0; i <= t; ++i) {
        const NodeId mid = next++;
        chain.push_back({at, mid, c});
        at = mid;
        c = 1;
    }
    chain.push_back({at, 1, 0});
    edges.insert(edges.end(), chain.begin(), chain.end());
    edges.push_back({1, 1, 0});
    return Arena(std::vector<Player>(next, Player::Max), std::move(edges), {0, 1});
}

} // namespace chroma
