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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "chroma.hpp"
#include "support/oracles.hpp"

using namespace chroma;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& ex) {
        o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) {
        o.pass = false;
        o.detail += " (over time budget)";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %d. %s (%.2fs; budget %.0fs) %s\n", o.pass ? "PASS" : "FAIL", id, title, secs, budget_s,
                o.detail.c_str());
    std::fflush(stdout);
}

Arena two_player_arena(int n_max, const std::vector<Color>& alphabet, std::uint64_t& seed, RandomArenaOptions opts = {})
{
    for (;;) {
        Arena a = random_arena(n_max, alphabet, seed++, std::nullopt, opts);
        if (is_one_player(a) == OnePlayerKind::TwoPlayer) return a;
    }
}

Outcome parity_solver()
{
    int games = 0, mismatches = 0;
    for (std::uint64_t seed = 1; games < 500; ++seed) {
        const Arena a = random_arena(6, {0, 1, 2, 3}, seed, std::nullopt, {3, 8});
        ++games;
        for (Parity conv : {Parity::Even, Parity::Odd}) {
            ParityGame g{a, {}, conv};
            for (EdgeId e = 0; e < a.num_edges(); ++e) g.priority.push_back(a.color(e));
            const ParitySolution sol = solve(g);
            const auto brute = oracle::positional_minimax(a, [&](const Lasso& l) {
                return Value(oracle::parity_max_wins(color_word(a, l), conv == Parity::Even));
            });
            for (NodeId v = 0; v < a.num_nodes(); ++v)
                if ((sol.winner[v] == Player::Max) != (brute[v] == Value(1))) ++mismatches;
        }
    }
    return {mismatches == 0, std::to_string(games) + " games x 2 conventions, " + std::to_string(mismatches) +
                                 " node mismatches"};
}

Outcome lifting_differential()
{
    int arenas = 0, non_eq = 0, mismatches = 0;
    std::int64_t calls = 0;
    std::uint64_t seed = 1000;
    for (int i = 0; i < 300; ++i) {
        const Parity conv = i % 2 == 0 ? Parity::Even : Parity::Odd;
        const Arena a = two_player_arena(6, {0, 1, 2, 3}, seed);
        const ParityPayoff parity(conv);
        const LiftResult r = positional_lift(a, parity, payoff_oracle(std::make_shared<ParityPayoff>(conv)));
        ++arenas;
        calls += r.stats.oracle_calls;
        if (!r.check.verdict) ++non_eq;
        const ParitySolution direct = solve(parity.game(a));
        for (NodeId v = 0; v < a.num_nodes(); ++v)
            if ((r.check.starts[v].value == Value(1)) != (direct.winner[v] == Player::Max)) ++mismatches;
    }
    for (int i = 0; i < 300; ++i) {
        const Arena a = two_player_arena(6, {-2, -1, 0, 1, 2}, seed);
        const MeanPayoff mean;
        const LiftResult r = positional_lift(a, mean, payoff_oracle(mean_payoff()));
        ++arenas;
        calls += r.stats.oracle_calls;
        if (!r.check.verdict) ++non_eq;
        const auto brute = oracle::positional_minimax(a, [&](const Lasso& l) { return oracle::mean_of_cycle(color_word(a, l)); });
        for (NodeId v = 0; v < a.num_nodes(); ++v)
            if (r.check.starts[v].value != brute[v]) ++mismatches;
    }
    return {non_eq == 0 && mismatches == 0,
            std::to_string(arenas) + " arenas (300 parity, 300 mean), " + std::to_string(non_eq) +
                " non-equilibria, " + std::to_string(mismatches) + " value mismatches, " + std::to_string(calls) +
                " oracle calls"};
}

Outcome skeleton_lifting()
{
    const std::vector<Color> alphabet{0, 1, 2, 3};
    std::vector<MemorySkeleton> two_state;
    for (auto& m : enumerate_skeletons(alphabet, 2))
        if (m.size() == 2) two_state.push_back(m);
    std::mt19937_64 rng(77);
    int arenas = 0, non_eq = 0, oversize = 0;
    NodeId largest = 0;
    for (int i = 0; i < 100; ++i) {
        const Arena a = random_arena(4, alphabet, 5000 + i);
        const MemorySkeleton& m = two_state[rng() % two_state.size()];
        const Parity conv = i % 2 == 0 ? Parity::Even : Parity::Odd;
        const ParityPayoff parity(conv);
        const SkeletonLiftResult r = lift_with_skeleton(a, m, parity, payoff_oracle(std::make_shared<ParityPayoff>(conv), m));
        ++arenas;
        if (!r.check.verdict || !r.positional.check.verdict) ++non_eq;
        const NodeId bound = 2 * a.num_nodes() * m.size() - 1;
        if (r.positional.stats.largest_oracle_arena > bound) ++oversize;
        largest = std::max(largest, r.positional.stats.largest_oracle_arena);
    }
    return {non_eq == 0 && oversize == 0,
            std::to_string(arenas) + " arenas, " + std::to_string(non_eq) + " non-equilibria, largest oracle arena " +
                std::to_string(largest) + " nodes, " + std::to_string(oversize) + " over 2n|M|-1"};
}

Outcome compute_g_constant()
{
    int bad = 0;
    for (std::int64_t k = 1; k <= 5; ++k) {
        const std::vector<std::int64_t> table(2000, k);
        for (std::int64_t n = 1; n <= 100; ++n) {
            const auto g = compute_g(table, n);
            if (!g || *g != k) ++bad;
        }
    }
    return {bad == 0, std::to_string(bad) + " of 500 (k,n) pairs wrong"};
}

Outcome mn_sufficiency()
{
    int instances = 0, reverify_fail = 0;
    bool all_pass = true;
    std::string detail;
    for (int n = 1; n <= 6; ++n) {
        const ProbeReport rep = probe_Mn_sufficiency(n, 200, 900 + n, [&](const MnInstance& inst) {
            ++instances;
            const ProductArena p = build_product(inst.skeleton, inst.arena);
            const auto value = [&](const Lasso& l) { return Value(oracle::psi_by_simulation(color_word(p.arena, l))); };
            const auto cycles = oracle::simple_cycles(p.arena);
            for (NodeId v = 0; v < inst.arena.num_nodes(); ++v) {
                const Value brute = *oracle::best_reachable_cycle(p.arena, p.node(inst.skeleton.init(), v), cycles,
                                                                  inst.side == Player::Max, value);
                const Lasso l = play(inst.arena, v, inst.sigma, inst.tau);
                const Value got = oracle::psi_by_simulation(color_word(inst.arena, l));
                if (brute != got) ++reverify_fail;
            }
        });
        all_pass = all_pass && rep.verdict;
        detail += "n=" + std::to_string(n) + ":" + (rep.verdict ? "PASS" : "FAIL") + " ";
    }
    return {all_pass && reverify_fail == 0,
            detail + "; " + std::to_string(instances) + " instances, " + std::to_string(reverify_fail) +
                " lasso-oracle disagreements"};
}

Outcome fig2_counterexample()
{
    const ProbeReport rep = probe_fig2_lower(2, 2);
    std::string detail;
    for (const auto& t : rep.trials) detail += t.dump() + " ";
    return {rep.verdict, detail};
}

Outcome am_lower()
{
    bool ok = true;
    std::string detail;
    for (int m : {2, 3}) {
        const ProbeReport rep = probe_Am_lower(m, {5});
        ok = ok && rep.verdict;
        detail += "m=" + std::to_string(m) + ":" + (rep.verdict ? "PASS" : "FAIL") + " " + rep.trials[0].dump() + " ";
    }
    return {ok, detail};
}

Outcome mk_equilibria()
{
    const ProbeReport rep = probe_Mk_equilibrium({5}, 5, 100, 4242, 25);
    int yes = 0;
    for (const auto& t : rep.trials) yes += t["equilibrium"].get<bool>() ? 1 : 0;
    return {rep.verdict && yes == 100, std::to_string(yes) + "/100 projected pairs are equilibria for phi_{5}"};
}

Outcome cartesian()
{
    int arenas = 0, mixed = 0, failures_found = 0;
    for (std::uint64_t seed = 7000; arenas < 100; ++seed) {
        const Arena a = random_arena(4, {0, 1, 2}, seed);
        const ParityPayoff parity(seed % 2 ? Parity::Even : Parity::Odd);
        std::mt19937_64 rng(seed);
        std::vector<NodeId> starts;
        for (NodeId v = 0; v < a.num_nodes(); ++v)
            if (rng() % 2 == 0) starts.push_back(v);
        if (starts.empty()) starts = all_nodes(a);

        std::vector<std::pair<PositionalStrategy, PositionalStrategy>> eqs;
        oracle::for_each_positional(a, Player::Max, [&](const PositionalStrategy& s) {
            oracle::for_each_positional(a, Player::Min, [&](const PositionalStrategy& t) {
                if (check_equilibrium(a, parity, s, t, starts).verdict) eqs.emplace_back(s, t);
            });
        });
        if (eqs.size() < 2) continue;
        ++arenas;
        for (const auto& x : eqs)
            for (const auto& y : eqs) {
                ++mixed;
                if (!check_equilibrium(a, parity, x.first, y.second, starts).verdict) ++failures_found;
            }
    }
    return {failures_found == 0, std::to_string(arenas) + " arenas, " + std::to_string(mixed) + " mixed pairs, " +
                                     std::to_string(failures_found) + " not equilibria"};
}

} // namespace

int main()
{
    run(1, "parity solver equals positional minimax", 60, parity_solver);
    run(2, "positional lifting from a one-player oracle (parity, mean)", 300, lifting_differential);
    run(3, "skeleton lifting with 2-state skeletons (parity)", 300, skeleton_lifting);
    run(4, "compute_g on constant tables", 1, compute_g_constant);
    run(5, "M_n sufficiency for the running-sum payoff, n=1..6", 600, mn_sufficiency);
    run(6, "Figure 2 counterexample, s=1,2", 600, fig2_counterexample);
    run(7, "A_m pigeonhole lower bound, m=2,3", 120, am_lower);
    run(8, "M_k equilibria for T={5}", 600, mk_equilibria);
    run(9, "Cartesian-product law for parity equilibria", 300, cartesian);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
