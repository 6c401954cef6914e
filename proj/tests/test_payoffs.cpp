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

#include <gtest/gtest.h>

#include <random>

#include "chroma.hpp"
#include "support/oracles.hpp"

using namespace chroma;

namespace {

LassoWord random_word(std::mt19937_64& rng, const std::vector<Color>& letters, int max_prefix, int max_cycle)
{
    LassoWord w;
    w.prefix.resize(rng() % (max_prefix + 1));
    w.cycle.resize(1 + rng() % max_cycle);
    for (auto& c : w.prefix) c = letters[rng() % letters.size()];
    for (auto& c : w.cycle) c = letters[rng() % letters.size()];
    return w;
}

Arena random_one_player(int n, const std::vector<Color>& alphabet, std::uint64_t seed, Player side)
{
    return random_arena(n, alphabet, seed, opponent(side), {2, 0});
}

// Value reached by the optimizer's witness against the opponent's only strategy.
Value witness_value(const Arena& a, const Payoff& payoff, const OnePlayerResult& r, Player side, NodeId v)
{
    const Strategy mine = *r.witness;
    const Strategy other = lowest_edge_strategy(a, opponent(side));
    const Lasso l = side == Player::Max ? play(a, v, mine, other) : play(a, v, other, mine);
    return payoff.evaluate(a, l);
}

void expect_witness_attains(const Arena& a, const Payoff& payoff, const OnePlayerResult& r, Player side)
{
    ASSERT_TRUE(r.witness.has_value());
    check_strategy(a, *r.witness);
    for (NodeId v = 0; v < a.num_nodes(); ++v)
        EXPECT_EQ(witness_value(a, payoff, r, side, v), r.values[v]) << "node " << v;
}

} // namespace

TEST(Psi, Examples)
{
    EXPECT_EQ(eval_psi({{}, {1}}), Value(1));
    EXPECT_EQ(eval_psi({{-1}, {1, -1}}), Value(1));
    EXPECT_EQ(eval_psi({{1}, {1, -1}}), Value(0));
    EXPECT_EQ(eval_psi({{}, {-1}}), Value(0));
}

TEST(Psi, RejectsBadLetters)
{
    try {
        eval_psi({{0}, {1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadLetter);
    }
}

TEST(Psi, MatchesSimulation)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 5000; ++i) {
        const LassoWord w = random_word(rng, {-1, 1}, 6, 6);
        ASSERT_EQ(eval_psi(w), Value(oracle::psi_by_simulation(w)));
    }
}

TEST(Phi, Examples)
{
    EXPECT_EQ(eval_phi({{}, {1}}, {3}), Value(1));
    EXPECT_EQ(eval_phi({{}, {0, 1, 1}}, {2}), Value(1));
    EXPECT_EQ(eval_phi({{}, {0}}, {2}), Value(0));
    EXPECT_EQ(eval_phi({{0, 1, 1, 0}, {0}}, {2}), Value(1));
    EXPECT_EQ(eval_phi({{1, 1}, {0, 1}}, {2}), Value(0));
    EXPECT_THROW(eval_phi({{}, {2}}, {1}), Error);
    EXPECT_THROW(phi_payoff({}), std::invalid_argument);
}

TEST(Phi, MatchesSimulation)
{
    std::mt19937_64 rng(6);
    for (int i = 0; i < 5000; ++i) {
        const LassoWord w = random_word(rng, {0, 1}, 6, 6);
        const IntSet T = {1 + static_cast<long long>(rng() % 3), 2 + static_cast<long long>(rng() % 4)};
        ASSERT_EQ(eval_phi(w, T), Value(oracle::phi_by_simulation(w, T)));
    }
}

TEST(OnePlayerPsi, SingleLoops)
{
    EXPECT_EQ(one_player_opt_psi(Arena({Player::Max}, {{0, 0, 1}}, {-1, 1}), Player::Max).values[0], Value(1));
    EXPECT_EQ(one_player_opt_psi(Arena({Player::Max}, {{0, 0, -1}}, {-1, 1}), Player::Max).values[0], Value(0));
}

TEST(OnePlayerPsi, RejectsTwoPlayerArena)
{
    try {
        one_player_opt_psi(build_fig2(), Player::Max);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotOnePlayer);
    }
}

TEST(OnePlayerPsi, MatchesLassosOfTheProduct)
{
    const PayoffPtr psi = psi_payoff();
    int nonzero = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const Player side = seed % 2 ? Player::Min : Player::Max;
        const Arena a = random_one_player(4, {-1, 1}, seed, side);
        const OnePlayerResult r = one_player_opt_psi(a, side);
        const MemorySkeleton m = synth_Mn(a.num_nodes());
        const ProductArena p = build_product(m, a);
        for (NodeId v = 0; v < a.num_nodes(); ++v) {
            const Value brute = oracle::best_simple_lasso(p.arena, p.node(m.init(), v), side == Player::Max,
                                                          [&](const Lasso& l) { return psi->evaluate(p.arena, l); });
            ASSERT_EQ(r.values[v], brute) << "seed " << seed << " node " << v;
            nonzero += r.values[v] == Value(1);
            ++total;
        }
        expect_witness_attains(a, *psi, r, side);
    }
    EXPECT_GT(nonzero, total / 10);
    EXPECT_LT(nonzero, total - total / 10);
}

TEST(OnePlayerPsi, ZeroRecurrenceNeedsMemory)
{
    // Max must alternate the two loops to return to zero forever.
    const Arena a({Player::Max}, {{0, 0, 1}, {0, 0, -1}}, {-1, 1});
    const OnePlayerResult r = one_player_opt_psi(a, Player::Max);
    EXPECT_EQ(r.values[0], Value(1));
    EXPECT_FALSE(r.positional.has_value());
    expect_witness_attains(a, *psi_payoff(), r, Player::Max);
    EXPECT_EQ(psi_payoff()->evaluate(a, Lasso{{}, {0}}), Value(1));
}

TEST(OnePlayerPhi, SingleLoops)
{
    EXPECT_EQ(one_player_opt_phi(Arena({Player::Max}, {{0, 0, 1}}, {0, 1}), Player::Max, {1}).values[0], Value(1));
    EXPECT_EQ(one_player_opt_phi(Arena({Player::Max}, {{0, 0, 0}}, {0, 1}), Player::Max, {1}).values[0], Value(0));
}

TEST(OnePlayerPhi, MatchesLassosOfTheProduct)
{
    const IntSet T = {2};
    const PayoffPtr phi = phi_payoff(T);
    int ones = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const Player side = seed % 2 ? Player::Min : Player::Max;
        const Arena a = random_one_player(4, {0, 1}, seed + 500, side);
        const OnePlayerResult r = one_player_opt_phi(a, side, T);
        const MemorySkeleton m = synth_Mk(2, T);
        const ProductArena p = build_product(m, a);
        for (NodeId v = 0; v < a.num_nodes(); ++v) {
            const Value brute = oracle::best_simple_lasso(p.arena, p.node(m.init(), v), side == Player::Max,
                                                          [&](const Lasso& l) { return phi->evaluate(p.arena, l); });
            ASSERT_EQ(r.values[v], brute) << "seed " << seed << " node " << v;
            ones += r.values[v] == Value(1);
            ++total;
        }
        expect_witness_attains(a, *phi, r, side);
    }
    EXPECT_GT(ones, 0);
    EXPECT_LT(ones, total);
}

TEST(Mean, Examples)
{
    EXPECT_EQ(mean_payoff()->evaluate(LassoWord{{}, {1, -1}}), Value(0));
    EXPECT_EQ(mean_payoff()->evaluate(LassoWord{{5}, {1, 2, 2}}), Value(5, 3));
    const Arena a({Player::Max}, {{0, 0, 1}, {0, 0, -1}}, {-1, 1});
    EXPECT_EQ(mean_payoff()->one_player_opt(a, Player::Max).values[0], Value(1));
    const Arena b({Player::Min}, {{0, 0, 1}, {0, 0, -1}}, {-1, 1});
    EXPECT_EQ(mean_payoff()->one_player_opt(b, Player::Min).values[0], Value(-1));
}

TEST(Mean, MatchesSimpleLassos)
{
    const PayoffPtr mean = mean_payoff();
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Player side = seed % 2 ? Player::Min : Player::Max;
        const Arena a = random_one_player(5, {-3, -1, 0, 2, 5}, seed + 900, side);
        const OnePlayerResult r = mean->one_player_opt(a, side);
        for (NodeId v = 0; v < a.num_nodes(); ++v)
            ASSERT_EQ(r.values[v], oracle::best_simple_lasso(a, v, side == Player::Max, [&](const Lasso& l) {
                          return oracle::mean_of_cycle(color_word(a, l));
                      }));
        expect_witness_attains(a, *mean, r, side);
    }
}

TEST(ParityPayoff, OnePlayerMatchesSimpleLassos)
{
    for (Parity conv : {Parity::Even, Parity::Odd}) {
        const PayoffPtr parity = parity_payoff(conv);
        for (std::uint64_t seed = 0; seed < 150; ++seed) {
            const Player side = seed % 2 ? Player::Min : Player::Max;
            const Arena a = random_one_player(5, {0, 1, 2, 3}, seed + 1300, side);
            const OnePlayerResult r = parity->one_player_opt(a, side);
            ASSERT_TRUE(r.positional.has_value());
            for (NodeId v = 0; v < a.num_nodes(); ++v)
                ASSERT_EQ(r.values[v], oracle::best_simple_lasso(a, v, side == Player::Max, [&](const Lasso& l) {
                              return Value(oracle::parity_max_wins(color_word(a, l), conv == Parity::Even));
                          }));
            expect_witness_attains(a, *parity, r, side);
        }
    }
}

TEST(ParityPayoff, Evaluate)
{
    EXPECT_EQ(parity_payoff(Parity::Even)->evaluate(LassoWord{{7}, {1, 2}}), Value(1));
    EXPECT_EQ(parity_payoff(Parity::Odd)->evaluate(LassoWord{{}, {1, 2}}), Value(0));
    EXPECT_THROW(parity_payoff(Parity::Odd)->evaluate(LassoWord{{}, {-1}}), Error);
}

TEST(DefaultOracle, FallsBackToSimpleLassos)
{
    struct LastLetter : Payoff {
        std::string name() const override { return "last"; }
        Value evaluate(const LassoWord& w) const override { return w.cycle.back(); }
    };
    const Arena a({Player::Max, Player::Max}, {{0, 1, 0}, {1, 0, 3}, {0, 0, 2}}, {0, 2, 3});
    const OnePlayerResult r = LastLetter().one_player_opt(a, Player::Max);
    EXPECT_FALSE(r.exact);
    EXPECT_EQ(r.values[0], Value(3));
}
