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

const PositionalStrategy kMaxLoop{Player::Max, {fig2::kSquareLoop, kNoEdge}};
const PositionalStrategy kMinLoop{Player::Min, {kNoEdge, fig2::kTriangleLoop}};

ParityGame game_of(const Arena& a, Parity conv)
{
    return static_cast<const ParityPayoff&>(*parity_payoff(conv)).game(a);
}

} // namespace

TEST(Play, SelfLoop)
{
    const Arena a({Player::Max}, {{0, 0, 0}}, {0});
    const Lasso l = play(a, 0, lowest_edge_strategy(a, Player::Max), lowest_edge_strategy(a, Player::Min));
    EXPECT_TRUE(l.prefix.empty());
    EXPECT_EQ(l.cycle, std::vector<EdgeId>{0});
}

TEST(Play, Figure2Loops)
{
    const Arena a = build_fig2();
    const Lasso l = play(a, fig2::kSquare, kMaxLoop, kMinLoop);
    EXPECT_EQ(l, (Lasso{{}, {fig2::kSquareLoop}}));
    EXPECT_EQ(color_word(a, l).cycle, std::vector<Color>{-1});
}

TEST(Play, PositionalPlaysAreShort)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Arena a = random_arena(10, {0, 1}, seed);
        const auto s = lowest_edge_strategy(a, Player::Max);
        const auto t = lowest_edge_strategy(a, Player::Min);
        for (NodeId v = 0; v < a.num_nodes(); ++v) {
            const Lasso l = play(a, v, s, t);
            check_lasso(a, l);
            EXPECT_LE(l.prefix.size() + l.cycle.size(), static_cast<std::size_t>(a.num_nodes()));
            EXPECT_EQ(l, oracle::positional_play(a, v, s, t));
        }
    }
}

TEST(Play, ChromaticPlayBound)
{
    const Arena a({Player::Max}, {{0, 0, 0}, {0, 0, 1}}, {0, 1});
    const MemorySkeleton m({0, 1}, 0, {{1, 1}, {0, 0}});
    const ChromaticStrategy alternate{Player::Max, m, {{0}, {1}}};
    const Lasso l = play(a, 0, alternate, lowest_edge_strategy(a, Player::Min));
    EXPECT_EQ(l.cycle, (std::vector<EdgeId>{0, 1}));
    EXPECT_LE(l.prefix.size() + l.cycle.size(), 2u);
}

TEST(PlayCounter, ThresholdFreeMatchesPsi)
{
    std::mt19937_64 rng(3);
    const PayoffPtr psi = psi_payoff();
    for (int trial = 0; trial < 200; ++trial) {
        const Arena a = random_arena(6, {-1, 1}, rng());
        const MemorySkeleton m = synth_Mn(2);
        ChromaticStrategy s{Player::Max, m, std::vector<std::vector<EdgeId>>(m.size(), std::vector<EdgeId>(a.num_nodes(), kNoEdge))};
        for (auto& row : s.moves)
            for (NodeId v = 0; v < a.num_nodes(); ++v)
                if (a.owner(v) == Player::Max) row[v] = a.out_edges(v)[rng() % a.out_degree(v)];
        const PositionalStrategy t = lowest_edge_strategy(a, Player::Min);
        for (NodeId v = 0; v < a.num_nodes(); ++v) {
            const CounterOutcome o = play_counter(a, v, s, t, identity_weights(a.alphabet()));
            ASSERT_EQ(o.value, psi->evaluate(a, play(a, v, s, t))) << "trial " << trial;
        }
    }
}

TEST(PlayCounter, Figure2CounterStrategiesMaxWins)
{
    const Arena a = build_fig2();
    const CounterOutcome o =
        play_counter(a, fig2::kSquare, fig2_max_counter(), fig2_min_counter(2), identity_weights(a.alphabet()));
    EXPECT_EQ(o.value, Value(1));
    EXPECT_EQ(o.kind, "periodic");
}

TEST(PlayCounter, LoopingMaxDriftsDown)
{
    const Arena a = build_fig2();
    const CounterOutcome o =
        play_counter(a, fig2::kSquare, as_chromatic(a, kMaxLoop), fig2_min_counter(1), identity_weights(a.alphabet()));
    EXPECT_EQ(o.value, Value(0));
    EXPECT_EQ(o.kind, "diverges-down");
    EXPECT_LT(o.drift, 0);
}

TEST(PlayCounter, TriangleForeverDriftsUp)
{
    const Arena a = build_fig2();
    const PositionalStrategy go{Player::Max, {fig2::kToTriangle, kNoEdge}};
    const CounterOutcome o = play_counter(a, fig2::kSquare, go, kMinLoop, identity_weights(a.alphabet()));
    EXPECT_EQ(o.value, Value(1));
}

TEST(PlayCounter, FastForwardsLongClimbs)
{
    // Min leaves the triangle only once the counter reaches 1000.
    const Arena a = build_fig2();
    const PositionalStrategy go{Player::Max, {fig2::kToTriangle, kNoEdge}};
    const CounterOutcome o = play_counter(a, fig2::kSquare, go, fig2_min_counter(998), identity_weights(a.alphabet()));
    EXPECT_EQ(o.value, Value(0));
    EXPECT_GT(o.skipped, 0);
    EXPECT_LT(o.steps, 1000);
}

TEST(PlayCounter, RejectsMissingWeights)
{
    const Arena a = build_fig2();
    try {
        play_counter(a, fig2::kSquare, kMaxLoop, kMinLoop, Weights{{1, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonNumericAlphabet);
    }
}

TEST(BestResponse, SinglePlay)
{
    const Arena a({Player::Max, Player::Min}, {{0, 1, 1}, {1, 0, 2}}, {1, 2});
    const PayoffPtr parity = parity_payoff(Parity::Even);
    EXPECT_EQ(best_response_value(a, *parity, lowest_edge_strategy(a, Player::Max), 0), Value(1));
}

TEST(BestResponse, Figure2LoopingMax)
{
    const Arena a = build_fig2();
    EXPECT_EQ(best_response_value(a, *psi_payoff(), kMaxLoop, fig2::kSquare), Value(0));
    EXPECT_EQ(best_response_value(a, *psi_payoff(), kMinLoop, fig2::kSquare), Value(1));
}

TEST(BestResponse, ParityMatchesRestrictedLassos)
{
    std::mt19937_64 rng(17);
    const PayoffPtr parity = parity_payoff(Parity::Odd);
    for (int trial = 0; trial < 200; ++trial) {
        const Arena a = random_arena(4, {0, 1, 2, 3}, rng());
        const Player fixed_side = trial % 2 ? Player::Max : Player::Min;
        PositionalStrategy fixed{fixed_side, std::vector<EdgeId>(a.num_nodes(), kNoEdge)};
        for (NodeId v = 0; v < a.num_nodes(); ++v)
            if (a.owner(v) == fixed_side) fixed.moves[v] = a.out_edges(v)[rng() % a.out_degree(v)];
        const Arena r = restrict(a, fixed);
        const ResponseTable t = best_responses(a, *parity, fixed);
        for (NodeId v = 0; v < a.num_nodes(); ++v) {
            const Value brute = oracle::best_simple_lasso(r, v, fixed_side == Player::Min, [&](const Lasso& l) {
                return Value(oracle::parity_max_wins(color_word(r, l), false));
            });
            ASSERT_EQ(t.values[v], brute);
        }
    }
}

TEST(Equilibrium, TrivialArena)
{
    const Arena a({Player::Max}, {{0, 0, -1}}, {-1, 1});
    for (const PayoffPtr& p : {psi_payoff(), mean_payoff()}) {
        const auto rep = check_equilibrium(a, *p, lowest_edge_strategy(a, Player::Max),
                                           lowest_edge_strategy(a, Player::Min), {0});
        EXPECT_TRUE(rep.verdict);
    }
}

TEST(Equilibrium, ParitySolutionsAreUniform)
{
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const Arena a = random_arena(7, {0, 1, 2, 3}, seed + 40);
        for (Parity conv : {Parity::Even, Parity::Odd}) {
            const ParitySolution sol = solve(game_of(a, conv));
            const auto rep =
                check_equilibrium(a, *parity_payoff(conv), sol.max_strategy, sol.min_strategy, all_nodes(a));
            EXPECT_TRUE(rep.verdict) << "seed " << seed;
            EXPECT_TRUE(rep.exact);
        }
    }
}

TEST(Equilibrium, Figure2LoopsAreNotAnEquilibrium)
{
    const Arena a = build_fig2();
    const auto rep = check_equilibrium(a, *psi_payoff(), kMaxLoop, kMinLoop, {fig2::kSquare});
    ASSERT_FALSE(rep.verdict);
    ASSERT_TRUE(rep.counterexample.has_value());
    EXPECT_EQ(rep.counterexample->deviator, Player::Max);
    EXPECT_EQ(rep.counterexample->improved, Value(1));
    EXPECT_EQ(rep.counterexample->deviation, fig2::kToTriangle);
    EXPECT_EQ(rep.starts[0].value, Value(0));
}

TEST(Equilibrium, RejectsSwappedSides)
{
    const Arena a = build_fig2();
    EXPECT_THROW(check_equilibrium(a, *psi_payoff(), kMinLoop, kMaxLoop, {0}), std::invalid_argument);
}

TEST(Equilibrium, CartesianProductLaw)
{
    std::mt19937_64 rng(8);
    int mixed = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const Arena a = random_arena(4, {0, 1, 2}, rng(), std::nullopt, {2, 0});
        const PayoffPtr parity = parity_payoff(Parity::Even);
        std::vector<NodeId> starts;
        for (NodeId v = 0; v < a.num_nodes(); ++v)
            if (rng() % 2) starts.push_back(v);
        if (starts.empty()) starts.push_back(0);
        std::vector<std::pair<PositionalStrategy, PositionalStrategy>> eqs;
        oracle::for_each_positional(a, Player::Max, [&](const PositionalStrategy& s) {
            oracle::for_each_positional(a, Player::Min, [&](const PositionalStrategy& t) {
                if (check_equilibrium(a, *parity, s, t, starts).verdict) eqs.emplace_back(s, t);
            });
        });
        for (const auto& [s1, t1] : eqs)
            for (const auto& [s2, t2] : eqs) {
                ASSERT_TRUE(check_equilibrium(a, *parity, s1, t2, starts).verdict);
                ++mixed;
            }
    }
    EXPECT_GT(mixed, 0);
}
