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

#include "chroma.hpp"

using namespace chroma;

namespace {

Arena single_loop(Player owner = Player::Max)
{
    return Arena({owner}, {{0, 0, 0}}, {0});
}

bool has_issue(const ValidationReport& r, ErrorKind kind, std::int32_t id)
{
    for (const auto& i : r.issues)
        if (i.kind == kind && i.id == id) return true;
    return false;
}

} // namespace

TEST(Validate, AcceptsSelfLoop)
{
    EXPECT_TRUE(validate(single_loop()).ok());
}

TEST(Validate, ReportsDeadEnd)
{
    const Arena a({Player::Max}, {}, {0});
    const auto r = validate(a);
    ASSERT_FALSE(r.ok());
    EXPECT_TRUE(has_issue(r, ErrorKind::DeadEndNode, 0));
}

TEST(Validate, ReportsDanglingEdgeAndUnknownColor)
{
    const Arena a({Player::Max, Player::Min}, {{0, 1, 0}, {1, 0, 0}, {1, 5, 0}, {0, 0, 7}}, {0});
    const auto r = validate(a);
    EXPECT_TRUE(has_issue(r, ErrorKind::DanglingEdge, 2));
    EXPECT_TRUE(has_issue(r, ErrorKind::UnknownColor, 3));
    EXPECT_EQ(r.issues.size(), 2u);
    EXPECT_THROW(require_valid(a), Error);
}

TEST(Validate, Figure2IsValid)
{
    EXPECT_TRUE(validate(build_fig2()).ok());
}

TEST(OnePlayer, Classification)
{
    const Arena two_loops({Player::Max}, {{0, 0, 0}, {0, 0, 1}}, {0, 1});
    EXPECT_EQ(is_one_player(two_loops), OnePlayerKind::MinHasNoChoice);
    EXPECT_EQ(chooser(two_loops), Player::Max);

    EXPECT_EQ(is_one_player(build_fig2()), OnePlayerKind::TwoPlayer);
    EXPECT_FALSE(chooser(build_fig2()).has_value());

    const Arena min_only({Player::Min, Player::Max}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, {0, 1});
    EXPECT_EQ(is_one_player(min_only), OnePlayerKind::MaxHasNoChoice);

    // No choices at all: reported as the Min side having none.
    EXPECT_EQ(is_one_player(single_loop(Player::Min)), OnePlayerKind::MinHasNoChoice);
}

TEST(OnePlayer, CountingArenaHasOnlyMaxChoices)
{
    EXPECT_EQ(is_one_player(build_Am(3, 5).arena), OnePlayerKind::MinHasNoChoice);
}

TEST(ColorWord, EmptyPath)
{
    EXPECT_TRUE(color_word(single_loop(), Path{0, {}}).empty());
}

TEST(ColorWord, LoopLasso)
{
    const LassoWord w = color_word(single_loop(), Lasso{{}, {0}});
    EXPECT_TRUE(w.prefix.empty());
    EXPECT_EQ(w.cycle, std::vector<Color>{0});
}

TEST(ColorWord, ThreeEdgePath)
{
    const Arena a({Player::Max, Player::Max, Player::Max},
                  {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {0, 1, 2});
    EXPECT_EQ(color_word(a, Path{0, {0, 1, 2}}), (std::vector<Color>{2, 0, 1}));
}

TEST(ColorWord, RejectsBrokenPath)
{
    const Arena a({Player::Max, Player::Max}, {{0, 1, 0}, {1, 0, 1}}, {0, 1});
    try {
        color_word(a, Path{0, {1}});
        FAIL() << "expected NotAPath";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotAPath);
    }
    EXPECT_THROW(color_word(a, Lasso{{0}, {0}}), Error);
}

TEST(Lasso, NormalizeShortensPrefixAndCycle)
{
    const Arena a({Player::Max, Player::Max}, {{0, 1, 0}, {1, 0, 1}}, {0, 1});
    const Lasso l{{0, 1}, {0, 1, 0, 1}};
    const Lasso n = normalize(l);
    EXPECT_TRUE(n.prefix.empty());
    EXPECT_EQ(n.cycle, (std::vector<EdgeId>{0, 1}));
    EXPECT_EQ(color_word(a, n).cycle, (std::vector<Color>{0, 1}));
}

TEST(RandomArena, SingleNode)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Arena a = random_arena(1, {0, 1}, seed);
        ASSERT_EQ(a.num_nodes(), 1);
        EXPECT_GE(a.num_edges(), 1);
        for (const Edge& e : a.edges()) EXPECT_EQ(e.target, 0);
    }
}

TEST(RandomArena, Deterministic)
{
    EXPECT_EQ(random_arena(8, {-1, 1}, 99), random_arena(8, {-1, 1}, 99));
}

TEST(RandomArena, NoChoiceSide)
{
    const Arena a = random_arena(5, {-1, 1}, 7, Player::Min);
    EXPECT_EQ(is_one_player(a), OnePlayerKind::MinHasNoChoice);
    for (NodeId v = 0; v < a.num_nodes(); ++v)
        if (a.owner(v) == Player::Min) EXPECT_EQ(a.out_degree(v), 1u);
}

TEST(RandomArena, AlwaysValid)
{
    for (int n = 1; n <= 32; ++n) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Arena a = random_arena(n, {0, 1, 2}, seed * 131 + n);
            EXPECT_TRUE(validate(a).ok()) << "n_max=" << n << " seed=" << seed;
            EXPECT_LE(a.num_nodes(), n);
            const Arena b = random_arena(n, {0, 1, 2}, seed, Player::Max);
            EXPECT_TRUE(has_no_choice(b, Player::Max));
        }
    }
}

TEST(SubArena, KeepsSelectedEdges)
{
    const Arena a = build_fig2();
    const SubArena s = sub_arena(a, [](EdgeId e) { return e != 1; });
    EXPECT_EQ(s.arena.num_nodes(), a.num_nodes());
    EXPECT_EQ(s.arena.num_edges(), a.num_edges() - 1);
    for (EdgeId e = 0; e < s.arena.num_edges(); ++e) EXPECT_EQ(s.arena.edge(e), a.edge(s.edge_origin[e]));
}
