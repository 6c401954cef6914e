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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arena.hpp"

namespace chroma {

using StateId = std::int32_t;

/**
 * Deterministic automaton over the color alphabet, used as strategy memory.
 * delta[m][i] is the successor of state m on alphabet()[i].
 */
class MemorySkeleton {
public:
    MemorySkeleton() = default;

    MemorySkeleton(std::vector<Color> alphabet, StateId init, std::vector<std::vector<StateId>> delta,
                   std::vector<std::string> labels = {})
        : alphabet_(std::move(alphabet)), init_(init), delta_(std::move(delta)), labels_(std::move(labels))
    {
        const auto n = static_cast<StateId>(delta_.size());
        if (n == 0) throw std::invalid_argument("MemorySkeleton: no states");
        if (init_ < 0 || init_ >= n) throw std::invalid_argument("MemorySkeleton: init out of range");
        for (const auto& row : delta_) {
            if (row.size() != alphabet_.size())
                throw std::invalid_argument("MemorySkeleton: delta is not total");
            for (StateId t : row)
                if (t < 0 || t >= n) throw std::invalid_argument("MemorySkeleton: successor out of range");
        }
        if (!labels_.empty() && labels_.size() != delta_.size())
            throw std::invalid_argument("MemorySkeleton: label count mismatch");
    }

    StateId size() const { return static_cast<StateId>(delta_.size()); }
    StateId init() const { return init_; }
    const std::vector<Color>& alphabet() const { return alphabet_; }
    const std::vector<std::vector<StateId>>& table() const { return delta_; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::string label(StateId m) const { return labels_.empty() ? std::to_string(m) : labels_[m]; }

    std::optional<std::size_t> color_index(Color c) const
    {
        for (std::size_t i = 0; i < alphabet_.size(); ++i)
            if (alphabet_[i] == c) return i;
        return std::nullopt;
    }

    StateId step(StateId m, Color c) const
    {
        const auto i = color_index(c);
        if (!i) throw Error(ErrorKind::UnknownColor, "color " + std::to_string(c) + " not in skeleton alphabet");
        return delta_[m][*i];
    }

    StateId run_from(StateId m, std::span<const Color> word) const
    {
        for (Color c : word) m = step(m, c);
        return m;
    }

    StateId run(std::span<const Color> word) const { return run_from(init_, word); }

    bool covers(const std::vector<Color>& colors) const
    {
        for (Color c : colors)
            if (!color_index(c)) return false;
        return true;
    }

    friend bool operator==(const MemorySkeleton& a, const MemorySkeleton& b)
    {
        return a.alphabet_ == b.alphabet_ && a.init_ == b.init_ && a.delta_ == b.delta_;
    }

private:
    std::vector<Color> alphabet_;
    StateId init_ = 0;
    std::vector<std::vector<StateId>> delta_;
    std::vector<std::string> labels_;
};

inline MemorySkeleton trivial_skeleton(const std::vector<Color>& alphabet)
{
    return MemorySkeleton(alphabet, 0, {std::vector<StateId>(alphabet.size(), 0)});
}

/// Move per node of the owner; kNoEdge elsewhere.
struct PositionalStrategy {
    Player owner = Player::Max;
    std::vector<EdgeId> moves;

    EdgeId operator()(NodeId v) const { return moves[v]; }

    friend bool operator==(const PositionalStrategy&, const PositionalStrategy&) = default;
};

/// Move per (memory state, owner node).
struct ChromaticStrategy {
    Player owner = Player::Max;
    MemorySkeleton skeleton;
    std::vector<std::vector<EdgeId>> moves; // [state][node]

    EdgeId operator()(StateId m, NodeId v) const { return moves[m][v]; }

    friend bool operator==(const ChromaticStrategy&, const ChromaticStrategy&) = default;
};

inline void check_strategy(const Arena& a, const PositionalStrategy& s)
{
    if (static_cast<NodeId>(s.moves.size()) != a.num_nodes())
        throw std::invalid_argument("positional strategy: wrong node count");
    for (NodeId v = 0; v < a.num_nodes(); ++v) {
        if (a.owner(v) != s.owner) continue;
        const EdgeId e = s.moves[v];
        if (e < 0 || e >= a.num_edges() || a.source(e) != v)
            throw std::invalid_argument("positional strategy: bad move at node " + std::to_string(v));
    }
}

inline void check_strategy(const Arena& a, const ChromaticStrategy& s)
{
    if (s.moves.size() != static_cast<std::size_t>(s.skeleton.size()))
        throw std::invalid_argument("chromatic strategy: wrong state count");
    for (StateId m = 0; m < s.skeleton.size(); ++m) {
        if (static_cast<NodeId>(s.moves[m].size()) != a.num_nodes())
            throw std::invalid_argument("chromatic strategy: wrong node count");
        for (NodeId v = 0; v < a.num_nodes(); ++v) {
            if (a.owner(v) != s.owner) continue;
            const EdgeId e = s.moves[m][v];
            if (e < 0 || e >= a.num_edges() || a.source(e) != v)
                throw std::invalid_argument("chromatic strategy: bad move at state " + std::to_string(m) +
                                            ", node " + std::to_string(v));
        }
    }
}

/// Lowest-id out-edge at every node of `owner`.
inline PositionalStrategy lowest_edge_strategy(const Arena& a, Player owner)
{
    PositionalStrategy s{owner, std::vector<EdgeId>(a.num_nodes(), kNoEdge)};
    for (NodeId v = 0; v < a.num_nodes(); ++v)
        if (a.owner(v) == owner && a.out_degree(v) > 0) s.moves[v] = a.out_edges(v).front();
    return s;
}

inline ChromaticStrategy as_chromatic(const MemorySkeleton& skeleton, const PositionalStrategy& s)
{
    return ChromaticStrategy{s.owner, skeleton, std::vector<std::vector<EdgeId>>(skeleton.size(), s.moves)};
}

inline ChromaticStrategy as_chromatic(const Arena& a, const PositionalStrategy& s)
{
    return as_chromatic(trivial_skeleton(a.alphabet()), s);
}

/// Deletes every edge leaving an owner node that the strategy does not use.
inline SubArena restrict_mapped(const Arena& a, const PositionalStrategy& s)
{
    return sub_arena(a, [&](EdgeId e) {
        const NodeId v = a.source(e);
        return a.owner(v) != s.owner || s.moves[v] == e;
    });
}

inline Arena restrict(const Arena& a, const PositionalStrategy& s) { return restrict_mapped(a, s).arena; }

/// Threshold predicates handed to a counter strategy: for each threshold
/// theta, whether counter >= theta and whether counter > theta.
struct ThresholdView {
    std::vector<bool> at_least;
    std::vector<bool> above;
};

inline ThresholdView threshold_view(const std::vector<std::int64_t>& thresholds, std::int64_t counter)
{
    ThresholdView view;
    for (auto t : thresholds) {
        view.at_least.push_back(counter >= t);
        view.above.push_back(counter > t);
    }
    return view;
}

/**
 * Strategy with a finite mode set plus read access to the running counter
 * (the sum of edge weights so far) through threshold predicates only.
 * Modes are updated after every edge of the play, whoever chose it.
 */
struct GeneralCounterStrategy {
    Player owner = Player::Max;
    int num_modes = 1;
    int initial_mode = 0;
    std::vector<std::int64_t> thresholds;
    std::function<int(int mode, EdgeId e)> next_mode;
    std::function<EdgeId(int mode, const ThresholdView& view, NodeId v)> move;
};

inline GeneralCounterStrategy to_counter(const Arena& a, const ChromaticStrategy& s)
{
    GeneralCounterStrategy g;
    g.owner = s.owner;
    g.num_modes = s.skeleton.size();
    g.initial_mode = s.skeleton.init();
    g.next_mode = [&a, skel = s.skeleton](int mode, EdgeId e) { return skel.step(mode, a.color(e)); };
    g.move = [moves = s.moves](int mode, const ThresholdView&, NodeId v) { return moves[mode][v]; };
    return g;
}

inline GeneralCounterStrategy to_counter(const PositionalStrategy& s)
{
    GeneralCounterStrategy g;
    g.owner = s.owner;
    g.next_mode = [](int, EdgeId) { return 0; };
    g.move = [moves = s.moves](int, const ThresholdView&, NodeId v) { return moves[v]; };
    return g;
}

/**
 * Lazily enumerates every skeleton with at most max_states states over the
 * alphabet, one representative per renaming class.  A representative has
 * all states reachable from state 0 and numbers states in the order a
 * breadth-first search discovers them (colors scanned in alphabet order).
 */
class SkeletonEnumerator {
public:
    SkeletonEnumerator(std::vector<Color> alphabet, int max_states)
        : alphabet_(std::move(alphabet)), max_states_(max_states)
    {
        if (max_states < 1) throw std::invalid_argument("enumerate_skeletons: max_states must be >= 1");
        reset();
    }

    void reset()
    {
        states_ = 1;
        digits_.assign(alphabet_.size(), 0);
        done_ = alphabet_.empty();
        fresh_ = true;
    }

    std::optional<MemorySkeleton> next()
    {
        while (!done_) {
            if (!fresh_ && !advance()) continue;
            fresh_ = false;
            if (canonical()) return build();
        }
        return std::nullopt;
    }

private:
    // Odometer over all tables with states_ states; moves on to states_+1 on wrap.
    bool advance()
    {
        for (auto& d : digits_) {
            if (++d < states_) return true;
            d = 0;
        }
        if (++states_ > max_states_) {
            done_ = true;
            return false;
        }
        digits_.assign(static_cast<std::size_t>(states_) * alphabet_.size(), 0);
        fresh_ = true;
        return false;
    }

    bool canonical() const
    {
        const std::size_t k = alphabet_.size();
        std::vector<StateId> order{0};
        std::vector<char> seen(states_, 0);
        seen[0] = 1;
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (std::size_t c = 0; c < k; ++c) {
                const StateId t = digits_[order[i] * k + c];
                if (seen[t]) continue;
                if (t != static_cast<StateId>(order.size())) return false;
                seen[t] = 1;
                order.push_back(t);
            }
        }
        return static_cast<int>(order.size()) == states_;
    }

    MemorySkeleton build() const
    {
        const std::size_t k = alphabet_.size();
        std::vector<std::vector<StateId>> delta(states_, std::vector<StateId>(k));
        for (int m = 0; m < states_; ++m)
            for (std::size_t c = 0; c < k; ++c) delta[m][c] = digits_[m * k + c];
        return MemorySkeleton(alphabet_, 0, std::move(delta));
    }

    std::vector<Color> alphabet_;
    int max_states_;
    int states_ = 1;
    std::vector<StateId> digits_;
    bool done_ = false;
    bool fresh_ = true;
};

inline std::vector<MemorySkeleton> enumerate_skeletons(const std::vector<Color>& alphabet, int max_states)
{
    std::vector<MemorySkeleton> out;
    SkeletonEnumerator it(alphabet, max_states);
    while (auto s = it.next()) out.push_back(std::move(*s));
    return out;
}

} // namespace chroma
