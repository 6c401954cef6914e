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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <variant>
#include <vector>

#include "arena.hpp"
#include "memory.hpp"
#include "payoffs.hpp"
#include "product.hpp"

namespace chroma {

/// A finite-memory strategy: positional or chromatic.
using Strategy = std::variant<PositionalStrategy, ChromaticStrategy>;

inline Player owner_of(const Strategy& s)
{
    return std::visit([](const auto& x) { return x.owner; }, s);
}

inline ChromaticStrategy to_chromatic(const Arena& a, const Strategy& s)
{
    if (const auto* p = std::get_if<PositionalStrategy>(&s)) return as_chromatic(a, *p);
    return std::get<ChromaticStrategy>(s);
}

inline void check_strategy(const Arena& a, const Strategy& s)
{
    std::visit([&](const auto& x) { check_strategy(a, x); }, s);
}

namespace detail {

// Uniform stepping interface over positional and chromatic strategies.
struct Stepper {
    const Arena* arena = nullptr;
    const PositionalStrategy* pos = nullptr;
    const ChromaticStrategy* chrom = nullptr;

    explicit Stepper(const Arena& a, const Strategy& s) : arena(&a)
    {
        if (const auto* p = std::get_if<PositionalStrategy>(&s)) pos = p;
        else chrom = &std::get<ChromaticStrategy>(s);
    }

    Player owner() const { return pos ? pos->owner : chrom->owner; }
    StateId init() const { return pos ? 0 : chrom->skeleton.init(); }
    StateId size() const { return pos ? 1 : chrom->skeleton.size(); }
    EdgeId move(StateId m, NodeId v) const { return pos ? pos->moves[v] : chrom->moves[m][v]; }
    StateId next(StateId m, EdgeId e) const { return pos ? 0 : chrom->skeleton.step(m, arena->color(e)); }
};

} // namespace detail

/**
 * The unique play from v where sigma and tau move for their owners,
 * cut at the first repeated (node, sigma state, tau state).
 */
inline Lasso play(const Arena& a, NodeId v, const Strategy& sigma, const Strategy& tau)
{
    if (owner_of(sigma) == owner_of(tau)) throw std::invalid_argument("play: strategies of the same player");
    const detail::Stepper s1(a, sigma), s2(a, tau);
    std::map<std::tuple<NodeId, StateId, StateId>, std::size_t> seen;
    std::vector<EdgeId> edges;
    StateId m1 = s1.init(), m2 = s2.init();
    for (;;) {
        const auto key = std::make_tuple(v, m1, m2);
        if (auto it = seen.find(key); it != seen.end()) {
            Lasso l;
            l.prefix.assign(edges.begin(), edges.begin() + it->second);
            l.cycle.assign(edges.begin() + it->second, edges.end());
            return l;
        }
        seen.emplace(key, edges.size());
        const EdgeId e = a.owner(v) == s1.owner() ? s1.move(m1, v) : s2.move(m2, v);
        if (e < 0 || e >= a.num_edges() || a.source(e) != v)
            throw std::invalid_argument("play: strategy move is not an out-edge of node " + std::to_string(v));
        edges.push_back(e);
        m1 = s1.next(m1, e);
        m2 = s2.next(m2, e);
        v = a.target(e);
    }
}

// ---------------------------------------------------------------------------
// Plays of strategies that watch the running sum.

using Weights = std::map<Color, std::int64_t>;

/// Weighting that reads every color as its own integer value.
inline Weights identity_weights(const std::vector<Color>& alphabet)
{
    Weights w;
    for (Color c : alphabet) w[c] = c;
    return w;
}

using AnyStrategy = std::variant<PositionalStrategy, ChromaticStrategy, GeneralCounterStrategy>;

/// Classification of a counter play under the running-sum payoff.
struct CounterOutcome {
    Value value;
    std::string kind;              // "periodic", "diverges-up" or "diverges-down"
    std::vector<EdgeId> cycle;     // repeating edge block of the certificate
    std::int64_t drift = 0;        // counter change per repetition
    std::int64_t cycle_counter = 0;// counter at the start of the block
    std::int64_t steps = 0;        // simulated edges
    std::int64_t skipped = 0;      // edges jumped over by fast-forwarding
};

/**
 * Simulates the play of two strategies from v over configurations
 * (node, mode1, mode2, counter).  Below every threshold and above every
 * threshold the strategies cannot tell counter values apart, so a
 * repeated (node, mode1, mode2) there repeats forever with the same drift:
 * a drift away from the thresholds decides the play, a drift towards them
 * is fast-forwarded.  Between the thresholds the configuration space is
 * finite and exact repetition closes the play.
 */
inline CounterOutcome play_counter(const Arena& a, NodeId v, const AnyStrategy& first, const AnyStrategy& second,
                                   const Weights& weights, std::int64_t max_steps = 50'000'000)
{
    const auto as_counter = [&](const AnyStrategy& s) {
        if (const auto* p = std::get_if<PositionalStrategy>(&s)) return to_counter(*p);
        if (const auto* c = std::get_if<ChromaticStrategy>(&s)) return to_counter(a, *c);
        return std::get<GeneralCounterStrategy>(s);
    };
    const GeneralCounterStrategy s1 = as_counter(first), s2 = as_counter(second);
    if (s1.owner == s2.owner) throw std::invalid_argument("play_counter: strategies of the same player");

    std::vector<std::int64_t> w(a.num_edges());
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
        const auto it = weights.find(a.color(e));
        if (it == weights.end())
            throw Error(ErrorKind::NonNumericAlphabet, "no weight for color " + std::to_string(a.color(e)));
        w[e] = it->second;
    }

    std::vector<std::int64_t> theta = s1.thresholds;
    theta.insert(theta.end(), s2.thresholds.begin(), s2.thresholds.end());
    const bool unbounded = theta.empty();
    const std::int64_t lo = unbounded ? 0 : *std::min_element(theta.begin(), theta.end());
    const std::int64_t hi = unbounded ? 0 : *std::max_element(theta.begin(), theta.end());
    // 0: below all thresholds, 2: above all, 1: in between, 3: no thresholds at all
    const auto region = [&](std::int64_t c) { return unbounded ? 3 : c < lo ? 0 : c > hi ? 2 : 1; };

    struct Config {
        NodeId node;
        int m1, m2;
        std::int64_t counter;
        bool operator==(const Config&) const = default;
    };
    struct ConfigHash {
        std::size_t operator()(const Config& c) const
        {
            std::size_t h = std::hash<std::int64_t>()(c.counter);
            for (std::int64_t x : {std::int64_t(c.node), std::int64_t(c.m1), std::int64_t(c.m2)})
                h = h * 1000003u ^ std::hash<std::int64_t>()(x);
            return h;
        }
    };

    CounterOutcome out;
    std::unordered_map<Config, std::size_t, ConfigHash> seen;
    std::vector<Config> trace;  // configurations since the last fast-forward
    std::vector<EdgeId> edges;  // edges taken from each trace entry
    std::map<std::tuple<NodeId, int, int>, std::size_t> stay; // within the current uniform stretch
    int stay_region = -1;

    Config cur{v, s1.initial_mode, s2.initial_mode, 0};
    for (;;) {
        if (out.steps > max_steps) throw std::logic_error("play_counter: step budget exhausted");
        if (auto it = seen.find(cur); it != seen.end()) {
            const std::size_t i = it->second;
            out.kind = "periodic";
            out.cycle.assign(edges.begin() + i, edges.end());
            out.cycle_counter = cur.counter;
            bool zero = false;
            for (std::size_t j = i + 1; j < trace.size(); ++j) zero = zero || trace[j].counter == 0;
            zero = zero || cur.counter == 0;
            out.value = zero ? 1 : 0;
            return out;
        }
        const int r = region(cur.counter);
        if (r != stay_region) {
            stay.clear();
            stay_region = r;
        }
        if (r != 1) {
            const auto key = std::make_tuple(cur.node, cur.m1, cur.m2);
            if (auto it = stay.find(key); it != stay.end()) {
                const std::size_t i = it->second;
                const std::int64_t d = cur.counter - trace[i].counter;
                if (d != 0) {
                    const bool up = d > 0;
                    if ((up && r != 0) || (!up && r != 2)) {
                        out.kind = up ? "diverges-up" : "diverges-down";
                        out.value = up ? 1 : 0;
                        out.cycle.assign(edges.begin() + i, edges.end());
                        out.drift = d;
                        out.cycle_counter = trace[i].counter;
                        return out;
                    }
                    // Drifting back towards the thresholds: skip whole repetitions
                    // that stay strictly on this side.
                    std::int64_t extreme = 0;
                    for (std::size_t j = i; j < trace.size(); ++j) {
                        const std::int64_t off = trace[j].counter - trace[i].counter;
                        extreme = up ? std::max(extreme, off) : std::min(extreme, off);
                    }
                    std::int64_t reps = 0;
                    if (up) {
                        const std::int64_t room = lo - 1 - (cur.counter + extreme);
                        reps = room > 0 ? room / d : 0;
                    } else {
                        const std::int64_t room = (cur.counter + extreme) - (hi + 1);
                        reps = room > 0 ? room / -d : 0;
                    }
                    if (reps > 0) {
                        const std::int64_t period = static_cast<std::int64_t>(trace.size() - i);
                        cur.counter += reps * d;
                        out.skipped += reps * period;
                        seen.clear();
                        trace.clear();
                        edges.clear();
                        stay.clear();
                        continue;
                    }
                }
            }
            stay.emplace(key, trace.size());
        }

        seen.emplace(cur, trace.size());
        trace.push_back(cur);
        const GeneralCounterStrategy& mover = a.owner(cur.node) == s1.owner ? s1 : s2;
        const int mode = a.owner(cur.node) == s1.owner ? cur.m1 : cur.m2;
        const EdgeId e = mover.move(mode, threshold_view(mover.thresholds, cur.counter), cur.node);
        if (e < 0 || e >= a.num_edges() || a.source(e) != cur.node)
            throw std::invalid_argument("play_counter: illegal move at node " + std::to_string(cur.node));
        edges.push_back(e);
        cur = Config{a.target(e), s1.next_mode(cur.m1, e), s2.next_mode(cur.m2, e), cur.counter + w[e]};
        ++out.steps;
    }
}

// ---------------------------------------------------------------------------
// Optimal responses and equilibria.

/// Opponent's optimum against a fixed strategy, at every base node.
struct ResponseTable {
    std::vector<Value> values;    // indexed by base node
    bool exact = true;
    ChromaticRestriction restriction;
    OnePlayerResult oracle;
};

inline ResponseTable best_responses(const Arena& a, const Payoff& payoff, const Strategy& fixed)
{
    check_strategy(a, fixed);
    ResponseTable t{{}, true, restrict_by_chromatic(a, to_chromatic(a, fixed)), {}};
    t.oracle = payoff.one_player_opt(t.restriction.arena, opponent(owner_of(fixed)));
    t.exact = t.oracle.exact;
    const StateId init = std::visit(
        [](const auto& s) -> StateId {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ChromaticStrategy>) return s.skeleton.init();
            else return 0;
        },
        fixed);
    for (NodeId v = 0; v < a.num_nodes(); ++v) t.values.push_back(t.oracle.values[t.restriction.node(init, v)]);
    return t;
}

inline Value best_response_value(const Arena& a, const Payoff& payoff, const Strategy& fixed, NodeId v)
{
    return best_responses(a, payoff, fixed).values.at(v);
}

struct StartReport {
    NodeId start = 0;
    Lasso play;
    Value value;
    Value max_best;  // best Max can get against tau
    Value min_best;  // best Min can get against sigma
};

struct Counterexample {
    NodeId start = 0;
    Player deviator = Player::Max;
    Value improved;          // value the deviator secures instead
    EdgeId deviation = kNoEdge; // first edge where its optimal response leaves the play
    std::optional<Lasso> response_play;
};

struct EquilibriumReport {
    bool verdict = true;
    bool exact = true;  // false when an inexact one-player oracle was used
    std::vector<StartReport> starts;
    std::optional<Counterexample> counterexample;
};

namespace detail {

// Base-arena play of the opponent's optimal response against `fixed`.
inline std::optional<Lasso> response_play(const Arena& a, const ResponseTable& t, const Strategy& fixed, NodeId v)
{
    if (!t.oracle.witness) return std::nullopt;
    const Arena& r = t.restriction.arena;
    const StateId init = to_chromatic(a, fixed).skeleton.init();
    const Strategy other = lowest_edge_strategy(r, owner_of(fixed));
    const Lasso l = play(r, t.restriction.node(init, v), Strategy(*t.oracle.witness), other);
    Lasso out;
    for (EdgeId e : l.prefix) out.prefix.push_back(t.restriction.edge_origin[e].second);
    for (EdgeId e : l.cycle) out.cycle.push_back(t.restriction.edge_origin[e].second);
    return normalize(std::move(out));
}

inline EdgeId first_difference(const Lasso& x, const Lasso& y)
{
    const auto flat = [](const Lasso& l, std::size_t len) {
        std::vector<EdgeId> out = l.prefix;
        while (out.size() < len) out.insert(out.end(), l.cycle.begin(), l.cycle.end());
        return out;
    };
    const std::size_t len = 2 * (x.prefix.size() + x.cycle.size() + y.prefix.size() + y.cycle.size());
    const auto fx = flat(x, len), fy = flat(y, len);
    for (std::size_t i = 0; i < len; ++i)
        if (fx[i] != fy[i]) return fy[i];
    return kNoEdge;
}

} // namespace detail

/**
 * Checks that sigma and tau are optimal responses to each other from every
 * start node: the value of their play equals both the best Max can do
 * against tau and the best Min can do against sigma.
 */
inline EquilibriumReport check_equilibrium(const Arena& a, const Payoff& payoff, const Strategy& sigma,
                                           const Strategy& tau, const std::vector<NodeId>& starts)
{
    if (owner_of(sigma) != Player::Max || owner_of(tau) != Player::Min)
        throw std::invalid_argument("check_equilibrium: expects a Max and a Min strategy");
    const ResponseTable vs_tau = best_responses(a, payoff, tau);
    const ResponseTable vs_sigma = best_responses(a, payoff, sigma);

    EquilibriumReport rep;
    rep.exact = vs_tau.exact && vs_sigma.exact;
    std::vector<NodeId> order = starts;
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());
    for (NodeId v : order) {
        StartReport s{v, play(a, v, sigma, tau), 0, vs_tau.values.at(v), vs_sigma.values.at(v)};
        s.value = payoff.evaluate(a, s.play);
        const bool max_gains = s.max_best != s.value;
        const bool min_gains = s.min_best != s.value;
        if ((max_gains || min_gains) && !rep.counterexample) {
            Counterexample c;
            c.start = v;
            c.deviator = max_gains ? Player::Max : Player::Min;
            c.improved = max_gains ? s.max_best : s.min_best;
            c.response_play = max_gains ? detail::response_play(a, vs_tau, tau, v)
                                        : detail::response_play(a, vs_sigma, sigma, v);
            if (c.response_play) c.deviation = detail::first_difference(s.play, *c.response_play);
            rep.counterexample = c;
        }
        rep.verdict = rep.verdict && !max_gains && !min_gains;
        rep.starts.push_back(std::move(s));
    }
    return rep;
}

inline std::vector<NodeId> all_nodes(const Arena& a)
{
    std::vector<NodeId> out(a.num_nodes());
    for (NodeId v = 0; v < a.num_nodes(); ++v) out[v] = v;
    return out;
}

} // namespace chroma
