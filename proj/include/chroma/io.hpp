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

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena.hpp"
#include "equilibrium.hpp"
#include "lifting.hpp"
#include "memory.hpp"
#include "parity.hpp"
#include "payoffs.hpp"
#include "probes.hpp"

namespace chroma::io {

using json = nlohmann::json;

inline Error format_error(const std::string& what) { return Error(ErrorKind::Format, what); }

inline std::string color_str(Color c) { return std::to_string(c); }

inline Color parse_color(const json& j)
{
    try {
        if (j.is_number_integer()) return j.get<Color>();
        std::size_t used = 0;
        const std::string s = j.get<std::string>();
        const int c = std::stoi(s, &used);
        if (used != s.size()) throw format_error("color '" + s + "' is not an integer");
        return c;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw format_error("bad color " + j.dump());
    }
}

inline Player parse_player(const json& j)
{
    const std::string s = j.get<std::string>();
    if (s == "Max") return Player::Max;
    if (s == "Min") return Player::Min;
    throw format_error("unknown owner '" + s + "'");
}

inline json alphabet_json(const std::vector<Color>& alphabet)
{
    json out = json::array();
    for (Color c : alphabet) out.push_back(color_str(c));
    return out;
}

inline std::vector<Color> parse_alphabet(const json& j)
{
    std::vector<Color> out;
    for (const auto& c : j) out.push_back(parse_color(c));
    return out;
}

// ---------------------------------------------------------------------------
// Arenas.

inline json to_json(const Arena& a, const std::vector<int>* priority = nullptr)
{
    json nodes = json::array(), edges = json::array();
    for (NodeId v = 0; v < a.num_nodes(); ++v) nodes.push_back({{"id", v}, {"owner", to_string(a.owner(v))}});
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
        json je{{"id", e}, {"src", a.source(e)}, {"dst", a.target(e)}, {"color", color_str(a.color(e))}};
        if (priority) je["priority"] = (*priority)[e];
        edges.push_back(std::move(je));
    }
    return {{"alphabet", alphabet_json(a.alphabet())}, {"nodes", nodes}, {"edges", edges}};
}

/// Parses an arena; nodes and edges must carry dense ids (any order).
inline Arena arena_from_json(const json& j, std::vector<int>* priority = nullptr)
{
    try {
        const auto& jn = j.at("nodes");
        const auto& je = j.at("edges");
        std::vector<Player> owners(jn.size());
        std::vector<char> seen_node(jn.size(), 0);
        for (const auto& n : jn) {
            const auto id = n.at("id").get<long long>();
            if (id < 0 || id >= static_cast<long long>(jn.size()) || seen_node[id])
                throw format_error("node ids must be dense and unique");
            seen_node[id] = 1;
            owners[id] = parse_player(n.at("owner"));
        }
        std::vector<Edge> edges(je.size());
        std::vector<char> seen_edge(je.size(), 0);
        if (priority) priority->assign(je.size(), -1);
        for (const auto& e : je) {
            const auto id = e.at("id").get<long long>();
            if (id < 0 || id >= static_cast<long long>(je.size()) || seen_edge[id])
                throw format_error("edge ids must be dense and unique");
            seen_edge[id] = 1;
            edges[id] = {e.at("src").get<NodeId>(), e.at("dst").get<NodeId>(), parse_color(e.at("color"))};
            if (priority) {
                if (!e.contains("priority")) throw format_error("edge " + std::to_string(id) + " has no priority");
                (*priority)[id] = e.at("priority").get<int>();
            }
        }
        Arena a(std::move(owners), std::move(edges), parse_alphabet(j.at("alphabet")));
        require_valid(a);
        return a;
    } catch (const json::exception& ex) {
        throw format_error(std::string("arena json: ") + ex.what());
    }
}

inline json to_json(const ValidationReport& r)
{
    json issues = json::array();
    for (const auto& i : r.issues) issues.push_back({{"kind", to_string(i.kind)}, {"id", i.id}});
    return {{"ok", r.ok()}, {"issues", issues}};
}

/// Graphviz rendering: Max nodes are boxes, Min nodes triangles.
inline std::string to_dot(const Arena& a, const std::string& name = "arena")
{
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (NodeId v = 0; v < a.num_nodes(); ++v)
        out << "  n" << v << " [label=\"" << v << "\", shape=" << (a.owner(v) == Player::Max ? "box" : "triangle")
            << "];\n";
    for (EdgeId e = 0; e < a.num_edges(); ++e)
        out << "  n" << a.source(e) << " -> n" << a.target(e) << " [label=\"" << a.color(e) << "\"];\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Skeletons and strategies.

inline json to_json(const MemorySkeleton& m)
{
    json states = json::array();
    for (StateId q = 0; q < m.size(); ++q) states.push_back({{"id", q}, {"label", m.label(q)}});
    return {{"alphabet", alphabet_json(m.alphabet())}, {"init", m.init()}, {"states", states}, {"delta", m.table()}};
}

inline MemorySkeleton skeleton_from_json(const json& j)
{
    try {
        std::vector<std::string> labels;
        if (j.contains("states"))
            for (const auto& s : j.at("states")) labels.push_back(s.value("label", std::to_string(labels.size())));
        auto delta = j.at("delta").get<std::vector<std::vector<StateId>>>();
        if (!labels.empty() && labels.size() != delta.size()) throw format_error("state list and delta disagree");
        return MemorySkeleton(parse_alphabet(j.at("alphabet")), j.at("init").get<StateId>(), std::move(delta),
                              std::move(labels));
    } catch (const json::exception& ex) {
        throw format_error(std::string("skeleton json: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw format_error(ex.what());
    }
}

inline json to_json(const PositionalStrategy& s)
{
    json moves = json::array();
    for (NodeId v = 0; v < static_cast<NodeId>(s.moves.size()); ++v)
        if (s.moves[v] != kNoEdge) moves.push_back({{"node", v}, {"edge", s.moves[v]}});
    return {{"kind", "positional"}, {"owner", to_string(s.owner)}, {"moves", moves}};
}

inline json to_json(const ChromaticStrategy& s)
{
    json moves = json::array();
    for (StateId q = 0; q < static_cast<StateId>(s.moves.size()); ++q)
        for (NodeId v = 0; v < static_cast<NodeId>(s.moves[q].size()); ++v)
            if (s.moves[q][v] != kNoEdge) moves.push_back({{"state", q}, {"node", v}, {"edge", s.moves[q][v]}});
    return {{"kind", "chromatic"}, {"owner", to_string(s.owner)}, {"skeleton", to_json(s.skeleton)}, {"moves", moves}};
}

inline json to_json(const Strategy& s)
{
    return std::visit([](const auto& x) { return to_json(x); }, s);
}

/// Parses a strategy for arena a and checks it against a.
inline Strategy strategy_from_json(const json& j, const Arena& a)
{
    try {
        const std::string kind = j.value("kind", "positional");
        const Player owner = parse_player(j.at("owner"));
        if (kind == "positional") {
            PositionalStrategy s{owner, std::vector<EdgeId>(a.num_nodes(), kNoEdge)};
            for (const auto& m : j.at("moves")) {
                const auto v = m.at("node").get<NodeId>();
                if (v < 0 || v >= a.num_nodes()) throw format_error("strategy node out of range");
                s.moves[v] = m.at("edge").get<EdgeId>();
            }
            check_strategy(a, s);
            return s;
        }
        if (kind == "chromatic") {
            MemorySkeleton m = skeleton_from_json(j.at("skeleton"));
            ChromaticStrategy s{owner, m, std::vector<std::vector<EdgeId>>(m.size(), std::vector<EdgeId>(a.num_nodes(), kNoEdge))};
            for (const auto& mv : j.at("moves")) {
                const auto q = mv.at("state").get<StateId>();
                const auto v = mv.at("node").get<NodeId>();
                if (q < 0 || q >= m.size() || v < 0 || v >= a.num_nodes()) throw format_error("strategy entry out of range");
                s.moves[q][v] = mv.at("edge").get<EdgeId>();
            }
            check_strategy(a, s);
            return s;
        }
        throw format_error("unknown strategy kind '" + kind + "'");
    } catch (const json::exception& ex) {
        throw format_error(std::string("strategy json: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw format_error(ex.what());
    }
}

// ---------------------------------------------------------------------------
// Payoff descriptors.

inline PayoffPtr payoff_from_json(const json& j)
{
    try {
        const std::string name = j.at("payoff").get<std::string>();
        if (name == "psi") return psi_payoff();
        if (name == "mean") return mean_payoff();
        if (name == "phi") return phi_payoff(j.at("T").get<IntSet>());
        if (name == "parity") {
            const std::string c = j.value("convention", "even");
            if (c != "even" && c != "odd") throw format_error("parity convention must be even or odd");
            return parity_payoff(c == "even" ? Parity::Even : Parity::Odd);
        }
        throw format_error("unknown payoff '" + name + "'");
    } catch (const json::exception& ex) {
        throw format_error(std::string("payoff json: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw format_error(ex.what());
    }
}

inline json payoff_json(const Payoff& p)
{
    json j{{"payoff", p.name()}};
    if (const auto* phi = dynamic_cast<const PhiPayoff*>(&p)) j["T"] = phi->T();
    if (const auto* par = dynamic_cast<const ParityPayoff*>(&p)) j["convention"] = to_string(par->convention());
    return j;
}

// ---------------------------------------------------------------------------
// Results.

inline json to_json(const Lasso& l) { return {{"prefix", l.prefix}, {"cycle", l.cycle}}; }

inline json to_json(const ParitySolution& s)
{
    json winner = json::array();
    for (Player p : s.winner) winner.push_back(to_string(p));
    return {{"winner", winner}, {"max_strategy", to_json(s.max_strategy)}, {"min_strategy", to_json(s.min_strategy)}};
}

inline json to_json(const EquilibriumReport& r)
{
    json starts = json::array();
    for (const auto& s : r.starts)
        starts.push_back({{"start", s.start}, {"play", to_json(s.play)}, {"value", s.value.str()},
                          {"max_best_response", s.max_best.str()}, {"min_best_response", s.min_best.str()}});
    json j{{"verdict", r.verdict ? "yes" : "no"}, {"exact", r.exact}, {"starts", starts}};
    if (r.counterexample) {
        const auto& c = *r.counterexample;
        json cj{{"start", c.start}, {"deviator", to_string(c.deviator)}, {"improved_value", c.improved.str()},
                {"deviation_edge", c.deviation}};
        if (c.response_play) cj["response_play"] = to_json(*c.response_play);
        j["counterexample"] = cj;
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

inline json to_json(const CounterOutcome& o)
{
    return {{"value", o.value.str()}, {"kind", o.kind},     {"cycle", o.cycle},     {"drift", o.drift},
            {"cycle_counter", o.cycle_counter}, {"steps", o.steps}, {"skipped", o.skipped}};
}

inline json to_json(const LiftResult& r)
{
    json splits = json::array();
    for (const auto& s : r.splits)
        splits.push_back({{"side", to_string(s.side)}, {"w", s.w}, {"part1", s.part1}, {"part2", s.part2},
                          {"sub1", s.sub1}, {"sub2", s.sub2}, {"chosen", s.chosen}, {"bridge_nodes", s.bridge_nodes}});
    json subs = json::array();
    for (const auto& s : r.subproblems)
        subs.push_back({{"edges", s.edges}, {"one_player", s.one_player}, {"max_split", s.max_split},
                        {"min_split", s.min_split}});
    return {{"sigma", to_json(r.sigma)},
            {"tau", to_json(r.tau)},
            {"trace", {{"subproblems", subs}, {"splits", splits}}},
            {"stats",
             {{"oracle_calls", r.stats.oracle_calls},
              {"oracle_cache_hits", r.stats.oracle_cache_hits},
              {"subproblems", r.stats.subproblems},
              {"largest_oracle_arena", r.stats.largest_oracle_arena}}},
            {"check", to_json(r.check)}};
}

inline json to_json(const SkeletonLiftResult& r)
{
    json j = to_json(r.positional);
    j["product_nodes"] = r.product_nodes;
    j["product_sigma"] = j["sigma"];
    j["product_tau"] = j["tau"];
    j["product_check"] = j["check"];
    j["sigma"] = to_json(r.sigma);
    j["tau"] = to_json(r.tau);
    j["check"] = to_json(r.check);
    return j;
}

} // namespace chroma::io
