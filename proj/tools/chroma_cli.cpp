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

// Command-line front end.  Every subcommand writes JSON to stdout and
// diagnostics to stderr.  Exit status: 0 on success or PASS, 2 on a
// negative verdict (FAIL / not an equilibrium), 1 on errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chroma.hpp"

using namespace chroma;
using chroma::io::json;

namespace {

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Format, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw Error(ErrorKind::Format, path + ": " + ex.what());
    }
}

std::vector<long long> parse_list(const std::string& text)
{
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw Error(ErrorKind::Format, "not an integer: '" + item + "'");
        }
    }
    return out;
}

struct PayoffArgs {
    std::string payoff = "parity";
    std::string T = "5";
    std::string convention = "even";

    PayoffPtr make() const
    {
        if (!payoff.empty() && payoff.front() == '{') return io::payoff_from_json(json::parse(payoff));
        json j{{"payoff", payoff}, {"convention", convention}};
        if (payoff == "phi") {
            const auto t = parse_list(T);
            j["T"] = IntSet(t.begin(), t.end());
        }
        return io::payoff_from_json(j);
    }

    void attach(CLI::App* app)
    {
        app->add_option("--payoff", payoff, "psi | phi | parity | mean, or a JSON descriptor")->capture_default_str();
        app->add_option("--T", T, "comma-separated set T for phi")->capture_default_str();
        app->add_option("--convention", convention, "parity: even or odd wins for Max")->capture_default_str();
    }
};

int emit(const json& j, int status = 0)
{
    std::cout << j.dump(2) << "\n";
    return status;
}

int emit_probe(const ProbeReport& r) { return emit(r.to_json(), r.verdict ? 0 : 2); }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"chroma: chromatic memory and lifting for games on graphs"};
    app.require_subcommand(1);
    int status = 0;

    // gen
    auto* gen = app.add_subcommand("gen", "random arena");
    int gen_nodes = 5, gen_degree = 3;
    std::string gen_alphabet = "0,1", gen_side;
    std::uint64_t gen_seed = 0;
    bool gen_dot = false;
    gen->add_option("--nodes", gen_nodes, "maximum node count")->capture_default_str();
    gen->add_option("--alphabet", gen_alphabet, "comma-separated colors")->capture_default_str();
    gen->add_option("--seed", gen_seed, "random seed")->required();
    gen->add_option("--no-choice", gen_side, "Max or Min: side with out-degree 1 everywhere");
    gen->add_option("--max-out-degree", gen_degree)->capture_default_str();
    gen->add_flag("--dot", gen_dot, "emit Graphviz instead of JSON");
    gen->callback([&] {
        std::vector<Color> alphabet;
        for (long long c : parse_list(gen_alphabet)) alphabet.push_back(static_cast<Color>(c));
        std::optional<Player> side;
        if (!gen_side.empty()) side = io::parse_player(gen_side);
        const Arena a = random_arena(gen_nodes, alphabet, gen_seed, side, {gen_degree, 0});
        if (gen_dot) std::cout << io::to_dot(a);
        else status = emit(io::to_json(a));
    });

    // solve-parity
    auto* sp = app.add_subcommand("solve-parity", "solve a parity game (priorities per edge, or colors)");
    std::string sp_arena, sp_conv = "even";
    sp->add_option("--arena", sp_arena)->required();
    sp->add_option("--convention", sp_conv, "even or odd wins for Max")->capture_default_str();
    sp->callback([&] {
        const json j = read_json(sp_arena);
        std::vector<int> prio;
        bool has_priority = !j.at("edges").empty() && j.at("edges").front().contains("priority");
        const Arena a = io::arena_from_json(j, has_priority ? &prio : nullptr);
        if (!has_priority)
            for (EdgeId e = 0; e < a.num_edges(); ++e) prio.push_back(a.color(e));
        status = emit(io::to_json(solve({a, prio, sp_conv == "odd" ? Parity::Odd : Parity::Even})));
    });

    // lift
    auto* lift = app.add_subcommand("lift", "equilibrium from the one-player oracle by lifting");
    std::string lift_arena, lift_skeleton;
    PayoffArgs lift_payoff;
    lift->add_option("--arena", lift_arena)->required();
    lift->add_option("--skeleton", lift_skeleton, "memory skeleton JSON (positional lifting if omitted)");
    lift_payoff.attach(lift);
    lift->callback([&] {
        const Arena a = io::arena_from_json(read_json(lift_arena));
        const PayoffPtr p = lift_payoff.make();
        try {
            if (lift_skeleton.empty()) {
                const LiftResult r = positional_lift(a, *p, payoff_oracle(p));
                status = emit(io::to_json(r), r.check.verdict ? 0 : 2);
            } else {
                const MemorySkeleton m = io::skeleton_from_json(read_json(lift_skeleton));
                const SkeletonLiftResult r = lift_with_skeleton(a, m, *p, payoff_oracle(p, m));
                status = emit(io::to_json(r), r.check.verdict ? 0 : 2);
            }
        } catch (const OracleFailureError& ex) {
            json j{{"error", to_string(ex.kind())}, {"message", ex.detail()}, {"bridge", io::to_json(ex.arena())}};
            if (ex.witness()) j["witness"] = *ex.witness();
            status = emit(j, 1);
        }
    });

    // check-eq
    auto* ce = app.add_subcommand("check-eq", "verify an equilibrium");
    std::string ce_arena, ce_sigma, ce_tau, ce_starts = "all";
    PayoffArgs ce_payoff;
    ce->add_option("--arena", ce_arena)->required();
    ce->add_option("--sigma", ce_sigma, "Max strategy JSON")->required();
    ce->add_option("--tau", ce_tau, "Min strategy JSON")->required();
    ce->add_option("--starts", ce_starts, "all or comma-separated node ids")->capture_default_str();
    ce_payoff.attach(ce);
    ce->callback([&] {
        const Arena a = io::arena_from_json(read_json(ce_arena));
        const Strategy sigma = io::strategy_from_json(read_json(ce_sigma), a);
        const Strategy tau = io::strategy_from_json(read_json(ce_tau), a);
        std::vector<NodeId> starts;
        if (ce_starts == "all") starts = all_nodes(a);
        else
            for (long long v : parse_list(ce_starts)) {
                if (v < 0 || v >= a.num_nodes()) throw Error(ErrorKind::Format, "start node out of range");
                starts.push_back(static_cast<NodeId>(v));
            }
        const PayoffPtr p = ce_payoff.make();
        const EquilibriumReport r = check_equilibrium(a, *p, sigma, tau, starts);
        status = emit(io::to_json(r), r.verdict ? 0 : 2);
    });

    // synth-skeleton
    auto* ss = app.add_subcommand("synth-skeleton", "running-sum skeleton M_n or run skeleton M_k");
    ss->require_subcommand(1);
    auto* ss_mn = ss->add_subcommand("mn", "M_n over {-1,+1}");
    int ss_n = 2;
    ss_mn->add_option("--n", ss_n)->required();
    ss_mn->callback([&] { status = emit(io::to_json(synth_Mn(ss_n))); });
    auto* ss_mk = ss->add_subcommand("mk", "M_k over {0,1}");
    int ss_k = 5;
    std::string ss_T = "5";
    ss_mk->add_option("--k", ss_k)->required();
    ss_mk->add_option("--T", ss_T)->capture_default_str();
    ss_mk->callback([&] {
        const auto t = parse_list(ss_T);
        status = emit(io::to_json(synth_Mk(ss_k, IntSet(t.begin(), t.end()))));
    });

    // probe
    auto* probe = app.add_subcommand("probe", "desk-scale probes");
    probe->require_subcommand(1);
    auto* p_fig2 = probe->add_subcommand("fig2", "finite-memory Max loses on Figure 2");
    int fig2_s = 2, fig2_min = 2;
    p_fig2->add_option("--s-max", fig2_s)->capture_default_str();
    p_fig2->add_option("--min-states", fig2_min)->capture_default_str();
    p_fig2->callback([&] { status = emit_probe(probe_fig2_lower(fig2_s, fig2_min)); });

    auto* p_am = probe->add_subcommand("am", "pigeonhole on A_m");
    int am_m = 2;
    std::string am_T = "5";
    p_am->add_option("--m", am_m)->capture_default_str();
    p_am->add_option("--T", am_T)->capture_default_str();
    p_am->callback([&] {
        const auto t = parse_list(am_T);
        status = emit_probe(probe_Am_lower(am_m, IntSet(t.begin(), t.end())));
    });

    auto* p_mn = probe->add_subcommand("mn", "M_n sufficiency for the running-sum payoff");
    int mn_n = 5, mn_trials = 200;
    std::uint64_t mn_seed = 0;
    p_mn->add_option("--n", mn_n)->capture_default_str();
    p_mn->add_option("--trials", mn_trials)->capture_default_str();
    p_mn->add_option("--seed", mn_seed)->required();
    p_mn->callback([&] { status = emit_probe(probe_Mn_sufficiency(mn_n, mn_trials, mn_seed)); });

    auto* p_mk = probe->add_subcommand("mk", "M_k equilibria for the subword payoff");
    std::string mk_T = "5";
    int mk_k = 0, mk_trials = 100, mk_nodes = 25;
    std::uint64_t mk_seed = 0;
    p_mk->add_option("--T", mk_T)->capture_default_str();
    p_mk->add_option("--k", mk_k, "element of T (default: largest)");
    p_mk->add_option("--trials", mk_trials)->capture_default_str();
    p_mk->add_option("--max-nodes", mk_nodes)->capture_default_str();
    p_mk->add_option("--seed", mk_seed)->required();
    p_mk->callback([&] {
        const auto t = parse_list(mk_T);
        const IntSet T(t.begin(), t.end());
        if (T.empty()) throw Error(ErrorKind::Format, "empty T");
        const int k = mk_k > 0 ? mk_k : static_cast<int>(*T.rbegin());
        status = emit_probe(probe_Mk_equilibrium(T, k, mk_trials, mk_seed, mk_nodes));
    });

    // compute-g
    auto* cg = app.add_subcommand("compute-g", "g(n) from a tabulated f");
    std::string cg_table;
    long long cg_const = 0, cg_mmax = 10000, cg_n = 1;
    cg->add_option("--table", cg_table, "comma-separated f(1), f(2), ...");
    cg->add_option("--constant", cg_const, "use f(m) = constant");
    cg->add_option("--m-max", cg_mmax, "table length for --constant")->capture_default_str();
    cg->add_option("--n", cg_n)->required();
    cg->callback([&] {
        std::vector<std::int64_t> table;
        if (cg_const > 0) table.assign(static_cast<std::size_t>(cg_mmax), cg_const);
        else
            for (long long x : parse_list(cg_table)) table.push_back(x);
        const auto g = compute_g(table, cg_n);
        status = emit({{"n", cg_n}, {"g", g ? json(*g) : json(nullptr)}});
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return status;
}
