#include "nashsynth/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "nashsynth/characterize.hpp"
#include "nashsynth/fixtures.hpp"
#include "nashsynth/io.hpp"
#include "nashsynth/pipeline.hpp"
#include "nashsynth/zerosum.hpp"

namespace nashsynth {

namespace {

using json = nlohmann::json;

json cost_json(Objective o, Cost c) {
    if (o == Objective::SPath) return c == kInf ? json("inf") : json(c);
    return c == kWin ? "win" : "lose";
}

json costs_json(const Game& g, const CostProfile& c) {
    json a = json::array();
    for (int i = 1; i <= g.n(); ++i) a.push_back(cost_json(g.objective[i - 1], c.cost[i - 1]));
    return a;
}

json names(const Arena& a, const Region& r) {
    json out = json::array();
    for (Vertex v = 0; v < a.size(); ++v)
        if (r[v]) out.push_back(a.name(v));
    return out;
}

json strategy_json(const Arena& a, const Strategy& s) {
    json out = json::object();
    for (Vertex v = 0; v < a.size(); ++v)
        if (v < static_cast<int>(s.size()) && s[v] >= 0) out[a.name(v)] = a.name(s[v]);
    return out;
}

// indented key: value rendering of a report
void render_human(const json& j, std::ostream& out, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    auto scalar = [](const json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
    auto flat = [](const json& x) {
        return std::all_of(x.begin(), x.end(), [](const json& e) { return e.is_primitive(); });
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_primitive()) {
                out << pad << k << ": " << scalar(v) << "\n";
            } else if (v.is_array() && flat(v)) {
                out << pad << k << ":";
                for (const auto& e : v) out << " " << scalar(e);
                out << "\n";
            } else {
                out << pad << k << ":\n";
                render_human(v, out, depth + 1);
            }
        }
    } else if (j.is_array()) {
        for (const auto& e : j) {
            if (e.is_primitive()) {
                out << pad << "- " << scalar(e) << "\n";
            } else {
                out << pad << "-\n";
                render_human(e, out, depth + 1);
            }
        }
    } else {
        out << pad << scalar(j) << "\n";
    }
}

Game open_game(const std::string& path) {
    if (std::filesystem::exists(path)) return load_game(path);
    std::string stem = std::filesystem::path(path).stem().string();
    for (const auto& f : bundled_fixtures())
        if (f.name == stem) return parse_game(f.text);
    throw std::invalid_argument("cannot read game file " + path);
}

Vertex initial_vertex(const Game& g, const std::string& init) {
    if (!init.empty()) {
        auto v = g.arena.find(init);
        if (!v) throw std::invalid_argument("unknown initial vertex '" + init + "'");
        return *v;
    }
    return g.init ? *g.init : 0;
}

json report_json(const Game& g, const CharacterisationReport& r, const Lasso& l) {
    json j;
    j["lasso"] = lasso_string(g.arena, l);
    j["is_ne_outcome"] = r.is_ne_outcome;
    j["costs"] = costs_json(g, r.costs);
    j["violations"] = json::array();
    for (const auto& v : r.violations)
        j["violations"].push_back(
            {{"player", v.player}, {"position", v.position}, {"vertex", g.arena.name(l.at(v.position))},
             {"reason", reason_name(v.reason)}});
    return j;
}

json simplified_json(const Game& g, const SimplifiedOutcome& s) {
    const Arena& a = g.arena;
    json j;
    j["lasso"] = lasso_string(a, s.lasso);
    j["class"] = objective_name(s.cls);
    j["k"] = s.k;
    if (s.cls == Objective::CoBuchi) j["lstar"] = s.lstar;
    j["segments"] = json::array();
    for (const auto& h : s.decomposition.segments) j["segments"].push_back(history_string(a, h));
    j["tail"] = lasso_string(a, s.decomposition.tail);
    j["tail_merged"] = s.decomposition.tail_merged;
    j["periodic"] = s.decomposition.periodic;
    j["vispos"] = s.vispos;
    j["satpl"] = s.satpl;
    j["costs"] = costs_json(g, eval_profile(g, s.lasso));
    return j;
}

json ne_json(const Game& g, const NEReport& r) {
    json j;
    j["is_nash"] = r.is_nash;
    j["outcome"] = lasso_string(g.arena, r.outcome);
    j["players"] = json::array();
    for (const auto& p : r.players) {
        Objective o = g.objective[p.player - 1];
        json e = {{"player", p.player}, {"outcome", cost_json(o, p.outcome)}, {"best_response", cost_json(o, p.best)}};
        if (p.witness) e["deviation"] = lasso_string(g.arena, *p.witness);
        j["players"].push_back(e);
    }
    return j;
}

json cmd_solve(const Game& g, int only) {
    const Arena& a = g.arena;
    json out = json::array();
    for (int i = 1; i <= g.n(); ++i) {
        if (only && i != only) continue;
        CoalitionView view(a, i);
        const Region& t = a.target[i - 1];
        json p = {{"player", i}, {"objective", objective_name(g.objective[i - 1])}};
        if (g.objective[i - 1] == Objective::SPath) {
            SPathSolution s = solve_spath(view, t, g.weights(i));
            json vals = json::object();
            for (Vertex v = 0; v < a.size(); ++v) vals[a.name(v)] = cost_json(Objective::SPath, s.value[v]);
            p["values"] = vals;
            p["optimal"] = strategy_json(a, s.opt1);
            p["punisher"] = strategy_json(a, s.punish2);
        } else {
            QualSolution s = solve_qualitative(view, g.objective[i - 1], t);
            p["win1"] = names(a, s.win1);
            p["win2"] = names(a, s.win2);
            p["strategy1"] = strategy_json(a, s.strat1);
            p["strategy2"] = strategy_json(a, s.strat2);
        }
        out.push_back(p);
    }
    return {{"coalition_games", out}};
}

json cmd_synth(const Game& g, const Lasso& l, const std::string& out_path, bool& violated) {
    PipelineResult r = run_pipeline(g, l);
    json j;
    j["simplified"] = simplified_json(g, r.simplified);
    j["bounds"] = json::array();
    for (const auto& b : r.bounds)
        j["bounds"].push_back({{"player", b.player}, {"states", b.states}, {"coarse", b.coarse},
                               {"refined", b.refined}, {"ok", b.ok}});
    j["verify"] = ne_json(g, r.report);
    j["outcome_matches"] = r.outcome_matches;
    std::string text = serialize_profile(g.arena, r.profile);
    if (out_path.empty()) {
        j["machines"] = text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot write " + out_path);
        f << text;
        j["machines_file"] = out_path;
    }
    violated = !(r.bounds_ok && r.report.is_nash && r.outcome_matches);
    return j;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nash equilibrium synthesis for turn-based games on graphs", "nashsynth"};
    app.require_subcommand(1);
    bool human = false;
    app.add_flag("--human", human, "Render reports as indented text");

    std::string game_path, lasso, profile_path, init, out_path;
    int only_player = 0;
    auto game_arg = [&](CLI::App* sc) { sc->add_option("game", game_path, "GameSpecFile")->required(); };
    auto* solve = app.add_subcommand("solve", "Solve every coalition game");
    game_arg(solve);
    solve->add_option("--player", only_player, "Restrict to one player");
    auto* check = app.add_subcommand("check", "Check whether a lasso is an NE outcome");
    game_arg(check);
    check->add_option("--lasso", lasso, "prefix|cycle")->required();
    auto* simp = app.add_subcommand("simplify", "Simplify an NE outcome");
    game_arg(simp);
    simp->add_option("--lasso", lasso, "prefix|cycle")->required();
    auto* syn = app.add_subcommand("synth", "Synthesize Mealy machines for an NE outcome");
    game_arg(syn);
    syn->add_option("--lasso", lasso, "prefix|cycle")->required();
    syn->add_option("--out", out_path, "Write the MachineFile here");
    auto* ver = app.add_subcommand("verify", "Decide whether a profile is an NE");
    game_arg(ver);
    ver->add_option("--profile", profile_path, "MachineFile")->required();
    ver->add_option("--init", init, "Initial vertex");
    auto* ex = app.add_subcommand("existence", "Build an NE outcome of a shortest-path game");
    game_arg(ex);
    ex->add_option("--init", init, "Initial vertex");
    auto* exp = app.add_subcommand("export", "Write DOT for the arena and optional machines");
    game_arg(exp);
    exp->add_option("--profile", profile_path, "MachineFile");
    auto* self = app.add_subcommand("selftest", "Run the bundled fixture checks");
    for (auto* sc : {solve, check, simp, syn, ver, ex, exp, self}) sc->add_flag("--human", human, "Render as text");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    json report;
    int code = kExitOk;
    try {
        if (*self) {
            auto checks = run_selftest();
            int failed = 0;
            report["checks"] = json::array();
            for (const auto& c : checks) {
                report["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
                failed += !c.pass;
            }
            report["passed"] = static_cast<int>(checks.size()) - failed;
            report["failed"] = failed;
            code = failed ? kExitViolation : kExitOk;
        } else {
            Game g = open_game(game_path);
            if (*solve) {
                report = cmd_solve(g, only_player);
            } else if (*check) {
                Lasso l = parse_lasso(lasso, g.arena);
                auto r = check_outcome(g, l);
                report = report_json(g, r, l);
                code = r.is_ne_outcome ? kExitOk : kExitViolation;
            } else if (*simp) {
                Lasso l = parse_lasso(lasso, g.arena);
                try {
                    report = simplified_json(g, simplify(g, l));
                    report["input"] = lasso_string(g.arena, l);
                } catch (const NotAnNEOutcome&) {
                    report = report_json(g, check_outcome(g, l), l);
                    code = kExitViolation;
                }
            } else if (*syn) {
                Lasso l = parse_lasso(lasso, g.arena);
                bool violated = false;
                try {
                    report = cmd_synth(g, l, out_path, violated);
                } catch (const NotAnNEOutcome&) {
                    report = report_json(g, check_outcome(g, l), l);
                    violated = true;
                }
                code = violated ? kExitViolation : kExitOk;
            } else if (*ver) {
                StrategyProfile p = load_profile(profile_path, g.arena);
                NEReport r = is_nash(g, p, initial_vertex(g, init));
                report = ne_json(g, r);
                code = r.is_nash ? kExitOk : kExitViolation;
            } else if (*ex) {
                Lasso l = construct_spath_ne_outcome(g, initial_vertex(g, init));
                auto r = check_spath_outcome(g, l);
                report = report_json(g, r, l);
                code = r.is_ne_outcome ? kExitOk : kExitViolation;
            } else if (*exp) {
                out << arena_dot(g);
                if (!profile_path.empty())
                    for (const auto& m : load_profile(profile_path, g.arena).machines) out << machine_dot(g.arena, m);
                return kExitOk;
            }
        }
    } catch (const ProductTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const SyntaxError& e) {
        err << "syntax error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ArenaError& e) {
        err << "invalid game: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    if (human) render_human(report, out, 0);
    else out << report.dump(2) << "\n";
    return code;
}

}  // namespace nashsynth
