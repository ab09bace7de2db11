#include "nashsynth/pipeline.hpp"

#include <functional>
#include <sstream>

#include "nashsynth/characterize.hpp"
#include "nashsynth/fixtures.hpp"
#include "nashsynth/io.hpp"
#include "nashsynth/zerosum.hpp"

namespace nashsynth {

PipelineResult run_pipeline(const Game& g, const Lasso& ne, std::size_t budget) {
    PipelineResult r;
    r.simplified = simplify(g, ne);
    r.profile = synth(g, r.simplified);
    const Vertex v0 = ne.at(0);
    r.bounds = check_memory_bounds(r.profile, r.simplified.cls, g.n(), g.arena.size(), r.simplified.k,
                                   static_cast<int>(r.simplified.satpl.size()));
    for (const auto& b : r.bounds) r.bounds_ok = r.bounds_ok && b.ok;
    r.report = is_nash(g, r.profile, v0, budget);
    r.outcome_matches = r.report.outcome == r.simplified.lasso;
    return r;
}

namespace {

std::string costs_string(const CostProfile& c) {
    std::string s;
    for (std::size_t i = 0; i < c.cost.size(); ++i) s += (i ? "," : "") + cost_string(c.cost[i]);
    return s;
}

std::string states_string(const StrategyProfile& p) {
    std::string s;
    for (std::size_t i = 0; i < p.machines.size(); ++i) s += (i ? "," : "") + std::to_string(p.machines[i].num_states());
    return s;
}

bool all_states(const StrategyProfile& p, const std::function<bool(int)>& ok) {
    for (const auto& m : p.machines)
        if (!ok(m.num_states())) return false;
    return true;
}

SelfCheck pipeline_check(const std::string& name, const std::string& fixture, const std::string& lasso,
                         const std::function<bool(int)>& states_ok, const std::string& expect_costs = "",
                         long long expect_lstar = -2) {
    SelfCheck c{name, false, ""};
    Game g = fixture_game(fixture);
    PipelineResult r = run_pipeline(g, parse_lasso(lasso, g.arena));
    CostProfile costs = eval_profile(g, r.report.outcome);
    std::ostringstream d;
    d << "outcome " << lasso_string(g.arena, r.report.outcome) << "; costs " << costs_string(costs) << "; states "
      << states_string(r.profile) << "; nash " << (r.report.is_nash ? "yes" : "no");
    if (expect_lstar != -2) d << "; lstar " << r.simplified.lstar;
    c.detail = d.str();
    c.pass = r.report.is_nash && r.bounds_ok && r.outcome_matches && all_states(r.profile, states_ok) &&
             (expect_costs.empty() || costs_string(costs) == expect_costs) &&
             (expect_lstar == -2 || r.simplified.lstar == expect_lstar);
    return c;
}

SelfCheck guarded(const std::string& name, const std::function<SelfCheck()>& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        return {name, false, std::string("error: ") + e.what()};
    }
}

}  // namespace

std::vector<SelfCheck> run_selftest() {
    std::vector<SelfCheck> out;
    out.push_back(guarded("fig1a_check", [] {
        Game g = fixture_game("fig1a");
        auto r1 = check_outcome(g, parse_lasso("v0,t12,v1|v2", g.arena));
        auto r2 = check_outcome(g, parse_lasso("v0|v1,t1", g.arena));
        SelfCheck c{"fig1a_check", false, ""};
        c.detail = "costs " + costs_string(r1.costs) + " and " + costs_string(r2.costs);
        c.pass = r1.is_ne_outcome && r2.is_ne_outcome && costs_string(r1.costs) == "3,3" &&
                 costs_string(r2.costs) == "2,inf";
        return c;
    }));
    out.push_back(guarded("fig4a_spath_pipeline", [] {
        return pipeline_check("fig4a_spath_pipeline", "fig4a", "v0,v1,v3|t", [](int s) { return s <= 9; }, "5,5,5");
    }));
    out.push_back(guarded("fig1a_spath_pipeline", [] {
        return pipeline_check("fig1a_spath_pipeline", "fig1a", "v0,t12,v1|v2", [](int s) { return s <= 6; }, "3,3");
    }));
    out.push_back(guarded("fig3a_reach_pipeline", [] {
        auto c = pipeline_check("fig3a_reach_pipeline", "fig3a", "v0,v1,v2,t1,v2,v1,v0|t2",
                                [](int s) { return s == 4; });
        c.pass = c.pass && c.detail.rfind("outcome v0,v1,v2,t1,v2,v1,v0|t2;", 0) == 0;
        return c;
    }));
    out.push_back(guarded("fig1b_reach_pipeline", [] {
        return pipeline_check("fig1b_reach_pipeline", "fig1b", "v0,v1,v2,t1,v2,v1,v0|t2",
                              [](int s) { return s == 4; });
    }));
    out.push_back(guarded("fig5c_safety_pipeline", [] {
        return pipeline_check("fig5c_safety_pipeline", "fig5c", "v0,v1|v3", [](int s) { return s <= 3; });
    }));
    out.push_back(guarded("safety6_simplify", [] {
        Game g = fixture_game("safety6");
        auto s = simplify(g, parse_lasso("v0,v1,v2,v3|v4", g.arena));
        SelfCheck c{"safety6_simplify", false, "simplified " + lasso_string(g.arena, s.lasso)};
        c.pass = same_play(s.lasso, parse_lasso("v0|v1,v2", g.arena));
        return c;
    }));
    out.push_back(guarded("fig5a_buchi_pipeline", [] {
        return pipeline_check("fig5a_buchi_pipeline", "fig5a_buchi", "v0,v1|v2", [](int s) { return s == 5; });
    }));
    out.push_back(guarded("buchi_family3_pipeline", [] {
        Game g = fixture_game("buchi_family3");
        StrategyProfile hand{{buchi_family_p1(g.arena, 3), buchi_family_machine(g.arena, 3)}};
        Lasso l = outcome_of_profile(g, hand, *g.init).first;
        return pipeline_check("buchi_family3_pipeline", "buchi_family3", lasso_string(g.arena, l),
                              [](int s) { return s == 9; });
    }));
    out.push_back(guarded("fig5a_cobuchi_pipeline", [] {
        return pipeline_check("fig5a_cobuchi_pipeline", "fig5a_cobuchi", "v0,v1|v2", [](int s) { return s == 5; },
                              "", 2);
    }));
    out.push_back(guarded("fig5b_cobuchi_pipeline", [] {
        return pipeline_check("fig5b_cobuchi_pipeline", "fig5b", "|v0,v1,v3", [](int s) { return s == 3; }, "", 0);
    }));
    out.push_back(guarded("ladder5_values", [] {
        Game g = fixture_game("ladder5");
        CoalitionView view(g.arena, 1);
        auto val = spath_values(view, g.arena.target[0], g.weights(1));
        SelfCheck c{"ladder5_values", true, ""};
        for (int a = 1; a <= 5; ++a) {
            Cost v = val[*g.arena.find("v" + std::to_string(a))];
            c.detail += "v" + std::to_string(a) + "=" + cost_string(v) + " ";
            c.pass = c.pass && v == static_cast<Cost>(a);
        }
        Cost top = val[*g.arena.find("vinf")];
        c.detail += "vinf=" + cost_string(top);
        c.pass = c.pass && top == 6;
        return c;
    }));
    out.push_back(guarded("fig1a_existence", [] {
        Game g = fixture_game("fig1a");
        Lasso l = construct_spath_ne_outcome(g, *g.init);
        auto r = check_spath_outcome(g, l);
        SelfCheck c{"fig1a_existence", false, lasso_string(g.arena, l) + " costs " + costs_string(r.costs)};
        c.pass = r.is_ne_outcome && costs_string(r.costs) == "3,3";
        return c;
    }));
    out.push_back(guarded("fixture_round_trip", [] {
        SelfCheck c{"fixture_round_trip", true, ""};
        for (const auto& f : bundled_fixtures()) {
            std::string once = serialize_game(parse_game(f.text));
            bool ok = serialize_game(parse_game(once)) == once;
            if (!ok) c.detail += f.name + " ";
            c.pass = c.pass && ok;
        }
        if (c.pass) c.detail = std::to_string(bundled_fixtures().size()) + " fixtures";
        return c;
    }));
    return out;
}

}  // namespace nashsynth
