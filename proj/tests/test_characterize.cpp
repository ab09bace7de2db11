#include <doctest.h>

#include "common.hpp"
#include "nashsynth/characterize.hpp"
#include "nashsynth/pipeline.hpp"
#include "oracles.hpp"

using namespace nashsynth;
using namespace testing_util;

TEST_CASE("qualitative outcomes") {
    Game g = fixture_game("fig3a");
    auto r = check_qual_outcome(g, L(g, "v0,v1,v2,t1,v2,v1,v0|t2"));
    CHECK(r.is_ne_outcome);
    CHECK(r.violations.empty());

    Game b = fixture_game("fig5a_buchi");
    CHECK(check_qual_outcome(b, L(b, "v0,v1|v2")).is_ne_outcome);
    // player 2 sends the play to v3 before player 1 moves
    CHECK(check_qual_outcome(b, L(b, "v0|v3")).is_ne_outcome);
}

TEST_CASE("everyone winning is vacuously an NE outcome") {
    Game g = fixture_game("fig5b");
    Game all = g;
    all.arena.target = {Region(g.arena.size(), 0), Region(g.arena.size(), 0)};
    CHECK(check_qual_outcome(all, L(all, "|v0,v1,v3")).is_ne_outcome);
}

TEST_CASE("a loser who can force its target is a violation") {
    Game g = fixture_game("fig1b");
    g.arena.owner[V(g, "v3")] = 4;
    auto r = check_qual_outcome(g, L(g, "v0,v1|v2,t1"));
    CHECK_FALSE(r.is_ne_outcome);
    // v2 and t1 both lie in player 4's winning region
    REQUIRE(r.violations.size() == 2);
    for (const auto& v : r.violations) CHECK(v.player == 4);
    CHECK(r.violations[0].position == 2);
    CHECK(r.violations[1].position == 3);
}

TEST_CASE("safety outcomes") {
    Game g = fixture_game("fig5c");
    CHECK(check_safety_outcome(g, L(g, "v0,v1|v3")).is_ne_outcome);
    Game s = fixture_game("safety6");
    CHECK(check_safety_outcome(s, L(s, "v0|v1,v2")).is_ne_outcome);
    // the first vertex is in every loser's target: nothing past position 0 is checked
    Game t = s;
    t.arena.target[0][V(t, "v0")] = 1;
    t.arena.target[1][V(t, "v0")] = 1;
    CHECK(check_safety_outcome(t, L(t, "v0|v1,v2")).is_ne_outcome);
}

TEST_CASE("shortest-path outcomes") {
    Game g = fixture_game("fig1a");
    auto a = check_spath_outcome(g, L(g, "v0,t12,v1|v2"));
    CHECK(a.is_ne_outcome);
    CHECK(a.costs.cost == std::vector<Cost>{3, 3});
    auto b = check_spath_outcome(g, L(g, "v0|v1,t1"));
    CHECK(b.is_ne_outcome);
    CHECK(b.costs.cost == std::vector<Cost>{2, kInf});

    Game f = fixture_game("fig4a");
    auto c = check_spath_outcome(f, L(f, "v0,v2|t12"));
    CHECK(c.is_ne_outcome);
    CHECK(costs(f, L(f, "v0,v2|t12")) == "2,2,inf");
    // player 3 can reach t after the first loop and pay 5 instead of 15
    auto d = check_spath_outcome(f, L(f, "v0,v1,v3,v0,v1,v3,v0,v1,v3|t"));
    CHECK_FALSE(d.is_ne_outcome);
    REQUIRE_FALSE(d.violations.empty());
    for (const auto& v : d.violations) CHECK(v.player == 3);
    CHECK(d.violations[0].position == 1);
}

TEST_CASE("violations are reported in position order") {
    Game g = fixture_game("fig4a");
    // player 1 pays 3 more than needed by detouring through v1 twice
    Game h = g;
    h.arena.target[2] = Region(g.arena.size(), 0);
    h.arena.target[2][V(g, "v4")] = 1;
    auto r = check_spath_outcome(h, L(h, "v0,v1,v3|t"));
    for (std::size_t i = 1; i < r.violations.size(); ++i)
        CHECK(std::make_pair(r.violations[i - 1].position, r.violations[i - 1].player) <=
              std::make_pair(r.violations[i].position, r.violations[i].player));
    CHECK(r.is_ne_outcome == r.violations.empty());
}

TEST_CASE("mixed objectives") {
    Game g = fixture_game("fig5b");
    Game m = g;
    m.objective = {Objective::Buchi, Objective::CoBuchi};
    CHECK_NOTHROW(check_outcome(m, L(m, "|v0,v1,v3")));
    m.objective = {Objective::Safe, Objective::CoBuchi};
    CHECK_THROWS_AS(check_outcome(m, L(m, "|v0,v1,v3")), MixedObjectives);
    m.objective = {Objective::SPath, Objective::Reach};
    CHECK_THROWS_AS(check_outcome(m, L(m, "|v0,v1,v3")), MixedObjectives);
}

TEST_CASE("a non-play is an input error") {
    Game g = fixture_game("fig5b");
    CHECK_THROWS_AS(check_outcome(g, L(g, "|v0,v4")), std::invalid_argument);
}

TEST_CASE("zero-weight shortest path agrees with reachability") {
    std::mt19937 rng(21);
    for (int k = 0; k < 150; ++k) {
        Game g = oracle::random_game(rng, Objective::Reach);
        Game z = g;
        for (auto& o : z.objective) o = Objective::SPath;
        for (auto& w : z.arena.weight) std::fill(w.begin(), w.end(), 0);
        Lasso l = outcome_of_profile(g, oracle::random_memoryless(rng, g.arena), 0).first;
        CHECK(check_qual_outcome(g, l).is_ne_outcome == check_spath_outcome(z, l).is_ne_outcome);
    }
}

namespace {

// every memoryless profile of the game
void each_memoryless(const Arena& a, const std::function<void(const StrategyProfile&)>& f) {
    std::vector<Vertex> choice(a.size());
    std::function<void(int)> rec = [&](int v) {
        if (v == a.size()) {
            StrategyProfile p;
            for (int i = 1; i <= a.num_players; ++i) p.machines.push_back(memoryless_machine(a, i, choice));
            f(p);
            return;
        }
        for (Vertex u : a.succ[v]) {
            choice[v] = u;
            rec(v + 1);
        }
    };
    rec(0);
}

}  // namespace

TEST_CASE("characterisation agrees with brute-force equilibrium search") {
    std::mt19937 rng(31);
    oracle::GenParams gp;
    gp.max_vertices = 6;
    gp.max_players = 2;
    gp.max_out = 2;
    int nash_seen = 0, accepted_seen = 0;
    for (auto kind : {Objective::Reach, Objective::Safe, Objective::Buchi, Objective::CoBuchi, Objective::SPath}) {
        for (int k = 0; k < 30; ++k) {
            Game g = oracle::random_game(rng, kind, gp);
            each_memoryless(g.arena, [&](const StrategyProfile& p) {
                NEReport r = is_nash(g, p, 0);
                bool accepted = check_outcome(g, r.outcome).is_ne_outcome;
                // an NE outcome is always accepted
                if (r.is_nash) {
                    ++nash_seen;
                    CHECK(accepted);
                }
                // and every accepted outcome is realised by a synthesized NE
                if (accepted) {
                    ++accepted_seen;
                    PipelineResult pr = run_pipeline(g, r.outcome);
                    CHECK(pr.report.is_nash);
                }
            });
        }
    }
    CHECK(nash_seen > 50);
    CHECK(accepted_seen >= nash_seen);
}
