#include <doctest.h>

#include "common.hpp"
#include "nashsynth/characterize.hpp"
#include "nashsynth/pipeline.hpp"
#include "nashsynth/synth.hpp"
#include "nashsynth/verify.hpp"
#include "oracles.hpp"

using namespace nashsynth;
using namespace testing_util;

namespace {

int run_machine(const MealyMachine& m, const History& h) {
    int s = m.init;
    for (Vertex v : h) s = m.up[s][v];
    return s;
}

History H(const Game& g, const std::string& s) { return L(g, s + "|" + s.substr(s.rfind(',') + 1)).prefix; }

}  // namespace

TEST_CASE("reachability template tracks the last monitored mover") {
    Game g = fixture_game("fig3a");
    auto s = simplify(g, L(g, "v0,v1,v2,t1,v2,v1,v0|t2"));
    auto segs = template_segments(s.decomposition);
    auto I = monitored_players(g, s.satpl);
    CHECK(I == std::vector<int>{3, 4});
    TemplateMachine t = build_template(g.arena, segs, I, 1);
    const MealyMachine& m = t.machine;
    CHECK(m.num_states() == 4);
    CHECK(m.state_names[run_machine(m, H(g, "v0,v1,v2,t1"))] == "P4.2");
    CHECK(m.state_names[run_machine(m, H(g, "v0,v1"))] == "P3.1");
    CHECK(t.player_of(t.state(4, 2)) == 4);
    CHECK(t.segment_of(t.state(4, 2)) == 2);
    CHECK(coherence_index(segs, H(g, "v0,v1,v2,t1,v2")) == 2);
    CHECK(coherence_index(segs, H(g, "v0,v1,v3")) == 0);
    CHECK(coherence_index(segs, H(g, "v1,v2")) == 0);
}

TEST_CASE("a single-vertex segment is rejected") {
    Game g = fixture_game("fig3a");
    std::vector<Segment> segs{{History{V(g, "v0")}, std::nullopt}, {{}, L(g, "v0|t2")}};
    CHECK_THROWS_AS(build_template(g.arena, segs, {1}, 1), TrivialSegment);
    CHECK_THROWS_AS(build_template(g.arena, {{{}, L(g, "v0|t2")}}, {}, 1), std::invalid_argument);
}

TEST_CASE("monitored players default to player 1 when everyone wins") {
    Game g = fixture_game("fig3a");
    CHECK(monitored_players(g, {1, 2, 3, 4}) == std::vector<int>{1});
    CHECK(monitored_players(g, {2}) == std::vector<int>{1, 3, 4});
}

TEST_CASE("template state follows the coherence index along the outcome") {
    std::mt19937 rng(51);
    oracle::GenParams gp;
    gp.max_vertices = 8;
    int seen = 0;
    for (int k = 0; k < 300 && seen < 60; ++k) {
        Game g = oracle::random_game(rng, Objective::Reach, gp);
        Lasso l = outcome_of_profile(g, oracle::random_memoryless(rng, g.arena), 0).first;
        if (!check_outcome(g, l).is_ne_outcome) continue;
        auto s = simplify(g, l);
        auto segs = template_segments(s.decomposition);
        bool trivial = false;
        for (const auto& sg : segs) trivial = trivial || (sg.finite() && sg.hist.size() < 2);
        if (trivial) continue;
        ++seen;
        TemplateMachine t = build_template(g.arena, segs, monitored_players(g, s.satpl), 1);
        History h;
        int st = t.machine.init;
        for (long long q = 0; q < s.lasso.length() + 3; ++q) {
            Vertex v = s.lasso.at(q);
            h.push_back(v);
            st = t.machine.up[st][v];
            REQUIRE(st >= 0);
            CHECK(t.segment_of(st) == coherence_index(segs, h));
        }
    }
    CHECK(seen > 20);
}

TEST_CASE("machine sizes per class") {
    Game a = fixture_game("fig4a");
    auto r = run_pipeline(a, L(a, "v0,v1,v3|t"));
    for (const auto& m : r.profile.machines) CHECK(m.num_states() == 3 * (1 + 2));
    CHECK(r.report.is_nash);

    Game c = fixture_game("fig5c");
    auto rc = run_pipeline(c, L(c, "v0,v1|v3"));
    for (const auto& m : rc.profile.machines) CHECK(m.num_states() <= 3);
    CHECK(rc.report.is_nash);

    Game b = fixture_game("fig5a_buchi");
    auto rb = run_pipeline(b, L(b, "v0,v1|v2"));
    CHECK(rb.profile.machines[0].num_states() == 5);
    CHECK(rb.report.is_nash);
    CHECK(rb.outcome_matches);
}

TEST_CASE("every machine is complete after synthesis") {
    Game g = fixture_game("fig3a");
    auto r = run_pipeline(g, L(g, "v0,v1,v2,t1,v2,v1,v0|t2"));
    for (const auto& m : r.profile.machines) {
        CHECK_NOTHROW(validate_machine(g.arena, m));
        for (int s = 0; s < m.num_states(); ++s)
            for (Vertex v = 0; v < g.arena.size(); ++v) {
                CHECK(m.up[s][v] >= 0);
                if (g.arena.owner[v] == m.player) CHECK(g.arena.has_edge(v, m.nxt[s][v]));
            }
    }
}

TEST_CASE("per-player weights are rejected by synthesis") {
    Game g = fixture_game("fig1a");
    auto s = simplify(g, L(g, "v0,t12,v1|v2"));
    g.player_weight[0] = g.arena.weight;
    (*g.player_weight[0])[0][0] = 9;
    CHECK_THROWS_AS(synth_spath(g, s), std::invalid_argument);
}

TEST_CASE("existence of a shortest-path NE") {
    Game g = fixture_game("fig1a");
    Lasso l = construct_spath_ne_outcome(g, V(g, "v0"));
    CHECK(check_spath_outcome(g, l).is_ne_outcome);
    CHECK(costs(g, l) == "3,3");

    Game d = fixture_game("ladder3");
    Lasso m = construct_spath_ne_outcome(d, V(d, "v3"));
    CHECK(check_spath_outcome(d, m).is_ne_outcome);
    CHECK(eval_cost(d, m, 1) == 3);

    std::mt19937 rng(52);
    for (int k = 0; k < 80; ++k) {
        Game r = oracle::random_game(rng, Objective::SPath);
        for (Vertex v = 0; v < r.arena.size(); ++v) {
            Lasso e = construct_spath_ne_outcome(r, v);
            CHECK(e.at(0) == v);
            CHECK(check_spath_outcome(r, e).is_ne_outcome);
        }
    }
}
