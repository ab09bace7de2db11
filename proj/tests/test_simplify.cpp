#include <doctest.h>

#include "common.hpp"
#include "nashsynth/characterize.hpp"
#include "nashsynth/simplify.hpp"
#include "nashsynth/verify.hpp"
#include "oracles.hpp"

using namespace nashsynth;
using namespace testing_util;

TEST_CASE("shortest path: simple outcome on the three-player arena") {
    Game g = fixture_game("fig4a");
    auto s = simplify(g, L(g, "v0,v1,v3|t"));
    CHECK(S(g, s.lasso) == "v0,v1,v3|t");
    CHECK(s.k == 1);
    CHECK(s.cls == Objective::SPath);
    CHECK(costs(g, s.lasso) == "5,5,5");
    CHECK_THROWS_AS(simplify(g, L(g, "v0,v1,v3,v0,v1,v3,v0,v1,v3|t")), NotAnNEOutcome);
}

TEST_CASE("shortest path: already simple outcome is kept") {
    Game g = fixture_game("fig1a");
    Lasso l = L(g, "v0,t12,v1|v2");
    auto s = simplify(g, l);
    CHECK(same_play(s.lasso, l));
    CHECK(s.k == 1);
    REQUIRE(s.decomposition.segments.size() == 1);
    CHECK(history_string(g.arena, s.decomposition.segments[0]) == "v0,t12");
    CHECK(reconstruct(s.decomposition) == s.lasso);
}

TEST_CASE("shortest path: per-player weights are rejected") {
    Game g = fixture_game("fig1a");
    g.player_weight[1] = g.arena.weight;
    (*g.player_weight[1])[0][0] = 7;
    CHECK_THROWS_AS(simplify(g, L(g, "v0,t12,v1|v2")), std::invalid_argument);
}

TEST_CASE("reachability keeps one segment per first visit") {
    Game g = fixture_game("fig3a");
    auto s = simplify(g, L(g, "v0,v1,v2,t1,v2,v1,v0|t2"));
    CHECK(s.k == 2);
    CHECK(s.satpl == std::vector<int>{1, 2});
    CHECK(s.decomposition.tail_merged);
    CHECK(reconstruct(s.decomposition) == s.lasso);
    CHECK(check_qual_outcome(g, s.lasso).is_ne_outcome);
}

TEST_CASE("non-NE input is rejected") {
    Game g = fixture_game("fig1b");
    g.arena.owner[V(g, "v3")] = 4;
    CHECK_THROWS_AS(simplify(g, L(g, "v0,v1|v2,t1")), NotAnNEOutcome);
}

TEST_CASE("safety outcomes") {
    Game g = fixture_game("safety6");
    auto s = simplify(g, L(g, "v0,v1,v2,v3|v4"));
    CHECK(same_play(s.lasso, L(g, "v0|v1,v2")));

    Game c = fixture_game("fig5c");
    auto t = simplify(c, L(c, "v0,v1|v3"));
    CHECK(same_play(t.lasso, L(c, "v0,v1|v3")));
}

TEST_CASE("buchi decomposition") {
    Game g = fixture_game("fig5a_buchi");
    auto s = simplify(g, L(g, "v0,v1|v2"));
    CHECK(s.decomposition.periodic);
    REQUIRE(s.decomposition.segments.size() == 2);
    CHECK(history_string(g.arena, s.decomposition.segments[0]) == "v0,v1,v2");
    CHECK(history_string(g.arena, s.decomposition.segments[1]) == "v2,v2");

    Game f = fixture_game("buchi_family3");
    StrategyProfile hand{{buchi_family_p1(f.arena, 3), buchi_family_machine(f.arena, 3)}};
    Lasso l = outcome_of_profile(f, hand, *f.init).first;
    auto sf = simplify(f, l);
    CHECK(sf.decomposition.segments[0].size() == 7);
}

TEST_CASE("co-buchi phase split") {
    Game a = fixture_game("fig5a_cobuchi");
    auto s = simplify(a, L(a, "v0,v1|v2"));
    CHECK(s.lstar == 2);
    CHECK(cobuchi_lstar(a, L(a, "v0,v1|v2")) == 2);

    Game b = fixture_game("fig5b");
    auto t = simplify(b, L(b, "|v0,v1,v3"));
    CHECK(t.lstar == 0);
    CHECK(same_play(t.lasso, L(b, "|v0,v1,v3")));
}

TEST_CASE("graph helpers") {
    Game g = fixture_game("fig4a");
    Region all(g.arena.size(), 1);
    auto h = min_history(g.arena, V(g, "v0"), region(g, {"t"}), all, &g.arena.weight);
    REQUIRE(h);
    CHECK(history_string(g.arena, *h) == "v0,v2,v3,t");
    auto c = shortest_cycle(g.arena, V(g, "v0"), all);
    REQUIRE(c);
    CHECK(history_string(g.arena, *c) == "v0,v1,v3,v0");
    Region no_v3 = all;
    no_v3[V(g, "v3")] = 0;
    CHECK_FALSE(shortest_cycle(g.arena, V(g, "v0"), no_v3));
}

namespace {

// true when some simple cycle through a vertex of `from` avoids `avoid`
bool has_clean_cycle(const Arena& a, const std::vector<Vertex>& from, const Region& avoid) {
    for (Vertex s : from) {
        if (avoid[s]) continue;
        Region allowed(a.size(), 1);
        for (Vertex v = 0; v < a.size(); ++v) allowed[v] = !avoid[v];
        if (shortest_cycle(a, s, allowed)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("random accepted outcomes simplify to equivalent NE outcomes") {
    std::mt19937 rng(41);
    oracle::GenParams gp;
    gp.max_vertices = 7;
    int seen = 0;
    for (auto kind : {Objective::Reach, Objective::Safe, Objective::Buchi, Objective::CoBuchi, Objective::SPath}) {
        for (int k = 0; k < 120; ++k) {
            Game g = oracle::random_game(rng, kind, gp);
            StrategyProfile p = k % 2 ? oracle::random_two_state(rng, g.arena) : oracle::random_memoryless(rng, g.arena);
            Lasso l = outcome_of_profile(g, p, 0).first;
            if (!check_outcome(g, l).is_ne_outcome) continue;
            ++seen;
            auto s = simplify(g, l);
            CHECK(is_play(g.arena, s.lasso));
            CHECK(check_outcome(g, s.lasso).is_ne_outcome);
            CHECK(s.lasso.at(0) == l.at(0));
            auto before = eval_profile(g, l), after = eval_profile(g, s.lasso);
            const std::string kind_name = objective_name(kind);
                CAPTURE(kind_name);
            for (int i = 0; i < g.n(); ++i) {
                // safety and co-buchi may gain winners
                if (kind == Objective::Reach || kind == Objective::Buchi) CHECK(after.cost[i] == before.cost[i]);
                else CHECK(after.cost[i] <= before.cost[i]);
            }
            for (const auto& seg : s.decomposition.segments)
                if (!s.decomposition.periodic) CHECK(is_simple_history(seg));
            if (kind == Objective::CoBuchi) {
                // the tail cycle avoids every winner's target
                Region avoid(g.arena.size(), 0);
                for (int i = 1; i <= g.n(); ++i)
                    if (after.cost[i - 1] == kWin)
                        for (Vertex v = 0; v < g.arena.size(); ++v) avoid[v] = avoid[v] || g.arena.is_target(i, v);
                for (Vertex v : s.lasso.cycle) CHECK_FALSE(avoid[v]);
                CHECK(has_clean_cycle(g.arena, s.lasso.cycle, avoid));
            }
        }
    }
    CHECK(seen > 100);
}
