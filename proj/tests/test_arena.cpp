#include <doctest.h>

#include "common.hpp"
#include "nashsynth/verify.hpp"
#include "oracles.hpp"

using namespace nashsynth;
using namespace testing_util;

TEST_CASE("validate_arena accepts the bundled arenas") {
    for (const auto& f : bundled_fixtures()) CHECK_NOTHROW(parse_game(f.text));
    Game g = fixture_game("fig1a");
    CHECK(g.arena.size() == 5);
    CHECK(g.arena.w(V(g, "v0"), V(g, "t12")) == 3);
    CHECK(g.arena.w(V(g, "v1"), V(g, "t1")) == 1);
}

TEST_CASE("single self-loop arena is legal") {
    Arena a;
    a.num_players = 1;
    a.owner = {1};
    a.succ = {{0}};
    CHECK_NOTHROW(validate_arena(a));
}

TEST_CASE("validate_arena rejects broken arenas") {
    Game g = fixture_game("fig1a");
    Arena a = g.arena;
    Vertex v2 = V(g, "v2");
    a.succ[v2].clear();
    a.weight[v2].clear();
    try {
        validate_arena(a);
        FAIL("expected a deadlock error");
    } catch (const ArenaError& e) {
        CHECK(e.kind == ArenaError::Kind::DeadlockVertex);
        CHECK(e.vertex == v2);
    }
    Arena b = g.arena;
    b.owner[0] = 3;
    CHECK_THROWS_AS(validate_arena(b), ArenaError);
    Arena c = g.arena;
    c.succ[0].push_back(c.succ[0][0]);
    c.weight[0].push_back(0);
    try {
        validate_arena(c);
        FAIL("expected a duplicate edge error");
    } catch (const ArenaError& e) {
        CHECK(e.kind == ArenaError::Kind::DuplicateEdge);
    }
    Arena d = g.arena;
    d.succ[0][0] = 99;
    try {
        validate_arena(d);
        FAIL("expected a dangling edge error");
    } catch (const ArenaError& e) {
        CHECK(e.kind == ArenaError::Kind::DanglingEdge);
    }
}

TEST_CASE("eval_cost on the fixtures") {
    Game g = fixture_game("fig1a");
    Lasso l = L(g, "v0,t12,v1|v2");
    CHECK(eval_cost(g, l, 1) == 3);
    CHECK(eval_cost(g, l, 2) == 3);
    CHECK(eval_cost(g, L(g, "v0|v1,t1"), 2) == kInf);
    Region none(g.arena.size(), 0);
    CHECK(eval_cost(g.arena, l, Objective::Safe, 1) == kLose);
    Arena a = g.arena;
    a.target[0] = none;
    CHECK(eval_cost(a, l, Objective::Safe, 1) == kWin);

    Game b = fixture_game("fig5a_buchi");
    CHECK(eval_cost(b, L(b, "v0,v1|v2"), 2) == kWin);
    CHECK(eval_cost(b, L(b, "v0,v1|v2"), 1) == kLose);
}

TEST_CASE("shortest-path cost is zero when the play starts in the target") {
    Game g = fixture_game("loop");
    CHECK(eval_cost(g, L(g, "|v"), 1) == 0);
}

TEST_CASE("canonical lasso form") {
    Game g = fixture_game("fig5b");
    // unrolled cycle and misaligned prefix collapse to the same form
    Lasso a = L(g, "v0,v1,v3|v0,v1,v3,v0,v1,v3");
    Lasso b = L(g, "|v0,v1,v3");
    CHECK(canonical(a) == canonical(b));
    CHECK(S(g, canonical(a)) == "|v0,v1,v3");
    Lasso c = L(g, "v0|v1,v3,v0");
    CHECK(canonical(c) == canonical(b));
    CHECK(same_play(c, b));
    CHECK(canonical(canonical(c)) == canonical(c));
    CHECK(shortest_form(c).prefix.empty());
}

TEST_CASE("simple lasso test ignores the chosen representation") {
    Game g = fixture_game("fig5b");
    CHECK(is_simple_lasso(L(g, "v0|v1,v3,v0")));
    CHECK(is_simple_lasso(L(g, "|v0,v1,v3")));
    CHECK_FALSE(is_simple_lasso(L(g, "v0,v1,v3|v0,v2,v3")));
}

TEST_CASE("vispos, satpl and first visits") {
    Game g = fixture_game("fig3a");
    Lasso l = L(g, "v0,v1,v2,t1,v2,v1,v0|t2");
    CHECK(first_visit(g.arena, l, 1) == 3);
    CHECK(first_visit(g.arena, l, 2) == 7);
    CHECK(first_visit(g.arena, l, 3) == -1);
    CHECK(vispos(g.arena, l) == std::vector<long long>{3, 7});
    CHECK(satpl(g, l) == std::vector<int>{1, 2});
}

TEST_CASE("decompositions reconstruct their lasso") {
    Game g = fixture_game("fig3a");
    Decomposition d;
    d.segments = {{V(g, "v0"), V(g, "v1"), V(g, "v2"), V(g, "t1")}};
    d.tail = L(g, "t1,v2,v1,v0|t2");
    CHECK(reconstruct(d) == L(g, "v0,v1,v2,t1,v2,v1,v0|t2"));
    CHECK(d.segment_vertices().size() == 2);
}

TEST_CASE("outcome of a trivial machine on a self-loop") {
    Game g = fixture_game("loop");
    StrategyProfile p{{memoryless_machine(g.arena, 1, {0})}};
    auto [l, c] = outcome_of_profile(g, p, 0);
    CHECK(l.prefix.empty());
    CHECK(l.cycle == History{0});
    CHECK(c.cost[0] == 0);
}

TEST_CASE("random lassos: canonical form and objective dualities") {
    std::mt19937 rng(7);
    for (int k = 0; k < 200; ++k) {
        Game g = oracle::random_game(rng, Objective::SPath);
        StrategyProfile p = k % 2 ? oracle::random_two_state(rng, g.arena) : oracle::random_memoryless(rng, g.arena);
        Lasso l = outcome_of_profile(g, p, 0).first;
        CHECK(consistent_with(g, p, 0, l));
        Lasso c = canonical(l);
        CHECK(canonical(c) == c);
        CHECK(same_play(c, l));
        Lasso raw = l;
        raw.prefix.insert(raw.prefix.end(), l.cycle.begin(), l.cycle.end());
        raw.cycle.insert(raw.cycle.end(), l.cycle.begin(), l.cycle.end());
        CHECK(canonical(raw) == c);
        for (int i = 1; i <= g.n(); ++i) {
            const Arena& a = g.arena;
            for (auto kind : {Objective::Reach, Objective::Safe, Objective::Buchi, Objective::CoBuchi, Objective::SPath})
                CHECK(eval_cost(a, raw, kind, i) == eval_cost(a, c, kind, i));
            CHECK((eval_cost(a, c, Objective::Buchi, i) == kWin) != (eval_cost(a, c, Objective::CoBuchi, i) == kWin));
            CHECK((eval_cost(a, c, Objective::Reach, i) == kWin) != (eval_cost(a, c, Objective::Safe, i) == kWin));
            CHECK((eval_cost(a, c, Objective::SPath, i) != kInf) == (eval_cost(a, c, Objective::Reach, i) == kWin));
        }
    }
}
