#include <doctest.h>

#include <cstdlib>
#include <numeric>

#include "common.hpp"
#include "nashsynth/pipeline.hpp"
#include "nashsynth/verify.hpp"
#include "oracles.hpp"

using namespace nashsynth;
using namespace testing_util;

namespace {

StrategyProfile choose(const Game& g, std::initializer_list<std::pair<const char*, const char*>> moves) {
    std::vector<Vertex> choice(g.arena.size());
    for (Vertex v = 0; v < g.arena.size(); ++v) choice[v] = g.arena.succ[v][0];
    for (auto [from, to] : moves) choice[V(g, from)] = V(g, to);
    StrategyProfile p;
    for (int i = 1; i <= g.n(); ++i) p.machines.push_back(memoryless_machine(g.arena, i, choice));
    return p;
}

// relabel every vertex v as perm[v]
std::pair<Game, StrategyProfile> relabel(const Game& g, const StrategyProfile& p, const std::vector<Vertex>& perm) {
    const Arena& a = g.arena;
    const int nv = a.size();
    Game h = g;
    Arena& b = h.arena;
    for (Vertex v = 0; v < nv; ++v) {
        Vertex u = perm[v];
        b.owner[u] = a.owner[v];
        b.names[u] = a.names[v];
        std::vector<std::pair<Vertex, Cost>> e;
        for (std::size_t i = 0; i < a.succ[v].size(); ++i) e.emplace_back(perm[a.succ[v][i]], a.weight[v][i]);
        std::sort(e.begin(), e.end());
        b.succ[u].clear();
        b.weight[u].clear();
        for (auto [w, c] : e) {
            b.succ[u].push_back(w);
            b.weight[u].push_back(c);
        }
        for (int i = 0; i < g.n(); ++i) b.target[i][u] = a.target[i][v];
    }
    if (g.init) h.init = perm[*g.init];
    StrategyProfile q = p;
    for (std::size_t k = 0; k < p.machines.size(); ++k) {
        const MealyMachine& m = p.machines[k];
        MealyMachine& r = q.machines[k];
        for (int s = 0; s < m.num_states(); ++s)
            for (Vertex v = 0; v < nv; ++v) {
                r.up[s][perm[v]] = m.up[s][v];
                r.nxt[s][perm[v]] = m.nxt[s][v] < 0 ? -1 : perm[m.nxt[s][v]];
            }
    }
    return {h, q};
}

}  // namespace

TEST_CASE("best response values on the fixtures") {
    Game g = fixture_game("fig4a");
    auto r = run_pipeline(g, L(g, "v0,v1,v3|t"));
    CHECK(r.report.is_nash);
    BestResponse b = best_response(g, r.profile, 1, V(g, "v0"));
    CHECK(b.value == 5);
    CHECK(b.product_states > 0);
    CHECK(consistent_with(g, r.profile, 1, b.witness));
}

TEST_CASE("a profitable deviation is found with a witness") {
    Game g = fixture_game("fig1b");
    StrategyProfile p = choose(g, {{"v0", "v1"}, {"v1", "v2"}, {"v2", "t1"}, {"v3", "t3"}});
    NEReport r = is_nash(g, p, V(g, "v0"));
    CHECK_FALSE(r.is_nash);
    CHECK(S(g, r.outcome) == "v0,v1|v2,t1");
    const PlayerVerdict& p3 = r.players[2];
    CHECK(p3.outcome == kLose);
    CHECK(p3.best == kWin);
    REQUIRE(p3.witness);
    CHECK(eval_cost(g, *p3.witness, 3) == kWin);
    CHECK(consistent_with(g, p, 3, *p3.witness));
    CHECK_FALSE(consistent_with(g, p, 0, *p3.witness));
    for (int i : {1, 2, 4}) CHECK_FALSE(r.players[i - 1].witness);
}

TEST_CASE("memoryless profiles cannot sustain the buchi outcome") {
    Game g = fixture_game("fig5a_buchi");
    StrategyProfile p = choose(g, {{"v0", "v1"}, {"v1", "v2"}});
    NEReport r = is_nash(g, p, V(g, "v0"));
    CHECK(S(g, r.outcome) == "v0,v1|v2");
    CHECK_FALSE(r.is_nash);
    CHECK(r.players[0].best == kWin);
}

TEST_CASE("memory bounds") {
    CHECK(refined_bound(Objective::Reach, 4, 10, 2, 2) == 4);
    CHECK(refined_bound(Objective::CoBuchi, 2, 5, 0, 0) == 9);
    CHECK(refined_bound(Objective::SPath, 3, 7, 1, 3) == 9);
    CHECK(refined_bound(Objective::Safe, 2, 6, 1, 1) == 3);
    CHECK(refined_bound(Objective::Buchi, 2, 4, 1, 1) == 6);
    CHECK(coarse_bound(Objective::Reach, 4, 10) == 16);
    CHECK(coarse_bound(Objective::SPath, 3, 10) == 15);
    CHECK(coarse_bound(Objective::Buchi, 2, 4) == 10);
    CHECK(coarse_bound(Objective::CoBuchi, 2, 5) == 9);
    Game g = fixture_game("fig4a");
    auto r = run_pipeline(g, L(g, "v0,v1,v3|t"));
    CHECK(r.bounds_ok);
    for (const auto& b : r.bounds) CHECK(b.states <= b.refined);
}

TEST_CASE("product budget") {
    Game g = fixture_game("fig4a");
    auto r = run_pipeline(g, L(g, "v0,v1,v3|t"));
    CHECK_THROWS_AS(is_nash(g, r.profile, 0, 1), ProductTooLarge);
    try {
        best_response(g, r.profile, 1, 0, 2);
        FAIL("expected the budget to be exceeded");
    } catch (const ProductTooLarge& e) {
        CHECK(e.budget == 2);
    }
    ::setenv("NASHSYNTH_BUDGET", "17", 1);
    CHECK(product_budget() == 17);
    ::setenv("NASHSYNTH_BUDGET", "junk", 1);
    CHECK(product_budget() == kDefaultBudget);
    ::unsetenv("NASHSYNTH_BUDGET");
    CHECK(product_budget() == kDefaultBudget);
}

TEST_CASE("verdicts survive a renaming of the vertices") {
    std::mt19937 rng(61);
    for (auto kind : {Objective::Reach, Objective::Safe, Objective::Buchi, Objective::CoBuchi, Objective::SPath}) {
        for (int k = 0; k < 40; ++k) {
            Game g = oracle::random_game(rng, kind);
            StrategyProfile p = k % 2 ? oracle::random_two_state(rng, g.arena) : oracle::random_memoryless(rng, g.arena);
            std::vector<Vertex> perm(g.arena.size());
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            auto [h, q] = relabel(g, p, perm);
            NEReport a = is_nash(g, p, 0), b = is_nash(h, q, perm[0]);
            CHECK(a.is_nash == b.is_nash);
            for (int i = 0; i < g.n(); ++i) {
                CHECK(a.players[i].outcome == b.players[i].outcome);
                CHECK(a.players[i].best == b.players[i].best);
            }
        }
    }
}

TEST_CASE("witnesses are consistent and achieve the reported value") {
    std::mt19937 rng(62);
    for (auto kind : {Objective::Reach, Objective::Safe, Objective::Buchi, Objective::CoBuchi, Objective::SPath}) {
        for (int k = 0; k < 40; ++k) {
            Game g = oracle::random_game(rng, kind);
            StrategyProfile p = oracle::random_two_state(rng, g.arena);
            NEReport r = is_nash(g, p, 0);
            CHECK(consistent_with(g, p, 0, r.outcome));
            for (const auto& v : r.players) {
                CHECK(v.best <= v.outcome);
                CHECK(v.witness.has_value() == (v.best < v.outcome));
                if (v.witness) {
                    CHECK(consistent_with(g, p, v.player, *v.witness));
                    CHECK(eval_cost(g, *v.witness, v.player) == v.best);
                }
            }
        }
    }
}
