#include "nashsynth/characterize.hpp"

#include <algorithm>
#include <tuple>

#include "nashsynth/zerosum.hpp"

namespace nashsynth {

const char* reason_name(ViolationReason r) {
    return r == ViolationReason::InWinningRegion ? "InWinningRegion" : "ValueBeatsSuffixCost";
}

namespace {

void finish(CharacterisationReport& r) {
    std::stable_sort(r.violations.begin(), r.violations.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.position, a.player) < std::tie(b.position, b.player);
    });
    r.is_ne_outcome = r.violations.empty();
}

void require_play(const Game& g, const Lasso& l) {
    if (!is_play(g.arena, l)) throw std::invalid_argument("lasso is not a play of the arena");
}

// scan positions [0, upto] against the winning region of `player`
void scan_region(const Game& g, const Lasso& l, int player, Objective kind, long long upto,
                 CharacterisationReport& r) {
    CoalitionView view(g.arena, player);
    QualSolution s = solve_qualitative(view, kind, g.arena.target[player - 1]);
    History h = l.unrolled();
    for (long long j = 0; j < static_cast<long long>(h.size()) && j <= upto; ++j)
        if (s.win1[h[j]]) r.violations.push_back({player, j, ViolationReason::InWinningRegion});
}

}  // namespace

CharacterisationReport check_qual_outcome(const Game& g, const Lasso& l) {
    require_play(g, l);
    for (auto o : g.objective)
        if (o != Objective::Reach && o != Objective::Buchi && o != Objective::CoBuchi)
            throw MixedObjectives("qualitative check needs reach, buchi or cobuchi objectives");
    CharacterisationReport r;
    r.costs = eval_profile(g, l);
    for (int i = 1; i <= g.n(); ++i)
        if (r.costs.cost[i - 1] != kWin) scan_region(g, l, i, g.objective[i - 1], l.length(), r);
    finish(r);
    return r;
}

CharacterisationReport check_safety_outcome(const Game& g, const Lasso& l) {
    require_play(g, l);
    for (auto o : g.objective)
        if (o != Objective::Safe) throw MixedObjectives("safety check needs safe objectives only");
    CharacterisationReport r;
    r.costs = eval_profile(g, l);
    for (int i = 1; i <= g.n(); ++i) {
        if (r.costs.cost[i - 1] == kWin) continue;
        scan_region(g, l, i, Objective::Safe, first_visit(g.arena, l, i), r);
    }
    finish(r);
    return r;
}

CharacterisationReport check_spath_outcome(const Game& g, const Lasso& l) {
    require_play(g, l);
    for (auto o : g.objective)
        if (o != Objective::SPath) throw MixedObjectives("shortest-path check needs spath objectives only");
    CharacterisationReport r;
    r.costs = eval_profile(g, l);
    History h = l.unrolled();
    for (int i = 1; i <= g.n(); ++i) {
        if (r.costs.cost[i - 1] == kInf) {
            scan_region(g, l, i, Objective::Reach, l.length(), r);
            continue;
        }
        const Weights& w = g.weights(i);
        CoalitionView view(g.arena, i);
        auto val = spath_values(view, g.arena.target[i - 1], w);
        long long f = first_visit(g.arena, l, i);
        // suffix cost from j to f, accumulated backwards
        Cost acc = 0;
        for (long long j = f; j >= 0; --j) {
            if (j < f) acc += w[h[j]][g.arena.edge_index(h[j], h[j + 1])];
            if (acc > val[h[j]]) r.violations.push_back({i, j, ViolationReason::ValueBeatsSuffixCost});
        }
    }
    finish(r);
    return r;
}

CharacterisationReport check_outcome(const Game& g, const Lasso& l) {
    bool any_safe = false, any_spath = false, all_safe = true, all_spath = true;
    for (auto o : g.objective) {
        any_safe |= o == Objective::Safe;
        any_spath |= o == Objective::SPath;
        all_safe &= o == Objective::Safe;
        all_spath &= o == Objective::SPath;
    }
    if (all_spath) return check_spath_outcome(g, l);
    if (all_safe) return check_safety_outcome(g, l);
    if (any_safe) throw MixedObjectives("games mixing safe with other objectives are not characterised");
    if (any_spath) throw MixedObjectives("games mixing spath with qualitative objectives are not characterised");
    return check_qual_outcome(g, l);
}

}  // namespace nashsynth
