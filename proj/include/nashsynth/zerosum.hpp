#pragma once

#include "nashsynth/arena.hpp"

namespace nashsynth {

// Two-player view of an arena: the protagonist (side 1) against everyone else (side 2).
struct CoalitionView {
    const Arena* arena;
    int protagonist;

    CoalitionView(const Arena& a, int player) : arena(&a), protagonist(player) {}
    int side(Vertex v) const { return arena->owner[v] == protagonist ? 1 : 2; }
};

using Strategy = std::vector<Vertex>;  // -1 where undefined

struct AttractorResult {
    Region region;
    Strategy strategy;       // defined on side-owned vertices of region \ target
    std::vector<int> rank;   // -1 outside region
};

AttractorResult attractor(const CoalitionView& view, const Region& target, int side);
// attractor inside the subgame induced by `arena_part` (edges leaving it are ignored)
AttractorResult attractor_in(const CoalitionView& view, const Region& target, int side, const Region& arena_part);

struct QualSolution {
    Region win1, win2;
    Strategy strat1, strat2;
};

QualSolution solve_qualitative(const CoalitionView& view, Objective kind, const Region& target);

struct SPathSolution {
    std::vector<Cost> value;
    Strategy opt1;
    Strategy punish2;
};

class SolverError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

std::vector<Cost> spath_values(const CoalitionView& view, const Region& target, const Weights& w);
Strategy spath_p1_optimal(const CoalitionView& view, const Region& target, const Weights& w,
                          const std::vector<Cost>& values);
// alpha is accepted for interface fidelity; on finite arenas the punisher does not depend on it
Strategy spath_punisher(const CoalitionView& view, const Region& target, const Weights& w,
                        const std::vector<Cost>& values, Cost alpha = kInf);
SPathSolution solve_spath(const CoalitionView& view, const Region& target, const Weights& w);

// strategy of the coalition that punishes `player` in the game's coalition game
Strategy punishing_strategy(const Game& g, int player);

}  // namespace nashsynth
