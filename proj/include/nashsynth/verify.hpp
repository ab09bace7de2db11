#pragma once

#include <cstddef>

#include "nashsynth/arena.hpp"

namespace nashsynth {

class ProductTooLarge : public std::runtime_error {
public:
    explicit ProductTooLarge(std::size_t b)
        : std::runtime_error("product exceeds budget of " + std::to_string(b) + " states"), budget(b) {}
    std::size_t budget;
};

inline constexpr std::size_t kDefaultBudget = 1000000;
// NASHSYNTH_BUDGET overrides the default when set to a positive integer
std::size_t product_budget();

struct BestResponse {
    Cost value = kInf;
    Lasso witness;  // play consistent with the fixed machines achieving `value`
    std::size_t product_states = 0;
};

BestResponse best_response(const Game& g, const StrategyProfile& p, int free_player, Vertex v0,
                           std::size_t budget = product_budget());

struct PlayerVerdict {
    int player = 1;
    Cost outcome = kInf;
    Cost best = kInf;
    std::optional<Lasso> witness;  // set when best < outcome
};

struct NEReport {
    bool is_nash = true;
    Lasso outcome;
    std::vector<PlayerVerdict> players;
};

NEReport is_nash(const Game& g, const StrategyProfile& p, Vertex v0, std::size_t budget = product_budget());

// the lasso is a play where every machine other than free_player's dictates its owner's moves
bool consistent_with(const Game& g, const StrategyProfile& p, int free_player, const Lasso& l);

struct BoundVerdict {
    int player = 1;
    int states = 0;
    long long coarse = 0;
    long long refined = 0;
    bool ok = true;
};

long long coarse_bound(Objective cls, int n, int num_vertices);
long long refined_bound(Objective cls, int n, int num_vertices, int k, int satpl_size);
std::vector<BoundVerdict> check_memory_bounds(const StrategyProfile& p, Objective cls, int n, int num_vertices, int k,
                                              int satpl_size);

}  // namespace nashsynth
