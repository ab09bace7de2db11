#pragma once

#include "nashsynth/arena.hpp"

namespace nashsynth {

class NotAnNEOutcome : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SimplifiedOutcome {
    Lasso lasso;  // canonical
    Decomposition decomposition;
    Objective cls = Objective::Reach;
    int k = 0;                  // finite segments (reach/spath/safe), period (buchi)
    long long lstar = -1;       // cobuchi phase split
    std::vector<long long> vispos;
    std::vector<int> satpl;
};

SimplifiedOutcome simplify_spath(const Game& g, const Lasso& ne);
SimplifiedOutcome simplify_reach(const Game& g, const Lasso& ne);
SimplifiedOutcome simplify_safety(const Game& g, const Lasso& ne);
SimplifiedOutcome simplify_buchi(const Game& g, const Lasso& ne);
SimplifiedOutcome simplify_cobuchi(const Game& g, const Lasso& ne);
SimplifiedOutcome simplify(const Game& g, const Lasso& ne);

// graph helpers shared with tests and synthesis
// least (weight, edges) history from `from` to `to` inside `allowed`, lexicographically least among ties
std::optional<History> min_history(const Arena& a, Vertex from, const Region& to, const Region& allowed,
                                   const Weights* w = nullptr);
// shortest simple cycle t ... t inside `allowed`, lexicographically least among ties
std::optional<History> shortest_cycle(const Arena& a, Vertex t, const Region& allowed);
long long cobuchi_lstar(const Game& g, const Lasso& l);

}  // namespace nashsynth
