#pragma once

#include "nashsynth/arena.hpp"

namespace nashsynth {

enum class ViolationReason { InWinningRegion, ValueBeatsSuffixCost };

struct Violation {
    int player;
    long long position;  // index into prefix followed by one cycle copy
    ViolationReason reason;
};

struct CharacterisationReport {
    bool is_ne_outcome = true;
    std::vector<Violation> violations;
    CostProfile costs;
};

class MixedObjectives : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

CharacterisationReport check_qual_outcome(const Game& g, const Lasso& l);
CharacterisationReport check_safety_outcome(const Game& g, const Lasso& l);
CharacterisationReport check_spath_outcome(const Game& g, const Lasso& l);
// dispatches on the objective kinds; throws MixedObjectives for unsupported mixtures
CharacterisationReport check_outcome(const Game& g, const Lasso& l);

const char* reason_name(ViolationReason r);

}  // namespace nashsynth
