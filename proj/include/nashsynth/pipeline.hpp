#pragma once

#include <string>
#include <vector>

#include "nashsynth/simplify.hpp"
#include "nashsynth/synth.hpp"
#include "nashsynth/verify.hpp"

namespace nashsynth {

// simplify -> synth -> verify on an accepted NE outcome
struct PipelineResult {
    SimplifiedOutcome simplified;
    StrategyProfile profile;
    std::vector<BoundVerdict> bounds;
    NEReport report;
    bool bounds_ok = true;
    bool outcome_matches = true;  // profile outcome equals the simplified lasso
};

PipelineResult run_pipeline(const Game& g, const Lasso& ne, std::size_t budget = product_budget());

struct SelfCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<SelfCheck> run_selftest();

}  // namespace nashsynth
