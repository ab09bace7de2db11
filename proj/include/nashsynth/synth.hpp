#pragma once

#include "nashsynth/arena.hpp"
#include "nashsynth/simplify.hpp"
#include "nashsynth/zerosum.hpp"

namespace nashsynth {

// A decomposition segment: a finite simple history or the final (simple lasso) play.
struct Segment {
    History hist;
    std::optional<Lasso> play;

    bool contains(Vertex v) const;
    bool finite() const { return !play.has_value(); }
    Vertex first() const;
    Vertex last() const;
    Vertex after(Vertex v) const;  // vertex following v, -1 if none
};

std::vector<Segment> template_segments(const Decomposition& d);

class TrivialSegment : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Partial machine tracking the last monitored player to move and the current segment.
struct TemplateMachine {
    std::vector<int> I;
    int K = 0;
    std::vector<Segment> segments;
    MealyMachine machine;  // up/nxt entries are -1 where the template leaves them undefined

    int state(int player, int j) const;  // index of (P_player, j), j in 1..K
    int player_of(int state) const;
    int segment_of(int state) const;
};

TemplateMachine build_template(const Arena& a, const std::vector<Segment>& segments, const std::vector<int>& I,
                               int player);
// segment index j (1-based) for which h is j-coherent, 0 if h is not coherent
int coherence_index(const std::vector<Segment>& segments, const History& h);

std::vector<int> monitored_players(const Game& g, const std::vector<int>& satpl);

StrategyProfile synth_reach(const Game& g, const SimplifiedOutcome& s);
StrategyProfile synth_spath(const Game& g, const SimplifiedOutcome& s);
StrategyProfile synth_safety(const Game& g, const SimplifiedOutcome& s);
StrategyProfile synth_buchi(const Game& g, const SimplifiedOutcome& s);
StrategyProfile synth_cobuchi(const Game& g, const SimplifiedOutcome& s);
StrategyProfile synth(const Game& g, const SimplifiedOutcome& s);

Lasso construct_spath_ne_outcome(const Game& g, Vertex v0);

}  // namespace nashsynth
