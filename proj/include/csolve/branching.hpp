#pragma once

#include "csolve/heuristics.hpp"

namespace csp {

enum class Scheme { DWay, TwoWay, RestrictedTwoWay, Adaptive };
enum class AdaptiveRule { Sdiff, Cadv, Conj, Disj };

struct BranchingPolicy {
    Scheme scheme = Scheme::TwoWay;
    AdaptiveRule rule = AdaptiveRule::Sdiff;  // Adaptive only
    double e = 0.1;                           // Sdiff / Conj / Disj threshold
    Heuristic secondary = Heuristic::Wdeg;    // Cadv / Conj / Disj advisor
};

/// Snapshot taken at a successful right branch when the heuristic
/// suggests moving from the current variable x to a different variable y.
struct RightBranchContext {
    VarId current = -1;    // x
    VarId suggested = -1;  // y, selected with prefer = x
    ScoreValue primary_current;
    ScoreValue primary_suggested;
    ScoreValue secondary_current;
    ScoreValue secondary_suggested;
};

/// |score(y) - score(x)| with sentinel arithmetic: one infinite operand
/// yields an infinite gap, two infinite operands yield 0.
double score_gap(ScoreValue a, ScoreValue b);

/// Which variable to branch on after a successful right branch: the
/// current x or the suggested y. Pure function of (policy, ctx).
VarId decide_right_branch(const BranchingPolicy& policy, const RightBranchContext& ctx);

}  // namespace csp
