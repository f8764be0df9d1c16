#include "csolve/branching.hpp"

#include <cassert>
#include <cmath>

namespace csp {

double score_gap(ScoreValue a, ScoreValue b) {
    if (std::isinf(a.value) && std::isinf(b.value)) return 0;
    return std::fabs(a.value - b.value);
}

VarId decide_right_branch(const BranchingPolicy& policy, const RightBranchContext& ctx) {
    assert(policy.scheme != Scheme::DWay && "d-way has no right-branch decision");
    switch (policy.scheme) {
        case Scheme::RestrictedTwoWay: return ctx.current;
        case Scheme::TwoWay: return ctx.suggested;
        default: break;
    }
    const bool sdiff_ok = score_gap(ctx.primary_suggested, ctx.primary_current) > policy.e;
    const bool cadv_ok = better(ctx.secondary_suggested, ctx.secondary_current);
    bool follow = false;
    switch (policy.rule) {
        case AdaptiveRule::Sdiff: follow = sdiff_ok; break;
        case AdaptiveRule::Cadv: follow = cadv_ok; break;
        case AdaptiveRule::Conj: follow = sdiff_ok && cadv_ok; break;
        case AdaptiveRule::Disj: follow = sdiff_ok || cadv_ok; break;
    }
    return follow ? ctx.suggested : ctx.current;
}

}  // namespace csp
