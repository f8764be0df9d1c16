#include "csolve/heuristics.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace csp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// sum of weights over constraints involving x and at least one other
// unassigned variable; `weights` null means count constraints (dynamic degree)
std::int64_t weighted_degree(const SearchState& s, const std::vector<std::int64_t>* weights,
                             VarId x) {
    const Problem& p = s.problem();
    std::int64_t sum = 0;
    for (ConId c : p.constraints_of[x]) {
        bool other_unassigned = false;
        for (VarId v : p.constraints[c].scope)
            if (v != x && !s.is_assigned(v)) {
                other_unassigned = true;
                break;
            }
        if (other_unassigned) sum += weights ? (*weights)[c] : 1;
    }
    return sum;
}

double ratio_or_inf(double num, double den) { return den == 0 ? kInf : num / den; }

}  // namespace

bool higher_is_better(Heuristic h) {
    return h == Heuristic::Wdeg || h == Heuristic::DomAdvisor;
}

const char* heuristic_name(Heuristic h) {
    switch (h) {
        case Heuristic::Lex: return "lex";
        case Heuristic::Dom: return "dom";
        case Heuristic::DomDdeg: return "ddeg";
        case Heuristic::DomWdeg: return "wdeg";
        case Heuristic::DomAlldel: return "alldel";
        case Heuristic::Wdeg: return "wdeg-advisor";
        case Heuristic::DomAdvisor: return "dom-advisor";
    }
    return "?";
}

bool better(ScoreValue a, ScoreValue b) {
    assert(a.higher_better == b.higher_better && "mixed score orientations");
    return a.higher_better ? a.value > b.value : a.value < b.value;
}

bool WeightStore::conserved() const {
    std::int64_t wsum = 0, asum = 0;
    for (std::int64_t w : wdeg_weights) {
        if (w < 1) return false;
        wsum += w;
    }
    for (std::int64_t w : alldel_weights) {
        if (w < 1) return false;
        asum += w;
    }
    const auto n = static_cast<std::int64_t>(wdeg_weights.size());
    return wsum - n == dwo_total && asum - n == deletion_event_total;
}

ScoreValue score(Heuristic h, const SearchState& state, const WeightStore& weights, VarId x) {
    if (state.is_assigned(x)) throw std::invalid_argument("score: variable is assigned");
    const double dom = state.live_count(x);
    switch (h) {
        case Heuristic::Lex: return {static_cast<double>(x), false};
        case Heuristic::Dom: return {dom, false};
        case Heuristic::DomDdeg:
            return {ratio_or_inf(dom, static_cast<double>(weighted_degree(state, nullptr, x))),
                    false};
        case Heuristic::DomWdeg:
            return {ratio_or_inf(
                        dom, static_cast<double>(weighted_degree(state, &weights.wdeg_weights, x))),
                    false};
        case Heuristic::DomAlldel:
            return {ratio_or_inf(dom, static_cast<double>(weighted_degree(
                                          state, &weights.alldel_weights, x))),
                    false};
        case Heuristic::Wdeg:
            return {static_cast<double>(weighted_degree(state, &weights.wdeg_weights, x)), true};
        case Heuristic::DomAdvisor: return {-dom, true};
    }
    return {0, false};
}

VarId select_variable(Heuristic h, const SearchState& state, const WeightStore& weights,
                      std::optional<VarId> prefer) {
    VarId best = -1;
    ScoreValue best_score{};
    for (VarId x = 0; x < state.num_vars(); ++x) {
        if (state.is_assigned(x)) continue;
        ScoreValue s = score(h, state, weights, x);
        if (best < 0 || better(s, best_score) ||
            (s.value == best_score.value && prefer && x == *prefer)) {
            best = x;
            best_score = s;
        }
    }
    if (best < 0) throw std::invalid_argument("select_variable: no unassigned variable");
    return best;
}

void apply_conflict_events(WeightStore& weights, const PropagationResult& result) {
    for (const DeletionEvent& ev : result.deletions) {
        weights.alldel_weights[ev.constraint] += 1;
        weights.deletion_event_total += 1;
    }
    if (!result.consistent) {
        weights.wdeg_weights[result.wipeout_constraint] += 1;
        weights.dwo_total += 1;
    }
}

int rank_distance(const SearchState& state, const WeightStore& weights, VarId x, VarId y,
                  Heuristic ranking) {
    if (x == y) return 0;
    std::vector<std::pair<ScoreValue, VarId>> order;
    for (VarId v = 0; v < state.num_vars(); ++v)
        if (!state.is_assigned(v)) order.emplace_back(score(ranking, state, weights, v), v);
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.first.value != b.first.value) return better(a.first, b.first);
        return a.second < b.second;
    });
    int rank_x = 0, rank_y = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i].second == x) rank_x = static_cast<int>(i) + 1;
        if (order[i].second == y) rank_y = static_cast<int>(i) + 1;
    }
    assert(rank_x > 0 && rank_y > 0 && "rank_distance: variable assigned");
    return rank_x - rank_y;
}

}  // namespace csp
