#pragma once

#include <optional>

#include "csolve/propagation.hpp"

namespace csp {

/// Variable ordering heuristics. Lex..DomAlldel minimize their score;
/// Wdeg and DomAdvisor are secondary-advisor forms where greater is better.
enum class Heuristic { Lex, Dom, DomDdeg, DomWdeg, DomAlldel, Wdeg, DomAdvisor };

bool higher_is_better(Heuristic h);
const char* heuristic_name(Heuristic h);

struct ScoreValue {
    double value = 0;
    bool higher_better = false;
};

/// Strict "a is better than b"; both sides must share an orientation.
bool better(ScoreValue a, ScoreValue b);

/// Per-constraint conflict weights. wdeg weights count domain wipeouts,
/// alldel weights count value-deleting revisions; both start at 1 and both
/// ledgers are maintained on every run regardless of the active heuristic.
struct WeightStore {
    std::vector<std::int64_t> wdeg_weights;
    std::vector<std::int64_t> alldel_weights;
    std::int64_t dwo_total = 0;
    std::int64_t deletion_event_total = 0;

    WeightStore() = default;
    explicit WeightStore(std::size_t constraint_count)
        : wdeg_weights(constraint_count, 1), alldel_weights(constraint_count, 1) {}

    /// sum(weights) - constraint_count must equal the event totals.
    bool conserved() const;

    bool operator==(const WeightStore&) const = default;
};

/// Score of an unassigned variable. Ratio heuristics with a zero
/// denominator return the +infinity sentinel ("choose last").
ScoreValue score(Heuristic h, const SearchState& state, const WeightStore& weights, VarId x);

/// Best-scoring unassigned variable; ties go to `prefer` when it is among
/// the tied best, otherwise to the lowest id.
VarId select_variable(Heuristic h, const SearchState& state, const WeightStore& weights,
                      std::optional<VarId> prefer = std::nullopt);

void apply_conflict_events(WeightStore& weights, const PropagationResult& result);

/// Rank of x minus rank of y (1-based) when the unassigned variables are
/// ordered by `ranking` score, ties by id.
int rank_distance(const SearchState& state, const WeightStore& weights, VarId x, VarId y,
                  Heuristic ranking = Heuristic::DomWdeg);

}  // namespace csp
