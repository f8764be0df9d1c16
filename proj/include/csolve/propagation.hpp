#pragma once

#include "csolve/state.hpp"

namespace csp {

struct ReviseOutcome {
    int deleted = 0;
    bool wipeout = false;
};

/// One revise call that deleted count >= 1 values from `variable`.
struct DeletionEvent {
    ConId constraint;
    VarId variable;
    int count;
};

struct PropagationResult {
    bool consistent = true;
    ConId wipeout_constraint = -1;  // constraint whose revise emptied the domain
    VarId wipeout_variable = -1;
    std::vector<DeletionEvent> deletions;
};

/// GAC-3 revision of x against c: removes every live value of x with no
/// supporting tuple of live values over the rest of c's scope. Removals
/// are trailed.
ReviseOutcome revise(SearchState& state, ConId c, VarId x);

/// Runs revision-queue propagation to a fixpoint or the first wipeout.
/// `seeds` are variables whose domains just changed (changes already
/// applied and trailed). Queue is FIFO, seeded in constraint-id order;
/// weights are never touched here — conflict events are returned for the
/// caller to apply.
PropagationResult propagate(SearchState& state, std::span<const VarId> seeds);

/// Builds the initial state and establishes GAC from scratch (every
/// (constraint, variable) pair revised at least once). A wipeout here
/// proves unsatisfiability.
std::pair<SearchState, PropagationResult> establish_root_consistency(const Problem& p);

}  // namespace csp
