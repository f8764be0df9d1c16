#pragma once

#include <chrono>

#include "csolve/branching.hpp"

namespace csp {

enum class SearchMode { FirstSolution, AllSolutions, CountSolutions };
enum class Verdict { Sat, Unsat, Timeout, NodeLimit };

const char* verdict_name(Verdict v);

/// One applied branching decision. Removals occur only in the 2-way family.
struct Decision {
    bool is_assign = true;
    VarId var = -1;
    Value value = 0;
    int depth = 0;

    bool operator==(const Decision&) const = default;
};

struct SearchConfig {
    Heuristic voh = Heuristic::DomWdeg;
    BranchingPolicy policy;
    SearchMode mode = SearchMode::FirstSolution;
    std::optional<std::int64_t> node_limit;
    std::optional<double> time_limit_s;
    std::uint64_t seed = 0;  // reserved for randomized tie-breaking, unused
    bool record_trace = true;
};

struct SearchReport {
    Verdict verdict = Verdict::Unsat;
    std::vector<std::vector<Value>> solutions;  // kept for First/AllSolutions
    std::int64_t solution_count = 0;
    std::int64_t nodes = 0;
    std::int64_t vc = 0;          // followed variable changes at right branches
    std::int64_t vc_blocked = 0;  // suggested changes vetoed by the adaptive rule
    std::vector<int> dis_samples; // rank distance per followed change
    std::int64_t dwo_count = 0;
    std::int64_t deletion_event_count = 0;
    double wall_time_ms = 0;
    std::vector<Decision> trace;
    WeightStore weights;  // final conflict weights
};

/// Depth-first MAC search under the configured branching scheme and
/// variable ordering heuristic. Deterministic: identical inputs yield
/// identical reports except for wall_time_ms.
SearchReport solve(const Problem& problem, const SearchConfig& config);

/// Exhaustive oracle: counts full assignments passing every constraint.
/// Throws std::invalid_argument when the assignment space exceeds `cap`.
std::int64_t brute_force_count(const Problem& problem, std::int64_t cap = 10'000'000);
std::vector<std::vector<Value>> brute_force_solutions(const Problem& problem,
                                                      std::int64_t cap = 10'000'000);

}  // namespace csp
