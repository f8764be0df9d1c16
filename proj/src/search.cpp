#include "csolve/search.hpp"

#include <algorithm>
#include <cassert>

namespace csp {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Sat: return "SAT";
        case Verdict::Unsat: return "UNSAT";
        case Verdict::Timeout: return "TIMEOUT";
        case Verdict::NodeLimit: return "NODELIMIT";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

enum class Flow { Continue, Abort };  // Continue = subtree exhausted, keep searching

class Engine {
public:
    Engine(const Problem& p, const SearchConfig& cfg, SearchState state)
        : prob_(p), cfg_(cfg), state_(std::move(state)), weights_(p.constraints.size()) {}

    SearchReport run(const PropagationResult& root) {
        start_ = Clock::now();
        if (cfg_.time_limit_s) deadline_ = *start_ + std::chrono::duration_cast<Clock::duration>(
                                                std::chrono::duration<double>(*cfg_.time_limit_s));
        note_events(root);
        if (root.consistent) {
            if (cfg_.policy.scheme == Scheme::DWay)
                dway(0);
            else
                descend(0);
        }
        finish();
        return std::move(report_);
    }

private:
    void note_events(const PropagationResult& res) {
        apply_conflict_events(weights_, res);
        assert(weights_.conserved());
    }

    // returns false when a limit stops the search before the decision applies
    bool count_node() {
        if (cfg_.node_limit && report_.nodes >= *cfg_.node_limit) {
            stop_ = Verdict::NodeLimit;
            return false;
        }
        ++report_.nodes;
        if (deadline_ && (report_.nodes & 1023) == 0 && Clock::now() >= *deadline_) {
            stop_ = Verdict::Timeout;
            return false;
        }
        return true;
    }

    void record(bool is_assign, VarId x, Value a, int depth) {
        if (cfg_.record_trace) report_.trace.push_back({is_assign, x, a, depth});
    }

    Flow handle_solution() {
        ++report_.solution_count;
        if (cfg_.mode != SearchMode::CountSolutions)
            report_.solutions.push_back(state_.full_assignment());
        if (cfg_.mode == SearchMode::FirstSolution) return Flow::Abort;
        return Flow::Continue;  // exhaustive modes treat a solution as a failure
    }

    Flow descend(int depth) {
        if (state_.unassigned_count() == 0) return handle_solution();
        VarId x = select_variable(cfg_.voh, state_, weights_);
        return choice_point(x, depth);
    }

    // 2-way choice point on x: left assigns its first live value, right
    // removes it; a successful right branch re-selects the variable
    Flow choice_point(VarId x, int depth) {
        const int idx = state_.first_live_index(x);
        const Value a = state_.value_at(x, idx);

        Level mark = state_.push_level();
        if (!count_node()) return Flow::Abort;
        record(true, x, a, depth);
        state_.assign(x, idx);
        const VarId seed[] = {x};
        PropagationResult res = propagate(state_, seed);
        note_events(res);
        Flow flow = res.consistent ? descend(depth + 1) : Flow::Continue;
        state_.undo_to(mark);
        if (flow == Flow::Abort) return Flow::Abort;

        if (!count_node()) return Flow::Abort;
        record(false, x, a, depth);
        state_.remove_value(x, idx);
        if (state_.live_count(x) == 0) return Flow::Continue;  // removal wiped the domain
        res = propagate(state_, seed);
        note_events(res);
        if (!res.consistent) return Flow::Continue;
        return choice_point(right_branch_variable(x), depth + 1);
    }

    VarId right_branch_variable(VarId x) {
        if (cfg_.policy.scheme == Scheme::RestrictedTwoWay) return x;
        VarId y = select_variable(cfg_.voh, state_, weights_, x);
        if (y == x) return x;
        VarId next = y;
        if (cfg_.policy.scheme == Scheme::Adaptive) {
            RightBranchContext ctx;
            ctx.current = x;
            ctx.suggested = y;
            ctx.primary_current = score(cfg_.voh, state_, weights_, x);
            ctx.primary_suggested = score(cfg_.voh, state_, weights_, y);
            ctx.secondary_current = score(cfg_.policy.secondary, state_, weights_, x);
            ctx.secondary_suggested = score(cfg_.policy.secondary, state_, weights_, y);
            next = decide_right_branch(cfg_.policy, ctx);
        }
        if (next != x) {
            ++report_.vc;
            report_.dis_samples.push_back(rank_distance(state_, weights_, x, next, cfg_.voh));
        } else {
            ++report_.vc_blocked;
        }
        return next;
    }

    // d-way: one variable per level, one node per tried assignment; a failed
    // value is removed without separate propagation (the next assignment's
    // propagation subsumes it)
    Flow dway(int depth) {
        if (state_.unassigned_count() == 0) return handle_solution();
        VarId x = select_variable(cfg_.voh, state_, weights_);
        while (state_.live_count(x) > 0) {
            const int idx = state_.first_live_index(x);
            const Value a = state_.value_at(x, idx);
            Level mark = state_.push_level();
            if (!count_node()) return Flow::Abort;
            record(true, x, a, depth);
            state_.assign(x, idx);
            const VarId seed[] = {x};
            PropagationResult res = propagate(state_, seed);
            note_events(res);
            Flow flow = res.consistent ? dway(depth + 1) : Flow::Continue;
            state_.undo_to(mark);
            if (flow == Flow::Abort) return Flow::Abort;
            state_.remove_value(x, idx);
        }
        return Flow::Continue;
    }

    void finish() {
        if (stop_)
            report_.verdict = *stop_;
        else
            report_.verdict = report_.solution_count > 0 ? Verdict::Sat : Verdict::Unsat;
        report_.dwo_count = weights_.dwo_total;
        report_.deletion_event_count = weights_.deletion_event_total;
        report_.weights = weights_;
        report_.wall_time_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - *start_).count();
    }

    const Problem& prob_;
    const SearchConfig& cfg_;
    SearchState state_;
    WeightStore weights_;
    SearchReport report_;
    std::optional<Verdict> stop_;
    std::optional<Clock::time_point> start_;
    std::optional<Clock::time_point> deadline_;
};

struct BruteForce {
    const Problem& prob;
    std::int64_t count = 0;
    std::vector<std::vector<Value>>* sink = nullptr;
    std::vector<Value> partial;
    std::vector<std::vector<ConId>> by_last_var;  // constraints checkable at depth

    explicit BruteForce(const Problem& p) : prob(p) {
        partial.resize(p.num_variables());
        by_last_var.resize(p.num_variables());
        for (const Constraint& c : p.constraints) {
            VarId last = *std::max_element(c.scope.begin(), c.scope.end());
            by_last_var[last].push_back(c.id);
        }
    }

    void enumerate(int depth) {
        if (depth == prob.num_variables()) {
            ++count;
            if (sink) sink->push_back(partial);
            return;
        }
        std::vector<Value> scratch;
        for (Value a : prob.variables[depth].initial_domain) {
            partial[depth] = a;
            bool ok = true;
            for (ConId c : by_last_var[depth]) {
                const Constraint& con = prob.constraints[c];
                scratch.clear();
                for (VarId v : con.scope) scratch.push_back(partial[v]);
                if (!constraint_check(con, scratch)) {
                    ok = false;
                    break;
                }
            }
            if (ok) enumerate(depth + 1);
        }
    }
};

void check_space(const Problem& p, std::int64_t cap) {
    double space = 1;
    for (const auto& v : p.variables) space *= static_cast<double>(v.initial_domain.size());
    if (space > static_cast<double>(cap))
        throw std::invalid_argument("brute force: assignment space exceeds cap");
}

}  // namespace

SearchReport solve(const Problem& problem, const SearchConfig& config) {
    if (config.policy.scheme == Scheme::Adaptive && config.policy.e < 0)
        throw std::invalid_argument("solve: adaptive threshold e must be >= 0");
    if (config.policy.scheme == Scheme::Adaptive && !higher_is_better(config.policy.secondary))
        throw std::invalid_argument("solve: secondary advisor must have a higher-is-better orientation");
    auto [state, root] = establish_root_consistency(problem);
    Engine engine(problem, config, std::move(state));
    return engine.run(root);
}

std::int64_t brute_force_count(const Problem& problem, std::int64_t cap) {
    check_space(problem, cap);
    BruteForce bf(problem);
    bf.enumerate(0);
    return bf.count;
}

std::vector<std::vector<Value>> brute_force_solutions(const Problem& problem, std::int64_t cap) {
    check_space(problem, cap);
    std::vector<std::vector<Value>> out;
    BruteForce bf(problem);
    bf.sink = &out;
    bf.enumerate(0);
    return out;
}

}  // namespace csp
