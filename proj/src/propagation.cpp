#include "csolve/propagation.hpp"

#include <cassert>

namespace csp {

namespace {

// support scan for TableAllow: some listed tuple assigns `a` to position
// x_pos and is live everywhere else
bool allow_supported(const SearchState& s, const Constraint& c, int x_pos, Value a) {
    for (const auto& row : c.tuples) {
        if (row[x_pos] != a) continue;
        bool live = true;
        for (int k = 0; k < c.arity(); ++k) {
            if (k == x_pos) continue;
            if (!s.has_live_value(c.scope[k], row[k])) {
                live = false;
                break;
            }
        }
        if (live) return true;
    }
    return false;
}

// generic support scan: odometer over the live values of the other scope
// variables, constraint_check on each combination
bool generic_supported(const SearchState& s, const Constraint& c, int x_pos, Value a,
                       std::vector<Value>& buf, std::vector<int>& idx) {
    const int arity = c.arity();
    buf.resize(arity);
    idx.assign(arity, 0);
    buf[x_pos] = a;

    // position each odometer wheel on its first live value
    for (int k = 0; k < arity; ++k) {
        if (k == x_pos) continue;
        int first = s.first_live_index(c.scope[k]);
        if (first < 0) return false;
        idx[k] = first;
        buf[k] = s.value_at(c.scope[k], first);
    }
    for (;;) {
        if (constraint_check(c, buf)) return true;
        // advance rightmost wheel that still has a next live value
        int k = arity - 1;
        for (;;) {
            if (k < 0) return false;
            if (k == x_pos) {
                --k;
                continue;
            }
            VarId v = c.scope[k];
            int next = idx[k] + 1;
            while (next < s.initial_size(v) && !s.is_live(v, next)) ++next;
            if (next < s.initial_size(v)) {
                idx[k] = next;
                buf[k] = s.value_at(v, next);
                break;
            }
            idx[k] = s.first_live_index(v);
            buf[k] = s.value_at(v, idx[k]);
            --k;
        }
    }
}

struct Queue {
    std::vector<int> items;  // pair ids: revise_pair_offset[c] + scope position
    std::size_t head = 0;
    std::vector<char> queued;

    explicit Queue(int total_pairs) : queued(total_pairs, 0) {}

    void push(int pair) {
        if (queued[pair]) return;
        queued[pair] = 1;
        items.push_back(pair);
    }
    bool empty() const { return head == items.size(); }
    int pop() {
        int pair = items[head++];
        queued[pair] = 0;
        return pair;
    }
};

PropagationResult run_queue(SearchState& state, Queue& queue) {
    const Problem& p = state.problem();
    PropagationResult result;
    while (!queue.empty()) {
        int pair = queue.pop();
        // locate (constraint, position) from the flat pair id
        ConId c = 0;
        {
            int lo = 0, hi = p.num_constraints() - 1;
            while (lo < hi) {
                int mid = (lo + hi + 1) / 2;
                if (p.revise_pair_offset[mid] <= pair)
                    lo = mid;
                else
                    hi = mid - 1;
            }
            c = lo;
        }
        int pos = pair - p.revise_pair_offset[c];
        VarId x = p.constraints[c].scope[pos];

        ReviseOutcome out = revise(state, c, x);
        if (out.deleted > 0) {
            result.deletions.push_back({c, x, out.deleted});
            if (out.wipeout) {
                result.consistent = false;
                result.wipeout_constraint = c;
                result.wipeout_variable = x;
                return result;
            }
            // D(x) shrank: re-revise the other variables of every
            // constraint on x (x's own remaining values keep their supports)
            for (ConId c2 : p.constraints_of[x]) {
                const Constraint& con2 = p.constraints[c2];
                for (int k = 0; k < con2.arity(); ++k)
                    if (con2.scope[k] != x) queue.push(p.revise_pair_offset[c2] + k);
            }
        }
    }
    return result;
}

}  // namespace

ReviseOutcome revise(SearchState& state, ConId c, VarId x) {
    const Constraint& con = state.problem().constraints[c];
    int x_pos = -1;
    for (int k = 0; k < con.arity(); ++k)
        if (con.scope[k] == x) x_pos = k;
    assert(x_pos >= 0 && "revise: variable not in scope");

    ReviseOutcome out;
    std::vector<Value> buf;
    std::vector<int> idx;
    for (int i = 0; i < state.initial_size(x); ++i) {
        if (!state.is_live(x, i)) continue;
        const Value a = state.value_at(x, i);
        const bool supported = con.kind == ConstraintKind::TableAllow
                                   ? allow_supported(state, con, x_pos, a)
                                   : generic_supported(state, con, x_pos, a, buf, idx);
        if (!supported) {
            state.remove_value(x, i);
            ++out.deleted;
        }
    }
    out.wipeout = state.live_count(x) == 0;
    return out;
}

PropagationResult propagate(SearchState& state, std::span<const VarId> seeds) {
    const Problem& p = state.problem();
    Queue queue(p.total_revise_pairs);
    // seed in constraint-id order: for every constraint touching a seed,
    // revise its non-seed variables
    std::vector<char> is_seed(p.num_variables(), 0);
    for (VarId v : seeds) is_seed[v] = 1;
    for (ConId c = 0; c < p.num_constraints(); ++c) {
        const Constraint& con = p.constraints[c];
        bool touches = false;
        for (VarId v : con.scope) touches |= is_seed[v] != 0;
        if (!touches) continue;
        for (int k = 0; k < con.arity(); ++k)
            if (!is_seed[con.scope[k]]) queue.push(p.revise_pair_offset[c] + k);
    }
    return run_queue(state, queue);
}

std::pair<SearchState, PropagationResult> establish_root_consistency(const Problem& p) {
    SearchState state(p);
    Queue queue(p.total_revise_pairs);
    for (int pair = 0; pair < p.total_revise_pairs; ++pair) queue.push(pair);
    PropagationResult result = run_queue(state, queue);
    return {std::move(state), std::move(result)};
}

}  // namespace csp
