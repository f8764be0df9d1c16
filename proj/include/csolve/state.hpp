#pragma once

#include <utility>

#include "csolve/model.hpp"

namespace csp {

/// Token returned by push_level; tokens must be consumed LIFO.
struct Level {
    std::uint32_t index;
};

/// Mutable search state over an immutable Problem: current domains as
/// live flags over the initial (file-ordered) domains, plus a trail of
/// removals and assignment marks for exact chronological restoration.
/// Single-threaded; distinct states over a shared Problem may run in parallel.
class SearchState {
public:
    explicit SearchState(const Problem& p);

    const Problem& problem() const { return *prob_; }
    int num_vars() const { return static_cast<int>(live_count_.size()); }

    int initial_size(VarId x) const { return offset_[x + 1] - offset_[x]; }
    int live_count(VarId x) const { return live_count_[x]; }
    bool is_live(VarId x, int idx) const { return live_[offset_[x] + idx] != 0; }
    Value value_at(VarId x, int idx) const { return values_[offset_[x] + idx]; }
    /// Index of `v` in x's initial domain, or -1.
    int value_index(VarId x, Value v) const;
    bool has_live_value(VarId x, Value v) const;
    int first_live_index(VarId x) const;

    bool is_assigned(VarId x) const { return assigned_[x] != 0; }
    Value assigned_value(VarId x) const { return value_at(x, assigned_index_[x]); }
    int unassigned_count() const { return unassigned_count_; }

    /// Removes a live value; the removal is trailed.
    void remove_value(VarId x, int idx);
    /// Reduces x's domain to the single value at idx and marks x assigned.
    void assign(VarId x, int idx);

    Level push_level();
    /// Restores the state to the matching push_level point. Throws
    /// std::logic_error on non-LIFO token use.
    void undo_to(Level level);

    std::vector<Value> live_values(VarId x) const;
    /// Assigned value of every variable; all variables must be assigned.
    std::vector<Value> full_assignment() const;

    /// Removal trail as (variable, value) pairs, oldest first.
    std::vector<std::pair<VarId, Value>> trail_entries() const;

private:
    struct Marker {
        std::uint32_t trail_size;
        std::uint32_t assign_size;
    };

    const Problem* prob_;
    std::vector<Value> values_;  // concatenated initial domains
    std::vector<char> live_;
    std::vector<int> offset_;  // per variable, size n+1
    std::vector<int> live_count_;
    std::vector<char> assigned_;
    std::vector<int> assigned_index_;
    int unassigned_count_;
    std::vector<std::pair<VarId, int>> trail_;  // (var, value index)
    std::vector<VarId> assign_trail_;
    std::vector<Marker> level_marks_;
};

}  // namespace csp
