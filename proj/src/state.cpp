#include "csolve/state.hpp"

#include <cassert>

namespace csp {

SearchState::SearchState(const Problem& p) : prob_(&p) {
    const int n = p.num_variables();
    offset_.resize(n + 1);
    offset_[0] = 0;
    for (int x = 0; x < n; ++x)
        offset_[x + 1] = offset_[x] + static_cast<int>(p.variables[x].initial_domain.size());
    values_.reserve(offset_[n]);
    for (int x = 0; x < n; ++x)
        values_.insert(values_.end(), p.variables[x].initial_domain.begin(),
                       p.variables[x].initial_domain.end());
    live_.assign(values_.size(), 1);
    live_count_.resize(n);
    for (int x = 0; x < n; ++x) live_count_[x] = offset_[x + 1] - offset_[x];
    assigned_.assign(n, 0);
    assigned_index_.assign(n, -1);
    unassigned_count_ = n;
}

int SearchState::value_index(VarId x, Value v) const {
    for (int i = offset_[x]; i < offset_[x + 1]; ++i)
        if (values_[i] == v) return i - offset_[x];
    return -1;
}

bool SearchState::has_live_value(VarId x, Value v) const {
    int idx = value_index(x, v);
    return idx >= 0 && is_live(x, idx);
}

int SearchState::first_live_index(VarId x) const {
    for (int i = offset_[x]; i < offset_[x + 1]; ++i)
        if (live_[i]) return i - offset_[x];
    return -1;
}

void SearchState::remove_value(VarId x, int idx) {
    assert(is_live(x, idx));
    live_[offset_[x] + idx] = 0;
    --live_count_[x];
    trail_.emplace_back(x, idx);
}

void SearchState::assign(VarId x, int idx) {
    assert(is_live(x, idx) && !is_assigned(x));
    for (int i = 0; i < initial_size(x); ++i)
        if (i != idx && is_live(x, i)) remove_value(x, i);
    assigned_[x] = 1;
    assigned_index_[x] = idx;
    assign_trail_.push_back(x);
    --unassigned_count_;
}

Level SearchState::push_level() {
    level_marks_.push_back({static_cast<std::uint32_t>(trail_.size()),
                            static_cast<std::uint32_t>(assign_trail_.size())});
    return Level{static_cast<std::uint32_t>(level_marks_.size() - 1)};
}

void SearchState::undo_to(Level level) {
    if (level.index >= level_marks_.size())
        throw std::logic_error("undo_to: level token already undone (non-LIFO use)");
    const Marker m = level_marks_[level.index];
    while (trail_.size() > m.trail_size) {
        auto [x, idx] = trail_.back();
        trail_.pop_back();
        live_[offset_[x] + idx] = 1;
        ++live_count_[x];
    }
    while (assign_trail_.size() > m.assign_size) {
        VarId x = assign_trail_.back();
        assign_trail_.pop_back();
        assigned_[x] = 0;
        assigned_index_[x] = -1;
        ++unassigned_count_;
    }
    level_marks_.resize(level.index);
}

std::vector<Value> SearchState::live_values(VarId x) const {
    std::vector<Value> out;
    out.reserve(live_count_[x]);
    for (int i = 0; i < initial_size(x); ++i)
        if (is_live(x, i)) out.push_back(value_at(x, i));
    return out;
}

std::vector<Value> SearchState::full_assignment() const {
    std::vector<Value> out(num_vars());
    for (int x = 0; x < num_vars(); ++x) {
        assert(is_assigned(x));
        out[x] = assigned_value(x);
    }
    return out;
}

std::vector<std::pair<VarId, Value>> SearchState::trail_entries() const {
    std::vector<std::pair<VarId, Value>> out;
    out.reserve(trail_.size());
    for (auto [x, idx] : trail_) out.emplace_back(x, value_at(x, idx));
    return out;
}

}  // namespace csp
