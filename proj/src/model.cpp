#include "csolve/model.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace csp {

bool is_table_kind(ConstraintKind k) {
    return k == ConstraintKind::TableAllow || k == ConstraintKind::TableForbid;
}

const char* kind_keyword(ConstraintKind k) {
    switch (k) {
        case ConstraintKind::TableAllow: return "allow";
        case ConstraintKind::TableForbid: return "forbid";
        case ConstraintKind::Eq: return "eq";
        case ConstraintKind::Neq: return "neq";
        case ConstraintKind::AbsDiffNe: return "absdiffne";
        case ConstraintKind::AbsDiffGt: return "absdiffgt";
    }
    return "?";
}

ParseError::ParseError(int line, int column, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(column) +
                         ": " + msg),
      line(line),
      column(column) {}

namespace {

int compare_rows(std::span<const Value> a, std::span<const Value> b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace

bool Constraint::tuple_listed(std::span<const Value> t) const {
    if (sorted_order_.size() == tuples.size() && !tuples.empty()) {
        std::size_t lo = 0, hi = sorted_order_.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            int cmp = compare_rows(tuples[sorted_order_[mid]], t);
            if (cmp == 0) return true;
            if (cmp < 0)
                lo = mid + 1;
            else
                hi = mid;
        }
        return false;
    }
    // not finalized: linear scan
    for (const auto& row : tuples) {
        if (std::equal(row.begin(), row.end(), t.begin(), t.end())) return true;
    }
    return false;
}

bool constraint_check(const Constraint& c, std::span<const Value> assignment) {
    if (static_cast<int>(assignment.size()) != c.arity())
        throw std::invalid_argument("constraint " + c.name + ": arity mismatch");
    switch (c.kind) {
        case ConstraintKind::TableAllow: return c.tuple_listed(assignment);
        case ConstraintKind::TableForbid: return !c.tuple_listed(assignment);
        case ConstraintKind::Eq: return assignment[0] == assignment[1];
        case ConstraintKind::Neq: return assignment[0] != assignment[1];
        case ConstraintKind::AbsDiffNe:
            return std::abs(assignment[0] - assignment[1]) != c.param;
        case ConstraintKind::AbsDiffGt:
            return std::abs(assignment[0] - assignment[1]) > c.param;
    }
    return false;
}

void Problem::finalize() {
    std::unordered_set<std::string> var_names;
    std::unordered_map<std::string, VarId> by_name;
    for (std::size_t i = 0; i < variables.size(); ++i) {
        VariableDecl& v = variables[i];
        if (v.id != static_cast<VarId>(i))
            throw std::invalid_argument("variable ids must match declaration order");
        if (!var_names.insert(v.name).second)
            throw std::invalid_argument("duplicate variable name " + v.name);
        if (v.initial_domain.empty())
            throw std::invalid_argument("empty domain for variable " + v.name);
        std::unordered_set<Value> seen;
        for (Value x : v.initial_domain) {
            if (!seen.insert(x).second)
                throw std::invalid_argument("duplicate domain value for variable " + v.name);
        }
    }

    constraints_of.assign(variables.size(), {});
    revise_pair_offset.assign(constraints.size(), 0);
    total_revise_pairs = 0;
    for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
        Constraint& c = constraints[ci];
        if (c.id != static_cast<ConId>(ci))
            throw std::invalid_argument("constraint ids must match declaration order");
        if (c.scope.empty())
            throw std::invalid_argument("constraint " + c.name + " has empty scope");
        if (!is_table_kind(c.kind) && c.arity() != 2)
            throw std::invalid_argument("constraint " + c.name + " must have arity 2");
        std::unordered_set<VarId> scope_seen;
        for (VarId x : c.scope) {
            if (x < 0 || x >= num_variables())
                throw std::invalid_argument("constraint " + c.name + ": unknown variable id");
            if (!scope_seen.insert(x).second)
                throw std::invalid_argument("constraint " + c.name +
                                            ": repeated variable in scope");
            constraints_of[x].push_back(c.id);
        }
        if (!is_table_kind(c.kind) && !c.tuples.empty())
            throw std::invalid_argument("constraint " + c.name + ": unexpected tuple list");
        for (const auto& row : c.tuples) {
            if (static_cast<int>(row.size()) != c.arity())
                throw std::invalid_argument("constraint " + c.name + ": tuple width mismatch");
            for (int k = 0; k < c.arity(); ++k) {
                const auto& dom = variables[c.scope[k]].initial_domain;
                if (std::find(dom.begin(), dom.end(), row[k]) == dom.end())
                    throw std::invalid_argument("constraint " + c.name +
                                                ": tuple value outside initial domain");
            }
        }
        c.sorted_order_.resize(c.tuples.size());
        for (std::uint32_t k = 0; k < c.sorted_order_.size(); ++k) c.sorted_order_[k] = k;
        std::sort(c.sorted_order_.begin(), c.sorted_order_.end(),
                  [&](std::uint32_t a, std::uint32_t b) {
                      return compare_rows(c.tuples[a], c.tuples[b]) < 0;
                  });
        revise_pair_offset[ci] = total_revise_pairs;
        total_revise_pairs += c.arity();
    }
}

std::string render_instance(const Problem& p) {
    std::string out = "cspi 1\n";
    for (const auto& v : p.variables) {
        out += "var " + v.name;
        for (Value x : v.initial_domain) out += " " + std::to_string(x);
        out += "\n";
    }
    for (const auto& c : p.constraints) {
        out += "con " + c.name + " " + kind_keyword(c.kind);
        for (VarId x : c.scope) out += " " + p.variables[x].name;
        if (c.kind == ConstraintKind::AbsDiffNe || c.kind == ConstraintKind::AbsDiffGt)
            out += " " + std::to_string(c.param);
        if (is_table_kind(c.kind)) {
            out += " :";
            for (std::size_t t = 0; t < c.tuples.size(); ++t) {
                out += t == 0 ? " " : " ; ";
                for (std::size_t k = 0; k < c.tuples[t].size(); ++k) {
                    if (k) out += ",";
                    out += std::to_string(c.tuples[t][k]);
                }
            }
        }
        out += "\n";
    }
    return out;
}

}  // namespace csp
