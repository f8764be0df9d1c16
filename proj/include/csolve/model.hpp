#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace csp {

using Value = int;
using VarId = int;
using ConId = int;

enum class ConstraintKind { TableAllow, TableForbid, Eq, Neq, AbsDiffNe, AbsDiffGt };

bool is_table_kind(ConstraintKind k);
const char* kind_keyword(ConstraintKind k);

struct VariableDecl {
    VarId id = 0;
    std::string name;
    std::vector<Value> initial_domain;  // ordered, distinct; file order defines value order

    bool operator==(const VariableDecl&) const = default;
};

struct Constraint {
    ConId id = 0;
    std::string name;
    ConstraintKind kind = ConstraintKind::Neq;
    std::vector<VarId> scope;
    Value param = 0;                         // c of AbsDiffNe / AbsDiffGt
    std::vector<std::vector<Value>> tuples;  // table kinds only, file order

    int arity() const { return static_cast<int>(scope.size()); }
    /// True iff `t` (one value per scope position) is listed in `tuples`.
    bool tuple_listed(std::span<const Value> t) const;

    bool operator==(const Constraint& o) const {
        return id == o.id && name == o.name && kind == o.kind && scope == o.scope &&
               param == o.param && tuples == o.tuples;
    }

    // lexicographic order over tuples, built by Problem::finalize()
    std::vector<std::uint32_t> sorted_order_;
};

/// Immutable CSP instance. Safe to share across concurrent solver runs once finalized.
struct Problem {
    std::string name;
    std::vector<VariableDecl> variables;
    std::vector<Constraint> constraints;

    // derived, rebuilt by finalize()
    std::vector<std::vector<ConId>> constraints_of;  // per variable, ascending constraint id
    std::vector<int> revise_pair_offset;             // per constraint, prefix sum of arities
    int total_revise_pairs = 0;

    int num_variables() const { return static_cast<int>(variables.size()); }
    int num_constraints() const { return static_cast<int>(constraints.size()); }

    /// Validates the model invariants and rebuilds lookup structures.
    /// Throws std::invalid_argument with a descriptive message on violation.
    void finalize();

    bool operator==(const Problem& o) const {
        return name == o.name && variables == o.variables && constraints == o.constraints;
    }
};

/// Evaluates a constraint on a full tuple over its scope.
/// Throws std::invalid_argument on arity mismatch.
bool constraint_check(const Constraint& c, std::span<const Value> assignment);

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line, int column, const std::string& msg);
};

struct ParseResult {
    Problem problem;
    std::vector<std::string> warnings;  // e.g. dropped out-of-domain table tuples
};

/// Parses the `cspi 1` instance format. Variable/constraint order is preserved.
ParseResult parse_instance(std::string_view text, std::string_view name = "");

/// Canonical text form; parse_instance(render_instance(p), p.name).problem == p.
std::string render_instance(const Problem& p);

/// Random binary CSP, model RB: n variables of domain size round(n^alpha),
/// round(r*n*ln n) distinct binary forbid constraints of round(p*d^2) tuples each.
/// A solution is planted first and never forbidden, so the instance is satisfiable.
/// Identical arguments produce bit-identical problems.
Problem generate_rb(int n, double alpha, double r, double p, std::uint64_t seed);

/// n-queens: domains 0..n-1, pairwise Neq and AbsDiffNe(|i-j|).
Problem generate_nqueens(int n);

}  // namespace csp
