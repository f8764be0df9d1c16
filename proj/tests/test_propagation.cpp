#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "csolve/propagation.hpp"
#include "csolve/search.hpp"
#include "test_instances.hpp"

using namespace csp;

namespace {

Problem two_vars_neq(std::vector<Value> dx, std::vector<Value> dy) {
    Problem p;
    p.variables = {{0, "x", std::move(dx)}, {1, "y", std::move(dy)}};
    p.constraints = {{0, "c0", ConstraintKind::Neq, {0, 1}, 0, {}, {}}};
    p.finalize();
    return p;
}

}  // namespace

TEST_CASE("push_level / undo_to") {
    Problem p = two_vars_neq({1, 2, 3}, {1, 2});
    SearchState s(p);

    SUBCASE("removal is restored") {
        Level a = s.push_level();
        s.remove_value(0, s.value_index(0, 3));
        CHECK_FALSE(s.has_live_value(0, 3));
        s.undo_to(a);
        CHECK(s.has_live_value(0, 3));
        CHECK(s.live_count(0) == 3);
    }

    SUBCASE("undo with no changes is the identity") {
        Level a = s.push_level();
        s.undo_to(a);
        CHECK(s.live_count(0) == 3);
        CHECK(s.live_count(1) == 2);
    }

    SUBCASE("undo to an outer mark reverts everything after it") {
        Level a = s.push_level();
        s.remove_value(0, 0);
        Level b = s.push_level();
        s.remove_value(1, 0);
        s.assign(0, 1);
        (void)b;
        s.undo_to(a);
        CHECK(s.live_count(0) == 3);
        CHECK(s.live_count(1) == 2);
        CHECK_FALSE(s.is_assigned(0));
    }

    SUBCASE("non-LIFO token use throws") {
        Level a = s.push_level();
        s.undo_to(a);
        CHECK_THROWS_AS(s.undo_to(a), std::logic_error);
    }
}

TEST_CASE("assign reduces to a singleton and flags the variable") {
    Problem p = two_vars_neq({1, 2, 3}, {1, 2});
    SearchState s(p);
    s.assign(0, s.value_index(0, 2));
    CHECK(s.is_assigned(0));
    CHECK(s.assigned_value(0) == 2);
    CHECK(s.live_count(0) == 1);
    CHECK(s.unassigned_count() == 1);
}

TEST_CASE("revise removes exactly the unsupported values") {
    SUBCASE("neq with singleton peer") {
        Problem p = two_vars_neq({1}, {1, 2});
        SearchState s(p);
        auto out = revise(s, 0, 1);
        CHECK(out.deleted == 1);
        CHECK_FALSE(out.wipeout);
        CHECK(s.live_values(1) == std::vector<Value>{2});
    }
    SUBCASE("neq wipeout") {
        Problem p = two_vars_neq({1}, {1});
        SearchState s(p);
        auto out = revise(s, 0, 1);
        CHECK(out.deleted == 1);
        CHECK(out.wipeout);
    }
    SUBCASE("table allow, both values supported") {
        Problem p;
        p.variables = {{0, "x", {0, 2}}, {1, "y", {1, 3}}};
        p.constraints = {{0, "t", ConstraintKind::TableAllow, {0, 1}, 0, {{0, 1}, {2, 3}}, {}}};
        p.finalize();
        SearchState s(p);
        auto out = revise(s, 0, 0);
        CHECK(out.deleted == 0);
        CHECK(s.live_count(0) == 2);
    }
    SUBCASE("table allow, one value unsupported") {
        Problem p;
        p.variables = {{0, "x", {0, 2}}, {1, "y", {1}}};
        p.constraints = {{0, "t", ConstraintKind::TableAllow, {0, 1}, 0, {{0, 1}}, {}}};
        p.finalize();
        SearchState s(p);
        auto out = revise(s, 0, 0);
        CHECK(out.deleted == 1);
        CHECK(s.live_values(0) == std::vector<Value>{0});
    }
}

TEST_CASE("propagate: chain x!=y, y!=z ends in a wipeout at z") {
    Problem p;
    p.variables = {{0, "x", {1}}, {1, "y", {1, 2}}, {2, "z", {2}}};
    p.constraints = {{0, "c0", ConstraintKind::Neq, {0, 1}, 0, {}, {}},
                     {1, "c1", ConstraintKind::Neq, {1, 2}, 0, {}, {}}};
    p.finalize();
    SearchState s(p);
    const VarId seeds[] = {0};
    auto res = propagate(s, seeds);
    CHECK_FALSE(res.consistent);
    CHECK(res.wipeout_constraint == 1);
    CHECK(res.wipeout_variable == 2);
    REQUIRE(res.deletions.size() == 2);
    CHECK(res.deletions[0].constraint == 0);
    CHECK(res.deletions[0].variable == 1);
    CHECK(res.deletions[0].count == 1);
    CHECK(s.live_values(1) == std::vector<Value>{2});
}

TEST_CASE("propagate: fixpoint identity and no-constraint cases") {
    Problem p = two_vars_neq({1, 2}, {1, 2});
    SearchState s(p);
    const VarId seeds[] = {0};
    auto res = propagate(s, seeds);
    CHECK(res.consistent);
    CHECK(res.deletions.empty());

    // immediately re-running after Consistent deletes nothing
    Problem freq = parse_instance(testing::kFreqLinks).problem;
    auto [st, root] = establish_root_consistency(freq);
    REQUIRE(root.consistent);
    std::vector<VarId> all;
    for (VarId v = 0; v < st.num_vars(); ++v) all.push_back(v);
    auto again = propagate(st, all);
    CHECK(again.consistent);
    CHECK(again.deletions.empty());

    Problem lone;
    lone.variables = {{0, "x", {1, 2}}};
    lone.finalize();
    SearchState ls(lone);
    const VarId lseeds[] = {0};
    CHECK(propagate(ls, lseeds).consistent);
}

TEST_CASE("establish_root_consistency") {
    SUBCASE("contradiction at the root") {
        auto [s, res] = establish_root_consistency(parse_instance(testing::kRootUnsat).problem);
        CHECK_FALSE(res.consistent);
    }
    SUBCASE("4-queens is already arc consistent") {
        auto [s, res] = establish_root_consistency(generate_nqueens(4));
        CHECK(res.consistent);
        for (VarId v = 0; v < s.num_vars(); ++v) CHECK(s.live_count(v) == 4);
    }
    SUBCASE("unconstrained problem is untouched") {
        Problem p;
        p.variables = {{0, "a", {5, 6}}, {1, "b", {7}}};
        p.finalize();
        auto [s, res] = establish_root_consistency(p);
        CHECK(res.consistent);
        CHECK(s.live_count(0) == 2);
        CHECK(s.live_count(1) == 1);
    }
    SUBCASE("root pruning on unary and n-ary tables") {
        auto [s, res] = establish_root_consistency(parse_instance(testing::kMixedTables).problem);
        CHECK(res.consistent);
        CHECK(s.live_values(0) == std::vector<Value>{0, 1});  // unary allow dropped 2
    }
}

TEST_CASE("trail completeness under random push/remove/propagate/undo") {
    std::mt19937 rng(2024);
    for (int round = 0; round < 50; ++round) {
        Problem p = generate_rb(6, 0.8, 1.0, 0.35, round);
        SearchState s(p);
        const auto initial = [&] {
            std::vector<std::vector<Value>> doms;
            for (VarId v = 0; v < s.num_vars(); ++v) doms.push_back(s.live_values(v));
            return doms;
        }();

        std::vector<Level> levels;
        for (int step = 0; step < 40; ++step) {
            const int action = static_cast<int>(rng() % 4);
            if (action == 0 || levels.empty()) {
                levels.push_back(s.push_level());
            } else if (action == 1) {
                VarId v = static_cast<VarId>(rng() % s.num_vars());
                if (s.live_count(v) > 1) {
                    int idx;
                    do {
                        idx = static_cast<int>(rng() % s.initial_size(v));
                    } while (!s.is_live(v, idx));
                    s.remove_value(v, idx);
                    const VarId seeds[] = {v};
                    propagate(s, seeds);
                }
            } else if (action == 2) {
                VarId v = static_cast<VarId>(rng() % s.num_vars());
                if (!s.is_assigned(v) && s.live_count(v) > 0) {
                    s.assign(v, s.first_live_index(v));
                    const VarId seeds[] = {v};
                    propagate(s, seeds);
                }
            } else {
                s.undo_to(levels.back());
                levels.pop_back();
            }
        }
        while (!levels.empty()) {
            s.undo_to(levels.back());
            levels.pop_back();
        }
        for (VarId v = 0; v < s.num_vars(); ++v) {
            CHECK(s.live_values(v) == initial[v]);
            CHECK_FALSE(s.is_assigned(v));
        }
    }
}

TEST_CASE("propagation soundness: no solution value is ever removed") {
    for (int seed = 0; seed < 40; ++seed) {
        Problem p = generate_rb(6, 0.85, 1.1, 0.35, 1000 + seed);
        auto solutions = brute_force_solutions(p);
        auto [s, res] = establish_root_consistency(p);
        for (auto [var, value] : s.trail_entries()) {
            for (const auto& sol : solutions) {
                CAPTURE(p.name);
                CHECK(sol[var] != value);
            }
        }
        // also after an arbitrary consistent decision
        if (res.consistent && !solutions.empty()) {
            VarId v = 0;
            s.assign(v, s.value_index(v, solutions[0][v]));
            const VarId seeds[] = {v};
            auto res2 = propagate(s, seeds);
            CHECK(res2.consistent);
            // solutions extending the decision survive in full
            for (const auto& sol : solutions) {
                if (sol[v] != solutions[0][v]) continue;
                for (VarId w = 0; w < s.num_vars(); ++w) CHECK(s.has_live_value(w, sol[w]));
            }
        }
    }
}
