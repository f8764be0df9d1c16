#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "csolve/model.hpp"
#include "csolve/search.hpp"
#include "test_instances.hpp"

using namespace csp;

TEST_CASE("parse minimal well-formed file") {
    auto r = parse_instance("cspi 1\nvar x 1 2\nvar y 1 2\ncon c0 neq x y\n", "mini");
    CHECK(r.warnings.empty());
    const Problem& p = r.problem;
    CHECK(p.name == "mini");
    REQUIRE(p.num_variables() == 2);
    REQUIRE(p.num_constraints() == 1);
    CHECK(p.variables[0].name == "x");
    CHECK(p.variables[1].initial_domain == std::vector<Value>{1, 2});
    CHECK(p.constraints[0].kind == ConstraintKind::Neq);
    CHECK(p.constraints[0].scope == std::vector<VarId>{0, 1});
}

TEST_CASE("parse errors carry line, column and a message") {
    CHECK_THROWS_AS(parse_instance("cspi 2\n"), ParseError);

    try {
        parse_instance("cspi 1\nvar x 1 2\ncon c0 neq x z\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("unknown variable z") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_instance("cspi 1\nvar x 1\nvar x 2\n"), ParseError);        // duplicate
    CHECK_THROWS_AS(parse_instance("cspi 1\nvar x range 5 2\n"), ParseError);          // empty dom
    CHECK_THROWS_AS(parse_instance("cspi 1\nvar x 1 1\n"), ParseError);                 // dup value
    CHECK_THROWS_AS(parse_instance("cspi 1\nvar x 1\ncon c eq x\n"), ParseError);       // arity
    CHECK_THROWS_AS(parse_instance("cspi 1\nvar x 1\ncon c allow x : 1,2\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("cspi 1\nvar x 1\ncon c frob x x\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("cspi 1\nvar x a b\n"), ParseError);
}

TEST_CASE("out-of-domain table tuples are dropped with a warning") {
    auto r = parse_instance(
        "cspi 1\nvar x 0 1 2\nvar y 0 1\ncon t allow x y : 5,1 ; 0,1\n");
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("dropped tuple") != std::string::npos);
    REQUIRE(r.problem.constraints[0].tuples.size() == 1);
    CHECK(r.problem.constraints[0].tuples[0] == std::vector<Value>{0, 1});
}

TEST_CASE("comments, blank lines and loose tuple whitespace") {
    auto r = parse_instance(
        "# header comment\n\ncspi 1\nvar x 0 1  # trailing\nvar y 0 1\n"
        "con t allow x y : 0 , 1 ;1,0\n");
    CHECK(r.problem.constraints[0].tuples.size() == 2);
}

TEST_CASE("constraint_check on every kind") {
    Constraint neq{0, "n", ConstraintKind::Neq, {0, 1}, 0, {}, {}};
    Value t33[] = {3, 3};
    Value t34[] = {3, 4};
    CHECK_FALSE(constraint_check(neq, t33));
    CHECK(constraint_check(neq, t34));

    Constraint eq{0, "e", ConstraintKind::Eq, {0, 1}, 0, {}, {}};
    CHECK(constraint_check(eq, t33));

    Constraint gt{0, "g", ConstraintKind::AbsDiffGt, {0, 1}, 2, {}, {}};
    Value t15[] = {1, 5};
    Value t13[] = {1, 3};
    CHECK(constraint_check(gt, t15));  // |1-5| = 4 > 2
    CHECK_FALSE(constraint_check(gt, t13));

    Constraint ne{0, "a", ConstraintKind::AbsDiffNe, {0, 1}, 2, {}, {}};
    CHECK_FALSE(constraint_check(ne, t13));
    CHECK(constraint_check(ne, t15));

    Constraint allow{0, "t", ConstraintKind::TableAllow, {0, 1}, 0, {{0, 1}}, {}};
    Value t01[] = {0, 1};
    Value t10[] = {1, 0};
    CHECK(constraint_check(allow, t01));
    CHECK_FALSE(constraint_check(allow, t10));

    Constraint forbid{0, "f", ConstraintKind::TableForbid, {0, 1}, 0, {{0, 1}}, {}};
    CHECK_FALSE(constraint_check(forbid, t01));
    CHECK(constraint_check(forbid, t10));

    Value t1[] = {1};
    CHECK_THROWS_AS(constraint_check(neq, t1), std::invalid_argument);
}

TEST_CASE("render/parse round trip on generated and handmade problems") {
    std::vector<Problem> probs;
    probs.push_back(generate_nqueens(5));
    probs.push_back(generate_rb(6, 0.8, 1.2, 0.3, 42));
    for (auto& [name, text] : testing::handmade_instances())
        probs.push_back(parse_instance(text, name).problem);
    for (const Problem& p : probs) {
        auto back = parse_instance(render_instance(p), p.name);
        CHECK(back.warnings.empty());
        CHECK(back.problem == p);
    }
}

TEST_CASE("rb generator: plant satisfiable, deterministic, distinct per seed") {
    // tiny case from the construction contract
    Problem small = generate_rb(2, 1.0, 0.5, 0.25, 7);
    CHECK(small.num_variables() == 2);
    CHECK(small.variables[0].initial_domain.size() == 2);
    CHECK(small.num_constraints() >= 1);
    CHECK(brute_force_count(small) >= 1);

    Problem p1 = generate_rb(8, 0.8, 1.5, 0.3, 1);
    CHECK(brute_force_count(p1) >= 1);  // forced satisfiable

    Problem p1b = generate_rb(8, 0.8, 1.5, 0.3, 1);
    CHECK(p1 == p1b);
    Problem p2 = generate_rb(8, 0.8, 1.5, 0.3, 2);
    CHECK_FALSE(p1 == p2);

    // every constraint admits the planted pair: full assignment spaces of
    // several seeds never come up empty
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        CHECK(brute_force_count(generate_rb(5, 0.8, 1.0, 0.4, seed)) >= 1);

    CHECK_THROWS_AS(generate_rb(1, 1.0, 1.0, 0.3, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_rb(4, 1.0, 1.0, 0.999, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_rb(3, 1.0, 9.0, 0.3, 0), std::invalid_argument);
}

TEST_CASE("queens generator and brute-force oracle") {
    CHECK(brute_force_count(generate_nqueens(4)) == 2);
    CHECK(brute_force_count(generate_nqueens(3)) == 0);
    CHECK(brute_force_count(generate_nqueens(1)) == 1);

    // unconstrained 2 vars x 3 values
    Problem p;
    p.variables = {{0, "a", {0, 1, 2}}, {1, "b", {0, 1, 2}}};
    p.finalize();
    CHECK(brute_force_count(p) == 9);

    CHECK(brute_force_count(parse_instance(testing::kRootUnsat).problem) == 0);

    Problem big = generate_nqueens(12);
    CHECK_THROWS_AS(brute_force_count(big), std::invalid_argument);  // cap exceeded
}

TEST_CASE("finalize rejects malformed problems") {
    Problem p;
    p.variables = {{0, "a", {0, 1}}, {1, "b", {0, 1}}};
    p.constraints = {{0, "c", ConstraintKind::Neq, {0, 5}, 0, {}, {}}};
    CHECK_THROWS_AS(p.finalize(), std::invalid_argument);

    p.constraints = {{0, "c", ConstraintKind::Neq, {0, 0}, 0, {}, {}}};
    CHECK_THROWS_AS(p.finalize(), std::invalid_argument);  // repeated scope variable

    p.constraints = {{0, "c", ConstraintKind::TableAllow, {0, 1}, 0, {{0, 7}}, {}}};
    CHECK_THROWS_AS(p.finalize(), std::invalid_argument);  // tuple outside domain
}
