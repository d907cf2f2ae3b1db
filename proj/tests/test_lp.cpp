#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lp_oracle.hpp"
#include "silva/lp.hpp"

using namespace silva::lp;

TEST_CASE("box maximum") {
    LinearProgram program;
    program.add_variable("x1", 1.0);
    program.add_variable("x2", 1.0);
    program.add_constraint({1.0, 0.0}, Relation::LessEqual, 1.0);
    program.add_constraint({0.0, 1.0}, Relation::LessEqual, 1.0);
    const Solution solution = solve(program);
    REQUIRE(solution.status == Status::Optimal);
    CHECK(solution.objective_value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(solution.x[0] == doctest::Approx(1.0));
    CHECK(solution.x[1] == doctest::Approx(1.0));
}

TEST_CASE("contradictory bounds are infeasible") {
    LinearProgram program;
    program.add_variable("x1", 1.0);
    program.add_constraint({1.0}, Relation::GreaterEqual, 2.0);
    program.add_constraint({1.0}, Relation::LessEqual, 1.0);
    CHECK(solve(program).status == Status::Infeasible);
}

TEST_CASE("two-row program solves to the vertex the oracle finds") {
    LinearProgram program;
    program.add_variable("x1", 3.0);
    program.add_variable("x2", 2.0);
    program.add_constraint({1.0, 1.0}, Relation::LessEqual, 4.0);
    program.add_constraint({1.0, 3.0}, Relation::LessEqual, 6.0);
    const Solution solution = solve(program);
    REQUIRE(solution.status == Status::Optimal);
    CHECK(solution.objective_value == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(solution.x[0] == doctest::Approx(4.0));
    CHECK(solution.x[1] == doctest::Approx(0.0));

    const auto oracle = silva::testing::vertex_enumeration_optimum(program);
    REQUIRE(oracle.has_value());
    CHECK(*oracle == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("missing cap makes the program unbounded") {
    LinearProgram program;
    program.add_variable("x1", 1.0);
    program.add_constraint({1.0}, Relation::GreaterEqual, 1.0);
    CHECK(solve(program).status == Status::Unbounded);
}

TEST_CASE("equality rows pass through phase one") {
    LinearProgram program;
    program.add_variable("x1", 1.0);
    program.add_variable("x2", 1.0);
    program.add_constraint({1.0, 1.0}, Relation::Equal, 1.0);
    const Solution solution = solve(program);
    REQUIRE(solution.status == Status::Optimal);
    CHECK(solution.objective_value == doctest::Approx(1.0));
}

TEST_CASE("negative right-hand sides are normalized") {
    // -x1 - x2 <= -1 is x1 + x2 >= 1
    LinearProgram program;
    program.add_variable("x1", -1.0);
    program.add_variable("x2", -2.0);
    program.add_constraint({-1.0, -1.0}, Relation::LessEqual, -1.0);
    const Solution solution = solve(program);
    REQUIRE(solution.status == Status::Optimal);
    CHECK(solution.objective_value == doctest::Approx(-1.0));
    CHECK(solution.x[0] == doctest::Approx(1.0));
}

TEST_CASE("degenerate cycling example terminates under Bland's rule") {
    // Beale's classic cycling instance for steepest-descent pivoting.
    LinearProgram program;
    program.add_variable("x1", 0.75);
    program.add_variable("x2", -150.0);
    program.add_variable("x3", 0.02);
    program.add_variable("x4", -6.0);
    program.add_constraint({0.25, -60.0, -0.04, 9.0}, Relation::LessEqual, 0.0);
    program.add_constraint({0.5, -90.0, -0.02, 3.0}, Relation::LessEqual, 0.0);
    program.add_constraint({0.0, 0.0, 1.0, 0.0}, Relation::LessEqual, 1.0);
    const Solution solution = solve(program);
    REQUIRE(solution.status == Status::Optimal);
    CHECK(solution.objective_value == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(solution.pivots < 100);
}

TEST_CASE("redundant and degenerate equality rows survive phase one") {
    LinearProgram program;
    program.add_variable("x1", 1.0);
    program.add_variable("x2", 0.0);
    program.add_constraint({1.0, 1.0}, Relation::Equal, 1.0);
    program.add_constraint({1.0, 1.0}, Relation::Equal, 1.0);  // duplicate row
    program.add_constraint({2.0, 2.0}, Relation::Equal, 2.0);  // scaled duplicate
    program.add_constraint({0.0, 0.0}, Relation::Equal, 0.0);  // all-zero row
    const Solution solution = solve(program);
    REQUIRE(solution.status == Status::Optimal);
    CHECK(solution.objective_value == doctest::Approx(1.0));
    CHECK(max_violation(program, solution.x) <= 1e-8);
}

TEST_CASE("an unsatisfiable zero row is infeasible") {
    LinearProgram program;
    program.add_variable("x1", 1.0);
    program.add_constraint({0.0}, Relation::Equal, 5.0);
    CHECK(solve(program).status == Status::Infeasible);
}

TEST_CASE("duplicate variable names are rejected") {
    LinearProgram program;
    program.add_variable("x");
    CHECK_THROWS_AS(program.add_variable("x"), std::invalid_argument);
    CHECK_THROWS_AS(program.add_constraint({1.0, 2.0}, Relation::LessEqual, 1.0),
                    std::invalid_argument);
}

TEST_CASE("random programs match the vertex-enumeration oracle") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const LinearProgram program = silva::testing::random_bounded_lp(rng);
        const Solution solution = solve(program);
        REQUIRE(solution.status == Status::Optimal);

        const auto oracle = silva::testing::vertex_enumeration_optimum(program);
        REQUIRE(oracle.has_value());
        CHECK(std::abs(solution.objective_value - *oracle) <= 1e-7);

        // solution invariant: near-nonnegative and within residual tolerance
        for (double xi : solution.x) CHECK(xi >= -1e-9);
        CHECK(max_violation(program, solution.x) <= 1e-8);

        // generous anti-cycling pivot bound
        const auto m = program.num_constraints();
        const auto n = program.num_variables();
        CHECK(solution.pivots <= 10u * (1u << std::min(m, n)));
    }
}

TEST_CASE("scaling the objective scales the optimum") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        LinearProgram program = silva::testing::random_bounded_lp(rng);
        const Solution base = solve(program);
        REQUIRE(base.status == Status::Optimal);
        for (const double factor : {0.5, 3.0, 1000.0}) {
            LinearProgram scaled = program;
            for (std::size_t j = 0; j < scaled.num_variables(); ++j) {
                scaled.set_objective_coefficient(j, program.objective()[j] * factor);
            }
            const Solution solution = solve(scaled);
            REQUIRE(solution.status == base.status);
            CHECK(solution.objective_value ==
                  doctest::Approx(base.objective_value * factor).epsilon(1e-9));
        }
    }
}
