#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "silva/planner.hpp"
#include "silva/scenario_io.hpp"

using namespace silva;

namespace {

const char* kScenarioText = R"({
  "T": 2, "L": 3, "l": 3, "l0": 1, "S": 12.0,
  "v0": [4.0, 3.0, 2.0],
  "gamma": [0.5, 1.0, 1.5],
  "Gamma": [2.0, 2.0],
  "mu": [0.0, 0.0, 10.0],
  "eta": [3.0, 0.0, 0.0]
})";

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "silva_io_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("a minimal scenario parses with defaults applied") {
    const planner::Scenario s = io::parse_scenario(kScenarioText);
    CHECK(s.stages == 2);
    CHECK(s.age_classes == 3);
    CHECK(s.min_harvest_age == 3);
    CHECK(s.max_planting_age == 1);
    CHECK(s.total_area == 12.0);
    CHECK(s.terminal_lo == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(s.terminal_hi == std::vector<double>{12.0, 12.0, 12.0});
    // default survival is 1: pure aging shift
    CHECK(s.transition.entry(1, 0) == 1.0);
    CHECK(s.transition.entry(2, 2) == 1.0);
    CHECK(s.transition.entry(0, 0) == 0.0);
}

TEST_CASE("missing and malformed keys are named") {
    std::string text = kScenarioText;
    text.replace(text.find("\"mu\""), 4, "\"nu\"");
    CHECK_THROWS_WITH_AS(io::parse_scenario(text), "mu: required", io::ParseError);

    CHECK_THROWS_WITH_AS(io::parse_scenario("{"), doctest::Contains("invalid JSON"),
                         io::ParseError);
    CHECK_THROWS_WITH_AS(io::parse_scenario(R"({"T": 1.5})"),
                         doctest::Contains("T: expected an integer"), io::ParseError);

    text = kScenarioText;
    text.replace(text.find("[0.5, 1.0, 1.5]"), 15, "[0.5, 1.0]");
    CHECK_THROWS_WITH_AS(io::parse_scenario(text),
                         doctest::Contains("gamma: expected array of length 3"), io::ParseError);

    text = kScenarioText;
    text.replace(text.find("\"l0\": 1"), 7, "\"l0\": 3");
    CHECK_THROWS_WITH_AS(io::parse_scenario(text),
                         doctest::Contains("l0: must satisfy 1 <= l0 < l <= L"), io::ParseError);
}

TEST_CASE("survival and matrix overrides") {
    std::string text = kScenarioText;
    text.insert(text.rfind('}'), R"(, "survival": [0.5, 0.5, 0.5])");
    const planner::Scenario with_survival = io::parse_scenario(text);
    CHECK(with_survival.transition.entry(1, 0) == 0.5);

    text = kScenarioText;
    text.insert(text.rfind('}'),
                R"(, "matrix": [[0,0,0],[0.9,0,0],[0,0.9,0.9]], "survival": [1,1,1])");
    const planner::Scenario with_matrix = io::parse_scenario(text);
    CHECK(with_matrix.transition.entry(1, 0) == 0.9);  // matrix wins over survival

    text = kScenarioText;
    text.insert(text.rfind('}'), R"(, "matrix": [[2,0,0],[0,0,0],[0,0,0]])");
    CHECK_THROWS_WITH_AS(io::parse_scenario(text), doctest::Contains("matrix"), io::ParseError);
}

TEST_CASE("trajectory CSV round-trips as a policy") {
    const planner::Scenario s = io::parse_scenario(kScenarioText);
    const planner::PlanTrajectory traj = planner::solve_plan(s);

    const auto csv = temp_dir() / "trajectory.csv";
    io::write_trajectory_csv(csv, traj);
    const io::Policy policy = io::load_policy(csv, s);
    REQUIRE(policy.harvest.size() == 2);
    REQUIRE(policy.plant.size() == 2);
    for (int t = 0; t < 2; ++t) {
        for (int i = 0; i < 3; ++i) {
            CHECK(policy.harvest[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] ==
                  traj.actions[static_cast<std::size_t>(t)].harvest()[static_cast<std::size_t>(i)]);
            CHECK(policy.plant[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] ==
                  traj.actions[static_cast<std::size_t>(t)].plant()[static_cast<std::size_t>(i)]);
        }
    }
    std::filesystem::remove(csv);
}

TEST_CASE("policy JSON validation names the offending row") {
    const planner::Scenario s = io::parse_scenario(kScenarioText);
    const auto path = temp_dir() / "policy.json";

    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs(R"({"u": [[0,0,1],[0,0,1]], "w": [[1,0,0]]})", f);
    std::fclose(f);
    CHECK_THROWS_WITH_AS(io::load_policy(path, s), doctest::Contains("w: expected 2 stage rows"),
                         io::ParseError);

    f = std::fopen(path.c_str(), "w");
    std::fputs(R"({"u": [[0,0,1],[0,1]], "w": [[1,0,0],[0,0,0]]})", f);
    std::fclose(f);
    CHECK_THROWS_WITH_AS(io::load_policy(path, s), doctest::Contains("u[1]: expected length 3"),
                         io::ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("numbers survive a write/read cycle unchanged") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int trial = 0; trial < 1000; ++trial) {
        double value = dist(rng);
        if (trial % 7 == 0) value /= 1e9;  // exercise subnormal-ish magnitudes
        const std::string text = io::format_number(value);
        CHECK(std::stod(text) == value);
    }
    CHECK(io::format_number(0.0) == "0");
    CHECK(io::format_number(2.5) == "2.5");
}
