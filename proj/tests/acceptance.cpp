// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Usage: acceptance --cli <path-to-cli-binary> --data <scenario-directory>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lp_oracle.hpp"
#include "silva/forest.hpp"
#include "silva/info.hpp"
#include "silva/lp.hpp"
#include "silva/planner.hpp"
#include "silva/scenario_io.hpp"
#include "silva/social_choice.hpp"

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;
using namespace silva;

namespace {

fs::path g_cli;
fs::path g_data;

struct Failure {
    std::string detail;
};

void expect(bool ok, const std::string& detail) {
    if (!ok) throw Failure{detail};
}

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

int run_cli(const std::string& args) {
    const std::string command = g_cli.string() + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

nlohmann::json read_json(const fs::path& path) {
    std::ifstream in(path);
    expect(static_cast<bool>(in), "cannot open " + path.string());
    return nlohmann::json::parse(in);
}

// --- criteria ---------------------------------------------------------

std::string condorcet_shares() {
    const auto start = clock_type::now();
    for (int n = 3; n <= 12; ++n) {
        const auto graph = social_choice::majority_aggregate(social_choice::condorcet_profile(n));
        expect(static_cast<int>(graph.edges().size()) == n,
               "n=" + std::to_string(n) + ": expected " + std::to_string(n) + " edges, got " +
                   std::to_string(graph.edges().size()));
        for (const auto& edge : graph.edges()) {
            expect(edge.support == Rational(n - 1, n),
                   "n=" + std::to_string(n) + ": edge share " + edge.support.str() +
                       " is not " + Rational(n - 1, n).str());
        }
        const auto cycle = social_choice::find_cycle(graph);
        expect(cycle.has_value() && static_cast<int>(cycle->size()) == n,
               "n=" + std::to_string(n) + ": no cycle of length " + std::to_string(n));
    }
    const double elapsed = seconds_since(start);
    expect(elapsed < 1.0, "took " + std::to_string(elapsed) + " s, budget 1 s");
    return "n = 3..12, exact shares (n-1)/n, " + std::to_string(elapsed) + " s";
}

std::string leader_election_share() {
    for (int n = 2; n <= 12; ++n) {
        const auto profile = social_choice::leader_election_profile(n);
        for (int candidate = 1; candidate <= n; ++candidate) {
            const auto share = social_choice::top_choice_support(profile, candidate);
            expect(share == Rational(1, n), "n=" + std::to_string(n) + ": candidate " +
                                                std::to_string(candidate) + " share " +
                                                share.str());
        }
    }
    return "n = 2..12, exact top-choice share 1/n";
}

std::string lp_oracle_equivalence() {
    const auto start = clock_type::now();
    std::mt19937 rng(7777);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const lp::LinearProgram program = testing::random_bounded_lp(rng);
        const lp::Solution solution = lp::solve(program);
        expect(solution.status == lp::Status::Optimal,
               "trial " + std::to_string(trial) + ": solver reported " +
                   lp::to_string(solution.status));
        const auto oracle = testing::vertex_enumeration_optimum(program);
        expect(oracle.has_value(), "trial " + std::to_string(trial) + ": oracle found no vertex");
        const double gap = std::abs(solution.objective_value - *oracle);
        worst = std::max(worst, gap);
        expect(gap <= 1e-7, "trial " + std::to_string(trial) + ": |simplex - oracle| = " +
                                std::to_string(gap));
    }
    const double elapsed = seconds_since(start);
    expect(elapsed < 10.0, "took " + std::to_string(elapsed) + " s, budget 10 s");
    std::ostringstream detail;
    detail << "200 programs, worst gap " << worst << ", " << elapsed << " s";
    return detail.str();
}

std::string pine_scenario() {
    const fs::path path = g_data / "pine_scaled.json";
    const planner::Scenario scenario = io::load_scenario(path);
    expect(scenario.min_harvest_age == 6 && scenario.age_classes == 12 && scenario.stages == 20,
           "shipped scenario is not the l=6, L=12, T=20 scaling");
    const auto start = clock_type::now();
    const planner::PlanTrajectory traj = planner::solve_plan(scenario);
    const double elapsed = seconds_since(start);
    const auto [ok, violations] = planner::check_feasibility(scenario, traj, 1e-8);
    expect(ok && violations.empty(),
           "plan has " + std::to_string(violations.size()) + " violations");
    expect(elapsed < 30.0, "took " + std::to_string(elapsed) + " s, budget 30 s");
    std::ostringstream detail;
    detail << "optimal, objective " << traj.objective_value << ", 0 violations, " << elapsed
           << " s";
    return detail.str();
}

std::string stationary_rotation_bound() {
    const int stages = 6;
    const double area = 100.0;
    planner::Scenario s;
    s.stages = stages;
    s.age_classes = 3;
    s.min_harvest_age = 3;
    s.max_planting_age = 1;
    s.total_area = 3 * area;
    s.initial = forest::ForestState({area, area, area});
    s.carbon_per_ha = {0.5, 1.0, 1.5};
    s.carbon_floor.assign(stages, 0.0);
    s.timber_yield = {0.0, 0.0, 30.0};
    s.planting_cost = {5.0, 0.0, 0.0};
    s.terminal_lo = s.initial.areas();
    s.terminal_hi = s.initial.areas();
    s.transition = forest::TransitionOperator::aging_shift({1.0, 1.0, 1.0});

    const double by_hand = (30.0 - 5.0) * area * stages;
    const auto traj = planner::solve_plan(s);
    expect(traj.objective_value >= by_hand - 1e-7,
           "plan " + std::to_string(traj.objective_value) + " below the stationary policy " +
               std::to_string(by_hand));
    std::ostringstream detail;
    detail << "plan " << traj.objective_value << " >= stationary " << by_hand;
    return detail.str();
}

std::string conservation_suite() {
    std::mt19937 rng(31415);
    std::uniform_real_distribution<double> area(0.0, 100.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t classes = 2 + rng() % 11;
        const auto op = forest::TransitionOperator::aging_shift(
            std::vector<double>(classes, 1.0));
        std::vector<double> areas(classes);
        for (double& a : areas) a = area(rng);
        forest::ForestState state(areas);
        const double initial_total = state.total_area();
        for (int step = 0; step < 50; ++step) state = forest::natural_step(state, op);
        const double drift = std::abs(state.total_area() - initial_total);
        worst = std::max(worst, drift);
        expect(drift <= 1e-10, "trial " + std::to_string(trial) + ": drift " +
                                   std::to_string(drift) + " after 50 steps");
    }
    std::ostringstream detail;
    detail << "100 states x 50 steps, worst drift " << worst;
    return detail.str();
}

std::string entropy_suite() {
    for (const std::size_t n : {2u, 3u, 5u, 8u, 100u, 1024u, 10000u, 65535u, 65536u}) {
        const info::DiscreteState uniform(
            std::vector<double>(n, 1.0 / static_cast<double>(n)));
        const double gap = std::abs(info::entropy(uniform) - std::log2(static_cast<double>(n)));
        expect(gap <= 1e-12,
               "uniform n=" + std::to_string(n) + ": |H - log2 n| = " + std::to_string(gap));

        std::vector<double> degenerate(n, 0.0);
        degenerate[n / 2] = 1.0;
        expect(info::entropy(info::DiscreteState(degenerate)) == 0.0,
               "degenerate n=" + std::to_string(n) + " has nonzero entropy");
    }
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 128;
        std::vector<double> p(n);
        double total = 0.0;
        for (double& x : p) total += (x = dist(rng));
        for (double& x : p) x /= total;
        const double h = info::entropy(info::DiscreteState(p));
        expect(h >= 0.0 && h <= std::log2(static_cast<double>(n)) + 1e-12,
               "trial " + std::to_string(trial) + ": H = " + std::to_string(h) +
                   " outside [0, log2 " + std::to_string(n) + "]");
    }
    return "uniform to n = 65536 within 1e-12, bounds on 1000 random distributions";
}

std::string cli_round_trip() {
    expect(fs::exists(g_cli), "CLI binary not found at " + g_cli.string());
    std::vector<fs::path> scenarios;
    for (const auto& entry : fs::directory_iterator(g_data)) {
        if (entry.path().extension() == ".json") scenarios.push_back(entry.path());
    }
    std::sort(scenarios.begin(), scenarios.end());
    expect(!scenarios.empty(), "no scenarios shipped under " + g_data.string());

    const fs::path work = fs::temp_directory_path() / "silva_acceptance";
    fs::remove_all(work);
    for (const auto& scenario : scenarios) {
        const fs::path plan_dir = work / scenario.stem() / "plan";
        const fs::path replay_dir = work / scenario.stem() / "replay";
        fs::create_directories(plan_dir);

        int code = run_cli("plan --scenario " + scenario.string() + " --out " +
                           plan_dir.string());
        expect(code == 0, scenario.filename().string() + ": plan exited " + std::to_string(code));

        code = run_cli("simulate --scenario " + scenario.string() + " --policy " +
                       (plan_dir / "trajectory.csv").string() + " --out " + replay_dir.string());
        expect(code == 0,
               scenario.filename().string() + ": simulate exited " + std::to_string(code));

        const auto planned = read_json(plan_dir / "summary.json");
        const auto replayed = read_json(replay_dir / "summary.json");
        expect(replayed.at("feasible").get<bool>(),
               scenario.filename().string() + ": replay reported infeasible");
        const double gap = std::abs(planned.at("objective_value").get<double>() -
                                    replayed.at("objective_value").get<double>());
        expect(gap <= 1e-7, scenario.filename().string() + ": replay objective differs by " +
                                std::to_string(gap));
    }
    return std::to_string(scenarios.size()) + " scenarios planned and replayed within 1e-7";
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli") g_cli = argv[i + 1];
        if (flag == "--data") g_data = argv[i + 1];
    }
    if (g_cli.empty() || g_data.empty()) {
        std::cerr << "usage: acceptance --cli <binary> --data <scenario dir>\n";
        return 2;
    }

    const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
        {"condorcet-shares", condorcet_shares},
        {"leader-election-share", leader_election_share},
        {"lp-oracle-equivalence", lp_oracle_equivalence},
        {"scaled-pine-scenario", pine_scenario},
        {"stationary-rotation-bound", stationary_rotation_bound},
        {"conservation-suite", conservation_suite},
        {"entropy-suite", entropy_suite},
        {"cli-round-trip", cli_round_trip},
    };

    int failures = 0;
    for (const auto& [name, run] : criteria) {
        try {
            const std::string detail = run();
            std::cout << "[PASS] " << name  << ": " << detail << '\n';
        } catch (const Failure& failure) {
            ++failures;
            std::cout << "[FAIL] " << name  << ": " << failure.detail << '\n';
        } catch (const std::exception& err) {
            ++failures;
            std::cout << "[FAIL] " << name << ": unexpected error: " << err.what() << '\n';
        }
    }
    if (failures > 0) {
        std::cout << failures << " of " << criteria.size() << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << criteria.size() << " criteria passed\n";
    return 0;
}
