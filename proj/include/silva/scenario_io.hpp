#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "silva/planner.hpp"

namespace silva::io {

// Raised on malformed input files; the message names the offending field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reads a scenario JSON document. Required keys: T, L, l, l0, S, v0, gamma,
// Gamma, mu, eta. Optional: survival (default all 1), matrix (overrides the
// aging-shift operator), terminal_lo (default 0), terminal_hi (default S).
planner::Scenario load_scenario(const std::filesystem::path& path);
planner::Scenario parse_scenario(const std::string& json_text);

// Per-stage harvest and planting arrays, full length L each.
struct Policy {
    std::vector<std::vector<double>> harvest;  // T rows
    std::vector<std::vector<double>> plant;    // T rows
};

// Accepts a policy JSON document ({"u": [...], "w": [...]}) or a trajectory
// CSV emitted by this tool, chosen by file extension.
Policy load_policy(const std::filesystem::path& path, const planner::Scenario& scenario);

// Writes t,age_class,v,u,w rows; the final stage carries zero actions.
// Numbers are shortest round-trip decimal, so output is deterministic.
void write_trajectory_csv(const std::filesystem::path& path, const planner::PlanTrajectory& traj);

// Reads a trajectory CSV back into per-stage action arrays.
Policy read_trajectory_policy(const std::filesystem::path& path);

// Shortest decimal string that parses back to exactly the same double.
std::string format_number(double value);

}  // namespace silva::io
