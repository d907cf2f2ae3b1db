#include "silva/scenario_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace silva::io {

namespace {

using nlohmann::json;

const json& member(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(std::string(key) + ": required");
    return *it;
}

int integer_field(const json& doc, const char* key) {
    const json& value = member(doc, key);
    if (!value.is_number_integer()) {
        throw ParseError(std::string(key) + ": expected an integer");
    }
    return value.get<int>();
}

double number_field(const json& doc, const char* key) {
    const json& value = member(doc, key);
    if (!value.is_number()) throw ParseError(std::string(key) + ": expected a number");
    return value.get<double>();
}

std::vector<double> number_array(const json& value, const std::string& key, int expected) {
    if (!value.is_array()) throw ParseError(key + ": expected an array");
    if (expected >= 0 && static_cast<int>(value.size()) != expected) {
        throw ParseError(key + ": expected array of length " + std::to_string(expected) +
                         ", got " + std::to_string(value.size()));
    }
    std::vector<double> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number()) {
            throw ParseError(key + ": entry " + std::to_string(i) + " is not a number");
        }
        out.push_back(value[i].get<double>());
    }
    return out;
}

std::vector<double> array_field(const json& doc, const char* key, int expected) {
    return number_array(member(doc, key), key, expected);
}

}  // namespace

planner::Scenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw ParseError(std::string("invalid JSON: ") + err.what());
    }
    if (!doc.is_object()) throw ParseError("scenario: expected a JSON object");

    planner::Scenario scenario;
    scenario.stages = integer_field(doc, "T");
    scenario.age_classes = integer_field(doc, "L");
    scenario.min_harvest_age = integer_field(doc, "l");
    scenario.max_planting_age = integer_field(doc, "l0");
    scenario.total_area = number_field(doc, "S");

    const int L = scenario.age_classes;
    const int T = scenario.stages;
    if (L < 1) throw ParseError("L: must be at least 1");
    if (T < 1) throw ParseError("T: must be at least 1");

    const std::vector<double> v0 = array_field(doc, "v0", L);
    for (std::size_t i = 0; i < v0.size(); ++i) {
        if (!(v0[i] >= 0.0)) {
            throw ParseError("v0: negative entry " + std::to_string(v0[i]) + " at index " +
                             std::to_string(i));
        }
    }
    scenario.initial = forest::ForestState(v0);

    scenario.carbon_per_ha = array_field(doc, "gamma", L);
    scenario.carbon_floor = array_field(doc, "Gamma", T);
    scenario.timber_yield = array_field(doc, "mu", L);
    scenario.planting_cost = array_field(doc, "eta", L);

    scenario.terminal_lo = doc.contains("terminal_lo")
                               ? array_field(doc, "terminal_lo", L)
                               : std::vector<double>(static_cast<std::size_t>(L), 0.0);
    scenario.terminal_hi = doc.contains("terminal_hi")
                               ? array_field(doc, "terminal_hi", L)
                               : std::vector<double>(static_cast<std::size_t>(L),
                                                     scenario.total_area);

    if (doc.contains("matrix")) {
        const json& rows = member(doc, "matrix");
        if (!rows.is_array() || static_cast<int>(rows.size()) != L) {
            throw ParseError("matrix: expected " + std::to_string(L) + " rows");
        }
        std::vector<std::vector<double>> matrix;
        matrix.reserve(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            matrix.push_back(number_array(rows[r], "matrix[" + std::to_string(r) + "]", L));
        }
        try {
            scenario.transition = forest::TransitionOperator(std::move(matrix));
        } catch (const std::invalid_argument& err) {
            throw ParseError(std::string("matrix: ") + err.what());
        }
    } else {
        std::vector<double> survival = doc.contains("survival")
                                           ? array_field(doc, "survival", L)
                                           : std::vector<double>(static_cast<std::size_t>(L), 1.0);
        try {
            scenario.transition = forest::TransitionOperator::aging_shift(survival);
        } catch (const std::invalid_argument& err) {
            throw ParseError(std::string("survival: ") + err.what());
        }
    }

    try {
        scenario.validate();
    } catch (const std::invalid_argument& err) {
        throw ParseError(err.what());
    }
    return scenario;
}

planner::Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string format_number(double value) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) return "0";
    return std::string(buf.data(), ptr);
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const planner::PlanTrajectory& traj) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write trajectory file " + path.string());
    out << "t,age_class,v,u,w\n";
    const int horizon = static_cast<int>(traj.actions.size());
    for (int t = 0; t < static_cast<int>(traj.states.size()); ++t) {
        const auto& areas = traj.states[static_cast<std::size_t>(t)].areas();
        for (std::size_t i = 0; i < areas.size(); ++i) {
            const double cut =
                t < horizon ? traj.actions[static_cast<std::size_t>(t)].harvest()[i] : 0.0;
            const double put =
                t < horizon ? traj.actions[static_cast<std::size_t>(t)].plant()[i] : 0.0;
            out << t << ',' << (i + 1) << ',' << format_number(areas[i]) << ','
                << format_number(cut) << ',' << format_number(put) << '\n';
        }
    }
}

namespace {

double parse_double(std::string_view text, int line, const char* what) {
    double value = 0.0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError("trajectory line " + std::to_string(line) + ": bad " + what + " value '" +
                         std::string(text) + "'");
    }
    return value;
}

}  // namespace

Policy read_trajectory_policy(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trajectory file " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError("trajectory file is empty");

    std::map<std::pair<int, int>, std::pair<double, double>> cells;
    int max_stage = 0;
    int max_class = 0;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::array<std::string_view, 5> fields;
        std::string_view rest = line;
        for (int f = 0; f < 5; ++f) {
            const std::size_t comma = rest.find(',');
            if (f < 4) {
                if (comma == std::string_view::npos) {
                    throw ParseError("trajectory line " + std::to_string(line_no) +
                                     ": expected 5 comma-separated fields");
                }
                fields[static_cast<std::size_t>(f)] = rest.substr(0, comma);
                rest.remove_prefix(comma + 1);
            } else {
                if (comma != std::string_view::npos) {
                    throw ParseError("trajectory line " + std::to_string(line_no) +
                                     ": expected 5 comma-separated fields");
                }
                fields[static_cast<std::size_t>(f)] = rest;
            }
        }
        const int t = static_cast<int>(parse_double(fields[0], line_no, "t"));
        const int age = static_cast<int>(parse_double(fields[1], line_no, "age_class"));
        parse_double(fields[2], line_no, "v");  // states are recomputed, not read
        const double cut = parse_double(fields[3], line_no, "u");
        const double put = parse_double(fields[4], line_no, "w");
        if (t < 0 || age < 1) {
            throw ParseError("trajectory line " + std::to_string(line_no) +
                             ": stage or age class out of range");
        }
        cells[{t, age}] = {cut, put};
        max_stage = std::max(max_stage, t);
        max_class = std::max(max_class, age);
    }
    if (max_stage < 1) throw ParseError("trajectory file holds no stages beyond the initial state");

    Policy policy;
    policy.harvest.assign(static_cast<std::size_t>(max_stage),
                          std::vector<double>(static_cast<std::size_t>(max_class), 0.0));
    policy.plant = policy.harvest;
    for (int t = 0; t < max_stage; ++t) {
        for (int age = 1; age <= max_class; ++age) {
            const auto it = cells.find({t, age});
            if (it == cells.end()) {
                throw ParseError("trajectory file is missing stage " + std::to_string(t) +
                                 ", age class " + std::to_string(age));
            }
            policy.harvest[static_cast<std::size_t>(t)][static_cast<std::size_t>(age - 1)] =
                it->second.first;
            policy.plant[static_cast<std::size_t>(t)][static_cast<std::size_t>(age - 1)] =
                it->second.second;
        }
    }
    return policy;
}

Policy load_policy(const std::filesystem::path& path, const planner::Scenario& scenario) {
    Policy policy;
    if (path.extension() == ".csv") {
        policy = read_trajectory_policy(path);
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open policy file " + path.string());
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& err) {
            throw ParseError(std::string("invalid JSON: ") + err.what());
        }
        const json& cut_rows = member(doc, "u");
        const json& put_rows = member(doc, "w");
        if (!cut_rows.is_array()) throw ParseError("u: expected an array of stage rows");
        if (!put_rows.is_array()) throw ParseError("w: expected an array of stage rows");
        for (std::size_t t = 0; t < cut_rows.size(); ++t) {
            policy.harvest.push_back(
                number_array(cut_rows[t], "u[" + std::to_string(t) + "]", -1));
        }
        for (std::size_t t = 0; t < put_rows.size(); ++t) {
            policy.plant.push_back(number_array(put_rows[t], "w[" + std::to_string(t) + "]", -1));
        }
    }

    const auto stages = static_cast<std::size_t>(scenario.stages);
    const auto classes = static_cast<std::size_t>(scenario.age_classes);
    if (policy.harvest.size() != stages) {
        throw ParseError("u: expected " + std::to_string(stages) + " stage rows, got " +
                         std::to_string(policy.harvest.size()));
    }
    if (policy.plant.size() != stages) {
        throw ParseError("w: expected " + std::to_string(stages) + " stage rows, got " +
                         std::to_string(policy.plant.size()));
    }
    for (std::size_t t = 0; t < stages; ++t) {
        if (policy.harvest[t].size() != classes) {
            throw ParseError("u[" + std::to_string(t) + "]: expected length " +
                             std::to_string(classes) + ", got " +
                             std::to_string(policy.harvest[t].size()));
        }
        if (policy.plant[t].size() != classes) {
            throw ParseError("w[" + std::to_string(t) + "]: expected length " +
                             std::to_string(classes) + ", got " +
                             std::to_string(policy.plant[t].size()));
        }
    }
    return policy;
}

}  // namespace silva::io
