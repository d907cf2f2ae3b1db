// Compares the serial and OpenMP tableau-elimination kernels, then times a
// full solve of a generated planning program with both backends.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#include "silva/lp.hpp"
#include "silva/pivot_kernel.hpp"
#include "silva/planner.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

std::vector<double> random_tableau(std::size_t rows, std::size_t cols, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> cells(rows * cols);
    for (double& c : cells) c = dist(rng);
    return cells;
}

double bench_kernel(std::vector<double> cells, std::size_t rows, std::size_t cols,
                    std::size_t sweeps, bool parallel) {
    silva::lp::TableauView view{cells.data(), rows, cols};
    const auto start = clock_type::now();
    for (std::size_t k = 0; k < sweeps; ++k) {
        const std::size_t pr = k % rows;
        const std::size_t pc = k % (cols - 1);
        cells[pr * cols + pc] = 1.0;  // pretend the row is normalized
        if (parallel) {
            silva::lp::eliminate_parallel(view, pr, pc);
        } else {
            silva::lp::eliminate_serial(view, pr, pc);
        }
    }
    return ms_since(start);
}

silva::planner::Scenario synthetic_scenario(int classes, int stages) {
    silva::planner::Scenario s;
    s.stages = stages;
    s.age_classes = classes;
    s.min_harvest_age = classes / 2;
    s.max_planting_age = 1;
    s.total_area = 1000.0;

    std::vector<double> v0(static_cast<std::size_t>(classes));
    for (int i = 0; i < classes; ++i) {
        v0[static_cast<std::size_t>(i)] = 900.0 / classes * (1.0 + 0.2 * ((i % 3) - 1));
    }
    s.initial = silva::forest::ForestState(v0);

    s.carbon_per_ha.resize(static_cast<std::size_t>(classes));
    s.timber_yield.resize(static_cast<std::size_t>(classes));
    s.planting_cost.assign(static_cast<std::size_t>(classes), 0.0);
    s.planting_cost[0] = 40.0;
    for (int i = 0; i < classes; ++i) {
        s.carbon_per_ha[static_cast<std::size_t>(i)] = 1.0 + 1.5 * i / classes;
        s.timber_yield[static_cast<std::size_t>(i)] =
            i + 1 >= s.min_harvest_age ? 150.0 + 200.0 * i / classes : 0.0;
    }
    s.carbon_floor.assign(static_cast<std::size_t>(stages), 600.0);
    s.terminal_lo.assign(static_cast<std::size_t>(classes), 0.0);
    s.terminal_hi.assign(static_cast<std::size_t>(classes), s.total_area);
    s.transition =
        silva::forest::TransitionOperator::aging_shift(std::vector<double>(
            static_cast<std::size_t>(classes), 0.99));
    return s;
}

void bench_solve(int classes, int stages) {
    const auto scenario = synthetic_scenario(classes, stages);
    const auto program = silva::planner::build_lp(scenario);

    silva::lp::SolverOptions serial_options;
    serial_options.backend = silva::lp::PivotBackend::Serial;
    silva::lp::SolverOptions parallel_options;
    parallel_options.backend = silva::lp::PivotBackend::Parallel;

    auto start = clock_type::now();
    const auto serial = silva::lp::solve(program, serial_options);
    const double serial_ms = ms_since(start);
    start = clock_type::now();
    const auto parallel = silva::lp::solve(program, parallel_options);
    const double parallel_ms = ms_since(start);

    const bool same = serial.status == parallel.status && serial.x == parallel.x;
    std::printf("solve  L=%-3d T=%-3d  %4zu vars %4zu rows  %6zu pivots  serial %8.1f ms  "
                "parallel %8.1f ms  speedup %.2fx  results %s\n",
                classes, stages, program.num_variables(), program.num_constraints(),
                serial.pivots, serial_ms, parallel_ms, serial_ms / parallel_ms,
                same ? "identical" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel falls back to serial\n");
#endif

    std::printf("\ntableau elimination kernel, %s:\n", quick ? "32 sweeps" : "128 sweeps");
    const std::size_t sweeps = quick ? 32 : 128;
    for (std::size_t n : {256u, 512u, 1024u, quick ? 1024u : 2048u}) {
        const std::size_t rows = n;
        const std::size_t cols = 2 * n;
        auto cells = random_tableau(rows, cols, 42);
        const double serial_ms = bench_kernel(cells, rows, cols, sweeps, false) / sweeps;
        const double parallel_ms = bench_kernel(cells, rows, cols, sweeps, true) / sweeps;

        // the two kernels must agree bit for bit
        auto a = cells;
        auto b = cells;
        silva::lp::eliminate_serial({a.data(), rows, cols}, 1, 2);
        silva::lp::eliminate_parallel({b.data(), rows, cols}, 1, 2);
        const bool same = std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;

        std::printf("  %4zu x %-4zu  serial %8.3f ms/pivot  parallel %8.3f ms/pivot  "
                    "speedup %.2fx  results %s\n",
                    rows, cols, serial_ms, parallel_ms, serial_ms / parallel_ms,
                    same ? "identical" : "DIFFER");
    }

    std::printf("\nfull planning solves:\n");
    bench_solve(12, 20);
    if (!quick) bench_solve(24, 30);
    return 0;
}
