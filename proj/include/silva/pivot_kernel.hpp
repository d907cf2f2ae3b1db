#pragma once

#include <cstddef>

namespace silva::lp {

enum class PivotBackend {
    Auto,      // parallel when the tableau is large enough and OpenMP is compiled in
    Serial,    // reference implementation
    Parallel,  // OpenMP row loop (falls back to serial without OpenMP)
};

// Mutable view of a dense row-major tableau slab. `rows` counts every row
// that takes part in elimination, including the objective row.
struct TableauView {
    double* data = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;

    double* row(std::size_t r) noexcept { return data + r * cols; }
};

// Eliminates `pivot_col` from every row except `pivot_row`. The pivot row
// must already be normalized so that its pivot entry is exactly 1. Both
// backends perform identical per-row arithmetic, so their results are
// bitwise equal; the parallel variant only distributes rows across threads.
void eliminate_serial(TableauView t, std::size_t pivot_row, std::size_t pivot_col);
void eliminate_parallel(TableauView t, std::size_t pivot_row, std::size_t pivot_col);

// Dispatches on backend; Auto picks the parallel path for tableaus with at
// least `parallel_threshold` entries.
void eliminate(TableauView t, std::size_t pivot_row, std::size_t pivot_col,
               PivotBackend backend);

inline constexpr std::size_t parallel_threshold = 1u << 15;

}  // namespace silva::lp
