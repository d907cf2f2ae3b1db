#include "silva/pivot_kernel.hpp"

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace silva::lp {

namespace {

// Shared per-row elimination. Kept out-of-line so the serial and parallel
// loops run the exact same instruction stream and stay bitwise equal.
__attribute__((noinline)) void eliminate_one_row(double* __restrict row,
                                                 const double* __restrict pivot_row,
                                                 std::size_t cols, std::size_t pivot_col) {
    const double factor = row[pivot_col];
    if (factor == 0.0) return;
    for (std::size_t j = 0; j < cols; ++j) row[j] -= factor * pivot_row[j];
    row[pivot_col] = 0.0;  // exact, instead of the rounded near-zero
}

}  // namespace

void eliminate_serial(TableauView t, std::size_t pivot_row, std::size_t pivot_col) {
    const double* pivot = t.data + pivot_row * t.cols;
    for (std::size_t i = 0; i < t.rows; ++i) {
        if (i == pivot_row) continue;
        eliminate_one_row(t.data + i * t.cols, pivot, t.cols, pivot_col);
    }
}

void eliminate_parallel(TableauView t, std::size_t pivot_row, std::size_t pivot_col) {
#ifdef _OPENMP
    const double* pivot = t.data + pivot_row * t.cols;
    const std::int64_t rows = static_cast<std::int64_t>(t.rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
        if (static_cast<std::size_t>(i) == pivot_row) continue;
        eliminate_one_row(t.data + static_cast<std::size_t>(i) * t.cols, pivot, t.cols, pivot_col);
    }
#else
    eliminate_serial(t, pivot_row, pivot_col);
#endif
}

void eliminate(TableauView t, std::size_t pivot_row, std::size_t pivot_col,
               PivotBackend backend) {
    switch (backend) {
        case PivotBackend::Serial:
            eliminate_serial(t, pivot_row, pivot_col);
            return;
        case PivotBackend::Parallel:
            eliminate_parallel(t, pivot_row, pivot_col);
            return;
        case PivotBackend::Auto:
            break;
    }
#ifdef _OPENMP
    if (t.rows * t.cols >= parallel_threshold && omp_get_max_threads() > 1) {
        eliminate_parallel(t, pivot_row, pivot_col);
        return;
    }
#endif
    eliminate_serial(t, pivot_row, pivot_col);
}

}  // namespace silva::lp
