#pragma once

namespace silva::detail {

// Compensated summation; keeps long reductions accurate to a few ulps.
struct KahanAccumulator {
    double sum = 0.0;
    double carry = 0.0;

    void add(double value) {
        const double y = value - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

}  // namespace silva::detail
