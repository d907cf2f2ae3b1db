#pragma once

#include <cstddef>
#include <vector>

namespace silva::forest {

// Area (hectares) per age class at one stage. Age classes are 1-based in the
// model; areas()[i] holds the area of class i+1. Immutable after construction.
class ForestState {
public:
    ForestState() = default;

    // Throws std::invalid_argument if any entry is negative.
    explicit ForestState(std::vector<double> areas);

    const std::vector<double>& areas() const noexcept { return areas_; }
    std::size_t num_classes() const noexcept { return areas_.size(); }
    double area(std::size_t age_class) const { return areas_.at(age_class - 1); }
    double total_area() const;

    bool operator==(const ForestState&) const = default;

private:
    std::vector<double> areas_;
};

// One-stage transition of the age-class vector under natural dynamics.
// Nonnegative square matrix whose column sums never exceed 1, so no age
// class can create area out of nothing.
class TransitionOperator {
public:
    TransitionOperator() = default;

    // Arbitrary nonnegative matrix, row-major. Throws on negative entries,
    // non-square input, or a column sum above 1 (plus slack for rounding).
    explicit TransitionOperator(std::vector<std::vector<double>> matrix);

    // The aging-shift matrix: class i feeds class i+1 with fraction
    // survival[i-1], and the oldest class persists with survival[L-1].
    static TransitionOperator aging_shift(const std::vector<double>& survival);

    static TransitionOperator identity(std::size_t order);

    std::size_t order() const noexcept { return order_; }
    double entry(std::size_t row, std::size_t col) const;

    // Matrix-vector product A * v on the raw area vector.
    std::vector<double> apply(const std::vector<double>& areas) const;

private:
    std::size_t order_ = 0;
    std::vector<double> entries_;  // row-major, order_ x order_
};

// Harvest and planting areas (hectares) for one stage. The constructor
// enforces the age bounds: no harvest below min_harvest_age, no planting
// above max_planting_age.
class ManagementAction {
public:
    ManagementAction() = default;
    ManagementAction(std::vector<double> harvest, std::vector<double> plant,
                     int min_harvest_age, int max_planting_age);

    static ManagementAction none(std::size_t num_classes);

    const std::vector<double>& harvest() const noexcept { return harvest_; }
    const std::vector<double>& plant() const noexcept { return plant_; }
    std::size_t num_classes() const noexcept { return harvest_.size(); }

private:
    std::vector<double> harvest_;
    std::vector<double> plant_;
};

// v' = A(v). Throws std::invalid_argument on dimension mismatch.
ForestState natural_step(const ForestState& state, const TransitionOperator& op);

// v' = A(v - u) + w. Harvest may not exceed the standing area of its class;
// overshoot up to harvest_slack is treated as rounding noise and clamped,
// anything larger throws std::domain_error naming the class.
ForestState managed_step(const ForestState& state, const ManagementAction& action,
                         const TransitionOperator& op, double harvest_slack = 1e-8);

}  // namespace silva::forest
