#include "silva/forest.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace silva::forest {

namespace {

// Slack for validating transfer fractions against exact bounds.
constexpr double kEntrySlack = 1e-12;

}  // namespace

ForestState::ForestState(std::vector<double> areas) : areas_(std::move(areas)) {
    for (std::size_t i = 0; i < areas_.size(); ++i) {
        if (!(areas_[i] >= 0.0)) {
            throw std::invalid_argument("ForestState: negative area " +
                                        std::to_string(areas_[i]) + " in age class " +
                                        std::to_string(i + 1));
        }
    }
}

double ForestState::total_area() const {
    double total = 0.0;
    for (double a : areas_) total += a;
    return total;
}

TransitionOperator::TransitionOperator(std::vector<std::vector<double>> matrix) {
    order_ = matrix.size();
    entries_.assign(order_ * order_, 0.0);
    for (std::size_t r = 0; r < order_; ++r) {
        if (matrix[r].size() != order_) {
            throw std::invalid_argument("TransitionOperator: row " + std::to_string(r + 1) +
                                        " has length " + std::to_string(matrix[r].size()) +
                                        ", expected " + std::to_string(order_));
        }
        for (std::size_t c = 0; c < order_; ++c) {
            if (!(matrix[r][c] >= 0.0)) {
                throw std::invalid_argument("TransitionOperator: negative entry at (" +
                                            std::to_string(r + 1) + ", " + std::to_string(c + 1) +
                                            ")");
            }
            entries_[r * order_ + c] = matrix[r][c];
        }
    }
    for (std::size_t c = 0; c < order_; ++c) {
        double column_sum = 0.0;
        for (std::size_t r = 0; r < order_; ++r) column_sum += entries_[r * order_ + c];
        if (column_sum > 1.0 + kEntrySlack) {
            throw std::invalid_argument("TransitionOperator: column " + std::to_string(c + 1) +
                                        " sums to " + std::to_string(column_sum) +
                                        ", above 1 (age classes cannot create area)");
        }
    }
}

TransitionOperator TransitionOperator::aging_shift(const std::vector<double>& survival) {
    const std::size_t order = survival.size();
    for (std::size_t i = 0; i < order; ++i) {
        if (!(survival[i] >= 0.0) || survival[i] > 1.0) {
            throw std::invalid_argument("TransitionOperator: survival fraction " +
                                        std::to_string(survival[i]) + " for age class " +
                                        std::to_string(i + 1) + " outside [0, 1]");
        }
    }
    TransitionOperator op;
    op.order_ = order;
    op.entries_.assign(order * order, 0.0);
    for (std::size_t i = 0; i + 1 < order; ++i) op.entries_[(i + 1) * order + i] = survival[i];
    if (order > 0) op.entries_[(order - 1) * order + (order - 1)] = survival[order - 1];
    return op;
}

TransitionOperator TransitionOperator::identity(std::size_t order) {
    TransitionOperator op;
    op.order_ = order;
    op.entries_.assign(order * order, 0.0);
    for (std::size_t i = 0; i < order; ++i) op.entries_[i * order + i] = 1.0;
    return op;
}

double TransitionOperator::entry(std::size_t row, std::size_t col) const {
    if (row >= order_ || col >= order_) throw std::out_of_range("TransitionOperator::entry");
    return entries_[row * order_ + col];
}

std::vector<double> TransitionOperator::apply(const std::vector<double>& areas) const {
    if (areas.size() != order_) {
        throw std::invalid_argument("TransitionOperator: vector length " +
                                    std::to_string(areas.size()) + " does not match order " +
                                    std::to_string(order_));
    }
    std::vector<double> out(order_, 0.0);
    for (std::size_t r = 0; r < order_; ++r) {
        double acc = 0.0;
        const double* row = entries_.data() + r * order_;
        for (std::size_t c = 0; c < order_; ++c) acc += row[c] * areas[c];
        out[r] = acc;
    }
    return out;
}

ManagementAction::ManagementAction(std::vector<double> harvest, std::vector<double> plant,
                                   int min_harvest_age, int max_planting_age)
    : harvest_(std::move(harvest)), plant_(std::move(plant)) {
    if (harvest_.size() != plant_.size()) {
        throw std::invalid_argument("ManagementAction: harvest has " +
                                    std::to_string(harvest_.size()) + " classes but plant has " +
                                    std::to_string(plant_.size()));
    }
    const int num_classes = static_cast<int>(harvest_.size());
    for (int i = 1; i <= num_classes; ++i) {
        const double cut = harvest_[i - 1];
        const double put = plant_[i - 1];
        if (!(cut >= 0.0)) {
            throw std::invalid_argument("ManagementAction: negative harvest in age class " +
                                        std::to_string(i));
        }
        if (!(put >= 0.0)) {
            throw std::invalid_argument("ManagementAction: negative planting in age class " +
                                        std::to_string(i));
        }
        if (i < min_harvest_age && cut != 0.0) {
            throw std::invalid_argument("ManagementAction: harvest in age class " +
                                        std::to_string(i) + " below the minimal harvesting age " +
                                        std::to_string(min_harvest_age));
        }
        if (i > max_planting_age && put != 0.0) {
            throw std::invalid_argument("ManagementAction: planting in age class " +
                                        std::to_string(i) + " above the maximal planting age " +
                                        std::to_string(max_planting_age));
        }
    }
}

ManagementAction ManagementAction::none(std::size_t num_classes) {
    ManagementAction action;
    action.harvest_.assign(num_classes, 0.0);
    action.plant_.assign(num_classes, 0.0);
    return action;
}

ForestState natural_step(const ForestState& state, const TransitionOperator& op) {
    return ForestState(op.apply(state.areas()));
}

ForestState managed_step(const ForestState& state, const ManagementAction& action,
                         const TransitionOperator& op, double harvest_slack) {
    if (action.num_classes() != state.num_classes()) {
        throw std::invalid_argument("managed_step: action has " +
                                    std::to_string(action.num_classes()) +
                                    " classes but state has " +
                                    std::to_string(state.num_classes()));
    }
    std::vector<double> remaining(state.num_classes());
    for (std::size_t i = 0; i < remaining.size(); ++i) {
        const double left = state.areas()[i] - action.harvest()[i];
        if (left < -harvest_slack) {
            throw std::domain_error("managed_step: harvest " +
                                    std::to_string(action.harvest()[i]) + " exceeds stock " +
                                    std::to_string(state.areas()[i]) + " in age class " +
                                    std::to_string(i + 1));
        }
        remaining[i] = left < 0.0 ? 0.0 : left;
    }
    std::vector<double> next = op.apply(remaining);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += action.plant()[i];
    return ForestState(std::move(next));
}

}  // namespace silva::forest
