#include "silva/info.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kahan.hpp"

namespace silva::info {

namespace {

constexpr double kSumTolerance = 1e-9;

}  // namespace

DiscreteState::DiscreteState(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw std::invalid_argument("DiscreteState: empty distribution");
    }
    detail::KahanAccumulator total;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (!(probs_[i] >= 0.0)) {
            throw std::invalid_argument("DiscreteState: negative probability " +
                                        std::to_string(probs_[i]) + " at index " +
                                        std::to_string(i));
        }
        total.add(probs_[i]);
    }
    if (std::abs(total.value() - 1.0) > kSumTolerance) {
        throw std::invalid_argument("DiscreteState: probabilities sum to " +
                                    std::to_string(total.value()));
    }
}

double entropy(const DiscreteState& state) {
    detail::KahanAccumulator acc;
    for (double p : state.probs()) {
        if (p > 0.0) acc.add(-p * std::log2(p));
    }
    return acc.value();
}

double entropy(const DiscreteState& state, double log_base) {
    if (!(log_base > 1.0)) {
        throw std::invalid_argument("entropy: log base must exceed 1, got " +
                                    std::to_string(log_base));
    }
    return entropy(state) * std::log(2.0) / std::log(log_base);
}

double information_gain(const DiscreteState& before, const DiscreteState& after) {
    return entropy(before) - entropy(after);
}

}  // namespace silva::info
