#pragma once

#include <cstddef>
#include <vector>

namespace silva::info {

// A finite probability distribution over elementary events.
class DiscreteState {
public:
    // Throws std::invalid_argument when an entry is negative or the total
    // differs from 1 by more than 1e-9.
    explicit DiscreteState(std::vector<double> probs);

    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }

private:
    std::vector<double> probs_;
};

// Shannon entropy in bits: -sum p log2 p, with 0 log 0 taken as 0.
double entropy(const DiscreteState& state);

// Same measure in an arbitrary logarithm base > 1 (e.g. e for nats).
double entropy(const DiscreteState& state, double log_base);

// Entropy decrease across a state transition, in bits. Positive when the
// transition reduced uncertainty; the states may differ in size.
double information_gain(const DiscreteState& before, const DiscreteState& after);

}  // namespace silva::info
