#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "silva/rational.hpp"

namespace silva::social_choice {

// One ordered pair (i, j) means "candidate i is preferred over candidate j".
// Candidates are labeled 1..n throughout this module.
using PreferencePair = std::pair<int, int>;
using PreferenceSet = std::set<PreferencePair>;

// A partial pairwise preference relation per representative. A pair absent
// from a representative's set is an abstention on that comparison.
class PreferenceProfile {
public:
    // Throws std::invalid_argument on out-of-range candidates, self-pairs,
    // or a representative holding both (i, j) and (j, i).
    PreferenceProfile(int num_candidates, std::vector<PreferenceSet> preferences);

    int num_candidates() const noexcept { return num_candidates_; }
    int num_representatives() const noexcept { return static_cast<int>(preferences_.size()); }

    // rep is 1-based, matching the candidate labeling.
    const PreferenceSet& preferences(int rep) const;
    const std::vector<PreferenceSet>& all_preferences() const noexcept { return preferences_; }

private:
    int num_candidates_ = 0;
    std::vector<PreferenceSet> preferences_;
};

struct MajorityEdge {
    int winner = 0;
    int loser = 0;
    Rational support;  // backers of (winner, loser) over all representatives
};

// Pairwise majority relation: an edge i -> j exists iff strictly more
// representatives hold (i, j) than (j, i). At most one direction survives,
// and ties yield no edge.
class MajorityGraph {
public:
    MajorityGraph() = default;
    MajorityGraph(int num_candidates, std::vector<MajorityEdge> edges);

    int num_candidates() const noexcept { return num_candidates_; }
    const std::vector<MajorityEdge>& edges() const noexcept { return edges_; }
    bool has_edge(int winner, int loser) const;

private:
    int num_candidates_ = 0;
    std::vector<MajorityEdge> edges_;  // sorted by (winner, loser)
};

// n groups each back their own candidate and state nothing else:
// representative i holds (i, j) for every j != i. Requires n >= 2.
PreferenceProfile leader_election_profile(int n);

// The generalized majority-cycle construction on n candidates:
//   rep 1 holds (i, i+1) for i = 1..n-1;
//   rep k, 1 < k < n, holds (i, i+1) for i != k-1 plus (n, 1);
//   rep n holds (i, i+1) for i = 1..n-2 plus (n, 1).
// Every representative skips exactly one adjacent comparison, which is what
// pushes each surviving edge's support to (n-1)/n. Requires n >= 3.
PreferenceProfile condorcet_profile(int n);

MajorityGraph majority_aggregate(const PreferenceProfile& profile);

// Some directed cycle as an ordered candidate list, if one exists. Search is
// depth-first from the lowest candidate with neighbors in ascending order,
// so the result is deterministic.
std::optional<std::vector<int>> find_cycle(const MajorityGraph& graph);

// Share of representatives whose stated preferences place the candidate
// above every other candidate.
Rational top_choice_support(const PreferenceProfile& profile, int candidate);

}  // namespace silva::social_choice
