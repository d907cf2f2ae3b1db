#include "silva/social_choice.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace silva::social_choice {

PreferenceProfile::PreferenceProfile(int num_candidates, std::vector<PreferenceSet> preferences)
    : num_candidates_(num_candidates), preferences_(std::move(preferences)) {
    if (num_candidates_ < 1) {
        throw std::invalid_argument("PreferenceProfile: need at least one candidate");
    }
    for (std::size_t k = 0; k < preferences_.size(); ++k) {
        for (const auto& [i, j] : preferences_[k]) {
            if (i < 1 || i > num_candidates_ || j < 1 || j > num_candidates_) {
                throw std::invalid_argument("PreferenceProfile: representative " +
                                            std::to_string(k + 1) + " ranks candidate outside 1.." +
                                            std::to_string(num_candidates_));
            }
            if (i == j) {
                throw std::invalid_argument("PreferenceProfile: representative " +
                                            std::to_string(k + 1) + " prefers candidate " +
                                            std::to_string(i) + " over itself");
            }
            if (preferences_[k].count({j, i}) > 0) {
                throw std::invalid_argument("PreferenceProfile: representative " +
                                            std::to_string(k + 1) + " holds both orderings of (" +
                                            std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
}

const PreferenceSet& PreferenceProfile::preferences(int rep) const {
    if (rep < 1 || rep > num_representatives()) {
        throw std::out_of_range("PreferenceProfile: representative " + std::to_string(rep));
    }
    return preferences_[static_cast<std::size_t>(rep - 1)];
}

MajorityGraph::MajorityGraph(int num_candidates, std::vector<MajorityEdge> edges)
    : num_candidates_(num_candidates), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end(), [](const MajorityEdge& a, const MajorityEdge& b) {
        return std::pair{a.winner, a.loser} < std::pair{b.winner, b.loser};
    });
}

bool MajorityGraph::has_edge(int winner, int loser) const {
    return std::any_of(edges_.begin(), edges_.end(), [&](const MajorityEdge& e) {
        return e.winner == winner && e.loser == loser;
    });
}

PreferenceProfile leader_election_profile(int n) {
    if (n < 2) {
        throw std::invalid_argument("leader_election_profile: need n >= 2 groups, got " +
                                    std::to_string(n));
    }
    std::vector<PreferenceSet> prefs(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (j != i) prefs[static_cast<std::size_t>(i - 1)].insert({i, j});
        }
    }
    return PreferenceProfile(n, std::move(prefs));
}

PreferenceProfile condorcet_profile(int n) {
    if (n < 3) {
        throw std::invalid_argument("condorcet_profile: need n >= 3 candidates, got " +
                                    std::to_string(n));
    }
    std::vector<PreferenceSet> prefs(static_cast<std::size_t>(n));
    for (int i = 1; i <= n - 1; ++i) prefs[0].insert({i, i + 1});
    for (int k = 2; k <= n - 1; ++k) {
        auto& p = prefs[static_cast<std::size_t>(k - 1)];
        for (int i = 1; i <= k - 2; ++i) p.insert({i, i + 1});
        for (int i = k; i <= n - 1; ++i) p.insert({i, i + 1});
        p.insert({n, 1});
    }
    for (int i = 1; i <= n - 2; ++i) prefs[static_cast<std::size_t>(n - 1)].insert({i, i + 1});
    prefs[static_cast<std::size_t>(n - 1)].insert({n, 1});
    return PreferenceProfile(n, std::move(prefs));
}

MajorityGraph majority_aggregate(const PreferenceProfile& profile) {
    std::map<PreferencePair, std::int64_t> tally;
    for (const PreferenceSet& prefs : profile.all_preferences()) {
        for (const PreferencePair& pair : prefs) ++tally[pair];
    }
    const auto count = [&tally](int i, int j) {
        const auto it = tally.find({i, j});
        return it == tally.end() ? std::int64_t{0} : it->second;
    };
    const auto total = static_cast<std::int64_t>(profile.num_representatives());
    std::vector<MajorityEdge> edges;
    for (int i = 1; i <= profile.num_candidates(); ++i) {
        for (int j = i + 1; j <= profile.num_candidates(); ++j) {
            const std::int64_t forward = count(i, j);
            const std::int64_t backward = count(j, i);
            if (forward > backward) {
                edges.push_back({i, j, Rational(forward, total)});
            } else if (backward > forward) {
                edges.push_back({j, i, Rational(backward, total)});
            }
        }
    }
    return MajorityGraph(profile.num_candidates(), std::move(edges));
}

namespace {

// Iterative DFS with an explicit stack; colors: 0 fresh, 1 on path, 2 done.
std::optional<std::vector<int>> cycle_from(int start,
                                           const std::vector<std::vector<int>>& adjacency,
                                           std::vector<int>& color) {
    std::vector<int> path;
    std::vector<std::size_t> next_edge;
    path.push_back(start);
    next_edge.push_back(0);
    color[static_cast<std::size_t>(start)] = 1;
    while (!path.empty()) {
        const int node = path.back();
        auto& cursor = next_edge.back();
        const auto& out = adjacency[static_cast<std::size_t>(node)];
        if (cursor == out.size()) {
            color[static_cast<std::size_t>(node)] = 2;
            path.pop_back();
            next_edge.pop_back();
            continue;
        }
        const int succ = out[cursor++];
        if (color[static_cast<std::size_t>(succ)] == 1) {
            const auto begin = std::find(path.begin(), path.end(), succ);
            return std::vector<int>(begin, path.end());
        }
        if (color[static_cast<std::size_t>(succ)] == 0) {
            color[static_cast<std::size_t>(succ)] = 1;
            path.push_back(succ);
            next_edge.push_back(0);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::vector<int>> find_cycle(const MajorityGraph& graph) {
    const int n = graph.num_candidates();
    std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n) + 1);
    for (const MajorityEdge& e : graph.edges()) {
        adjacency[static_cast<std::size_t>(e.winner)].push_back(e.loser);
    }
    for (auto& out : adjacency) std::sort(out.begin(), out.end());
    std::vector<int> color(static_cast<std::size_t>(n) + 1, 0);
    for (int start = 1; start <= n; ++start) {
        if (color[static_cast<std::size_t>(start)] != 0) continue;
        if (auto cycle = cycle_from(start, adjacency, color)) return cycle;
    }
    return std::nullopt;
}

Rational top_choice_support(const PreferenceProfile& profile, int candidate) {
    const int n = profile.num_candidates();
    if (candidate < 1 || candidate > n) {
        throw std::invalid_argument("top_choice_support: candidate " + std::to_string(candidate) +
                                    " outside 1.." + std::to_string(n));
    }
    std::int64_t backers = 0;
    for (const PreferenceSet& prefs : profile.all_preferences()) {
        bool top = true;
        for (int j = 1; j <= n && top; ++j) {
            if (j != candidate && prefs.count({candidate, j}) == 0) top = false;
        }
        if (top) ++backers;
    }
    return Rational(backers, profile.num_representatives());
}

}  // namespace silva::social_choice
