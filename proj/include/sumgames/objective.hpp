#pragma once

#include <optional>

#include "sumgames/graph.hpp"

namespace sumgames {

/// Whether every infinite path of a finite graph has divergent prefix sums.
/// On finite graphs this holds exactly when every cycle has total weight
/// >= 1; a violating cycle is returned as the witness.
struct SatisfactionVerdict {
    bool satisfies = false;
    std::vector<int> witness;  // edge ids forming a cycle of weight <= 0
};

SatisfactionVerdict satisfies(const LabeledGraph& g);

/// Cycle of total weight <= 0 reachable anywhere in the subgraph spanned by
/// `edge_ids` restricted to `vertex_active`, or nullopt. The detector is a
/// strictly-below-one test: weights are rescaled to |V|*w - 1 so that a
/// simple cycle is nonpositive iff the rescaled cycle is negative, and the
/// rescaled graph is swept by |V| rounds of shortest-path relaxation.
std::optional<std::vector<int>> find_nonpositive_cycle(const LabeledGraph& g,
                                                       const std::vector<int>& edge_ids,
                                                       const std::vector<char>& vertex_active);

/// Cycle of total weight >= 1 in the same restricted sense, or nullopt.
std::optional<std::vector<int>> find_positive_cycle(const LabeledGraph& g,
                                                    const std::vector<int>& edge_ids,
                                                    const std::vector<char>& vertex_active);

std::int64_t cycle_weight(const LabeledGraph& g, const std::vector<int>& cycle);

/// Membership of the ultimately periodic word prefix . cycle^w in the
/// objective: true iff the cycle block sums to >= 1. The prefix never
/// matters (prefix-independence). Throws std::invalid_argument on an empty
/// cycle.
bool membership_up(const WeightWord& prefix, const WeightWord& cycle);

/// Difference word w_i = c_{i+1} - c_i of a sequence of naturals; the image
/// prefix sums telescope to c_{j+1} - c_0. Requires length >= 1.
WeightWord reduce_finocc(const std::vector<std::int64_t>& naturals);

}  // namespace sumgames
