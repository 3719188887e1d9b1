#include "sumgames/objective.hpp"

#include <limits>
#include <numeric>

namespace sumgames {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

// Bellman-Ford negative-cycle detection over a restricted edge set, every
// active vertex acting as a source. Returns edge ids of a simple cycle with
// negative total transformed weight.
std::optional<std::vector<int>> negative_cycle(const LabeledGraph& g,
                                               const std::vector<int>& edge_ids,
                                               const std::vector<std::int64_t>& weight,
                                               const std::vector<char>& active) {
    const int n = g.vertex_count();
    std::vector<std::int64_t> dist(static_cast<std::size_t>(n), kInf);
    std::vector<int> pred(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v)
        if (active[static_cast<std::size_t>(v)])
            dist[static_cast<std::size_t>(v)] = 0;

    auto usable = [&](int e) {
        const auto& ed = g.edge(e);
        return active[static_cast<std::size_t>(ed.from)] && active[static_cast<std::size_t>(ed.to)];
    };

    int touched = -1;
    for (int round = 0; round <= n; ++round) {
        touched = -1;
        for (std::size_t i = 0; i < edge_ids.size(); ++i) {
            int e = edge_ids[i];
            if (!usable(e))
                continue;
            const auto& ed = g.edge(e);
            auto du = dist[static_cast<std::size_t>(ed.from)];
            if (du == kInf)
                continue;
            std::int64_t cand = checked_add(du, weight[i]);
            if (cand < dist[static_cast<std::size_t>(ed.to)]) {
                dist[static_cast<std::size_t>(ed.to)] = cand;
                pred[static_cast<std::size_t>(ed.to)] = e;
                touched = ed.to;
            }
        }
        if (touched < 0)
            return std::nullopt;  // stable: no negative cycle
    }

    // A vertex updated in round n+1 is reachable from a negative cycle;
    // walking predecessors n times lands on it.
    int v = touched;
    for (int i = 0; i < n; ++i)
        v = g.edge(pred[static_cast<std::size_t>(v)]).from;
    std::vector<int> cycle;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int u = v;
    while (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        int e = pred[static_cast<std::size_t>(u)];
        cycle.push_back(e);
        u = g.edge(e).from;
    }
    // Trim the tail that leads into the cycle proper.
    while (g.edge(cycle.back()).from != g.edge(cycle.front()).to)
        cycle.erase(cycle.begin());
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

std::vector<int> all_edges(const LabeledGraph& g) {
    std::vector<int> ids(static_cast<std::size_t>(g.edge_count()));
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

std::vector<char> all_vertices(const LabeledGraph& g) {
    return std::vector<char>(static_cast<std::size_t>(g.vertex_count()), 1);
}

}  // namespace

std::int64_t cycle_weight(const LabeledGraph& g, const std::vector<int>& cycle) {
    std::int64_t sum = 0;
    for (int e : cycle)
        sum = checked_add(sum, g.edge(e).weight);
    return sum;
}

std::optional<std::vector<int>> find_nonpositive_cycle(const LabeledGraph& g,
                                                       const std::vector<int>& edge_ids,
                                                       const std::vector<char>& vertex_active) {
    const auto scale = static_cast<std::int64_t>(g.vertex_count());
    std::vector<std::int64_t> weight;
    weight.reserve(edge_ids.size());
    for (int e : edge_ids)
        weight.push_back(checked_sub(checked_mul(scale, g.edge(e).weight), 1));
    auto cycle = negative_cycle(g, edge_ids, weight, vertex_active);
    if (cycle && cycle_weight(g, *cycle) > 0)
        throw std::logic_error("cycle detector returned a positive-weight cycle");
    return cycle;
}

std::optional<std::vector<int>> find_positive_cycle(const LabeledGraph& g,
                                                    const std::vector<int>& edge_ids,
                                                    const std::vector<char>& vertex_active) {
    std::vector<std::int64_t> weight;
    weight.reserve(edge_ids.size());
    for (int e : edge_ids)
        weight.push_back(checked_sub(0, g.edge(e).weight));
    auto cycle = negative_cycle(g, edge_ids, weight, vertex_active);
    if (cycle && cycle_weight(g, *cycle) < 1)
        throw std::logic_error("cycle detector returned a nonpositive-weight cycle");
    return cycle;
}

SatisfactionVerdict satisfies(const LabeledGraph& g) {
    SatisfactionVerdict verdict;
    auto witness = find_nonpositive_cycle(g, all_edges(g), all_vertices(g));
    verdict.satisfies = !witness.has_value();
    if (witness)
        verdict.witness = std::move(*witness);
    return verdict;
}

bool membership_up(const WeightWord& prefix, const WeightWord& cycle) {
    (void)prefix;  // prefix-independent
    if (cycle.empty())
        throw std::invalid_argument("membership_up: empty cycle");
    std::int64_t sum = 0;
    for (std::int64_t w : cycle)
        sum = checked_add(sum, w);
    return sum >= 1;
}

WeightWord reduce_finocc(const std::vector<std::int64_t>& naturals) {
    if (naturals.empty())
        throw std::invalid_argument("reduce_finocc: need at least one value");
    for (std::int64_t c : naturals)
        if (c < 0)
            throw std::invalid_argument("reduce_finocc: values must be naturals");
    WeightWord out;
    out.reserve(naturals.size() - 1);
    for (std::size_t i = 0; i + 1 < naturals.size(); ++i)
        out.push_back(checked_sub(naturals[i + 1], naturals[i]));
    return out;
}

}  // namespace sumgames
