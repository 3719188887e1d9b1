// Differential checks: the production algorithms against slow, obviously
// correct reference computations on small instances.

#include <random>
#include <set>

#include "doctest.h"
#include "sumgames/harness.hpp"
#include "test_support.hpp"

using namespace sumgames;

namespace {

// Minimum weight over non-empty paths with at most max_edges edges,
// enumerated explicitly.
std::optional<std::int64_t> min_path_weight_by_enumeration(const LabeledGraph& g, int start,
                                                           int max_edges) {
    std::optional<std::int64_t> best;
    auto dfs = [&](auto&& self, int v, std::int64_t acc, int depth) -> void {
        if (depth > 0 && (!best || acc < *best))
            best = acc;
        if (depth == max_edges)
            return;
        for (int e : g.out(v))
            self(self, g.edge(e).to, acc + g.edge(e).weight, depth + 1);
    };
    dfs(dfs, start, 0, 0);
    return best;
}

// The game lifting valued in the WHOLE materialized fragment, computed by
// the naive ascending scan. Small bounds only.
std::vector<char> full_fragment_eve_region(const Arena& arena, const FixpointBounds& bounds) {
    Fragment space = build_fragment(bounds.max_len, bounds.max_coord, {0});
    const int top = static_cast<int>(space.tuples.size());
    const int n = arena.graph.vertex_count();

    auto least_for = [&](std::int64_t w, int target) {
        if (target >= top)
            return top;
        for (int i = 0; i < top; ++i)
            if (is_edge(space.tuples[static_cast<std::size_t>(i)], w,
                        space.tuples[static_cast<std::size_t>(target)]))
                return i;
        return top;
    };

    std::vector<int> mu(static_cast<std::size_t>(n), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (mu[static_cast<std::size_t>(v)] >= top)
                continue;
            bool eve = arena.owner[static_cast<std::size_t>(v)] == Player::Eve;
            int best = eve ? top : 0;
            for (int e : arena.graph.out(v)) {
                int val = least_for(arena.graph.edge(e).weight,
                                    mu[static_cast<std::size_t>(arena.graph.edge(e).to)]);
                best = eve ? std::min(best, val) : std::max(best, val);
            }
            if (best > mu[static_cast<std::size_t>(v)]) {
                mu[static_cast<std::size_t>(v)] = best;
                changed = true;
            }
        }
    }
    std::vector<char> region(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        region[static_cast<std::size_t>(v)] = mu[static_cast<std::size_t>(v)] < top;
    return region;
}

}  // namespace

TEST_CASE("compute_n equals explicit path enumeration") {
    std::mt19937_64 rng(31);
    testing::GraphGen gen;
    gen.max_vertices = 6;
    gen.allow_sinks = true;
    gen.max_out_degree = 3;
    int done = 0;
    while (done < 200) {
        LabeledGraph g = testing::random_graph(rng, gen);
        if (!satisfies(g).satisfies)
            continue;  // keep n finite
        ++done;
        NMap n = compute_n(g);
        for (int v = 0; v < g.vertex_count(); ++v) {
            auto expected = min_path_weight_by_enumeration(g, v, g.vertex_count());
            if (!expected) {
                CHECK(n.is_bottom(v));
            } else {
                REQUIRE_FALSE(n.is_bottom(v));
                CHECK(n.at(v) == -*expected);
            }
        }
    }
}

TEST_CASE("spine-valued umeasure equals the full-fragment lifting region") {
    std::mt19937_64 rng(32);
    testing::GraphGen gen;
    gen.max_vertices = 3;
    gen.weight_lo = -1;
    gen.weight_hi = 1;
    gen.max_out_degree = 2;
    for (int i = 0; i < 250; ++i) {
        Arena arena = testing::random_arena(rng, gen);
        FixpointBounds bounds = default_fixpoint_bounds(arena.graph);
        std::vector<char> reference = full_fragment_eve_region(arena, bounds);
        Solution s = solve(arena, SolveMethod::UMeasure);
        CHECK(s.eve_region == reference);
    }
}

TEST_CASE("phi_fixpoint equals the naive full-fragment least fixpoint") {
    std::mt19937_64 rng(33);
    testing::GraphGen gen;
    gen.max_vertices = 3;
    gen.weight_lo = -1;
    gen.weight_hi = 1;
    gen.max_out_degree = 2;
    int done = 0;
    while (done < 150) {
        LabeledGraph g = testing::random_satisfying_graph(rng, gen);
        FixpointBounds bounds = default_fixpoint_bounds(g);
        if (bounds.max_len > 4 || bounds.max_coord > 4)
            continue;
        ++done;

        Fragment space = build_fragment(bounds.max_len, bounds.max_coord, {0});
        const int top = static_cast<int>(space.tuples.size());
        std::vector<int> mu(static_cast<std::size_t>(g.vertex_count()), 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v = 0; v < g.vertex_count(); ++v) {
                if (mu[static_cast<std::size_t>(v)] >= top)
                    continue;
                int best = 0;
                for (int i = 0; i <= top; ++i) {
                    best = i;
                    if (i == top)
                        break;
                    bool ok = true;
                    for (int e : g.out(v)) {
                        int t = mu[static_cast<std::size_t>(g.edge(e).to)];
                        if (t >= top ||
                            !is_edge(space.tuples[static_cast<std::size_t>(i)],
                                     g.edge(e).weight,
                                     space.tuples[static_cast<std::size_t>(t)])) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok)
                        break;
                }
                if (best > mu[static_cast<std::size_t>(v)]) {
                    mu[static_cast<std::size_t>(v)] = best;
                    changed = true;
                }
            }
        }

        auto result = phi_fixpoint(g, bounds);
        REQUIRE(std::holds_alternative<Morphism>(result));
        const Morphism& m = std::get<Morphism>(result);
        for (int v = 0; v < g.vertex_count(); ++v) {
            REQUIRE(mu[static_cast<std::size_t>(v)] < top);
            CHECK(m.assignment[static_cast<std::size_t>(v)] ==
                  space.tuples[static_cast<std::size_t>(mu[static_cast<std::size_t>(v)])]);
        }
    }
}

TEST_CASE("restricted cycle detection agrees with enumeration on the induced subgraph") {
    std::mt19937_64 rng(34);
    testing::GraphGen gen;
    gen.max_vertices = 6;
    gen.max_out_degree = 3;
    gen.allow_sinks = true;
    for (int i = 0; i < 400; ++i) {
        LabeledGraph g = testing::random_graph(rng, gen);
        std::vector<char> active(static_cast<std::size_t>(g.vertex_count()));
        for (auto& a : active)
            a = rng() % 4 != 0;  // keep most vertices
        std::vector<int> edge_ids;
        for (int e = 0; e < g.edge_count(); ++e)
            if (rng() % 5 != 0)
                edge_ids.push_back(e);

        // Materialize the induced subgraph and enumerate its simple cycles.
        LabeledGraph sub;
        for (int v = 0; v < g.vertex_count(); ++v)
            sub.add_vertex(g.name(v));
        for (int e : edge_ids) {
            const auto& ed = g.edge(e);
            if (active[static_cast<std::size_t>(ed.from)] &&
                active[static_cast<std::size_t>(ed.to)])
                sub.add_edge(ed.from, ed.weight, ed.to);
        }
        bool any_nonpositive = false, any_positive = false;
        for (const auto& cycle : testing::all_simple_cycles(sub)) {
            std::int64_t w = cycle_weight(sub, cycle);
            any_nonpositive = any_nonpositive || w <= 0;
            any_positive = any_positive || w >= 1;
        }

        auto low = find_nonpositive_cycle(g, edge_ids, active);
        CHECK(low.has_value() == any_nonpositive);
        if (low) {
            CHECK(cycle_weight(g, *low) <= 0);
            for (int e : *low) {
                CHECK(std::find(edge_ids.begin(), edge_ids.end(), e) != edge_ids.end());
                CHECK(active[static_cast<std::size_t>(g.edge(e).from)]);
            }
        }
        auto high = find_positive_cycle(g, edge_ids, active);
        CHECK(high.has_value() == any_positive);
        if (high)
            CHECK(cycle_weight(g, *high) >= 1);
    }
}

TEST_CASE("exhaustive enumeration yields distinct, valid arenas and the planned count") {
    CampaignConfig config;
    config.max_vertices = 2;
    config.weight_set = {-1, 1};
    config.max_out_degree = 2;
    long long count = exhaustive_count(config);

    std::set<std::string> seen;
    for (long long i = 0; i < count; ++i) {
        Arena arena = exhaustive_arena(config, i);
        CHECK_NOTHROW(arena.validate());
        CHECK(arena.graph.vertex_count() <= config.max_vertices);
        for (int v = 0; v < arena.graph.vertex_count(); ++v)
            CHECK(static_cast<int>(arena.graph.out(v).size()) <= config.max_out_degree);
        for (const auto& e : arena.graph.edges())
            CHECK((e.weight == -1 || e.weight == 1));
        seen.insert(arena_to_json(arena).dump());
    }
    CHECK(static_cast<long long>(seen.size()) == count);

    Summary a = run_campaign(config);
    config.jobs = 1;
    Summary b = run_campaign(config);
    CHECK(a.arenas == count);
    CHECK(a.arenas == b.arenas);
    CHECK(a.certified == b.certified);
    CHECK(a.findings.empty());
}
