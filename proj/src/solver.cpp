#include "sumgames/solver.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace sumgames {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

std::string_view owner_str(Player p) { return player_name(p); }

std::vector<int> subgraph_edges(const Arena& arena, const PositionalStrategy& strategy) {
    // The strategy's player keeps only chosen edges; the opponent keeps all.
    std::vector<int> ids;
    for (int e = 0; e < arena.graph.edge_count(); ++e) {
        int from = arena.graph.edge(e).from;
        if (arena.owner[static_cast<std::size_t>(from)] != strategy.player) {
            ids.push_back(e);
        } else {
            auto it = strategy.choice.find(from);
            if (it != strategy.choice.end() && it->second == e)
                ids.push_back(e);
        }
    }
    return ids;
}

std::vector<char> reachable_over(const LabeledGraph& g, const std::vector<int>& edge_ids,
                                 const std::vector<char>& sources) {
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(g.vertex_count()));
    for (int e : edge_ids)
        succ[static_cast<std::size_t>(g.edge(e).from)].push_back(g.edge(e).to);
    std::vector<char> reach = sources;
    std::deque<int> queue;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (reach[static_cast<std::size_t>(v)])
            queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : succ[static_cast<std::size_t>(v)])
            if (!reach[static_cast<std::size_t>(w)]) {
                reach[static_cast<std::size_t>(w)] = 1;
                queue.push_back(w);
            }
    }
    return reach;
}

// --- brute force ----------------------------------------------------------

// Vertices lying on a closed walk of at most |V| edges whose total weight
// meets the comparison (min-plus for "<= threshold", max-plus for
// ">= threshold"). A qualifying closed walk always contains a qualifying
// simple cycle on its vertex set, so this is exactly "on some qualifying
// cycle" for cycle-decomposable thresholds.
std::vector<char> on_closed_walk(const LabeledGraph& g, const std::vector<int>& edge_ids,
                                 std::int64_t threshold, bool minimize) {
    const int n = g.vertex_count();
    const std::int64_t absent = minimize ? kInf : -kInf;  // sentinel
    auto better = [&](std::int64_t a, std::int64_t b) { return minimize ? a < b : a > b; };

    std::vector<std::vector<std::int64_t>> adj(static_cast<std::size_t>(n),
                                               std::vector<std::int64_t>(static_cast<std::size_t>(n), absent));
    for (int e : edge_ids) {
        const auto& ed = g.edge(e);
        auto& slot = adj[static_cast<std::size_t>(ed.from)][static_cast<std::size_t>(ed.to)];
        if (slot == absent || better(ed.weight, slot))
            slot = ed.weight;
    }

    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    auto mark = [&](const std::vector<std::vector<std::int64_t>>& d) {
        for (int v = 0; v < n; ++v) {
            auto diag = d[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)];
            if (diag == absent)
                continue;
            if (minimize ? diag <= threshold : diag >= threshold)
                hit[static_cast<std::size_t>(v)] = 1;
        }
    };

    auto dist = adj;
    mark(dist);
    for (int k = 2; k <= n; ++k) {
        std::vector<std::vector<std::int64_t>> next(
            static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), absent));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == absent)
                    continue;
                for (int c = 0; c < n; ++c) {
                    auto step = adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
                    if (step == absent)
                        continue;
                    auto cand = checked_add(
                        dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], step);
                    auto& slot = next[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
                    if (slot == absent || better(cand, slot))
                        slot = cand;
                }
            }
        dist = std::move(next);
        mark(dist);
    }
    return hit;
}

std::vector<char> losing_for(const LabeledGraph& g, const std::vector<int>& edge_ids,
                             std::vector<char> bad_starts) {
    // Vertices from which some bad start is reachable: reverse reachability.
    std::vector<std::vector<int>> pred(static_cast<std::size_t>(g.vertex_count()));
    for (int e : edge_ids)
        pred[static_cast<std::size_t>(g.edge(e).to)].push_back(g.edge(e).from);
    std::deque<int> queue;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (bad_starts[static_cast<std::size_t>(v)])
            queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : pred[static_cast<std::size_t>(v)])
            if (!bad_starts[static_cast<std::size_t>(u)]) {
                bad_starts[static_cast<std::size_t>(u)] = 1;
                queue.push_back(u);
            }
    }
    return bad_starts;
}

struct Enumeration {
    std::vector<int> owned;                // vertices of the enumerated player
    std::vector<std::vector<int>> options;  // out-edge ids per owned vertex
};

Enumeration enumeration_for(const Arena& arena, Player player) {
    Enumeration en;
    for (int v = 0; v < arena.graph.vertex_count(); ++v) {
        if (arena.owner[static_cast<std::size_t>(v)] != player)
            continue;
        auto out = arena.graph.out(v);
        if (out.size() > 4)
            throw GuardError("brute guard: " + std::string(owner_str(player)) + " vertex '" +
                             arena.graph.name(v) + "' has out-degree > 4");
        en.owned.push_back(v);
        en.options.emplace_back(out.begin(), out.end());
    }
    if (en.owned.size() > 8)
        throw GuardError("brute guard: more than 8 " + std::string(owner_str(player)) +
                         "-owned vertices");
    return en;
}

// Enumerates positional strategies of one player; for each, reports the set
// of vertices from which the fixed-strategy subgraph has no reachable
// qualifying cycle.
template <typename PerStrategy>
void for_each_strategy(const Arena& arena, Player player, PerStrategy&& visit) {
    Enumeration en = enumeration_for(arena, player);
    std::vector<std::size_t> pick(en.owned.size(), 0);
    while (true) {
        std::map<int, int> choice;
        for (std::size_t i = 0; i < en.owned.size(); ++i)
            choice[en.owned[i]] = en.options[i][pick[i]];
        visit(choice);
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < en.options[i].size())
                break;
            pick[i] = 0;
        }
        if (i == pick.size())
            break;
    }
}

struct BruteSide {
    std::vector<char> region;      // union of per-strategy safe sets
    std::map<int, int> uniform;    // one strategy safe on all of region
    bool uniform_found = false;
};

BruteSide brute_side(const Arena& arena, Player player, std::int64_t bad_threshold,
                     bool bad_is_min) {
    const auto n = static_cast<std::size_t>(arena.graph.vertex_count());
    BruteSide side;
    side.region.assign(n, 0);
    std::vector<std::pair<std::map<int, int>, std::vector<char>>> outcomes;
    for_each_strategy(arena, player, [&](const std::map<int, int>& choice) {
        PositionalStrategy st{player, choice};
        auto edges = subgraph_edges(arena, st);
        auto bad = on_closed_walk(arena.graph, edges, bad_threshold, bad_is_min);
        auto losing = losing_for(arena.graph, edges, std::move(bad));
        std::vector<char> safe(n, 0);
        for (std::size_t v = 0; v < n; ++v)
            safe[v] = !losing[v];
        for (std::size_t v = 0; v < n; ++v)
            side.region[v] = side.region[v] || safe[v];
        outcomes.emplace_back(choice, std::move(safe));
    });
    for (auto& [choice, safe] : outcomes) {
        bool covers = true;
        for (std::size_t v = 0; v < n; ++v)
            if (side.region[v] && !safe[v]) {
                covers = false;
                break;
            }
        if (covers) {
            side.uniform = choice;
            side.uniform_found = true;
            break;
        }
    }
    return side;
}

// --- energy lifting --------------------------------------------------------

struct EnergyOutcome {
    std::vector<char> region;    // player can keep all reachable cycles >= 0
    std::map<int, int> choice;   // total on the player's vertices
};

// Progress-measure lifting over {0..M} + top for the game where `player`
// must keep every cycle of the fixed subgraph nonnegative under the given
// edge weights; M is the sum of magnitudes of negative weights.
EnergyOutcome energy_nonneg(const Arena& arena, Player player,
                            const std::vector<std::int64_t>& edge_weight) {
    const int n = arena.graph.vertex_count();
    std::int64_t credit_cap = 0;
    for (std::int64_t w : edge_weight)
        if (w < 0)
            credit_cap = checked_add(credit_cap, checked_sub(0, w));
    const std::int64_t top = checked_add(credit_cap, 1);

    auto edge_value = [&](int e, const std::vector<std::int64_t>& mu) {
        std::int64_t target = mu[static_cast<std::size_t>(arena.graph.edge(e).to)];
        if (target >= top)
            return top;
        std::int64_t need = checked_sub(target, edge_weight[static_cast<std::size_t>(e)]);
        if (need < 0)
            need = 0;
        return need > credit_cap ? top : need;
    };

    std::vector<std::int64_t> mu(static_cast<std::size_t>(n), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (mu[static_cast<std::size_t>(v)] >= top)
                continue;
            bool mine = arena.owner[static_cast<std::size_t>(v)] == player;
            std::int64_t best = mine ? top : 0;
            for (int e : arena.graph.out(v)) {
                std::int64_t val = edge_value(e, mu);
                best = mine ? std::min(best, val) : std::max(best, val);
            }
            if (best > mu[static_cast<std::size_t>(v)]) {
                mu[static_cast<std::size_t>(v)] = best;
                changed = true;
            }
        }
    }

    EnergyOutcome out;
    out.region.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        out.region[static_cast<std::size_t>(v)] = mu[static_cast<std::size_t>(v)] < top;
    for (int v = 0; v < n; ++v) {
        if (arena.owner[static_cast<std::size_t>(v)] != player)
            continue;
        auto outs = arena.graph.out(v);
        int pick = outs.front();
        if (out.region[static_cast<std::size_t>(v)]) {
            std::int64_t best = top + 1;
            for (int e : outs) {
                std::int64_t val = edge_value(e, mu);
                if (val < best) {
                    best = val;
                    pick = e;
                }
            }
        }
        out.choice[v] = pick;
    }
    return out;
}

std::vector<std::int64_t> rescaled_weights(const Arena& arena, bool strict) {
    // A cycle has weight >= 1 iff the |V|*w - 1 rescaling is >= 0 on it
    // (cycle length never exceeds |V|); dropping the -1 shift weakens the
    // test to >= 0.
    std::vector<std::int64_t> w;
    const auto scale = static_cast<std::int64_t>(arena.graph.vertex_count());
    w.reserve(static_cast<std::size_t>(arena.graph.edge_count()));
    for (const auto& e : arena.graph.edges()) {
        std::int64_t scaled = checked_mul(scale, e.weight);
        w.push_back(strict ? checked_sub(scaled, 1) : scaled);
    }
    return w;
}

std::vector<std::int64_t> negated_weights(const Arena& arena) {
    std::vector<std::int64_t> w;
    w.reserve(static_cast<std::size_t>(arena.graph.edge_count()));
    for (const auto& e : arena.graph.edges())
        w.push_back(checked_sub(0, e.weight));
    return w;
}

// --- universal-measure lifting ---------------------------------------------

// The lifting is valued in a short totally-ordered spine of the fragment:
// the empty tuple plus all single-nonzero-head tuples (h, 0, ..., 0). Every
// satisfying strategy subgraph admits a morphism using only spine values
// within the default bounds (head = longest-path rank in the acyclic
// subgraph of edges with max(n,0)+1 + w = max(n',0)+1), so the non-top set
// is exactly Eve's region while the lattice stays |len|*|coord| small.
std::vector<OrdTuple> spine_values(const FixpointBounds& b) {
    std::vector<OrdTuple> values;
    values.emplace_back();
    for (std::int64_t len = 1; len <= b.max_len; ++len)
        for (std::int64_t head = 0; head < b.max_coord; ++head) {
            std::vector<std::uint64_t> coords(static_cast<std::size_t>(len), 0);
            coords.front() = static_cast<std::uint64_t>(head);
            values.emplace_back(std::move(coords));
        }
    return values;
}

struct UMeasure {
    std::vector<std::optional<OrdTuple>> assignment;  // nullopt = top
    FixpointBounds bounds;
};

UMeasure umeasure_lift(const Arena& arena, const FixpointBounds& bounds, bool weak_edges) {
    auto values = spine_values(bounds);
    const int n = arena.graph.vertex_count();
    const int top = static_cast<int>(values.size());

    auto edge_ok = [&](const OrdTuple& u, std::int64_t w, const OrdTuple& t) {
        if (weak_edges)
            return checked_add(u.length(), w) >= t.length();
        return is_edge(u, w, t);
    };
    // Valid sets are upward closed in the order, so an ascending scan finds
    // the least valid spine value.
    auto least_for_edge = [&](std::int64_t w, int target) {
        if (target >= top)
            return top;
        for (int i = 0; i < top; ++i)
            if (edge_ok(values[static_cast<std::size_t>(i)], w, values[static_cast<std::size_t>(target)]))
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
                int val = least_for_edge(arena.graph.edge(e).weight,
                                         mu[static_cast<std::size_t>(arena.graph.edge(e).to)]);
                best = eve ? std::min(best, val) : std::max(best, val);
            }
            if (best > mu[static_cast<std::size_t>(v)]) {
                mu[static_cast<std::size_t>(v)] = best;
                changed = true;
            } else if (best < mu[static_cast<std::size_t>(v)]) {
                throw std::logic_error("umeasure lifting tried to descend");
            }
        }
    }

    UMeasure result;
    result.bounds = bounds;
    result.assignment.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        if (mu[static_cast<std::size_t>(v)] < top)
            result.assignment[static_cast<std::size_t>(v)] =
                values[static_cast<std::size_t>(mu[static_cast<std::size_t>(v)])];
    return result;
}

std::map<int, int> umeasure_strategy(const Arena& arena, const UMeasure& measure,
                                     bool weak_edges) {
    auto values = spine_values(measure.bounds);
    const int top = static_cast<int>(values.size());
    auto index_of = [&](const std::optional<OrdTuple>& t) {
        if (!t)
            return top;
        for (int i = 0; i < top; ++i)
            if (values[static_cast<std::size_t>(i)] == *t)
                return i;
        return top;
    };
    auto edge_ok = [&](const OrdTuple& u, std::int64_t w, const OrdTuple& t) {
        if (weak_edges)
            return checked_add(u.length(), w) >= t.length();
        return is_edge(u, w, t);
    };

    std::map<int, int> choice;
    for (int v = 0; v < arena.graph.vertex_count(); ++v) {
        if (arena.owner[static_cast<std::size_t>(v)] != Player::Eve)
            continue;
        auto outs = arena.graph.out(v);
        int pick = outs.front();
        if (measure.assignment[static_cast<std::size_t>(v)]) {
            int best = top + 1;
            for (int e : outs) {
                const auto& target = measure.assignment[static_cast<std::size_t>(arena.graph.edge(e).to)];
                int val = top;
                if (target) {
                    int ti = index_of(target);
                    for (int i = 0; i < top; ++i)
                        if (edge_ok(values[static_cast<std::size_t>(i)], arena.graph.edge(e).weight,
                                    values[static_cast<std::size_t>(ti)])) {
                            val = i;
                            break;
                        }
                }
                if (val < best) {
                    best = val;
                    pick = e;
                }
            }
        }
        choice[v] = pick;
    }
    return choice;
}

// --- shared assembly --------------------------------------------------------

std::vector<char> complement(const std::vector<char>& region) {
    std::vector<char> out(region.size());
    for (std::size_t i = 0; i < region.size(); ++i)
        out[i] = !region[i];
    return out;
}

void require_partition(const Arena& arena, const std::vector<char>& eve,
                       const std::vector<char>& adam, std::string_view method) {
    for (std::size_t v = 0; v < eve.size(); ++v)
        if (eve[v] == adam[v])
            throw TheoremViolation(std::string(method) + ": regions fail to partition at vertex '" +
                                   arena.graph.name(static_cast<int>(v)) + "'");
}

Solution assemble(const Arena& arena, SolveMethod method, std::vector<char> eve_region,
                  PositionalStrategy eve_strategy, PositionalStrategy adam_strategy) {
    Solution s;
    s.method = method;
    s.eve_region = std::move(eve_region);
    s.eve_strategy = std::move(eve_strategy);
    s.adam_strategy = std::move(adam_strategy);
    s.eve_certificate = verify_certificate(arena, s.eve_strategy, s.eve_region);
    s.adam_certificate = verify_certificate(arena, s.adam_strategy, s.adam_region());
    return s;
}

PositionalStrategy total_strategy(const Arena& arena, Player player, std::map<int, int> choice) {
    for (int v = 0; v < arena.graph.vertex_count(); ++v)
        if (arena.owner[static_cast<std::size_t>(v)] == player && !choice.count(v))
            choice[v] = arena.graph.out(v).front();
    return {player, std::move(choice)};
}

Solution solve_brute(const Arena& arena, const SolverTweaks& tweaks) {
    // Eve loses from v under sigma iff a cycle of weight <= 0 is reachable;
    // the weakened criterion tolerates zero-weight cycles.
    std::int64_t eve_bad_threshold = tweaks.accept_zero_cycles ? -1 : 0;
    BruteSide eve = brute_side(arena, Player::Eve, eve_bad_threshold, /*bad_is_min=*/true);
    if (!eve.uniform_found)
        throw TheoremViolation("brute: no single positional strategy covers Eve's region");
    // Adam spoils from v under tau iff no cycle of weight >= 1 is reachable.
    BruteSide adam = brute_side(arena, Player::Adam, 1, /*bad_is_min=*/false);
    if (!adam.uniform_found)
        throw TheoremViolation("brute: no single positional strategy covers Adam's region");
    require_partition(arena, eve.region, adam.region, "brute");
    return assemble(arena, SolveMethod::Brute, eve.region,
                    total_strategy(arena, Player::Eve, std::move(eve.uniform)),
                    total_strategy(arena, Player::Adam, std::move(adam.uniform)));
}

Solution solve_energy(const Arena& arena, const SolverTweaks& tweaks) {
    EnergyOutcome eve =
        energy_nonneg(arena, Player::Eve, rescaled_weights(arena, !tweaks.accept_zero_cycles));
    EnergyOutcome adam = energy_nonneg(arena, Player::Adam, negated_weights(arena));
    require_partition(arena, eve.region, adam.region, "energy");
    return assemble(arena, SolveMethod::Energy, eve.region,
                    total_strategy(arena, Player::Eve, std::move(eve.choice)),
                    total_strategy(arena, Player::Adam, std::move(adam.choice)));
}

Solution solve_umeasure(const Arena& arena, const SolverTweaks& tweaks) {
    FixpointBounds bounds = default_fixpoint_bounds(arena.graph);
    UMeasure measure = umeasure_lift(arena, bounds, tweaks.accept_zero_cycles);
    std::vector<char> eve_region(static_cast<std::size_t>(arena.graph.vertex_count()));
    for (int v = 0; v < arena.graph.vertex_count(); ++v)
        eve_region[static_cast<std::size_t>(v)] =
            measure.assignment[static_cast<std::size_t>(v)].has_value();
    auto eve_choice = umeasure_strategy(arena, measure, tweaks.accept_zero_cycles);
    // Adam's side comes from the dual nonnegative-energy lifting; extracting
    // a spoiling move from the Eve-centric measure is unsound when an edge
    // constraint is infeasible only because of the bounds.
    EnergyOutcome adam = energy_nonneg(arena, Player::Adam, negated_weights(arena));
    require_partition(arena, eve_region, adam.region, "umeasure");
    return assemble(arena, SolveMethod::UMeasure, std::move(eve_region),
                    total_strategy(arena, Player::Eve, std::move(eve_choice)),
                    total_strategy(arena, Player::Adam, std::move(adam.choice)));
}

}  // namespace

std::string_view method_name(SolveMethod m) {
    switch (m) {
        case SolveMethod::Brute:
            return "brute";
        case SolveMethod::Energy:
            return "energy";
        case SolveMethod::UMeasure:
            return "umeasure";
    }
    return "?";
}

std::optional<SolveMethod> parse_method(std::string_view name) {
    if (name == "brute")
        return SolveMethod::Brute;
    if (name == "energy")
        return SolveMethod::Energy;
    if (name == "umeasure")
        return SolveMethod::UMeasure;
    return std::nullopt;
}

std::vector<char> Solution::adam_region() const { return complement(eve_region); }

CertificateResult verify_certificate(const Arena& arena, const PositionalStrategy& strategy,
                                     const std::vector<char>& region) {
    for (int v = 0; v < arena.graph.vertex_count(); ++v)
        if (arena.owner[static_cast<std::size_t>(v)] == strategy.player &&
            !strategy.choice.count(v))
            throw ParseError("strategy is not total on " +
                             std::string(owner_str(strategy.player)) + " vertices");
    auto edges = subgraph_edges(arena, strategy);
    auto play_area = reachable_over(arena.graph, edges, region);
    auto cycle = strategy.player == Player::Eve
                     ? find_nonpositive_cycle(arena.graph, edges, play_area)
                     : find_positive_cycle(arena.graph, edges, play_area);
    CertificateResult result;
    result.valid = !cycle.has_value();
    if (cycle)
        result.witness = std::move(*cycle);
    return result;
}

Solution solve(const Arena& arena, SolveMethod method, const SolverTweaks& tweaks) {
    arena.validate();
    switch (method) {
        case SolveMethod::Brute:
            return solve_brute(arena, tweaks);
        case SolveMethod::Energy:
            return solve_energy(arena, tweaks);
        case SolveMethod::UMeasure:
            return solve_umeasure(arena, tweaks);
    }
    throw std::logic_error("unreachable");
}

}  // namespace sumgames
