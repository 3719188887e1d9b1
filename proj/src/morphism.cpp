#include "sumgames/morphism.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace sumgames {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

// One application of the path-minimum operator:
//   F(M)(v) = min over edges v -w-> v' of  w + min(0, M(v')).
std::vector<std::int64_t> relax_once(const LabeledGraph& g, const std::vector<std::int64_t>& m) {
    std::vector<std::int64_t> next(static_cast<std::size_t>(g.vertex_count()), kInf);
    for (const auto& e : g.edges()) {
        std::int64_t tail = m[static_cast<std::size_t>(e.to)];
        std::int64_t cand = checked_add(e.weight, tail == kInf ? 0 : std::min<std::int64_t>(0, tail));
        auto& slot = next[static_cast<std::size_t>(e.from)];
        slot = std::min(slot, cand);
    }
    return next;
}

std::vector<int> tight_edge_ids(const LabeledGraph& g, const NMap& n) {
    std::vector<int> ids;
    for (int e = 0; e < g.edge_count(); ++e)
        if (n.is_tight(g, e))
            ids.push_back(e);
    return ids;
}

// Topological check of the tight subgraph; a tight cycle would sum to 0.
void require_tight_acyclic(const LabeledGraph& g, const std::vector<int>& tight) {
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(g.vertex_count()));
    for (int e : tight)
        succ[static_cast<std::size_t>(g.edge(e).from)].push_back(g.edge(e).to);
    std::vector<int> color(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int start = 0; start < g.vertex_count(); ++start) {
        if (color[static_cast<std::size_t>(start)])
            continue;
        std::vector<std::pair<int, std::size_t>> stack{{start, 0}};
        color[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < succ[static_cast<std::size_t>(v)].size()) {
                int w = succ[static_cast<std::size_t>(v)][i++];
                if (color[static_cast<std::size_t>(w)] == 1)
                    throw TightCycleError("tight cycle detected; the graph cannot satisfy the objective");
                if (color[static_cast<std::size_t>(w)] == 0) {
                    color[static_cast<std::size_t>(w)] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                color[static_cast<std::size_t>(v)] = 2;
                stack.pop_back();
            }
        }
    }
}

}  // namespace

bool NMap::is_tight(const LabeledGraph& g, int edge_id) const {
    const auto& e = g.edge(edge_id);
    if (is_bottom(e.from) || is_bottom(e.to))
        return false;
    return checked_add(at(e.from), e.weight) == at(e.to);
}

NMap compute_n(const LabeledGraph& g) {
    const int n = g.vertex_count();
    std::vector<std::int64_t> m(static_cast<std::size_t>(n), kInf);
    for (int round = 0; round < n; ++round)
        m = relax_once(g, m);
    if (relax_once(g, m) != m)
        throw NegativeCycleError("a cycle of weight <= -1 is reachable; n would be infinite");

    NMap result;
    result.value.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        if (m[static_cast<std::size_t>(v)] == kInf)
            continue;  // sink: bottom
        std::int64_t nv = checked_sub(0, m[static_cast<std::size_t>(v)]);
        result.value[static_cast<std::size_t>(v)] = nv;
        if (nv < 0)
            result.negative.push_back(v);
    }
    if (!result.negative.empty())
        result.v0 = result.negative.front();
    return result;
}

TightDag build_tvk(const LabeledGraph& g, const NMap& n, int v, std::int64_t k) {
    auto tight = tight_edge_ids(g, n);
    require_tight_acyclic(g, tight);

    std::vector<std::vector<int>> tsucc(static_cast<std::size_t>(g.vertex_count()));
    for (int e : tight)
        tsucc[static_cast<std::size_t>(g.edge(e).from)].push_back(e);

    // Tight-reachable set from v (the empty path counts).
    std::vector<char> reach(static_cast<std::size_t>(g.vertex_count()), 0);
    std::deque<int> queue{v};
    reach[static_cast<std::size_t>(v)] = 1;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int e : tsucc[static_cast<std::size_t>(x)]) {
            int y = g.edge(e).to;
            if (!reach[static_cast<std::size_t>(y)]) {
                reach[static_cast<std::size_t>(y)] = 1;
                queue.push_back(y);
            }
        }
    }

    auto below_level = [&](int x) { return n.is_bottom(x) || n.at(x) <= k; };

    TightDag dag;
    dag.root = v;
    dag.level = k;
    for (int x = 0; x < g.vertex_count(); ++x)
        if (reach[static_cast<std::size_t>(x)] && below_level(x))
            dag.vertices.push_back(x);

    // Composed edges: from each dag vertex, follow tight paths through
    // inner vertices with n > k, stopping at the first vertex back at or
    // below the level. Tight paths between fixed endpoints all carry the
    // same weight (n telescopes), so a visited-set is enough.
    std::vector<std::vector<std::pair<int, std::int64_t>>> succ_of(
        static_cast<std::size_t>(g.vertex_count()));
    for (int x : dag.vertices) {
        std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
        std::deque<std::pair<int, std::int64_t>> frontier{{x, 0}};
        seen[static_cast<std::size_t>(x)] = 1;
        while (!frontier.empty()) {
            auto [y, acc] = frontier.front();
            frontier.pop_front();
            for (int e : tsucc[static_cast<std::size_t>(y)]) {
                int z = g.edge(e).to;
                if (seen[static_cast<std::size_t>(z)])
                    continue;
                seen[static_cast<std::size_t>(z)] = 1;
                std::int64_t w = checked_add(acc, g.edge(e).weight);
                if (below_level(z)) {
                    dag.edges.push_back({x, w, z});
                    succ_of[static_cast<std::size_t>(x)].emplace_back(z, w);
                } else {
                    frontier.emplace_back(z, w);
                }
            }
        }
    }

    // Rank: longest-path dynamic programming over the (acyclic) dag.
    for (int x : dag.vertices)
        dag.rank[x] = -1;  // unknown
    std::vector<int> order = dag.vertices;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int x : order) {
            if (dag.rank[x] >= 0)
                continue;
            std::int64_t best = 0;
            bool ready = true;
            for (auto [z, w] : succ_of[static_cast<std::size_t>(x)]) {
                if (dag.rank[z] < 0) {
                    ready = false;
                    break;
                }
                best = std::max(best, dag.rank[z] + 1);
            }
            if (ready) {
                dag.rank[x] = best;
                progress = true;
            }
        }
    }
    for (auto& [x, r] : dag.rank) {
        if (r < 0)
            throw std::logic_error("rank computation did not converge on an acyclic dag");
        dag.rank_sup = std::max(dag.rank_sup, r);
    }
    return dag;
}

bool Morphism::all_hold() const {
    return std::all_of(report.begin(), report.end(),
                       [](const EdgeCheck& c) { return c.holds; });
}

std::vector<int> Morphism::failing_edges() const {
    std::vector<int> out;
    for (const auto& c : report)
        if (!c.holds)
            out.push_back(c.edge_id);
    return out;
}

Morphism verify_morphism(const LabeledGraph& g, const std::vector<OrdTuple>& assignment) {
    if (assignment.size() != static_cast<std::size_t>(g.vertex_count()))
        throw ParseError("assignment is not total on vertices");
    Morphism m;
    m.assignment = assignment;
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        const OrdTuple& u = assignment[static_cast<std::size_t>(ed.from)];
        const OrdTuple& v = assignment[static_cast<std::size_t>(ed.to)];
        bool holds = is_edge(u, ed.weight, v);
        std::string reason;
        if (!holds) {
            std::ostringstream why;
            std::int64_t reach = checked_add(u.length(), ed.weight);
            if (reach < v.length())
                why << "|u|+w = " << reach << " < " << v.length() << " = |u'|";
            else
                why << "|u|+w = |u'| = " << reach << " but not " << u.to_string()
                    << " >lex " << v.to_string();
            reason = why.str();
        }
        m.report.push_back({e, holds, std::move(reason)});
    }
    return m;
}

Morphism verify_morphism(const LabeledGraph& g,
                         const std::map<std::string, OrdTuple>& assignment) {
    std::vector<OrdTuple> by_index(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto it = assignment.find(g.name(v));
        if (it == assignment.end())
            throw ParseError("missing assignment for vertex '" + g.name(v) + "'");
        by_index[static_cast<std::size_t>(v)] = it->second;
    }
    return verify_morphism(g, by_index);
}

PaperPhi phi_paper(const LabeledGraph& g) {
    if (!satisfies(g).satisfies)
        throw NotSatisfyingError("graph does not satisfy the objective");

    PaperPhi result;
    result.nmap = compute_n(g);
    std::vector<OrdTuple> assignment(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (result.nmap.is_bottom(v) || result.nmap.at(v) < 0)
            continue;  // empty tuple
        std::vector<std::uint64_t> coords;
        for (std::int64_t k = 0; k <= result.nmap.at(v); ++k)
            coords.push_back(
                static_cast<std::uint64_t>(build_tvk(g, result.nmap, v, k).rank_sup));
        assignment[static_cast<std::size_t>(v)] = OrdTuple(std::move(coords));
    }
    result.morphism = verify_morphism(g, assignment);

    result.v0 = result.nmap.v0;
    if (result.v0) {
        std::vector<char> reach(static_cast<std::size_t>(g.vertex_count()), 0);
        std::deque<int> queue{*result.v0};
        reach[static_cast<std::size_t>(*result.v0)] = 1;
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (int e : g.out(x)) {
                int y = g.edge(e).to;
                if (!reach[static_cast<std::size_t>(y)]) {
                    reach[static_cast<std::size_t>(y)] = 1;
                    queue.push_back(y);
                }
            }
        }
        for (int x = 0; x < g.vertex_count(); ++x)
            if (reach[static_cast<std::size_t>(x)])
                result.reachable_from_v0.push_back(x);
    }
    return result;
}

PhiFailureKind classify_phi_failure(const LabeledGraph& g, const NMap& n, int edge_id) {
    const auto& e = g.edge(edge_id);
    if (n.is_bottom(e.from) || n.is_bottom(e.to) || !n.is_tight(g, edge_id) || n.at(e.to) < 0)
        return PhiFailureKind::Unexpected;
    if (n.at(e.from) == -1)
        return PhiFailureKind::RootBoundary;
    if (n.at(e.from) >= 0 && n.at(e.from) < n.at(e.to)) {
        for (std::int64_t k = 0; k <= n.at(e.from); ++k)
            if (build_tvk(g, n, e.from, k).rank_sup != build_tvk(g, n, e.to, k).rank_sup)
                return PhiFailureKind::Unexpected;
        return PhiFailureKind::RankCollision;
    }
    return PhiFailureKind::Unexpected;
}

namespace detail {

namespace {

// Least length-len tuple strictly above t lexicographically, coords < bound.
std::optional<OrdTuple> least_of_length_above(std::int64_t len, const OrdTuple& t,
                                              std::int64_t bound) {
    const auto& tc = t.coords();
    const auto ubound = static_cast<std::uint64_t>(bound);
    if (len > t.length()) {
        // Extending t with zeros is the lexicographically least winner.
        std::vector<std::uint64_t> coords = tc;
        coords.resize(static_cast<std::size_t>(len), 0);
        return OrdTuple(std::move(coords));
    }
    for (std::int64_t j = len - 1; j >= 0; --j) {
        if (tc[static_cast<std::size_t>(j)] + 1 < ubound) {
            std::vector<std::uint64_t> coords(tc.begin(), tc.begin() + j + 1);
            ++coords.back();
            coords.resize(static_cast<std::size_t>(len), 0);
            return OrdTuple(std::move(coords));
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<OrdTuple> least_valid_tuple(
    const std::vector<std::pair<std::int64_t, OrdTuple>>& constraints, std::int64_t max_len,
    std::int64_t max_coord) {
    for (std::int64_t len = 0; len <= max_len; ++len) {
        if (len > 0 && max_coord == 0)
            break;  // only the empty tuple exists
        bool feasible = true;
        const OrdTuple* lex_bound = nullptr;
        for (const auto& [w, t] : constraints) {
            std::int64_t needed = checked_sub(t.length(), w);
            if (len < needed) {
                feasible = false;
                break;
            }
            if (len == needed && (!lex_bound || lex_gt(t, *lex_bound)))
                lex_bound = &t;
        }
        if (!feasible)
            continue;
        if (!lex_bound)
            return OrdTuple(std::vector<std::uint64_t>(static_cast<std::size_t>(len), 0));
        if (auto u = least_of_length_above(len, *lex_bound, max_coord))
            return u;
    }
    return std::nullopt;
}

}  // namespace detail

FixpointBounds default_fixpoint_bounds(const LabeledGraph& g) {
    std::int64_t max_abs = 0;
    for (const auto& e : g.edges())
        max_abs = std::max(max_abs, e.weight < 0 ? checked_sub(0, e.weight) : e.weight);
    std::int64_t n = g.vertex_count();
    return {checked_add(2, checked_mul(std::max<std::int64_t>(n - 1, 0), max_abs)), n + 1};
}

std::variant<Morphism, BoundsExceeded> phi_fixpoint(const LabeledGraph& g,
                                                    std::optional<FixpointBounds> bounds,
                                                    std::int64_t size_cap) {
    if (!satisfies(g).satisfies)
        throw NotSatisfyingError("graph does not satisfy the objective");

    FixpointBounds b = bounds.value_or(default_fixpoint_bounds(g));
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    while (true) {
        std::vector<std::optional<OrdTuple>> mu(n, OrdTuple());  // nullopt = top
        long long lifts = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t v = 0; v < n; ++v) {
                if (!mu[v])
                    continue;
                std::vector<std::pair<std::int64_t, OrdTuple>> constraints;
                bool top = false;
                for (int e : g.out(static_cast<int>(v))) {
                    const auto& target = mu[static_cast<std::size_t>(g.edge(e).to)];
                    if (!target) {
                        top = true;
                        break;
                    }
                    constraints.emplace_back(g.edge(e).weight, *target);
                }
                std::optional<OrdTuple> next =
                    top ? std::nullopt : detail::least_valid_tuple(constraints, b.max_len, b.max_coord);
                if (next != mu[v]) {
                    if (next && !order_geq(*next, *mu[v]))
                        throw std::logic_error("fixpoint iteration tried to descend");
                    mu[v] = std::move(next);
                    changed = true;
                }
                if (++lifts > 100'000'000LL)
                    throw std::logic_error("fixpoint iteration exceeded the lift budget");
            }
        }

        if (std::all_of(mu.begin(), mu.end(), [](const auto& x) { return x.has_value(); })) {
            std::vector<OrdTuple> assignment;
            assignment.reserve(n);
            for (auto& x : mu)
                assignment.push_back(std::move(*x));
            Morphism m = verify_morphism(g, assignment);
            if (!m.all_hold())
                throw std::logic_error("fixpoint result failed re-verification");
            return m;
        }
        FixpointBounds doubled{checked_mul(b.max_len, 2), checked_mul(b.max_coord, 2)};
        if (doubled.max_len > size_cap || doubled.max_coord > size_cap)
            return BoundsExceeded{b};
        b = doubled;
    }
}

LabeledGraph figure1_graph() {
    LabeledGraph g;
    for (const char* name :
         {"v0", "r1", "r1c1", "r1c2", "r1c3", "r2", "r2c1", "r2c2", "r2c3", "r3", "r3c1",
          "r3c2", "r3c3", "r3c4", "r4", "r4c1", "r4c2", "r4c3", "r4c4", "r4c5"})
        g.add_vertex(name);

    g.add_edge("v0", 2, "r1");
    g.add_edge("r1", 1, "r2");
    g.add_edge("r2", 1, "r3");
    g.add_edge("r3", 1, "r4");

    g.add_edge("r1", -1, "r1c1");
    g.add_edge("r1c1", 0, "r1c2");
    g.add_edge("r1c2", 1, "r1c3");
    g.add_edge("r1c3", 1, "r1c3");

    g.add_edge("r2", -1, "r2c1");
    g.add_edge("r2c1", -1, "r2c2");
    g.add_edge("r2c2", 0, "r2c3");
    g.add_edge("r2c3", 1, "r2c3");

    g.add_edge("r3", -1, "r3c1");
    g.add_edge("r3c1", -1, "r3c2");
    g.add_edge("r3c2", -1, "r3c3");
    g.add_edge("r3c3", 0, "r3c4");
    g.add_edge("r3c4", 1, "r3c4");

    g.add_edge("r4", -1, "r4c1");
    g.add_edge("r4c1", -1, "r4c2");
    g.add_edge("r4c2", -1, "r4c3");
    g.add_edge("r4c3", -1, "r4c4");
    g.add_edge("r4c4", 0, "r4c5");
    g.add_edge("r4c5", 1, "r4c5");
    return g;
}

const std::vector<std::pair<std::string, std::int64_t>>& figure1_expected_n() {
    static const std::vector<std::pair<std::string, std::int64_t>> table = {
        {"v0", -1}, {"r1", 1},   {"r1c1", 0}, {"r1c2", -1}, {"r1c3", -1},
        {"r2", 2},  {"r2c1", 1}, {"r2c2", 0}, {"r2c3", -1}, {"r3", 3},
        {"r3c1", 2}, {"r3c2", 1}, {"r3c3", 0}, {"r3c4", -1}, {"r4", 4},
        {"r4c1", 3}, {"r4c2", 2}, {"r4c3", 1}, {"r4c4", 0},  {"r4c5", -1},
    };
    return table;
}

const std::vector<std::pair<std::string, std::string>>& figure1_expected_phi() {
    // r4 reads (0,1,2,3,4) here: the truncation closes the head chain, so
    // the last level's dag is the five-vertex row chain.
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"v0", "()"},        {"r1", "(0,2)"},      {"r1c1", "(0)"},    {"r1c2", "()"},
        {"r1c3", "()"},      {"r2", "(0,1,3)"},    {"r2c1", "(0,1)"},  {"r2c2", "(0)"},
        {"r2c3", "()"},      {"r3", "(0,1,2,4)"},  {"r3c1", "(0,1,2)"}, {"r3c2", "(0,1)"},
        {"r3c3", "(0)"},     {"r3c4", "()"},       {"r4", "(0,1,2,3,4)"}, {"r4c1", "(0,1,2,3)"},
        {"r4c2", "(0,1,2)"}, {"r4c3", "(0,1)"},    {"r4c4", "(0)"},    {"r4c5", "()"},
    };
    return table;
}

}  // namespace sumgames
