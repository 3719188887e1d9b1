#pragma once

#include <map>
#include <variant>

#include "sumgames/objective.hpp"
#include "sumgames/universal.hpp"

namespace sumgames {

struct NegativeCycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSatisfyingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TightCycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// n(v) = -(minimum weight over non-empty finite paths from v). Sinks have
/// no such path and map to bottom (nullopt). For every edge v -w-> v' with
/// both endpoints finite, n(v) + w >= n(v').
struct NMap {
    std::vector<std::optional<std::int64_t>> value;  // by vertex; nullopt = bottom
    std::vector<int> negative;                       // vertices with finite n < 0
    std::optional<int> v0;                           // first member of `negative`

    bool is_bottom(int v) const { return !value[static_cast<std::size_t>(v)].has_value(); }
    std::int64_t at(int v) const { return value[static_cast<std::size_t>(v)].value(); }
    /// Tight: both endpoints finite and n(from) + w = n(to).
    bool is_tight(const LabeledGraph& g, int edge_id) const;
};

/// Computed by |V| rounds of relaxation over path lengths 1..|V|; with all
/// cycles of weight >= 0 the minimum is always attained within |V| edges.
/// Throws NegativeCycleError when a cycle of weight <= -1 is reachable
/// (some n would be infinite).
NMap compute_n(const LabeledGraph& g);

/// The level-k tight-reachability DAG from a root: vertices with n <= k
/// reachable by tight paths, edges composing tight paths whose inner
/// vertices stay above level k. Requires the tight subgraph to be acyclic
/// (holds on every satisfying graph); throws TightCycleError otherwise.
struct TightDag {
    int root = -1;
    std::int64_t level = 0;
    std::vector<int> vertices;  // ascending vertex ids; may exclude the root
    struct Edge {
        int from;
        std::int64_t weight;
        int to;
    };
    std::vector<Edge> edges;
    std::map<int, std::int64_t> rank;  // leaf = 0, inner = 1 + max successor
    std::int64_t rank_sup = 0;         // 0 for the empty dag
};

TightDag build_tvk(const LabeledGraph& g, const NMap& n, int v, std::int64_t k);

/// Per-edge verification of a candidate morphism into the universal graph.
struct Morphism {
    struct EdgeCheck {
        int edge_id;
        bool holds;
        std::string reason;  // empty when the edge holds
    };
    std::vector<OrdTuple> assignment;  // by vertex
    std::vector<EdgeCheck> report;     // one entry per edge, canonical order

    bool all_hold() const;
    std::vector<int> failing_edges() const;
};

/// Evaluates is_edge on the images of every edge. The assignment must be
/// total on vertices.
Morphism verify_morphism(const LabeledGraph& g, const std::vector<OrdTuple>& assignment);
Morphism verify_morphism(const LabeledGraph& g,
                         const std::map<std::string, OrdTuple>& assignment);

/// The literal construction: phi(v) = (rk(T_{v,0}), ..., rk(T_{v,n(v)})),
/// the empty tuple when n(v) < 0 or bottom. The result carries the full
/// verification report; edges are NOT promised to all hold (tight edges
/// leaving a vertex with n = -1 cannot, since nothing is below the empty
/// tuple lexicographically).
struct PaperPhi {
    Morphism morphism;
    NMap nmap;
    std::optional<int> v0;
    std::vector<int> reachable_from_v0;  // restriction reported alongside
};

PaperPhi phi_paper(const LabeledGraph& g);

/// The two ways the literal construction loses an edge, both only on tight
/// edges into a vertex with n >= 0:
///  - RootBoundary: n(from) = -1, so the source carries the empty tuple and
///    nothing is lexicographically below it;
///  - RankCollision: 0 <= n(from) < n(to) and every level dag of the target
///    up to n(from) has the same rank as the source's (in particular the
///    target's are all empty), making the source tuple a proper prefix of
///    the target's. Smallest instance: v -1-> v' -(-1)-> x with a +1 loop
///    on x.
/// Everything else verifies, so a failing edge classifying as Unexpected
/// would be a genuine bug.
enum class PhiFailureKind { RootBoundary, RankCollision, Unexpected };

PhiFailureKind classify_phi_failure(const LabeledGraph& g, const NMap& n, int edge_id);

struct FixpointBounds {
    std::int64_t max_len = 0;
    std::int64_t max_coord = 0;
};

struct BoundsExceeded {
    FixpointBounds reached;
};

/// max_len = 2 + (|V|-1)*max|w|, max_coord = |V| + 1: every finite
/// satisfying graph admits a morphism within these bounds.
FixpointBounds default_fixpoint_bounds(const LabeledGraph& g);

/// Least assignment into the bounded tuple space such that every edge's
/// images satisfy is_edge, by ascending fixpoint iteration from all-empty.
/// Returns the (fully re-verified) morphism when no vertex escapes to top;
/// otherwise doubles the bounds and retries up to the size cap.
std::variant<Morphism, BoundsExceeded> phi_fixpoint(const LabeledGraph& g,
                                                    std::optional<FixpointBounds> bounds = {},
                                                    std::int64_t size_cap = kDefaultSizeCap);

namespace detail {

/// Least tuple u with |u| <= max_len and coordinates < max_coord such that
/// is_edge(u, w, t) holds for every constraint (w, t); nullopt when the
/// bounded space has no such tuple. Constraint targets must themselves lie
/// within the bounds.
std::optional<OrdTuple> least_valid_tuple(
    const std::vector<std::pair<std::int64_t, OrdTuple>>& constraints, std::int64_t max_len,
    std::int64_t max_coord);

}  // namespace detail

/// The worked example: the displayed portion of the running-example tree,
/// rows closed with a +1 self-loop on their last vertex and the head chain
/// ending at r4.
LabeledGraph figure1_graph();

/// Expected n-values and tuples for the fixture, keyed by vertex name.
const std::vector<std::pair<std::string, std::int64_t>>& figure1_expected_n();
const std::vector<std::pair<std::string, std::string>>& figure1_expected_phi();

}  // namespace sumgames
