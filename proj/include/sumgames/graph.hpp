#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sumgames {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DeadEndError : std::runtime_error {
    explicit DeadEndError(const std::string& vertex)
        : std::runtime_error("dead end: vertex '" + vertex + "' has no outgoing edge"),
          vertex(vertex) {}
    std::string vertex;
};

struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Addition/multiplication that refuse to wrap around.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

using WeightWord = std::vector<std::int64_t>;

/// Inclusive prefix sums: out[k] = w[0] + ... + w[k].
WeightWord prefix_sums(const WeightWord& word);

enum class Player { Eve, Adam };

std::string_view player_name(Player p);

/// Finite directed graph with integer edge labels. Vertex identifiers are
/// opaque strings; all internal work uses dense indices. Edges are kept in
/// a canonical order (from, weight, to) and exact duplicates collapse.
class LabeledGraph {
public:
    struct Edge {
        int from;
        std::int64_t weight;
        int to;
        friend bool operator==(const Edge&, const Edge&) = default;
    };

    int add_vertex(const std::string& name);
    void add_edge(std::string_view from, std::int64_t weight, std::string_view to);
    void add_edge(int from, std::int64_t weight, int to);

    int vertex_count() const { return static_cast<int>(names_.size()); }
    const std::string& name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> index_of(std::string_view name) const;
    /// Same as index_of but throws ParseError when absent.
    int require(std::string_view name) const;

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    /// Edge ids leaving v, ascending in canonical edge order.
    std::span<const int> out(int v) const;
    bool is_sink(int v) const { return out(v).empty(); }

    /// Set equality on vertices, edges (names, not indices).
    bool same_structure(const LabeledGraph& other) const;

private:
    void refresh_adjacency() const;

    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<Edge> edges_;  // sorted by (from, weight, to)
    mutable std::vector<std::vector<int>> out_;
    mutable bool adjacency_dirty_ = false;
};

/// Two-player arena: a graph whose every vertex has an owner and at least
/// one outgoing edge (plays are infinite).
struct Arena {
    LabeledGraph graph;
    std::vector<Player> owner;  // by vertex index

    /// Throws DeadEndError / ParseError when the invariants fail.
    void validate() const;

    bool same_structure(const Arena& other) const;
};

}  // namespace sumgames
