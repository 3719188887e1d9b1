#include "sumgames/graph.hpp"

#include <algorithm>

namespace sumgames {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("integer overflow in addition");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw OverflowError("integer overflow in subtraction");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("integer overflow in multiplication");
    return r;
}

WeightWord prefix_sums(const WeightWord& word) {
    WeightWord out;
    out.reserve(word.size());
    std::int64_t acc = 0;
    for (std::int64_t w : word) {
        acc = checked_add(acc, w);
        out.push_back(acc);
    }
    return out;
}

std::string_view player_name(Player p) {
    return p == Player::Eve ? "Eve" : "Adam";
}

int LabeledGraph::add_vertex(const std::string& name) {
    auto [it, inserted] = index_.emplace(name, vertex_count());
    if (!inserted)
        throw ParseError("duplicate vertex id '" + name + "'");
    names_.push_back(name);
    adjacency_dirty_ = true;
    return it->second;
}

void LabeledGraph::add_edge(std::string_view from, std::int64_t weight, std::string_view to) {
    add_edge(require(from), weight, require(to));
}

void LabeledGraph::add_edge(int from, std::int64_t weight, int to) {
    if (from < 0 || from >= vertex_count() || to < 0 || to >= vertex_count())
        throw ParseError("edge endpoint out of range");
    Edge e{from, weight, to};
    auto cmp = [](const Edge& a, const Edge& b) {
        return std::tie(a.from, a.weight, a.to) < std::tie(b.from, b.weight, b.to);
    };
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e, cmp);
    if (it != edges_.end() && *it == e)
        return;  // duplicate triple collapses
    edges_.insert(it, e);
    adjacency_dirty_ = true;
}

std::optional<int> LabeledGraph::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? std::nullopt : std::optional<int>(it->second);
}

int LabeledGraph::require(std::string_view name) const {
    auto idx = index_of(name);
    if (!idx)
        throw ParseError("unknown vertex '" + std::string(name) + "'");
    return *idx;
}

void LabeledGraph::refresh_adjacency() const {
    out_.assign(static_cast<std::size_t>(vertex_count()), {});
    for (int e = 0; e < edge_count(); ++e)
        out_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].from)].push_back(e);
    adjacency_dirty_ = false;
}

std::span<const int> LabeledGraph::out(int v) const {
    if (adjacency_dirty_)
        refresh_adjacency();
    return out_.at(static_cast<std::size_t>(v));
}

bool LabeledGraph::same_structure(const LabeledGraph& other) const {
    auto sorted_names = [](const LabeledGraph& g) {
        auto v = g.names_;
        std::sort(v.begin(), v.end());
        return v;
    };
    if (sorted_names(*this) != sorted_names(other))
        return false;
    using Triple = std::tuple<std::string, std::int64_t, std::string>;
    auto triples = [](const LabeledGraph& g) {
        std::vector<Triple> v;
        v.reserve(g.edges_.size());
        for (const Edge& e : g.edges_)
            v.emplace_back(g.name(e.from), e.weight, g.name(e.to));
        std::sort(v.begin(), v.end());
        return v;
    };
    return triples(*this) == triples(other);
}

void Arena::validate() const {
    if (owner.size() != static_cast<std::size_t>(graph.vertex_count()))
        throw ParseError("owner map is not total on vertices");
    for (int v = 0; v < graph.vertex_count(); ++v)
        if (graph.is_sink(v))
            throw DeadEndError(graph.name(v));
}

bool Arena::same_structure(const Arena& other) const {
    if (!graph.same_structure(other.graph))
        return false;
    for (int v = 0; v < graph.vertex_count(); ++v) {
        auto idx = other.graph.index_of(graph.name(v));
        if (!idx || owner[static_cast<std::size_t>(v)] != other.owner[static_cast<std::size_t>(*idx)])
            return false;
    }
    return true;
}

}  // namespace sumgames
