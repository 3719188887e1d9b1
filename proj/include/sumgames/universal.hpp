#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumgames/graph.hpp"

namespace sumgames {

/// A vertex of the universal graph: a finite tuple of naturals. Text form
/// is `()`, `(0)`, `(0,2)`.
class OrdTuple {
public:
    OrdTuple() = default;
    explicit OrdTuple(std::vector<std::uint64_t> coords) : coords_(std::move(coords)) {}

    std::int64_t length() const { return static_cast<std::int64_t>(coords_.size()); }
    const std::vector<std::uint64_t>& coords() const { return coords_; }
    std::uint64_t coord(std::size_t i) const { return coords_.at(i); }

    std::string to_string() const;
    static OrdTuple parse(std::string_view text);  // throws ParseError

    friend bool operator==(const OrdTuple&, const OrdTuple&) = default;

private:
    std::vector<std::uint64_t> coords_;
};

/// Lexicographic order: u >lex u' iff u' is a PROPER prefix of u, or the
/// first differing coordinate of u exceeds that of u'. The proper-prefix
/// reading keeps () >lex () false, which rules out the weight-0 self-loop
/// on the empty tuple.
bool lex_gt(const OrdTuple& u, const OrdTuple& v);

/// Order of the universal graph: length first, then lex at equal length.
/// Note (0,0) > (1) here even though (1) >lex (0,0).
bool order_gt(const OrdTuple& u, const OrdTuple& v);
inline bool order_geq(const OrdTuple& u, const OrdTuple& v) { return u == v || order_gt(u, v); }

/// Edge predicate of the universal graph:
///   |u| + w >= |u'|  and  (|u| + w = |u'|  implies  u >lex u').
bool is_edge(const OrdTuple& u, std::int64_t w, const OrdTuple& v);

constexpr std::int64_t kDefaultSizeCap = 200000;

/// Finite window of the universal graph: all tuples of length <= max_len
/// with coordinates < max_coord, and every edge of the universal graph
/// whose weight lies in weight_set. Vertices are listed ascending in the
/// graph order.
struct Fragment {
    std::int64_t max_len = 0;
    std::int64_t max_coord = 0;
    std::vector<std::int64_t> weight_set;  // sorted, unique
    std::vector<OrdTuple> tuples;          // ascending, parallel to graph vertices
    LabeledGraph graph;                    // ids are tuple text

    std::optional<int> index_of(const OrdTuple& t) const;
};

/// Throws SizeCapError when the vertex count would exceed size_cap.
Fragment build_fragment(std::int64_t max_len, std::int64_t max_coord,
                        std::vector<std::int64_t> weight_set,
                        std::int64_t size_cap = kDefaultSizeCap);

/// A violation of `u >= v -w-> v' >= u'  implies  u -w-> u'` within the
/// fragment's vertex set and weight set.
struct MonotonicityCounterexample {
    OrdTuple u, v, v_prime, u_prime;
    std::int64_t weight = 0;
};

std::optional<MonotonicityCounterexample> check_monotonicity(const Fragment& fragment);

}  // namespace sumgames
