#include "sumgames/universal.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace sumgames {

std::string OrdTuple::to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i)
            out << ',';
        out << coords_[i];
    }
    out << ')';
    return out.str();
}

OrdTuple OrdTuple::parse(std::string_view text) {
    auto fail = [&] { throw ParseError("bad tuple syntax '" + std::string(text) + "'"); };
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        fail();
    std::string_view body = text.substr(1, text.size() - 2);
    std::vector<std::uint64_t> coords;
    if (!body.empty()) {
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = body.find(',', pos);
            std::string_view item = body.substr(pos, comma == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : comma - pos);
            while (!item.empty() && item.front() == ' ')
                item.remove_prefix(1);
            while (!item.empty() && item.back() == ' ')
                item.remove_suffix(1);
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
            if (ec != std::errc() || ptr != item.data() + item.size())
                fail();
            coords.push_back(value);
            if (comma == std::string_view::npos)
                break;
            pos = comma + 1;
        }
    }
    return OrdTuple(std::move(coords));
}

bool lex_gt(const OrdTuple& u, const OrdTuple& v) {
    const auto& a = u.coords();
    const auto& b = v.coords();
    std::size_t common = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < common; ++i) {
        if (a[i] != b[i])
            return a[i] > b[i];
    }
    return a.size() > b.size();  // v is a proper prefix of u
}

bool order_gt(const OrdTuple& u, const OrdTuple& v) {
    if (u.length() != v.length())
        return u.length() > v.length();
    return lex_gt(u, v);
}

bool is_edge(const OrdTuple& u, std::int64_t w, const OrdTuple& v) {
    std::int64_t reach = checked_add(u.length(), w);
    if (reach < v.length())
        return false;
    if (reach == v.length())
        return lex_gt(u, v);
    return true;
}

std::optional<int> Fragment::index_of(const OrdTuple& t) const {
    auto it = std::lower_bound(tuples.begin(), tuples.end(), t,
                               [](const OrdTuple& a, const OrdTuple& b) { return order_gt(b, a); });
    if (it != tuples.end() && *it == t)
        return static_cast<int>(it - tuples.begin());
    return std::nullopt;
}

Fragment build_fragment(std::int64_t max_len, std::int64_t max_coord,
                        std::vector<std::int64_t> weight_set, std::int64_t size_cap) {
    if (max_len < 0 || max_coord < 0)
        throw ParseError("fragment bounds must be nonnegative");
    std::sort(weight_set.begin(), weight_set.end());
    weight_set.erase(std::unique(weight_set.begin(), weight_set.end()), weight_set.end());

    // Vertex count is sum over i <= max_len of max_coord^i.
    std::int64_t count = 0;
    std::int64_t pow = 1;
    for (std::int64_t i = 0; i <= max_len; ++i) {
        count = checked_add(count, pow);
        if (count > size_cap)
            throw SizeCapError("fragment would exceed the size cap of " +
                               std::to_string(size_cap) + " vertices");
        if (i < max_len) {
            pow = checked_mul(pow, max_coord);
            if (pow == 0)
                break;  // max_coord = 0: only the empty tuple exists
        }
    }

    Fragment frag;
    frag.max_len = max_len;
    frag.max_coord = max_coord;
    frag.weight_set = std::move(weight_set);

    // Enumerate by length, counting in base max_coord: this is exactly
    // ascending graph order (length first, then lex).
    frag.tuples.emplace_back();
    for (std::int64_t len = 1; len <= max_len && max_coord > 0; ++len) {
        std::vector<std::uint64_t> digits(static_cast<std::size_t>(len), 0);
        while (true) {
            frag.tuples.emplace_back(digits);
            std::int64_t i = len - 1;
            while (i >= 0) {
                if (digits[static_cast<std::size_t>(i)] + 1 <
                    static_cast<std::uint64_t>(max_coord)) {
                    ++digits[static_cast<std::size_t>(i)];
                    std::fill(digits.begin() + i + 1, digits.end(), 0);
                    break;
                }
                --i;
            }
            if (i < 0)
                break;
        }
    }

    for (const OrdTuple& t : frag.tuples)
        frag.graph.add_vertex(t.to_string());
    for (std::size_t ui = 0; ui < frag.tuples.size(); ++ui)
        for (std::int64_t w : frag.weight_set)
            for (std::size_t vi = 0; vi < frag.tuples.size(); ++vi)
                if (is_edge(frag.tuples[ui], w, frag.tuples[vi]))
                    frag.graph.add_edge(static_cast<int>(ui), w, static_cast<int>(vi));
    return frag;
}

std::optional<MonotonicityCounterexample> check_monotonicity(const Fragment& fragment) {
    const std::size_t n = fragment.tuples.size();
    std::vector<std::vector<char>> geq(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            geq[i][j] = order_geq(fragment.tuples[i], fragment.tuples[j]);

    std::set<std::tuple<int, std::int64_t, int>> has_edge;
    for (const auto& e : fragment.graph.edges())
        has_edge.emplace(e.from, e.weight, e.to);

    for (const auto& e : fragment.graph.edges()) {
        const auto v = static_cast<std::size_t>(e.from);
        const auto vp = static_cast<std::size_t>(e.to);
        for (std::size_t u = 0; u < n; ++u) {
            if (!geq[u][v])
                continue;
            for (std::size_t up = 0; up < n; ++up) {
                if (!geq[vp][up])
                    continue;
                if (!has_edge.count({static_cast<int>(u), e.weight, static_cast<int>(up)}))
                    return MonotonicityCounterexample{fragment.tuples[u], fragment.tuples[v],
                                                      fragment.tuples[vp], fragment.tuples[up],
                                                      e.weight};
            }
        }
    }
    return std::nullopt;
}

}  // namespace sumgames
