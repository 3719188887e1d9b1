#include "sumgames/json_io.hpp"

#include <fstream>
#include <sstream>

namespace sumgames {

namespace {

std::int64_t integer_field(const Json& j, const char* what) {
    if (j.is_number_integer())
        return j.get<std::int64_t>();
    if (j.is_number_unsigned()) {
        auto u = j.get<std::uint64_t>();
        if (u <= static_cast<std::uint64_t>(INT64_MAX))
            return static_cast<std::int64_t>(u);
    }
    throw ParseError(std::string(what) + " must be a machine integer");
}

std::string string_field(const Json& obj, const char* key) {
    if (!obj.contains(key) || !obj.at(key).is_string())
        throw ParseError(std::string("missing or non-string field '") + key + "'");
    return obj.at(key).get<std::string>();
}

template <typename AddVertex>
LabeledGraph parse_common(const Json& doc, AddVertex&& add_vertex) {
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges") ||
        !doc.at("vertices").is_array() || !doc.at("edges").is_array())
        throw ParseError("document must be an object with 'vertices' and 'edges' arrays");
    LabeledGraph g;
    for (const Json& v : doc.at("vertices")) {
        if (!v.is_object())
            throw ParseError("vertex entries must be objects");
        add_vertex(g, v);
    }
    for (const Json& e : doc.at("edges")) {
        if (!e.is_object() || !e.contains("weight"))
            throw ParseError("edge entries must be objects with from/to/weight");
        g.add_edge(string_field(e, "from"), integer_field(e.at("weight"), "edge weight"),
                   string_field(e, "to"));
    }
    return g;
}

Json parse_text(const std::string& text) {
    Json doc = Json::parse(text, nullptr, false);
    if (doc.is_discarded())
        throw ParseError("malformed JSON document");
    return doc;
}

}  // namespace

LabeledGraph graph_from_json(const Json& doc) {
    return parse_common(doc, [](LabeledGraph& g, const Json& v) {
        g.add_vertex(string_field(v, "id"));  // owner, if present, is ignored
    });
}

Arena arena_from_json(const Json& doc) {
    Arena a;
    std::vector<Player> owners;
    a.graph = parse_common(doc, [&owners](LabeledGraph& g, const Json& v) {
        g.add_vertex(string_field(v, "id"));
        std::string owner = string_field(v, "owner");
        if (owner == "Eve")
            owners.push_back(Player::Eve);
        else if (owner == "Adam")
            owners.push_back(Player::Adam);
        else
            throw ParseError("unknown owner tag '" + owner + "'");
    });
    a.owner = std::move(owners);
    a.validate();
    return a;
}

LabeledGraph parse_labeled_graph(const std::string& text) {
    return graph_from_json(parse_text(text));
}

Arena parse_arena(const std::string& text) {
    return arena_from_json(parse_text(text));
}

Json graph_to_json(const LabeledGraph& g) {
    Json doc;
    doc["vertices"] = Json::array();
    for (int v = 0; v < g.vertex_count(); ++v)
        doc["vertices"].push_back({{"id", g.name(v)}});
    doc["edges"] = Json::array();
    for (const auto& e : g.edges())
        doc["edges"].push_back(
            {{"from", g.name(e.from)}, {"to", g.name(e.to)}, {"weight", e.weight}});
    return doc;
}

Json arena_to_json(const Arena& a) {
    Json doc = graph_to_json(a.graph);
    for (int v = 0; v < a.graph.vertex_count(); ++v)
        doc["vertices"][static_cast<std::size_t>(v)]["owner"] =
            std::string(player_name(a.owner[static_cast<std::size_t>(v)]));
    return doc;
}

namespace {

std::string dot_impl(const LabeledGraph& g, const std::vector<Player>* owner) {
    std::ostringstream out;
    out << "digraph {\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        const char* shape = "circle";
        if (owner && (*owner)[static_cast<std::size_t>(v)] == Player::Adam)
            shape = "square";
        out << "  \"" << g.name(v) << "\" [shape=" << shape << "];\n";
    }
    for (const auto& e : g.edges())
        out << "  \"" << g.name(e.from) << "\" -> \"" << g.name(e.to) << "\" [label=\""
            << e.weight << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace

std::string graph_to_dot(const LabeledGraph& g) { return dot_impl(g, nullptr); }

std::string arena_to_dot(const Arena& a) { return dot_impl(a.graph, &a.owner); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace sumgames
