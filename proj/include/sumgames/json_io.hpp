#pragma once

#include <string>

#include "json.hpp"
#include "sumgames/graph.hpp"

namespace sumgames {

using Json = nlohmann::ordered_json;

enum class ParseMode { Graph, Arena };

/// Parses the document format
///   {"vertices":[{"id":"a","owner":"Eve"}],"edges":[{"from":"a","to":"a","weight":1}]}
/// "owner" is required in arena mode and ignored in graph mode.
LabeledGraph parse_labeled_graph(const std::string& text);
Arena parse_arena(const std::string& text);

LabeledGraph graph_from_json(const Json& doc);
Arena arena_from_json(const Json& doc);

Json graph_to_json(const LabeledGraph& g);
Json arena_to_json(const Arena& a);

/// One line per edge `a -> b [label="w"]`; Eve vertices as circles, Adam
/// vertices as squares.
std::string graph_to_dot(const LabeledGraph& g);
std::string arena_to_dot(const Arena& a);

std::string read_file(const std::string& path);

}  // namespace sumgames
