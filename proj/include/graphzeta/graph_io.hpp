#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "graphzeta/graph.hpp"

namespace graphzeta {

/// {"num_vertices": V, "edges": [{"u": i, "v": j, "w": x?}, ...]}
GraphSpec parse_graph_json(std::string_view text);

/// One "u v [w]" per line; '#' starts a comment. V is one more than the largest index.
GraphSpec parse_graph_text(std::string_view text);

/// JSON when the first non-blank character is '{', edge list otherwise.
GraphSpec parse_graph(std::string_view text);

Graph load_graph(const std::filesystem::path& path);

std::string graph_to_json(const Graph& g);

}  // namespace graphzeta
