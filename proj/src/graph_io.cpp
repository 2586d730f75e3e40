#include "graphzeta/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "graphzeta/error.hpp"

namespace graphzeta {

namespace {

using Kind = ValidationError::Kind;

[[noreturn]] void parse_error(std::size_t line, const std::string& msg) {
  throw ValidationError(Kind::Parse, "line " + std::to_string(line) + ": " + msg);
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

std::size_t vertex_field(const nlohmann::json& e, const char* key, std::size_t k) {
  if (!e.contains(key) || !e[key].is_number_integer() || e[key].get<long long>() < 0) {
    throw ValidationError(Kind::Parse, "edge " + std::to_string(k) + ": field \"" + key +
                                           "\" must be a non-negative integer");
  }
  return e[key].get<std::size_t>();
}

bool parse_index(std::string_view tok, std::size_t& out) {
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && p == tok.data() + tok.size();
}

bool parse_real(std::string_view tok, double& out) {
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && p == tok.data() + tok.size();
}

}  // namespace

GraphSpec parse_graph_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!doc.is_object() || !doc.contains("num_vertices") || !doc.contains("edges")) {
    throw ValidationError(Kind::Parse, "graph JSON needs \"num_vertices\" and \"edges\"");
  }
  if (!doc["num_vertices"].is_number_integer() || doc["num_vertices"].get<long long>() < 0) {
    throw ValidationError(Kind::Parse, "\"num_vertices\" must be a non-negative integer");
  }
  if (!doc["edges"].is_array()) throw ValidationError(Kind::Parse, "\"edges\" must be an array");

  GraphSpec spec;
  spec.num_vertices = doc["num_vertices"].get<std::size_t>();
  std::size_t k = 0;
  for (const auto& e : doc["edges"]) {
    if (!e.is_object()) {
      throw ValidationError(Kind::Parse, "edge " + std::to_string(k) + ": expected an object");
    }
    EdgeSpec edge{vertex_field(e, "u", k), vertex_field(e, "v", k), std::nullopt};
    if (e.contains("w") && !e["w"].is_null()) {
      if (!e["w"].is_number()) {
        throw ValidationError(Kind::Parse, "edge " + std::to_string(k) + ": \"w\" must be a number");
      }
      edge.weight = e["w"].get<double>();
    }
    spec.edges.push_back(edge);
    ++k;
  }
  return spec;
}

GraphSpec parse_graph_text(std::string_view text) {
  GraphSpec spec;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  bool any = false;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() < 2 || tok.size() > 3) parse_error(line, "expected \"u v [w]\"");
    EdgeSpec e;
    if (!parse_index(tok[0], e.u) || !parse_index(tok[1], e.v)) {
      parse_error(line, "vertex indices must be non-negative integers");
    }
    if (tok.size() == 3) {
      double w = 0.0;
      if (!parse_real(tok[2], w)) parse_error(line, "weight is not a number");
      e.weight = w;
    }
    spec.num_vertices = std::max({spec.num_vertices, e.u + 1, e.v + 1});
    spec.edges.push_back(e);
    any = true;
  }
  if (!any) throw ValidationError(Kind::EmptyGraph, "edge list is empty");
  return spec;
}

GraphSpec parse_graph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_graph_json(text);
  return parse_graph_text(text);
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(Kind::Parse, "cannot open graph file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return build_graph(parse_graph(buf.str()));
}

std::string graph_to_json(const Graph& g) {
  nlohmann::json doc;
  doc["num_vertices"] = g.num_vertices();
  doc["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges()) {
    nlohmann::json j{{"u", e.lo}, {"v", e.hi}};
    if (g.has_weights()) j["w"] = e.weight;
    doc["edges"].push_back(j);
  }
  return doc.dump();
}

}  // namespace graphzeta
