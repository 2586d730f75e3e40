#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "graphzeta/error.hpp"
#include "graphzeta/fixtures.hpp"
#include "graphzeta/graph.hpp"
#include "graphzeta/graph_io.hpp"

using namespace graphzeta;
using VKind = ValidationError::Kind;

namespace {

VKind kind_of(const GraphSpec& spec) {
  try {
    build_graph(spec);
  } catch (const ValidationError& e) {
    return e.kind();
  }
  FAIL("expected a validation error");
  return VKind::InvalidArgument;
}

VKind parse_kind(std::string_view text, std::string* message = nullptr) {
  try {
    build_graph(parse_graph(text));
  } catch (const ValidationError& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  FAIL("expected a validation error");
  return VKind::InvalidArgument;
}

}  // namespace

TEST_CASE("build_graph examples") {
  const Graph p2 = build_graph({2, {{0, 1, std::nullopt}}});
  CHECK(p2.num_vertices() == 2);
  CHECK(p2.num_edges() == 1);
  CHECK(p2.connected());

  const Graph k4 = fixtures::complete(4);
  CHECK(k4.num_edges() == 6);
  for (std::size_t v : k4.degrees().valency) CHECK(v == 3);
  CHECK(k4.regular_degree() == 3);
  CHECK(k4.adjacent(3, 1));
  CHECK_FALSE(k4.adjacent(2, 2));
}

TEST_CASE("build_graph rejects each defect with a distinct kind") {
  CHECK(kind_of({2, {{0, 0, std::nullopt}}}) == VKind::SelfLoop);
  CHECK(kind_of({3, {{0, 1, std::nullopt}, {1, 0, std::nullopt}}}) == VKind::DuplicateEdge);
  CHECK(kind_of({2, {{0, 1, 0.0}}}) == VKind::NonPositiveWeight);
  CHECK(kind_of({2, {{0, 1, -1.0}}}) == VKind::NonPositiveWeight);
  CHECK(kind_of({2, {{0, 2, std::nullopt}}}) == VKind::VertexOutOfRange);
  CHECK(kind_of({0, {}}) == VKind::EmptyGraph);
}

TEST_CASE("weights and weighted valency") {
  const Graph g = build_graph({3, {{0, 1, 2.0}, {1, 2, std::nullopt}}});
  CHECK(g.has_weights());
  CHECK(g.degrees().weighted_valency[1] == doctest::Approx(3.0));
  CHECK(g.degree(1, LaplacianKind::Standard) == 2.0);
  CHECK(g.degree(1, LaplacianKind::Generalized) == 3.0);

  const Graph unit = build_graph({3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(unit.degrees().weighted_valency[i] == static_cast<double>(unit.degrees().valency[i]));
  }
}

TEST_CASE("connectivity and rank") {
  CHECK(rank(fixtures::path(2)) == 0);
  CHECK(rank(fixtures::cycle(3)) == 1);
  CHECK(rank(fixtures::complete(4)) == 3);
  CHECK(rank(fixtures::petersen()) == 6);
  const Graph two = build_graph({4, {{0, 1, std::nullopt}, {2, 3, std::nullopt}}});
  CHECK_FALSE(two.connected());
  CHECK_THROWS_AS(rank(two), ValidationError);
}

TEST_CASE("directed bond indexing") {
  const Graph p2 = fixtures::path(2);
  const DirectedBondSpace b2(p2);
  REQUIRE(b2.size() == 2);
  CHECK(b2.origin(0) == 0);
  CHECK(b2.terminus(0) == 1);
  CHECK(DirectedBondSpace::reversal(0) == 1);
  CHECK(DirectedBondSpace::reversal(1) == 0);

  // Edge (2, 0) is stored with lo < hi, so bond 0 runs 0 -> 2.
  const Graph g = build_graph({3, {{2, 0, std::nullopt}, {1, 2, std::nullopt}}});
  const DirectedBondSpace b(g);
  CHECK(b.origin(0) == 0);
  CHECK(b.terminus(0) == 2);
  CHECK(b.origin(3) == 2);
  CHECK(b.terminus(3) == 1);

  CHECK(DirectedBondSpace(fixtures::complete(4)).size() == 12);

  const Graph c3 = fixtures::cycle(3);
  const DirectedBondSpace b3(c3);
  CHECK(b3.size() == 6);
  for (BondId d = 0; d < b3.size(); ++d) {
    std::size_t forward = 0;
    for (BondId n : b3.successors(d))
      if (n != DirectedBondSpace::reversal(d)) ++forward;
    CHECK(forward == 1);
  }
}

TEST_CASE("bond space invariants on every fixture") {
  for (const auto& f : fixtures::standard_set()) {
    CAPTURE(f.name);
    const Graph& g = f.graph;
    const DirectedBondSpace b(g);
    CHECK(b.size() == 2 * g.num_edges());
    std::size_t valency_sum = 0;
    for (std::size_t v : g.degrees().valency) valency_sum += v;
    CHECK(valency_sum == 2 * g.num_edges());
    for (BondId d = 0; d < b.size(); ++d) {
      const BondId r = DirectedBondSpace::reversal(d);
      CHECK(r != d);
      CHECK(DirectedBondSpace::reversal(r) == d);
      CHECK(b.origin(r) == b.terminus(d));
      CHECK(b.terminus(r) == b.origin(d));
      const auto next = b.successors(d);
      CHECK(next.size() == g.degrees().valency[b.terminus(d)]);
      CHECK(std::count(next.begin(), next.end(), r) == 1);
      for (BondId n : next) CHECK(b.follows(n, d));
    }
    const ComplexMatrix c = g.adjacency();
    for (std::size_t i = 0; i < g.num_vertices(); ++i) {
      CHECK(c(i, i) == Complex{});
      for (std::size_t j = 0; j < g.num_vertices(); ++j) CHECK(c(i, j) == c(j, i));
    }
  }
}

TEST_CASE("graph files: JSON and edge list") {
  const GraphSpec js = parse_graph(R"({"num_vertices": 3, "edges": [{"u": 0, "v": 1}, {"u": 1, "v": 2, "w": 2.5}]})");
  CHECK(js.num_vertices == 3);
  REQUIRE(js.edges.size() == 2);
  CHECK_FALSE(js.edges[0].weight.has_value());
  CHECK(*js.edges[1].weight == 2.5);

  const GraphSpec txt = parse_graph("# triangle\n0 1\n1 2 # inline\n\n2 0 0.5\n");
  CHECK(txt.num_vertices == 3);
  CHECK(txt.edges.size() == 3);
  CHECK(*txt.edges[2].weight == 0.5);

  const Graph round = build_graph(parse_graph(graph_to_json(fixtures::weighted_kite())));
  CHECK(round.num_edges() == 5);
  CHECK(round.edges()[4].weight == 3.0);
}

TEST_CASE("graph file errors name the line") {
  std::string msg;
  CHECK(parse_kind("0 1\n1 x\n", &msg) == VKind::Parse);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(parse_kind("0 1\n1 2 3 4\n", &msg) == VKind::Parse);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(parse_kind("{\"num_vertices\": 2,\n \"edges\": [\n {\"u\": 0 \"v\": 1}]}", &msg) == VKind::Parse);
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(parse_kind("{\"num_vertices\": 2, \"edges\": [{\"u\": 0}]}") == VKind::Parse);
  CHECK(parse_kind("0 0\n") == VKind::SelfLoop);
  CHECK(parse_kind("# nothing\n") == VKind::EmptyGraph);
}

TEST_CASE("fixture files on disk load") {
  const std::filesystem::path dir = GRAPHZETA_FIXTURE_DIR;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    CAPTURE(entry.path().string());
    const Graph g = load_graph(entry.path());
    CHECK(g.num_vertices() > 0);
  }
  CHECK_THROWS_AS(load_graph(dir / "missing.json"), ValidationError);
}
