#include "graphzeta/fixtures.hpp"

#include "graphzeta/error.hpp"
#include "graphzeta/random.hpp"

namespace graphzeta::fixtures {

Graph path(std::size_t n) {
  GraphSpec s{n, {}};
  for (std::size_t i = 0; i + 1 < n; ++i) s.edges.push_back({i, i + 1, std::nullopt});
  return build_graph(s);
}

Graph cycle(std::size_t n) {
  GraphSpec s{n, {}};
  for (std::size_t i = 0; i < n; ++i) s.edges.push_back({i, (i + 1) % n, std::nullopt});
  return build_graph(s);
}

Graph complete(std::size_t n) {
  GraphSpec s{n, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s.edges.push_back({i, j, std::nullopt});
  return build_graph(s);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  GraphSpec s{a + b, {}};
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) s.edges.push_back({i, a + j, std::nullopt});
  return build_graph(s);
}

Graph petersen() {
  GraphSpec s{10, {}};
  for (std::size_t i = 0; i < 5; ++i) s.edges.push_back({i, (i + 1) % 5, std::nullopt});
  for (std::size_t i = 0; i < 5; ++i) s.edges.push_back({i, i + 5, std::nullopt});
  for (std::size_t i = 0; i < 5; ++i) s.edges.push_back({5 + i, 5 + (i + 2) % 5, std::nullopt});
  return build_graph(s);
}

Graph random_connected(std::size_t num_vertices, std::size_t num_edges, std::uint64_t seed) {
  if (num_edges + 1 < num_vertices || num_edges > num_vertices * (num_vertices - 1) / 2) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "edge count incompatible with a connected simple graph");
  }
  Rng rng(seed);
  GraphSpec s{num_vertices, {}};
  std::vector<std::vector<bool>> used(num_vertices, std::vector<bool>(num_vertices, false));
  auto add = [&](std::size_t i, std::size_t j) {
    used[i][j] = used[j][i] = true;
    s.edges.push_back({std::min(i, j), std::max(i, j), std::nullopt});
  };
  for (std::size_t k = 1; k < num_vertices; ++k) add(k, rng.index(k));
  while (s.edges.size() < num_edges) {
    const std::size_t i = rng.index(num_vertices);
    const std::size_t j = rng.index(num_vertices);
    if (i != j && !used[i][j]) add(i, j);
  }
  return build_graph(s);
}

Graph weighted_kite() {
  return build_graph(
      {4, {{0, 1, 0.5}, {0, 2, 1.5}, {1, 2, 2.0}, {1, 3, 1.0}, {2, 3, 3.0}}});
}

std::vector<NamedGraph> standard_set() {
  using enum LaplacianKind;
  std::vector<NamedGraph> set;
  set.push_back({"P2", path(2), Standard});
  set.push_back({"C3", cycle(3), Standard});
  set.push_back({"C6", cycle(6), Standard});
  set.push_back({"K4", complete(4), Standard});
  set.push_back({"K3,3", complete_bipartite(3, 3), Standard});
  set.push_back({"Petersen", petersen(), Standard});
  set.push_back({"random8", random_connected(8, 12, 20240611), Standard});
  set.push_back({"kite-weighted", weighted_kite(), Generalized});
  return set;
}

}  // namespace graphzeta::fixtures
