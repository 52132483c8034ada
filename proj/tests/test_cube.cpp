#include <random>

#include <gtest/gtest.h>

#include "basilica/cube.hpp"
#include "basilica/families.hpp"

using namespace basilica;

namespace {

CubeVertex id_vertex(const AddressedGraph& g) { return CubeVertex::of(GraphPairDiagram::identity(g)); }

const Occurrence kXYZ{Address("x"), Address("y"), Address("z"), Vertex("q")};
const Occurrence kVWX{Address("v"), Address("w"), Address("x"), Vertex("p")};
const Occurrence kABC{Address("a"), Address("b"), Address("c"), Vertex("l")};

}  // namespace

TEST(Moves, DownMovesOfG0) {
  EXPECT_EQ(down_moves(id_vertex(make_G0())).size(), 2u);
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_TRUE(down_moves(id_vertex(make_O(n))).empty());
}

TEST(Moves, DownThenUpReturns) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    const auto v = CubeVertex::of(random_rearrangement(make_J(1), 1 + rng() % 5, rng));
    for (const auto& occ : occurrences(v.representative.base_range)) {
      const auto c = contract_range(v.representative, occ);
      EXPECT_EQ(CubeVertex::of(expand_range(c.diagram, c.merged)).key, v.key);
    }
  }
}

TEST(Moves, UpMovesCountAndCap) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 30; ++i) {
    const auto v = CubeVertex::of(random_rearrangement(make_G0(), rng() % 6, rng));
    EXPECT_EQ(up_moves(v, 1000).size(), v.representative.base_range.edge_count());
    EXPECT_TRUE(up_moves(v, v.rank()).empty());
    for (const auto& eta : v.representative.base_range.edge_addresses()) {
      const auto up = expand_range(v.representative, eta);
      const auto occ = find_occurrence(up.base_range, {eta.child(1), eta.child(2), eta.child(3)});
      ASSERT_TRUE(occ.has_value());
      const auto back = contract_range(up, *occ).diagram;
      EXPECT_EQ(CubeVertex::of(back).key, v.key);
    }
  }
}

TEST(DescendingLink, Examples) {
  const auto g0 = descending_link(id_vertex(make_G0()));
  EXPECT_EQ(g0.simplices_of_dim(0).size(), 2u);
  EXPECT_TRUE(g0.simplices_of_dim(1).empty());
  EXPECT_EQ(betti(g0).b(0), 2u);
  EXPECT_EQ(connectivity(g0), 2u);

  EXPECT_TRUE(descending_link(id_vertex(make_O(2))).simplices().empty());

  const auto b = descending_link(id_vertex(expand(make_G0(), Address("b"))));
  EXPECT_EQ(b.simplices_of_dim(0).size(), 3u);
  EXPECT_TRUE(b.simplices_of_dim(1).empty());
}

TEST(DescendingLink, DisjointOccurrencesSpanSimplices) {
  const auto link = descending_link(id_vertex(make_J(1)));
  EXPECT_GT(link.dimension(), 0);
  EXPECT_TRUE(link.is_closed());
}

TEST(Bfs, OVertexAtMinimalCapIsAlone) {
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto g = bfs_sublevel(id_vertex(make_O(n)), 2 * n + 4, 100);
    EXPECT_EQ(g.vertices.size(), 1u);
    EXPECT_TRUE(g.exhaustive);
    EXPECT_TRUE(g.edges.empty());
  }
}

TEST(Bfs, BudgetOneStopsAtStart) {
  const auto g = bfs_sublevel(id_vertex(make_G0()), 4, 1);
  EXPECT_EQ(g.vertices.size(), 1u);
  EXPECT_FALSE(g.exhaustive);
}

TEST(Bfs, SublevelOfG0AtRankFourKeepsGrowing) {
  const auto small = bfs_sublevel(id_vertex(make_G0()), 4, 50);
  const auto large = bfs_sublevel(id_vertex(make_G0()), 4, 200);
  EXPECT_FALSE(small.exhaustive);
  EXPECT_FALSE(large.exhaustive);
  EXPECT_EQ(large.vertices.size(), 200u);
  const auto h = large.rank_histogram();
  EXPECT_EQ(h.rbegin()->first, 4u);
  EXPECT_EQ(h.begin()->first, 2u);
  for (const auto& d : down_moves(id_vertex(make_G0()))) EXPECT_TRUE(large.index.count(d.target.key));
}

TEST(Bfs, Deterministic) {
  const auto a = bfs_sublevel(id_vertex(make_J(0)), 12, 150);
  const auto b = bfs_sublevel(id_vertex(make_J(0)), 12, 150);
  ASSERT_EQ(a.vertices.size(), b.vertices.size());
  for (std::size_t i = 0; i < a.vertices.size(); ++i) EXPECT_EQ(a.vertices[i].key, b.vertices[i].key);
  EXPECT_EQ(a.edges, b.edges);
}

TEST(Walls, ContractingTheWallTripleCrossesOnce) {
  for (std::size_t n = 0; n <= 2; ++n) {
    const auto walls = make_walls(n);
    const auto r = certify_path_sides(walls.f_n, {walls.h1}, {ContractMove{kXYZ}});
    EXPECT_EQ(r.sides, std::vector<int>{-1});
    EXPECT_EQ(r.crossings, std::vector<std::size_t>{1});
    EXPECT_FALSE(r.indeterminate);
  }
}

TEST(Walls, PartialOverlapsDoNotCross) {
  const auto walls = make_walls(1);
  for (auto policy : {TrackerPolicy::Exact, TrackerPolicy::Conservative}) {
    const auto r = certify_path_sides(walls.f_n, {walls.h1, walls.h2}, {ContractMove{kVWX}, ContractMove{kABC}}, policy);
    EXPECT_EQ(r.sides, (std::vector<int>{1, 1}));
    EXPECT_FALSE(r.indeterminate);
  }
}

TEST(Walls, CrossingTwiceReturnsToPlus) {
  const auto walls = make_walls(1);
  const Address merged = contract_range(walls.f_n, kXYZ).merged;
  const auto r = certify_path_sides(walls.f_n, {walls.h1}, {ContractMove{kXYZ}, ExpandMove{merged}});
  EXPECT_EQ(r.sides, std::vector<int>{1});
  EXPECT_EQ(r.crossings, std::vector<std::size_t>{2});
  EXPECT_EQ(vertex_key(r.trace.back()), vertex_key(walls.f_n));
}

TEST(Walls, ReversedPathHasSameSides) {
  const auto walls = make_walls(1);
  for (const auto& w : quarter_witnesses(1)) {
    const auto forward = certify_path_sides(walls.f_n, {walls.h1, walls.h2}, w.path);
    // Undo the two contractions in reverse order by expanding their merged edges.
    const auto first = contract_range(walls.f_n, std::get<ContractMove>(w.path[0]).occurrence);
    const auto second = contract_range(first.diagram, std::get<ContractMove>(w.path[1]).occurrence);
    const MoveWord back = {ExpandMove{second.merged}, ExpandMove{first.merged}};
    const auto reverse = certify_path_sides(forward.trace.back(), {walls.h1, walls.h2}, back);
    EXPECT_EQ(reverse.sides, forward.sides) << w.name;
    EXPECT_EQ(vertex_key(reverse.trace.back()), vertex_key(walls.f_n));
  }
}

TEST(QuarterSpaces, WitnessesForSmallN) {
  const std::vector<std::vector<int>> expected = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (std::size_t n = 0; n <= 2; ++n) {
    const auto ws = quarter_witnesses(n);
    ASSERT_EQ(ws.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_EQ(ws[i].vertex.rank(), 2 * n + 6);
      EXPECT_EQ(ws[i].sides, expected[i]) << ws[i].name;
      EXPECT_FALSE(ws[i].indeterminate);
    }
  }
}

TEST(WallModel, IdentityMapsToFrameCorner) {
  for (std::size_t n = 0; n <= 2; ++n) {
    const auto e = wall_model_embed(n, GraphPairDiagram::identity(make_O(n)));
    EXPECT_TRUE(e.adjacent_to_frame);
    EXPECT_TRUE(e.edges_in_walls);
    EXPECT_EQ(e.rank_phi, 2 * n + 4);
    EXPECT_EQ(e.corner.rank(), e.rank_phi + 2);
    EXPECT_EQ(e.top.rank(), e.rank_phi + 6);
  }
}

TEST(WallModel, RandomRearrangementsShiftRankBySix) {
  std::mt19937_64 rng(33);
  std::map<std::string, std::string> corner_of;
  for (int i = 0; i < 20; ++i) {
    const auto phi = random_rearrangement(make_O(1), 1 + rng() % 5, rng);
    const auto e = wall_model_embed(1, phi);
    EXPECT_EQ(e.top.rank(), rank(phi) + 6);
    EXPECT_TRUE(e.edges_in_walls);
    const auto [it, fresh] = corner_of.emplace(vertex_key(phi), e.corner.key);
    if (!fresh) EXPECT_EQ(it->second, e.corner.key);
  }
  std::set<std::string> corners;
  for (const auto& [k, c] : corner_of) corners.insert(c);
  EXPECT_EQ(corners.size(), corner_of.size());
}

TEST(Detour, GraphDanceTrace) {
  const auto r = detour_path(graph_dance_config());
  EXPECT_EQ(r.rank_x, 8u);
  EXPECT_EQ(r.ranks, (std::vector<std::size_t>{6, 4, 6, 4, 2, 4, 6, 4, 2, 4, 6, 4, 6}));
  EXPECT_EQ(r.z_wall_crossings, 0u);
  EXPECT_TRUE(r.endpoints_ok);
  EXPECT_TRUE(r.twisted_differs);
}

TEST(Detour, GeneratedConfigurations) {
  const auto configs = generate_detour_configs(4, 99);
  ASSERT_EQ(configs.size(), 4u);
  for (const auto& c : configs) {
    const auto r = detour_path(c);
    for (auto h : r.ranks) EXPECT_LT(h, r.rank_x);
    EXPECT_EQ(r.z_wall_crossings, 0u);
    EXPECT_TRUE(r.endpoints_ok);
    EXPECT_TRUE(r.twisted_differs);
  }
}

TEST(Detour, RejectsBadPreconditions) {
  auto c = graph_dance_config();
  c.z = c.a;
  EXPECT_THROW(detour_path(c), CubeError);
}
