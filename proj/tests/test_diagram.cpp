#include <random>

#include <gtest/gtest.h>

#include "basilica/cube.hpp"
#include "basilica/diagram.hpp"
#include "basilica/families.hpp"
#include "oracles.hpp"

using namespace basilica;

namespace {

GraphPairDiagram example_map() {
  return from_prefix_map(make_G0(), make_G0(),
                         {{Address("a"), Address("a")},
                          {Address("b"), Address("b1")},
                          {Address("c"), Address("b2")},
                          {Address("d1"), Address("b3")},
                          {Address("d2"), Address("c")},
                          {Address("d3"), Address("d")}});
}

const EdgeMap kSwap{{Address("a"), Address("c")}, {Address("b"), Address("d")},
                    {Address("c"), Address("a")}, {Address("d"), Address("b")}};

Address random_address(const AddressedGraph& base, std::size_t max_depth, std::mt19937_64& rng) {
  const auto edges = base.edge_addresses();
  Address a = edges[rng() % edges.size()];
  const std::size_t depth = rng() % (max_depth + 1);
  while (a.depth() < depth) a = a.child(1 + static_cast<int>(rng() % 3));
  return a;
}

}  // namespace

TEST(PrefixMap, ExampleBuildsExpectedGraphs) {
  const auto f = example_map();
  EXPECT_EQ(f.domain, expand(make_G0(), Address("d")));
  EXPECT_EQ(f.range.edges(), expand(make_G0(), Address("b")).edges());
  EXPECT_NO_THROW(f.validate());
}

TEST(PrefixMap, IdentityListGivesTrivialDiagram) {
  std::vector<std::pair<Address, Address>> pairs;
  for (const auto& a : make_G0().edge_addresses()) pairs.emplace_back(a, a);
  EXPECT_EQ(from_prefix_map(make_G0(), make_G0(), pairs), GraphPairDiagram::identity(make_G0()));
}

TEST(PrefixMap, MismatchedIncidenceThrows) {
  EXPECT_THROW(from_prefix_map(make_G0(), make_G0(),
                               {{Address("a"), Address("a")},
                                {Address("b"), Address("c")},
                                {Address("c"), Address("b")},
                                {Address("d"), Address("d")}}),
               DiagramError);
}

TEST(Apply, ExampleMap) {
  const auto f = example_map();
  EXPECT_EQ(apply(f, Address("d21")), Address("c1"));
  EXPECT_EQ(apply(f, Address("b")), Address("b1"));
  EXPECT_EQ(apply(f, Address("d3312")), Address("d312"));
  EXPECT_THROW(apply(f, Address("d")), ApplyError);
  EXPECT_EQ(apply(invert(f), Address("b1")), Address("b"));
}

TEST(Apply, IdentityFixesEverything) {
  const auto id = GraphPairDiagram::identity(make_G0());
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Address a = random_address(make_G0(), 6, rng);
    EXPECT_EQ(apply(id, a), a);
  }
}

TEST(Invert, Involution) {
  const auto f = example_map();
  EXPECT_EQ(invert(invert(f)), f);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_rearrangement(make_J(1), 1 + rng() % 6, rng);
    EXPECT_EQ(invert(invert(g)), g);
    EXPECT_EQ(rank(invert(g)), g.base_domain.edge_count());
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(GraphPairDiagram::identity(make_G0())), 4u);
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(rank(make_f_n(n)), 2 * n + 10);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto f = reduce(random_rearrangement(make_G0(), 1 + rng() % 6, rng));
    const auto edges = f.base_range.edge_addresses();
    EXPECT_EQ(rank(expand_range(f, edges[rng() % edges.size()])), rank(f) + 2);
  }
}

TEST(Compose, WithInverseReducesToIdentity) {
  const auto f = example_map();
  const auto id = GraphPairDiagram::identity(make_G0());
  EXPECT_EQ(reduce(compose(f, invert(f))), id);
  EXPECT_EQ(reduce(compose(invert(f), f)), id);
}

TEST(Compose, ExpansionDiagramExpandsTheRange) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    const auto f = random_rearrangement(make_G0(), 1 + rng() % 5, rng);
    const auto edges = f.base_range.edge_addresses();
    const Address eps = edges[rng() % edges.size()];
    const auto delta = expand_range(GraphPairDiagram::identity(f.base_range), eps);
    const auto g = compose(delta, f);
    EXPECT_EQ(g.base_range.edges(), expand(f.base_range, eps).edges());
    EXPECT_TRUE(range_equivalent(g, expand_range(f, eps)));
  }
}

TEST(Compose, ApplyMatchesTwoStepOracle) {
  std::mt19937_64 rng(10);
  std::size_t checked = 0;
  for (int i = 0; i < 100; ++i) {
    const auto f = random_rearrangement(make_G0(), 1 + rng() % 5, rng);
    const auto g = random_rearrangement(f.base_range, 1 + rng() % 5, rng);
    const auto gf = compose(g, f);
    for (int k = 0; k < 10; ++k) {
      const Address a = random_address(f.base_domain, 6, rng);
      const std::string fa = oracle::prefix_apply(f.phi, a.str());
      if (fa.empty()) continue;
      const std::string gfa = oracle::prefix_apply(g.phi, fa);
      if (gfa.empty()) continue;
      ++checked;
      EXPECT_EQ(apply(gf, a).str(), gfa);
    }
  }
  EXPECT_GT(checked, 200u);
}

TEST(Reduce, IdempotentAndStepsRemoveTwoEdges) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_rearrangement(make_G0(), 1 + rng() % 5, rng);
    const auto g = random_rearrangement(f.base_range, 1 + rng() % 5, rng);
    auto h = compose(g, f);
    const auto r = reduce(h);
    EXPECT_EQ(reduce(r), r);
    for (auto carets = detail::cancellable_carets(h); !carets.empty(); carets = detail::cancellable_carets(h)) {
      const auto next = detail::cancel(h, carets.front());
      ASSERT_EQ(next.domain.edge_count() + 2, h.domain.edge_count());
      h = next;
    }
    EXPECT_EQ(h, r);
  }
}

TEST(Reduce, RandomOrderGivesSameNormalForm) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_rearrangement(make_G0(), 1 + rng() % 5, rng);
    const auto h = compose(random_rearrangement(f.base_range, 1 + rng() % 5, rng), f);
    std::mt19937_64 order(rng());
    EXPECT_EQ(reduce(h, &order), reduce(h));
  }
}

TEST(RangeEquivalence, BaseIsomorphismAndExpansion) {
  const auto f = example_map();
  const auto g = apply_base_iso(f, make_G0(), kSwap);
  EXPECT_NE(f, g);
  EXPECT_TRUE(range_equivalent(f, g));
  EXPECT_EQ(vertex_key(f), vertex_key(g));
  const auto h = expand_range(f, Address("a"));
  EXPECT_FALSE(range_equivalent(f, h));
  EXPECT_NE(vertex_key(f), vertex_key(h));
}

TEST(RangeEquivalence, KeyMatchesPairwiseOracleOn500Pairs) {
  std::mt19937_64 rng(14);
  std::size_t positives = 0;
  for (int i = 0; i < 500; ++i) {
    const auto f = random_rearrangement(make_G0(), rng() % 4, rng);
    GraphPairDiagram g = random_rearrangement(make_G0(), rng() % 4, rng);
    if (rng() % 2) {
      const auto autos = all_isomorphisms(f.base_range, f.base_range);
      g = apply_base_iso(f, f.base_range, autos[rng() % autos.size()]);
    }
    const bool eq = range_equivalent(f, g);
    positives += eq;
    ASSERT_EQ(vertex_key(f) == vertex_key(g), eq) << "pair " << i;
  }
  EXPECT_GT(positives, 100u);
}

TEST(VertexKey, IdentityOnG0IsPinned) {
  const auto key = vertex_key(GraphPairDiagram::identity(make_G0()));
  EXPECT_EQ(key, "a,b,c,d,|a>0.;b>1.;c>2.;d>3.;");
  EXPECT_EQ(key, vertex_key(GraphPairDiagram::identity(make_G0())));
}

TEST(RangeMoves, ContractionRebasesUnderMergedEdge) {
  const auto id = GraphPairDiagram::identity(make_G0());
  const Occurrence dab{Address("d"), Address("a"), Address("b"), Vertex("x")};
  const auto c = contract_range(id, dab);
  EXPECT_EQ(c.merged.str(), "[#0]");
  EXPECT_EQ(c.diagram.phi.at(Address("d")).str(), "[#0]1");
  EXPECT_EQ(c.diagram.phi.at(Address("a")).str(), "[#0]2");
  EXPECT_EQ(c.diagram.phi.at(Address("b")).str(), "[#0]3");
  EXPECT_EQ(rank(c.diagram), 2u);
  EXPECT_NO_THROW(c.diagram.validate());
  EXPECT_EQ(vertex_key(expand_range(c.diagram, c.merged)), vertex_key(id));
}

TEST(RangeMoves, ApplyMoveRejectsStaleContraction) {
  const auto id = GraphPairDiagram::identity(make_G0());
  const Move m = ContractMove{Occurrence{Address("a"), Address("b"), Address("c"), Vertex("x")}};
  EXPECT_THROW(apply_move(id, m), DiagramError);
}

TEST(CellSignature, SiblingTriplesMerge) {
  const auto id = GraphPairDiagram::identity(make_G0());
  const auto e = expand_range(id, Address("b"));
  EXPECT_EQ(cell_signature(e, Address("b1")), (CellSignature{{Address("b1"), ""}}));
  const auto c = contract_range(id, Occurrence{Address("d"), Address("a"), Address("b"), Vertex("x")});
  EXPECT_EQ(cell_signature(c.diagram, c.merged),
            (CellSignature{{Address("a"), "2"}, {Address("b"), "3"}, {Address("d"), "1"}}));
}
