#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "helpers.hpp"
#include "nlpm/grid.hpp"

using namespace nlpm;
using nlpm::testing::random_instance;

namespace {

struct Fixture {
  LinkFunction link;
  ParameterSpace space = nlpm::testing::moderate_space();
  Rng rng{17};
  nlpm::testing::Instance inst = random_instance(60, link, space, rng);
};

}  // namespace

TEST(BoxGrid, LatticeIndexEdges) {
  const Positions z{{0.0, 0.0}};
  const auto net = Network::from_edges(1, {});
  const BoxGrid g(z, net, 4, 1.0);
  EXPECT_DOUBLE_EQ(g.side(), 0.5);
  EXPECT_EQ(g.lattice_index(-1.0), 0u);
  EXPECT_EQ(g.lattice_index(-0.5), 1u);
  EXPECT_EQ(g.lattice_index(0.999), 3u);
  EXPECT_EQ(g.lattice_index(1.0), 3u);
  EXPECT_THROW((void)g.lattice_index(1.0000001), DataError);
  const Point c = g.center(g.locate({0.1, -0.9}));
  EXPECT_DOUBLE_EQ(c.x, 0.25);
  EXPECT_DOUBLE_EQ(c.y, -0.75);
}

TEST(BoxGrid, CountsMatchDefinitions) {
  Fixture f;
  const auto& z = f.inst.state.z;
  const auto& net = f.inst.net;
  for (std::uint32_t M : {1u, 3u, 8u, 64u}) {
    const BoxGrid g(z, net, M, 1.0);
    std::map<BoxId, std::uint32_t> occ;
    for (const auto& p : z) ++occ[g.locate(p)];
    std::size_t total = 0;
    for (const auto& b : g.occupied()) {
      EXPECT_EQ(b.count, occ.at(b.box));
      EXPECT_EQ(g.occupancy(b.box), b.count);
      total += b.count;
    }
    EXPECT_EQ(total, z.size());
    EXPECT_EQ(g.occupied().size(), occ.size());

    for (NodeId i = 0; i < z.size(); ++i) {
      std::map<BoxId, std::uint32_t> xi;
      for (NodeId j : net.neighbors(i)) ++xi[g.locate(z[j])];
      std::size_t n_entries = 0;
      for (const auto& e : g.xi(i)) {
        EXPECT_EQ(e.count, xi.at(e.box));
        ++n_entries;
      }
      EXPECT_EQ(n_entries, xi.size());
      for (const auto& [box, n] : occ) {
        const bool own = g.box_of(i) == box;
        const auto zeta = g.zeta(i, box, own);
        EXPECT_GE(zeta, 0);
        EXPECT_EQ(zeta, static_cast<std::int64_t>(n) - g.xi(i, box) - (own ? 1 : 0));
      }
    }
    EXPECT_NO_THROW(g.check_invariants(net));
  }
}

TEST(BoxGrid, NegativeZetaIsAFault) {
  const Positions z{{0.5, 0.5}, {-0.5, -0.5}};
  const std::vector<Edge> edges{{0, 1}};
  const auto net = Network::from_edges(2, edges);
  const BoxGrid g(z, net, 2, 1.0);
  // Node 1 sits alone in its box; claiming node 0 is there too is inconsistent.
  EXPECT_THROW((void)g.zeta(0, g.box_of(1), true), ConsistencyError);
}

TEST(BoxGrid, IncrementalMovesEqualRebuild) {
  for (std::uint32_t M : {2u, 16u, 1u << 30}) {
    Fixture f;
    auto z = f.inst.state.z;
    BoxGrid g(z, f.inst.net, M, 1.0);
    for (int t = 0; t < 3000; ++t) {
      const auto i = static_cast<NodeId>(f.rng() % z.size());
      z[i] = nlpm::testing::uniform_point(1.0, f.rng);
      g.move_node(i, z[i], f.inst.net);
    }
    const BoxGrid fresh(z, f.inst.net, M, 1.0);
    EXPECT_TRUE(g == fresh) << "M=" << M;
    EXPECT_NO_THROW(g.check_invariants(f.inst.net));
  }
}

TEST(BoxGrid, MoveWithinBoxIsNoOp) {
  Fixture f;
  auto z = f.inst.state.z;
  BoxGrid g(z, f.inst.net, 4, 1.0);
  const BoxGrid before = g;
  const Point c = g.center(g.box_of(0));
  g.move_node(0, c, f.inst.net);
  EXPECT_TRUE(g == before);
}

TEST(BoxGrid, FineGridCentresHugNodes) {
  Fixture f;
  const std::uint32_t M = 1u << 30;
  const BoxGrid g(f.inst.state.z, f.inst.net, M, 1.0);
  EXPECT_EQ(g.occupied().size(), f.inst.state.z.size());
  for (NodeId i = 0; i < f.inst.state.z.size(); ++i) {
    EXPECT_LT(center_distance(f.inst.state.z[i], g, g.box_of(i)), 2e-9);
  }
}

TEST(BoxGrid, CsvDump) {
  const Positions z{{0.1, 0.1}, {0.2, 0.2}, {-0.9, 0.9}};
  const auto net = Network::from_edges(3, {});
  const BoxGrid g(z, net, 2, 1.0);
  std::ostringstream out;
  g.write_csv(out);
  EXPECT_EQ(out.str(), "gx,gy,center_x,center_y,count\n0,1,-0.5,0.5,1\n1,1,0.5,0.5,2\n");
}
