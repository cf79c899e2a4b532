#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "support.hpp"
#include "topent/error.hpp"
#include "topent/vrips.hpp"

namespace topent {
namespace {

std::vector<std::vector<Vertex>> vertex_lists(const Filtration& f) {
  std::vector<std::vector<Vertex>> out;
  for (const Simplex& s : f.simplices()) out.push_back(s.vertices);
  return out;
}

TEST(VrFiltration, CollinearTriple) {
  const PointCloud c = PointCloud::from_rows({{0}, {1}, {3}});
  const Filtration f = build_vr_filtration(c, 1, 2.0);
  ASSERT_EQ(f.size(), 5u);
  EXPECT_EQ(vertex_lists(f),
            (std::vector<std::vector<Vertex>>{{0}, {1}, {2}, {0, 1}, {1, 2}}));
  EXPECT_EQ(f[3].value, 1.0);
  EXPECT_EQ(f[4].value, 2.0);
}

TEST(VrFiltration, EquilateralTriangle) {
  const PointCloud c = PointCloud::from_rows({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
  const double side = pairwise_distances(c)(0, 2);
  const Filtration f = build_vr_filtration(c, 2, 1.0 + 1e-12);
  ASSERT_EQ(f.size(), 7u);
  EXPECT_EQ(f[6].vertices, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(f[6].value, std::max({1.0, side, pairwise_distances(c)(1, 2)}));
}

TEST(VrFiltration, DimCapZeroIsVertexSet) {
  Rng rng(2);
  const PointCloud c = testing::random_cloud(rng, 12, 2);
  const Filtration f = build_vr_filtration(c, 0, 10.0);
  ASSERT_EQ(f.size(), 12u);
  for (const Simplex& s : f.simplices()) {
    EXPECT_EQ(s.dim(), 0);
    EXPECT_EQ(s.value, 0.0);
  }
}

TEST(VrFiltration, MatchesSubsetEnumeration) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = testing::random_size(rng, 2, 12);
    const PointCloud c = testing::random_cloud(rng, n, 2);
    const DistanceMatrix d = pairwise_distances(c);
    const int cap = static_cast<int>(rng.next_u64() % 4);
    const double t = rng.uniform(0.1, 3.0);
    const Filtration f = build_vr_filtration(d, cap, t);
    const auto expected = testing::brute_vr_simplices(d, cap, t);
    ASSERT_EQ(f.size(), expected.size());
    for (std::size_t k = 0; k < f.size(); ++k) EXPECT_EQ(f[k], expected[k]);
  }
}

TEST(VrFiltration, ClosureMonotonicityAndPairRule) {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const PointCloud c = testing::random_cloud(rng, testing::random_size(rng, 5, 25), 3);
    const DistanceMatrix d = pairwise_distances(c);
    const Filtration f = build_vr_filtration(d, 3, scale_bounds(d).t_max);
    std::map<std::vector<Vertex>, std::size_t> position;
    for (std::size_t k = 0; k < f.size(); ++k) position[f[k].vertices] = k;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const Simplex& s = f[k];
      EXPECT_EQ(s.value, simplex_diameter(s.vertices, d));
      EXPECT_LE(s.value, f.t_max());
      for (std::size_t a = 0; a < s.vertices.size(); ++a) {
        for (std::size_t b = a + 1; b < s.vertices.size(); ++b) {
          EXPECT_LE(d(s.vertices[a], s.vertices[b]), s.value);
        }
      }
      if (s.vertices.size() < 2) continue;
      for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
        std::vector<Vertex> face = s.vertices;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        auto it = position.find(face);
        ASSERT_NE(it, position.end());
        EXPECT_LT(it->second, k);
        EXPECT_LE(f[it->second].value, s.value);
      }
    }
  }
}

TEST(VrFiltration, Deterministic) {
  const PointCloud c = sample_torus(40, 2.0, 0.5, 3);
  const Filtration a = build_vr_filtration(c, 2, 1.5);
  const Filtration b = build_vr_filtration(c, 2, 1.5);
  EXPECT_TRUE(std::equal(a.simplices().begin(), a.simplices().end(), b.simplices().begin(),
                         b.simplices().end()));
}

TEST(VrFiltration, BudgetExceeded) {
  const PointCloud c = sample_circle(30, 1.0, 0.0, 0);
  try {
    build_vr_filtration(c, 2, 2.0, 1000);
    FAIL() << "budget not enforced";
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("1000"), std::string::npos);
  }
}

TEST(VrFiltration, BadArguments) {
  const PointCloud c = PointCloud::from_rows({{0}, {1}});
  EXPECT_THROW(build_vr_filtration(c, -1, 1.0), InputError);
  EXPECT_THROW(build_vr_filtration(c, 1, 0.0), InputError);
}

TEST(SimplexDiameter, Examples) {
  const DistanceMatrix d = pairwise_distances(PointCloud::from_rows({{0}, {1}, {3}}));
  const std::vector<Vertex> one{2}, edge{0, 2}, all{0, 1, 2}, bad{0, 7};
  EXPECT_EQ(simplex_diameter(one, d), 0.0);
  EXPECT_EQ(simplex_diameter(edge, d), 3.0);
  EXPECT_EQ(simplex_diameter(all, d), 3.0);
  EXPECT_THROW(simplex_diameter(bad, d), InputError);
}

TEST(Filtration, ValidatingConstructor) {
  EXPECT_NO_THROW(Filtration({{{0}, 0.0}, {{1}, 0.0}, {{0, 1}, 1.0}}, 1.0, 1));
  EXPECT_THROW(Filtration({{{0}, 0.0}, {{0, 1}, 1.0}}, 1.0, 1), ValidationError);
  EXPECT_THROW(Filtration({{{0}, 0.0}, {{1}, 0.0}, {{0, 1}, 2.0}}, 1.0, 1), ValidationError);
  EXPECT_THROW(Filtration({{{0}, 0.5}, {{1}, 0.0}, {{0, 1}, 0.2}}, 1.0, 1), ValidationError);
  EXPECT_THROW(Filtration({{{0}, 0.0}, {{1}, 0.0}, {{1, 0}, 1.0}}, 1.0, 1), ValidationError);
}

TEST(Filtration, DebugDump) {
  const Filtration f = build_vr_filtration(PointCloud::from_rows({{0}, {1}, {3}}), 1, 2.0);
  std::ostringstream out;
  write_filtration(out, f);
  EXPECT_EQ(out.str(), "0 0 0\n0 0 1\n0 0 2\n1 1 0 1\n2 1 1 2\n");
}

}  // namespace
}  // namespace topent
