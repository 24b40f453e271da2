#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rauzy/dual.hpp"
#include "rauzy/lattice.hpp"

using namespace rauzy;

namespace {
Face F(std::int64_t x, std::int64_t y, std::int64_t z, int i) { return Face({x, y, z}, i); }
}  // namespace

TEST(FaceBox, Examples) {
  EXPECT_EQ(face_box(F(0, 0, 0, 1)), (FaceBox{Interval{0, 0}, Interval{0, 1}, Interval{0, 1}}));
  EXPECT_EQ(face_box(F(1, 0, -1, 1)), (FaceBox{Interval{1, 1}, Interval{0, 1}, Interval{-1, 0}}));
  EXPECT_EQ(face_box(F(0, 0, 0, 3)), (FaceBox{Interval{0, 1}, Interval{0, 1}, Interval{0, 0}}));
}

TEST(FaceBox, RejectsBadKind) { EXPECT_THROW(F(0, 0, 0, 4), std::invalid_argument); }

TEST(FacesIntersect, Examples) {
  EXPECT_TRUE(faces_intersect(F(0, 0, 0, 1), F(0, 0, 0, 2)));
  EXPECT_FALSE(faces_intersect(F(0, 0, 0, 1), F(3, 0, 0, 1)));
  EXPECT_TRUE(faces_intersect(F(0, 0, 0, 1), F(0, 1, 1, 2)));
  EXPECT_FALSE(faces_share_edge(F(0, 0, 0, 1), F(0, 1, 1, 2)));  // corner only
  EXPECT_TRUE(faces_share_edge(F(0, 0, 0, 1), F(0, 0, 0, 2)));
}

TEST(FacesIntersect, AgreesWithSharedCornerOracle) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 5000; ++k) {
    const Face f = oracle::random_face(rng, 2), g = oracle::random_face(rng, 2);
    EXPECT_EQ(faces_intersect(f, g), oracle::faces_meet(f, g)) << f << ' ' << g;
  }
}

TEST(FacesIntersect, SymmetricReflexiveTranslationInvariant) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 2000; ++k) {
    const Face f = oracle::random_face(rng, 2), g = oracle::random_face(rng, 2);
    const IVec3 t = oracle::random_face(rng, 100).pos;
    EXPECT_TRUE(faces_intersect(f, f));
    EXPECT_EQ(faces_intersect(f, g), faces_intersect(g, f));
    EXPECT_EQ(faces_intersect(f, g), faces_intersect(Face(f.pos + t, f.kind), Face(g.pos + t, g.kind)));
  }
}

TEST(DiscretePlane, SeedFacesBelongToEveryPlane) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::int64_t> c(1, 50);
  for (int k = 0; k < 100; ++k) {
    const auto plane = PlaneSpec::exact({c(rng), c(rng), c(rng)});
    for (const auto& f : Pattern::seed()) EXPECT_TRUE(in_discrete_plane(f, plane));
  }
  const auto approx = PlaneSpec::approximate({1.8392867552141611 * 1.8392867552141611, 1.8392867552141611, 1});
  for (const auto& f : Pattern::seed()) {
    const auto m = in_discrete_plane(f, approx);
    EXPECT_TRUE(m.inside);
    EXPECT_TRUE(m.approximate);
  }
}

TEST(DiscretePlane, BoundaryCases) {
  const auto v = PlaneSpec::exact({1, 1, 1});
  EXPECT_FALSE(in_discrete_plane(F(1, 0, 0, 1), v));
  EXPECT_FALSE(in_discrete_plane(F(0, 0, -1, 3), v));
  EXPECT_TRUE(in_discrete_plane(F(1, 0, -1, 2), v));
  EXPECT_FALSE(in_discrete_plane(F(1, 0, -1, 2), v).approximate);
  EXPECT_THROW(PlaneSpec::exact({1, 0, 1}), std::invalid_argument);
}

TEST(DiscretePlane, InvariantUnderPositiveScaling) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::int64_t> c(1, 20);
  for (int k = 0; k < 200; ++k) {
    const IVec3 v{c(rng), c(rng), c(rng)};
    const std::int64_t s = c(rng);
    const auto p = PlaneSpec::exact(v), q = PlaneSpec::exact({v[0] * s, v[1] * s, v[2] * s});
    for (int j = 0; j < 20; ++j) {
      const Face f = oracle::random_face(rng, 6);
      EXPECT_EQ(in_discrete_plane(f, p).inside, in_discrete_plane(f, q).inside);
    }
  }
}

TEST(Pattern, SetSemantics) {
  const Pattern p{F(0, 0, 0, 1), F(0, 0, 0, 1), F(0, 0, 0, 2)};
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.united(Pattern::seed()), Pattern::seed());
  EXPECT_TRUE(Pattern::seed().includes(p));
}

TEST(Translate, Examples) {
  EXPECT_EQ(translate(Pattern::seed(), {0, 0, 0}), Pattern::seed());
  EXPECT_EQ(translate(Pattern{F(0, 0, 0, 1)}, {1, 0, -1}), Pattern{F(1, 0, -1, 1)});
  const IVec3 t{3, -2, 7};
  EXPECT_EQ(translate(translate(Pattern::seed(), t), -t), Pattern::seed());
}

TEST(Canonical, SmallestFaceAtOrigin) {
  const Pattern p{F(4, 2, 1, 2), F(5, 2, 1, 2), F(4, 2, 1, 1)};
  const Pattern c = canonical(p);
  EXPECT_EQ(c[0], F(0, 0, 0, 1));
  EXPECT_EQ(canonical(translate(p, {-9, 3, 3})), c);
}

TEST(PatternConnected, Examples) {
  EXPECT_TRUE(pattern_connected(Pattern::seed()));
  const auto split = pattern_components(Pattern{F(0, 0, 0, 1), F(5, 5, 5, 1)});
  EXPECT_FALSE(split.connected);
  EXPECT_EQ(split.components.size(), 2u);
  const auto tri = build_dual(oracle::tribonacci());
  EXPECT_TRUE(pattern_connected(apply(tri, Pattern::seed())));
}

TEST(PatternConnected, EmptyIsVacuouslyConnected) {
  const auto c = pattern_components(Pattern{});
  EXPECT_TRUE(c.connected);
  EXPECT_TRUE(c.empty);
}

TEST(PatternConnected, AgreesWithOracleAndTranslation) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 300; ++k) {
    std::vector<Face> faces;
    const int n = 2 + int(rng() % 60);
    for (int j = 0; j < n; ++j) faces.push_back(oracle::random_face(rng, 3));
    const Pattern p(faces);
    const auto c = pattern_components(p);
    EXPECT_EQ(c.components.size(), oracle::component_count(p));
    EXPECT_EQ(c.connected, pattern_connected(translate(p, {11, -4, 2})));
  }
}

TEST(DiscretePlaneWindow, FacesLieInPlaneAndAreConnected) {
  for (const IVec3 v : {IVec3{1, 1, 1}, IVec3{1, 2, 3}, IVec3{2, 3, 5}}) {
    const auto plane = PlaneSpec::exact(v);
    const Pattern w = discrete_plane_window(plane, 200);
    EXPECT_EQ(w.size(), 200u);
    EXPECT_TRUE(in_discrete_plane(w, plane));
    EXPECT_TRUE(w.includes(Pattern::seed()));
    EXPECT_TRUE(pattern_connected(w));
  }
}
