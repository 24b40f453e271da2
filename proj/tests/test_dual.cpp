#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "rauzy/dual.hpp"

using namespace rauzy;

namespace {
Face F(std::int64_t x, std::int64_t y, std::int64_t z, int i) { return Face({x, y, z}, i); }
const Pattern kU = Pattern::seed();
}  // namespace

TEST(BuildDual, TribonacciWorkedExample) {
  const auto d = build_dual(oracle::tribonacci());
  EXPECT_EQ(d.base_image(1), (Pattern{F(1, 0, -1, 1), F(0, 1, -1, 2), F(0, 0, 0, 3)}));
  EXPECT_EQ(d.base_image(2), (Pattern{F(0, 0, 0, 1)}));
  EXPECT_EQ(d.base_image(3), (Pattern{F(0, 0, 0, 2)}));
}

TEST(BuildDual, Sigma1) {
  const auto d = build_dual(arnoux_rauzy(Letter(1)));
  EXPECT_EQ(d.inverse(), IMat3({{{1, -1, -1}, {0, 1, 0}, {0, 0, 1}}}));
  EXPECT_EQ(d.base_image(1), kU);
  EXPECT_EQ(d.base_image(2), (Pattern{F(1, 0, 0, 2)}));
  EXPECT_EQ(d.base_image(3), (Pattern{F(1, 0, 0, 3)}));
}

TEST(BuildDual, Identity) {
  const auto d = build_dual(Substitution::identity());
  for (int i = 1; i <= 3; ++i) EXPECT_EQ(d.base_image(i), Pattern{F(0, 0, 0, i)});
}

TEST(BuildDual, RejectsNonUnimodular) {
  EXPECT_THROW(build_dual(Substitution("11", "2", "3")), std::domain_error);
}

TEST(BuildDual, InverseAndRowSumInvariants) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 200; ++k) {
    const auto s = oracle::random_unimodular(rng);
    const auto d = build_dual(s);
    EXPECT_EQ(d.inverse() * d.matrix(), IMat3::identity());
    for (int i = 1; i <= 3; ++i) {
      EXPECT_FALSE(d.base_image(i).empty());
      EXPECT_EQ(std::int64_t(d.base_image(i).size()), d.matrix().row_sum(i - 1));
    }
  }
}

TEST(Apply, Examples) {
  const auto tri = build_dual(oracle::tribonacci());
  const Pattern image = apply(tri, kU);
  EXPECT_EQ(image.size(), 5u);
  EXPECT_EQ(image, tri.base_image(1).united(Pattern{F(0, 0, 0, 1), F(0, 0, 0, 2)}));
  EXPECT_TRUE(apply(tri, Pattern{}).empty());
  const auto s1 = build_dual(arnoux_rauzy(Letter(1)));
  EXPECT_EQ(apply(s1, kU), kU.united(Pattern{F(1, 0, 0, 2), F(1, 0, 0, 3)}));
}

TEST(Apply, MatchesDefinitionOnRandomFaces) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 100; ++k) {
    const auto s = oracle::random_unimodular(rng);
    const auto d = build_dual(s);
    for (int j = 0; j < 10; ++j) {
      const Face f = oracle::random_face(rng, 20);
      EXPECT_EQ(apply(d, Pattern{f}), Pattern(oracle::dual_of_face(s, f)));
    }
  }
}

TEST(Apply, FaceCountIsRowSum) {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 100; ++k) {
    const auto d = build_dual(oracle::random_unimodular(rng));
    const Face f = oracle::random_face(rng, 50);
    EXPECT_EQ(std::int64_t(apply(d, Pattern{f}).size()), d.matrix().row_sum(f.kind - 1));
  }
}

TEST(Apply, TranslationEquivariance) {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 100; ++k) {
    const auto d = build_dual(oracle::random_unimodular(rng));
    std::vector<Face> faces;
    for (int j = 0; j < 6; ++j) faces.push_back(oracle::random_face(rng, 4));
    const Pattern p(faces);
    const IVec3 t = oracle::random_face(rng, 10).pos;
    EXPECT_EQ(apply(d, translate(p, t)), translate(apply(d, p), d.inverse() * t));
  }
}

TEST(Apply, OverflowIsReported) {
  const auto d = build_dual(oracle::tribonacci());
  EXPECT_THROW(apply(d, Pattern{F(INT64_MAX / 2 + 1, -(INT64_MAX / 2 + 1), 0, 1)}), OverflowError);
}

TEST(ApplyProduct, SingletonEqualsApply) {
  const auto d = build_dual(oracle::tribonacci());
  const std::vector<DualSubstitution> one{d};
  EXPECT_EQ(apply_product(one, kU), apply(d, kU));
}

TEST(ApplyProduct, EqualsDualOfComposedChain) {
  // all products of length <= 3 over the Arnoux-Rauzy generators
  const auto duals = oracle::ar_duals();
  for (int len = 1; len <= 3; ++len) {
    std::vector<int> idx(len, 1);
    while (true) {
      std::vector<DualSubstitution> seq;
      for (int i : idx) seq.push_back(duals[i - 1]);
      const auto composed = build_dual(arnoux_rauzy_product(idx));
      EXPECT_EQ(apply_product(seq, kU), apply(composed, kU));
      // every split point gives the same result
      for (int cut = 0; cut <= len; ++cut) {
        std::vector<int> head(idx.begin(), idx.begin() + cut), tail(idx.begin() + cut, idx.end());
        Pattern p = kU;
        if (!head.empty()) p = apply(build_dual(arnoux_rauzy_product(head)), p);
        if (!tail.empty()) p = apply(build_dual(arnoux_rauzy_product(tail)), p);
        EXPECT_EQ(p, apply(composed, kU));
      }
      int k = len - 1;
      while (k >= 0 && idx[k] == 3) idx[k--] = 1;
      if (k < 0) break;
      ++idx[k];
    }
  }
}

TEST(ApplyProduct, FaceCountBookkeeping) {
  const auto duals = oracle::ar_duals();
  const Pattern image = apply_product(duals, kU);
  // counts by type evolve by the transposed matrices, so the total is the
  // entry sum of the product's matrix
  EXPECT_EQ(std::int64_t(image.size()), incidence_matrix(arnoux_rauzy_product({1, 2, 3})).sum());
}

TEST(ApplyProduct, SeedMonotonicityForArnouxRauzy) {
  for (const auto& d : oracle::ar_duals()) EXPECT_TRUE(apply(d, kU).includes(kU));
}

TEST(CheckPlaneImage, TribonacciRationalProxy) {
  // (beta^2, beta, 1) scaled by 100 and rounded
  const auto d = build_dual(oracle::tribonacci());
  const auto r = check_plane_image(d, PlaneSpec::exact({338, 184, 100}), kU);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.image_faces, 5u);
}

TEST(CheckPlaneImage, EmptyWindowPasses) {
  const auto d = build_dual(oracle::tribonacci());
  const auto r = check_plane_image(d, PlaneSpec::exact({1, 1, 1}), Pattern{});
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.image_faces, 0u);
}

TEST(CheckPlaneImage, Sigma1OnFiftyFaces) {
  const auto plane = PlaneSpec::exact({1, 1, 1});
  const Pattern window = discrete_plane_window(plane, 50);
  const auto r = check_plane_image(build_dual(arnoux_rauzy(Letter(1))), plane, window);
  EXPECT_TRUE(r.outside.empty());
  EXPECT_TRUE(r.multiply_attributed.empty());
  EXPECT_EQ(r.image_normal, (IVec3{1, 2, 2}));
}

TEST(CheckPlaneImage, WindowOutsidePlaneIsRejected) {
  const auto d = build_dual(oracle::tribonacci());
  EXPECT_THROW(check_plane_image(d, PlaneSpec::exact({1, 1, 1}), Pattern{F(1, 0, 0, 1)}),
               std::invalid_argument);
}

TEST(CheckPlaneImage, RandomSubstitutionsKeepPlanesDisjointly) {
  std::mt19937_64 rng(35);
  for (int k = 0; k < 30; ++k) {
    const auto d = build_dual(oracle::random_unimodular(rng, 3));
    for (const IVec3 v : {IVec3{1, 1, 1}, IVec3{1, 2, 3}, IVec3{2, 3, 5}}) {
      const auto plane = PlaneSpec::exact(v);
      EXPECT_TRUE(check_plane_image(d, plane, discrete_plane_window(plane, 60)).ok());
    }
  }
}
