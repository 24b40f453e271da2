#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rauzy/fractal.hpp"

using namespace rauzy;

namespace {

const Substitution kTrib("12", "13", "1");
const Substitution kSym("3", "23", "123");

double dist(const Point2& a, const Point2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace

TEST(SpectralFrame, TribonacciResidualsAndPositivity) {
  const auto f = spectral_frame(kTrib);
  EXPECT_NEAR(f.beta, 1.8392867552141611, 1e-12);
  EXPECT_LT(f.residual_u, 1e-10);
  EXPECT_LT(f.residual_v, 1e-10);
  for (int k = 0; k < 3; ++k) {
    EXPECT_GT(f.u[k], 0);
    EXPECT_GT(f.v[k], 0);
  }
  EXPECT_NEAR(f.u[0] + f.u[1] + f.u[2], 1.0, 1e-12);
  EXPECT_NEAR(f.v[0] + f.v[1] + f.v[2], 1.0, 1e-12);
  // basis spans the plane orthogonal to v
  for (const auto& b : f.basis) EXPECT_NEAR(vec::dot(b, f.v), 0.0, 1e-10);
  EXPECT_GT(vec::norm(vec::cross(f.basis[0], f.basis[1])), 1e-3);
}

TEST(SpectralFrame, SymmetricMatrixHasEqualEigenvectors) {
  const auto f = spectral_frame(kSym);
  EXPECT_NEAR(f.beta, 2.2469796037174671, 1e-12);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(f.u[k], f.v[k], 1e-12);
}

TEST(SpectralFrame, RejectsNonPisot) {
  EXPECT_THROW(spectral_frame(Substitution("12", "2", "3")), NotPisotError);
  EXPECT_THROW(spectral_frame(Substitution::identity()), NotPisotError);
  try {
    spectral_frame(Substitution("1", "12", "123"));
    FAIL();
  } catch (const NotPisotError& e) {
    EXPECT_FALSE(e.report().is_pisot_irreducible);
  }
}

TEST(Projection, ExpandingDirectionMapsToOrigin) {
  const auto f = spectral_frame(kTrib);
  const auto p = project(f, f.u);
  EXPECT_NEAR(p[0], 0, 1e-12);
  EXPECT_NEAR(p[1], 0, 1e-12);
}

TEST(Projection, LinearAndIdentityOnPlane) {
  const auto f = spectral_frame(kTrib);
  const Vec3 x{0.3, -1.2, 2.5}, y{-4, 1, 0.5};
  const auto px = project3(f, x), py = project3(f, y);
  const auto pxy = project3(f, {x[0] + 2 * y[0], x[1] + 2 * y[1], x[2] + 2 * y[2]});
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(pxy[k], px[k] + 2 * py[k], 1e-12);
  const auto ppx = project3(f, px);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(ppx[k], px[k], 1e-12);
  EXPECT_NEAR(vec::dot(px, f.v), 0, 1e-12);
}

TEST(Projection, CommutesWithMatrixAndContracts) {
  for (const auto& s : {kTrib, kSym, arnoux_rauzy_product({1, 2, 3}), arnoux_rauzy_product({3, 1, 2, 2})}) {
    const auto f = spectral_frame(s);
    const double rho = f.report.conjugate_moduli[0];
    for (const Vec3 x : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0.2, -0.7, 1.3}}) {
      const auto a = project3(f, vec::mul(f.matrix, x));
      const auto b = vec::mul(f.matrix, project3(f, x));
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(a[k], b[k], 1e-10);
      const double n0 = vec::norm(project3(f, x)), n1 = vec::norm(b);
      EXPECT_LT(n1, n0);
      if (f.report.conjugates_complex) {
        // similarity in frame coordinates
        const auto p0 = plane_coordinates(f, project3(f, x)), p1 = plane_coordinates(f, b);
        EXPECT_NEAR(std::hypot(p1[0], p1[1]), rho * std::hypot(p0[0], p0[1]), 1e-10);
      }
    }
  }
}

TEST(Approximant, Counts) {
  EXPECT_EQ(approximant(kTrib, 0).polygons.size(), 3u);
  EXPECT_EQ(approximant(kTrib, 1).polygons.size(), 5u);
  for (const auto& s : {kTrib, arnoux_rauzy_product({1, 2, 3}), arnoux_rauzy_product({2, 1, 3, 3})}) {
    const auto m = incidence_matrix(s);
    for (std::size_t n = 0; n <= 6; ++n) {
      const auto a = approximant(s, n);
      EXPECT_EQ(std::int64_t(a.polygons.size()), power(m, n).sum()) << n;
      EXPECT_EQ(a.polygons.size(), a.source_faces.size());
      EXPECT_EQ(a.level, n);
    }
  }
  EXPECT_EQ(std::int64_t(approximant(kTrib, 8).polygons.size()), power(incidence_matrix(kTrib), 8).sum());
}

TEST(Approximant, SourceFacesGrowMonotonically) {
  // E1*(s)(U) contains U for the Tribonacci substitution
  Pattern prev = approximant(kTrib, 0).source_faces;
  for (std::size_t n = 1; n <= 6; ++n) {
    const Pattern cur = approximant(kTrib, n).source_faces;
    EXPECT_TRUE(cur.includes(prev));
    prev = cur;
  }
}

TEST(Approximant, PolygonsAreProjectedCorners) {
  const auto f = spectral_frame(kTrib);
  const auto a = approximant(kTrib, 2, false);
  for (std::size_t k = 0; k < a.polygons.size(); ++k) {
    const auto c = face_corners(a.source_faces[k]);
    for (int j = 0; j < 4; ++j) {
      const auto p = project(f, vec::of(c[j]));
      EXPECT_NEAR(dist(p, a.polygons[k][j]), 0.0, 1e-12);
    }
  }
}

TEST(Approximant, Connectivity) {
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_TRUE(approximant_connected(approximant(kTrib, n)));
  EXPECT_FALSE(approximant_connected(approximant(Substitution("13", "21", "32113"), 2)));
}

TEST(Hausdorff, SelfDistanceIsZero) {
  const auto a = approximant(kTrib, 4);
  const auto h = hausdorff_distance(a, a, 0.01);
  EXPECT_NEAR(h.distance, 0.0, 1e-12);
  EXPECT_NEAR(h.error_bound, 0.01 * std::sqrt(2.0), 1e-15);
  EXPECT_GT(h.samples, 0u);
}

TEST(Hausdorff, TranslationDistance) {
  const auto a = approximant(kTrib, 3);
  auto b = a;
  for (auto& q : b.polygons)
    for (auto& p : q) p = {p[0] + 0.03, p[1] - 0.04};
  const auto h = hausdorff_distance(a, b, 0.005);
  EXPECT_LE(h.distance, 0.05 + 1e-12);
  EXPECT_GE(h.distance, 0.0);
  // a disjoint single square shifted by t is at distance |t|
  Approximant s, t;
  s.polygons = {Quad{Point2{0, 0}, Point2{1, 0}, Point2{1, 1}, Point2{0, 1}}};
  t.polygons = {Quad{Point2{3, 4}, Point2{4, 4}, Point2{4, 5}, Point2{3, 5}}};
  EXPECT_NEAR(hausdorff_distance(s, t, 0.05).distance, 5.0, 1e-9);
}

TEST(Hausdorff, TribonacciDistancesDecrease) {
  double prev = 1e9;
  Approximant a = approximant(kTrib, 1);
  for (std::size_t n = 1; n <= 6; ++n) {
    Approximant b = approximant(kTrib, n + 1);
    const double d = hausdorff_distance(a, b, 0.01).distance;
    EXPECT_LT(d, prev) << n;
    prev = d;
    a = std::move(b);
  }
}

TEST(Hausdorff, RejectsNonPositiveResolution) {
  const auto a = approximant(kTrib, 1);
  EXPECT_THROW(hausdorff_distance(a, a, 0.0), std::invalid_argument);
  EXPECT_THROW(hausdorff_distance(a, a, -1.0), std::invalid_argument);
}
