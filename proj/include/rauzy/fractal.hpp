#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rauzy/dual.hpp"
#include "rauzy/integer.hpp"
#include "rauzy/lattice.hpp"
#include "rauzy/spectral.hpp"
#include "rauzy/substitution.hpp"

namespace rauzy {

using Vec3 = std::array<double, 3>;
using Point2 = std::array<double, 2>;

namespace vec {
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline Vec3 minus(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 of(const IVec3& x) { return {double(x[0]), double(x[1]), double(x[2])}; }
inline Vec3 mul(const IMat3& m, const Vec3& x) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i) r[i] = m(i, 0) * x[0] + m(i, 1) * x[1] + m(i, 2) * x[2];
  return r;
}
}  // namespace vec

class NotPisotError : public std::domain_error {
 public:
  NotPisotError(const std::string& what, SpectralReport report)
      : std::domain_error(what), report_(std::move(report)) {}
  const SpectralReport& report() const { return report_; }

 private:
  SpectralReport report_;
};

struct SpectralFrame {
  IMat3 matrix;
  double beta = 0;
  Vec3 u{};  // M u = beta u, unit sum
  Vec3 v{};  // M^T v = beta v, unit sum; normal of the contracting plane
  std::array<Vec3, 2> basis{};  // spans the contracting plane, see contracting_basis
  double residual_u = 0;
  double residual_v = 0;
  SpectralReport report;
};

namespace detail {

// Kernel direction of the rank-2 matrix a: the largest cross product of two
// rows.
inline Vec3 kernel_direction(const std::array<Vec3, 3>& a) {
  Vec3 best{};
  double best_norm = -1;
  for (int r = 0; r < 3; ++r) {
    const Vec3 c = vec::cross(a[r], a[(r + 1) % 3]);
    const double n = vec::norm(c);
    if (n > best_norm) {
      best_norm = n;
      best = c;
    }
  }
  return best;
}

inline Vec3 perron_vector(const IMat3& m, double beta) {
  std::array<Vec3, 3> rows;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) rows[r][c] = m(r, c) - (r == c ? beta : 0.0);
  Vec3 x = kernel_direction(rows);
  const double s = x[0] + x[1] + x[2];
  x = vec::scaled(x, 1.0 / s);
  // one inverse-iteration style polish: x <- M x / beta, renormalized
  for (int it = 0; it < 3; ++it) {
    Vec3 y = vec::scaled(vec::mul(m, x), 1.0 / beta);
    const double t = y[0] + y[1] + y[2];
    x = vec::scaled(y, 1.0 / t);
  }
  return x;
}

using CVec3 = std::array<std::complex<double>, 3>;

inline CVec3 complex_kernel(const IMat3& m, std::complex<double> lambda) {
  std::array<CVec3, 3> a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a[r][c] = double(m(r, c)) - (r == c ? lambda : 0.0);
  CVec3 best{};
  double best_norm = -1;
  for (int r = 0; r < 3; ++r) {
    const CVec3& x = a[r];
    const CVec3& y = a[(r + 1) % 3];
    const CVec3 c{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
    const double n = std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]);
    if (n > best_norm) {
      best_norm = n;
      best = c;
    }
  }
  return best;
}

// Basis of the contracting plane in which M acts as a similarity (complex
// conjugates) or diagonally (real conjugates): the real and imaginary parts
// of an eigenvector, scaled so |Re w|^2 + |Im w|^2 = 2.
inline std::array<Vec3, 2> contracting_basis(const IMat3& m, const SpectralReport& r) {
  const double b = r.char_poly.c2 + r.beta;
  const double c = r.char_poly.c1 + r.beta * b;
  const double disc = b * b - 4 * c;
  if (disc < 0) {
    const std::complex<double> lambda(-b / 2, std::sqrt(-disc) / 2);
    CVec3 w = complex_kernel(m, lambda);
    double n2 = 0;
    for (const auto& z : w) n2 += std::norm(z);
    const double s = std::sqrt(2.0 / n2);
    Vec3 re{}, im{};
    for (int k = 0; k < 3; ++k) {
      re[k] = w[k].real() * s;
      im[k] = w[k].imag() * s;
    }
    return {re, im};
  }
  std::array<Vec3, 2> out;
  const double root = std::sqrt(disc);
  const double lambdas[2] = {(-b + root) / 2, (-b - root) / 2};
  for (int k = 0; k < 2; ++k) {
    std::array<Vec3, 3> rows;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) rows[i][j] = m(i, j) - (i == j ? lambdas[k] : 0.0);
    Vec3 x = kernel_direction(rows);
    x = vec::scaled(x, 1.0 / vec::norm(x));
    const double sum = x[0] + x[1] + x[2];
    const double lead = std::fabs(sum) > 1e-9 ? sum : (std::fabs(x[0]) > 1e-9 ? x[0] : x[1]);
    if (lead < 0) x = vec::scaled(x, -1.0);
    out[k] = x;
  }
  return out;
}

inline double residual(const IMat3& m, const Vec3& x, double beta) {
  return vec::norm(vec::minus(vec::mul(m, x), vec::scaled(x, beta)));
}

}  // namespace detail

inline SpectralFrame spectral_frame(const IMat3& m, double tolerance = 1e-10) {
  SpectralFrame f;
  f.matrix = m;
  f.report = spectral_report(m);
  if (!f.report.is_pisot_irreducible)
    throw NotPisotError("substitution is not unimodular Pisot irreducible", f.report);
  f.beta = f.report.beta;
  f.u = detail::perron_vector(m, f.beta);
  f.v = detail::perron_vector(m.transposed(), f.beta);
  for (int k = 0; k < 3; ++k)
    if (!(f.u[k] > 0) || !(f.v[k] > 0))
      throw std::runtime_error("Perron eigenvector is not strictly positive");
  f.residual_u = detail::residual(m, f.u, f.beta);
  f.residual_v = detail::residual(m.transposed(), f.v, f.beta);
  if (f.residual_u > tolerance || f.residual_v > tolerance)
    throw std::runtime_error("eigenvector residual above tolerance");
  f.basis = detail::contracting_basis(m, f.report);
  return f;
}

inline SpectralFrame spectral_frame(const Substitution& s, double tolerance = 1e-10) {
  return spectral_frame(incidence_matrix(s), tolerance);
}

// pi_c(x) = x - (<x, v> / <u, v>) u, still in R^3.
inline Vec3 project3(const SpectralFrame& f, const Vec3& x) {
  return vec::minus(x, vec::scaled(f.u, vec::dot(x, f.v) / vec::dot(f.u, f.v)));
}

// Coordinates of p (a point of the contracting plane) in the frame basis.
inline Point2 plane_coordinates(const SpectralFrame& f, const Vec3& p) {
  const auto& [a, b] = f.basis;
  const double g11 = vec::dot(a, a), g12 = vec::dot(a, b), g22 = vec::dot(b, b);
  const double r1 = vec::dot(p, a), r2 = vec::dot(p, b);
  const double det = g11 * g22 - g12 * g12;
  return {(g22 * r1 - g12 * r2) / det, (g11 * r2 - g12 * r1) / det};
}

inline Point2 project(const SpectralFrame& f, const Vec3& x) {
  return plane_coordinates(f, project3(f, x));
}

using Quad = std::array<Point2, 4>;

struct Approximant {
  std::size_t level = 0;
  bool renormalized = false;
  std::vector<Quad> polygons;  // one per source face, same order
  Pattern source_faces;
};

// Corners of a face in cyclic order.
inline std::array<IVec3, 4> face_corners(const Face& f) {
  const int a = f.kind == 1 ? 1 : 0;
  const int b = f.kind == 3 ? 1 : 2;
  IVec3 ea{}, eb{};
  ea[a] = 1;
  eb[b] = 1;
  return {f.pos, f.pos + ea, f.pos + ea + eb, f.pos + eb};
}

// Projects the faces of a pattern; with `renorm_power` = n each projected
// corner is mapped n times by M.
inline Approximant project_pattern(const SpectralFrame& frame, const Pattern& faces,
                                   std::size_t renorm_power, bool renormalize) {
  Approximant a;
  a.renormalized = renormalize;
  a.source_faces = faces;
  a.polygons.reserve(faces.size());
  for (const auto& f : faces) {
    Quad q;
    const auto corners = face_corners(f);
    for (int k = 0; k < 4; ++k) {
      Vec3 p = project3(frame, vec::of(corners[k]));
      if (renormalize)
        for (std::size_t r = 0; r < renorm_power; ++r) p = vec::mul(frame.matrix, p);
      q[k] = plane_coordinates(frame, p);
    }
    a.polygons.push_back(q);
  }
  return a;
}

// D_n = M^n o pi_c o E1*(s)^n(U).
inline Approximant approximant(const Substitution& s, std::size_t n, bool renormalize = true) {
  const SpectralFrame frame = spectral_frame(s);
  const DualSubstitution d = build_dual(s);
  Pattern faces = Pattern::seed();
  for (std::size_t k = 0; k < n; ++k) faces = apply(d, faces);
  Approximant a = project_pattern(frame, faces, n, renormalize);
  a.level = n;
  return a;
}

// Certified statement is 3D connectivity of the source faces; connectivity
// of the projection follows since projection is continuous.
inline bool approximant_connected(const Approximant& a) {
  return pattern_connected(a.source_faces);
}

struct HausdorffResult {
  double distance = 0;
  double error_bound = 0;  // resolution * sqrt(2)
  std::size_t samples = 0;
};

namespace detail {

inline double cross2(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline double segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = a[0] + t * dx - p[0], ey = a[1] + t * dy - p[1];
  return std::sqrt(ex * ex + ey * ey);
}

// Distance from p to the filled convex quadrilateral q.
inline double quad_distance(const Point2& p, const Quad& q) {
  bool pos = false, neg = false;
  for (int k = 0; k < 4; ++k) {
    const double c = cross2(q[k], q[(k + 1) % 4], p);
    if (c > 0) pos = true;
    if (c < 0) neg = true;
  }
  if (!(pos && neg)) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) d = std::min(d, segment_distance(p, q[k], q[(k + 1) % 4]));
  return d;
}

// Uniform bucket grid over quadrilateral bounding boxes.
class QuadIndex {
 public:
  QuadIndex(const std::vector<Quad>& quads, double cell) : quads_(quads), cell_(cell) {
    for (std::size_t k = 0; k < quads.size(); ++k) {
      double x0 = quads[k][0][0], x1 = x0, y0 = quads[k][0][1], y1 = y0;
      for (const auto& p : quads[k]) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
      }
      for (auto i = key(x0); i <= key(x1); ++i)
        for (auto j = key(y0); j <= key(y1); ++j) cells_[pack(i, j)].push_back(k);
    }
  }

  double distance(const Point2& p) const {
    const auto ci = key(p[0]), cj = key(p[1]);
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t ring = 0;; ++ring) {
      for (auto i = ci - ring; i <= ci + ring; ++i)
        for (auto j = cj - ring; j <= cj + ring; ++j) {
          if (std::max(std::llabs(i - ci), std::llabs(j - cj)) != ring) continue;
          auto it = cells_.find(pack(i, j));
          if (it == cells_.end()) continue;
          for (auto k : it->second) best = std::min(best, quad_distance(p, quads_[k]));
        }
      // every point within ring * cell of p lies in the scanned cells
      if (best <= double(ring) * cell_ || ring > 1000000) return best;
    }
  }

 private:
  std::int64_t key(double x) const { return static_cast<std::int64_t>(std::floor(x / cell_)); }
  static std::int64_t pack(std::int64_t i, std::int64_t j) { return i * 4000037 + j; }

  const std::vector<Quad>& quads_;
  double cell_;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> cells_;
};

// Sample points of a convex quadrilateral: its vertices, its boundary and
// its interior, spaced at most `r` apart.
inline void sample_quad(const Quad& q, double r, std::vector<Point2>& out) {
  auto len = [](const Point2& a, const Point2& b) { return std::hypot(b[0] - a[0], b[1] - a[1]); };
  // parallelogram-like parametrisation p(s,t) = bilinear in the corners
  const double ls = std::max(len(q[0], q[1]), len(q[3], q[2]));
  const double lt = std::max(len(q[0], q[3]), len(q[1], q[2]));
  const std::size_t ns = std::max<std::size_t>(1, std::size_t(std::ceil(ls / r)));
  const std::size_t nt = std::max<std::size_t>(1, std::size_t(std::ceil(lt / r)));
  for (std::size_t a = 0; a <= ns; ++a)
    for (std::size_t b = 0; b <= nt; ++b) {
      const double s = double(a) / ns, t = double(b) / nt;
      Point2 p;
      for (int c = 0; c < 2; ++c)
        p[c] = (1 - s) * (1 - t) * q[0][c] + s * (1 - t) * q[1][c] + s * t * q[2][c] +
               (1 - s) * t * q[3][c];
      out.push_back(p);
    }
}

inline double directed_hausdorff(const std::vector<Quad>& from, const std::vector<Quad>& to,
                                 double r, std::size_t& samples) {
  if (from.empty() || to.empty()) throw std::invalid_argument("empty approximant");
  double diam = 0;
  for (const auto& q : to)
    diam = std::max(diam, std::hypot(q[2][0] - q[0][0], q[2][1] - q[0][1]));
  const QuadIndex index(to, std::max(diam, r));
  double worst = 0;
  std::vector<Point2> pts;
  for (const auto& q : from) {
    pts.clear();
    sample_quad(q, r, pts);
    samples += pts.size();
    for (const auto& p : pts) worst = std::max(worst, index.distance(p));
  }
  return worst;
}

}  // namespace detail

// Symmetric Hausdorff distance between the unions of filled polygons,
// estimated from samples at the given spacing.
inline HausdorffResult hausdorff_distance(const Approximant& a, const Approximant& b,
                                          double resolution = 0.01) {
  if (!(resolution > 0)) throw std::invalid_argument("resolution must be positive");
  HausdorffResult h;
  h.distance = std::max(detail::directed_hausdorff(a.polygons, b.polygons, resolution, h.samples),
                        detail::directed_hausdorff(b.polygons, a.polygons, resolution, h.samples));
  h.error_bound = resolution * std::sqrt(2.0);
  return h;
}

}  // namespace rauzy
