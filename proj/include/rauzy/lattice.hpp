#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "rauzy/integer.hpp"
#include "rauzy/substitution.hpp"
#include "rauzy/union_find.hpp"

namespace rauzy {

// Unit face [x, i]*: the closed unit square at x orthogonal to e_i.
struct Face {
  IVec3 pos{};
  int kind = 1;

  Face() = default;
  Face(IVec3 p, int k) : pos(p), kind(Letter(k).value()) {}

  // lexicographic on (x1, x2, x3, i)
  friend auto operator<=>(const Face&, const Face&) = default;
};

struct FaceHash {
  std::size_t operator()(const Face& f) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto c : f.pos) {
      h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    h ^= static_cast<std::uint64_t>(f.kind) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

inline std::ostream& operator<<(std::ostream& os, const Face& f) {
  return os << '[' << f.pos << ',' << f.kind << "]*";
}

struct Interval {
  std::int64_t lo = 0, hi = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

using FaceBox = std::array<Interval, 3>;

// Degenerate in coordinate kind-1, unit width in the other two.
inline FaceBox face_box(const Face& f) {
  FaceBox b;
  for (int k = 0; k < 3; ++k) {
    const std::int64_t w = (k == f.kind - 1) ? 0 : 1;
    b[k] = {f.pos[k], checked::add(f.pos[k], w)};
  }
  return b;
}

// Closed boxes intersect: vertex, edge, or whole face.
inline bool faces_intersect(const Face& f, const Face& g) {
  const FaceBox a = face_box(f), b = face_box(g);
  for (int k = 0; k < 3; ++k)
    if (std::max(a[k].lo, b[k].lo) > std::min(a[k].hi, b[k].hi)) return false;
  return true;
}

// Intersection is at least a unit segment. Diagnostic only; connectivity uses
// faces_intersect.
inline bool faces_share_edge(const Face& f, const Face& g) {
  if (f == g) return true;
  const FaceBox a = face_box(f), b = face_box(g);
  int unit_dims = 0;
  for (int k = 0; k < 3; ++k) {
    const auto lo = std::max(a[k].lo, b[k].lo), hi = std::min(a[k].hi, b[k].hi);
    if (lo > hi) return false;
    if (hi - lo == 1) ++unit_dims;
  }
  return unit_dims >= 1;
}

// Finite set of faces kept sorted and deduplicated.
class Pattern {
 public:
  Pattern() = default;
  Pattern(std::initializer_list<Face> faces) : faces_(faces) { normalize(); }
  explicit Pattern(std::vector<Face> faces) : faces_(std::move(faces)) { normalize(); }

  static Pattern seed() {
    return Pattern{Face({0, 0, 0}, 1), Face({0, 0, 0}, 2), Face({0, 0, 0}, 3)};
  }

  const std::vector<Face>& faces() const { return faces_; }
  std::size_t size() const { return faces_.size(); }
  bool empty() const { return faces_.empty(); }
  auto begin() const { return faces_.begin(); }
  auto end() const { return faces_.end(); }
  const Face& operator[](std::size_t k) const { return faces_[k]; }

  bool contains(const Face& f) const { return std::binary_search(faces_.begin(), faces_.end(), f); }

  // Index of f in the sorted face list, or size() if absent.
  std::size_t index_of(const Face& f) const {
    auto it = std::lower_bound(faces_.begin(), faces_.end(), f);
    return (it != faces_.end() && *it == f) ? std::size_t(it - faces_.begin()) : faces_.size();
  }

  bool includes(const Pattern& other) const {
    return std::includes(faces_.begin(), faces_.end(), other.faces_.begin(), other.faces_.end());
  }

  Pattern united(const Pattern& other) const {
    std::vector<Face> out;
    out.reserve(faces_.size() + other.faces_.size());
    std::set_union(faces_.begin(), faces_.end(), other.faces_.begin(), other.faces_.end(),
                   std::back_inserter(out));
    Pattern p;
    p.faces_ = std::move(out);
    return p;
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend auto operator<=>(const Pattern& a, const Pattern& b) { return a.faces_ <=> b.faces_; }

 private:
  void normalize() {
    std::sort(faces_.begin(), faces_.end());
    faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  }

  std::vector<Face> faces_;
};

inline Pattern translate(const Pattern& p, const IVec3& t) {
  std::vector<Face> out;
  out.reserve(p.size());
  for (const auto& f : p) out.emplace_back(f.pos + t, f.kind);
  return Pattern(std::move(out));
}

// Translate so that the lexicographically smallest face sits at the origin.
inline Pattern canonical(const Pattern& p) {
  if (p.empty()) return p;
  return translate(p, -p[0].pos);
}

// Normal vector of a discrete plane.  Rational normals are stored scaled to
// integers and tested exactly; floating normals are tested with a tolerance.
class PlaneSpec {
 public:
  using Real = std::array<double, 3>;

  static PlaneSpec exact(const IVec3& v) {
    for (auto c : v)
      if (c <= 0) throw std::invalid_argument("plane normal must be strictly positive");
    PlaneSpec p;
    p.normal_ = v;
    return p;
  }

  static PlaneSpec approximate(const Real& v, double tol = 1e-12) {
    for (auto c : v)
      if (!(c > 0)) throw std::invalid_argument("plane normal must be strictly positive");
    PlaneSpec p;
    p.normal_ = v;
    p.tolerance_ = tol;
    return p;
  }

  bool is_exact() const { return std::holds_alternative<IVec3>(normal_); }
  const IVec3& exact_normal() const { return std::get<IVec3>(normal_); }
  const Real& real_normal() const { return std::get<Real>(normal_); }
  double tolerance() const { return tolerance_; }

 private:
  std::variant<IVec3, Real> normal_ = IVec3{1, 1, 1};
  double tolerance_ = 0;
};

struct PlaneMembership {
  bool inside = false;
  bool approximate = false;  // verdict relied on a floating tolerance
  explicit operator bool() const { return inside; }
};

// 0 <= <x, v> < <e_i, v>
inline PlaneMembership in_discrete_plane(const Face& f, const PlaneSpec& p) {
  if (p.is_exact()) {
    const IVec3& v = p.exact_normal();
    const std::int64_t s = dot(f.pos, v);
    return {0 <= s && s < v[f.kind - 1], false};
  }
  const auto& v = p.real_normal();
  const double s = f.pos[0] * v[0] + f.pos[1] * v[1] + f.pos[2] * v[2];
  const double tol = p.tolerance();
  return {s >= -tol && s < v[f.kind - 1] - tol, true};
}

inline bool in_discrete_plane(const Pattern& pat, const PlaneSpec& p) {
  return std::all_of(pat.begin(), pat.end(),
                     [&](const Face& f) { return in_discrete_plane(f, p).inside; });
}

struct Connectivity {
  bool connected = true;
  bool empty = false;  // vacuous verdict
  std::vector<std::vector<Face>> components;
};

// Calls visit(a, b) for every pair a < b of intersecting faces of p.
template <typename Visitor>
void for_each_intersecting_pair(const Pattern& p, Visitor&& visit) {
  const auto n = p.size();
  if (n <= 32) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (faces_intersect(p[a], p[b])) visit(a, b);
    return;
  }
  // Intersecting faces have positions within 1 of each other in every
  // coordinate; probe that neighbourhood in the sorted face list.
  for (std::size_t a = 0; a < n; ++a) {
    const Face& f = p[a];
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy)
        for (std::int64_t dz = -1; dz <= 1; ++dz)
          for (int k = 1; k <= 3; ++k) {
            const Face g(f.pos + IVec3{dx, dy, dz}, k);
            if (!(f < g)) continue;
            const std::size_t b = p.index_of(g);
            if (b < n && faces_intersect(f, g)) visit(a, b);
          }
  }
}

inline Connectivity pattern_components(const Pattern& p) {
  Connectivity c;
  if (p.empty()) {
    c.empty = true;
    return c;
  }
  UnionFind uf(p.size());
  for_each_intersecting_pair(p, [&](std::size_t a, std::size_t b) { uf.unite(a, b); });
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t k = 0; k < p.size(); ++k) {
    auto [it, fresh] = slot.try_emplace(uf.find(k), c.components.size());
    if (fresh) c.components.emplace_back();
    c.components[it->second].push_back(p[k]);
  }
  c.connected = c.components.size() == 1;
  return c;
}

inline bool pattern_connected(const Pattern& p) { return pattern_components(p).connected; }

// The first `count` faces of the discrete plane reached by breadth-first
// growth from the seed, following intersecting neighbours.
inline Pattern discrete_plane_window(const PlaneSpec& plane, std::size_t count) {
  std::vector<Face> out;
  std::unordered_set<Face, FaceHash> seen;
  std::deque<Face> queue;
  for (const auto& f : Pattern::seed()) {
    seen.insert(f);
    queue.push_back(f);
  }
  while (!queue.empty() && out.size() < count) {
    const Face f = queue.front();
    queue.pop_front();
    out.push_back(f);
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy)
        for (std::int64_t dz = -1; dz <= 1; ++dz)
          for (int k = 1; k <= 3; ++k) {
            const Face g(f.pos + IVec3{dx, dy, dz}, k);
            if (seen.count(g) || !faces_intersect(f, g) || !in_discrete_plane(g, plane)) continue;
            seen.insert(g);
            queue.push_back(g);
          }
  }
  return Pattern(std::move(out));
}

}  // namespace rauzy
