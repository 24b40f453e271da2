#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rauzy/integer.hpp"
#include "rauzy/lattice.hpp"
#include "rauzy/substitution.hpp"

namespace rauzy {

// The generalized substitution E1*(s), described by M^-1 and the images of
// the three faces [0, i]*.
class DualSubstitution {
 public:
  const IMat3& matrix() const { return matrix_; }
  const IMat3& inverse() const { return inverse_; }
  const Pattern& base_image(int kind) const { return base_[Letter(kind).index()]; }
  const Substitution& substitution() const { return subst_; }

  friend DualSubstitution build_dual(const Substitution& s);

 private:
  Substitution subst_;
  IMat3 matrix_;
  IMat3 inverse_;
  std::array<Pattern, 3> base_;
};

// For every target letter j (ascending) and every occurrence s(j) = p i t
// (left to right), the face [M^-1 l(t), j]* belongs to the image of [0, i]*.
inline DualSubstitution build_dual(const Substitution& s) {
  DualSubstitution d;
  d.subst_ = s;
  d.matrix_ = incidence_matrix(s);
  try {
    d.inverse_ = unimodular_inverse(d.matrix_);
  } catch (const std::domain_error& e) {
    throw std::domain_error(std::string("dual substitution undefined: ") + e.what());
  }
  std::array<std::vector<Face>, 3> images;
  for (int j = 1; j <= 3; ++j) {
    const Word& w = s.image(j);
    for (std::size_t k = 0; k < w.size(); ++k) {
      const int i = w[k] - '0';
      const IVec3 offset = d.inverse_ * abelianize(std::string_view(w).substr(k + 1));
      images[i - 1].emplace_back(offset, j);
    }
  }
  for (int i = 0; i < 3; ++i) {
    const std::size_t raw = images[i].size();
    d.base_[i] = Pattern(std::move(images[i]));
    if (d.base_[i].size() != raw)
      throw std::logic_error("dual base image contains a repeated face");
  }
  return d;
}

inline Pattern apply(const DualSubstitution& d, const Pattern& p) {
  std::vector<Face> out;
  for (const auto& f : p) {
    const IVec3 base = d.inverse() * f.pos;
    for (const auto& g : d.base_image(f.kind)) out.emplace_back(base + g.pos, g.kind);
  }
  return Pattern(std::move(out));
}

// Applies duals[0] first.  Since E1*(s o t) = E1*(t) o E1*(s), the result is
// E1*(s_0 o s_1 o ... o s_{n-1})(p).
inline Pattern apply_product(std::span<const DualSubstitution> duals, const Pattern& p) {
  Pattern cur = p;
  for (const auto& d : duals) cur = apply(d, cur);
  return cur;
}

// Applies n duals to p, cycling through the sequence.
inline Pattern iterate(std::span<const DualSubstitution> duals, const Pattern& p, std::size_t n) {
  if (duals.empty() && n > 0) throw std::invalid_argument("empty dual sequence");
  Pattern cur = p;
  for (std::size_t k = 0; k < n; ++k) cur = apply(duals[k % duals.size()], cur);
  return cur;
}

struct PlaneImageReport {
  IVec3 source_normal{};
  IVec3 image_normal{};  // M^T v
  std::size_t window_faces = 0;
  std::size_t image_faces = 0;
  std::vector<Face> outside;              // image faces violating membership
  std::vector<Face> multiply_attributed;  // image faces produced by two sources
  bool ok() const { return outside.empty() && multiply_attributed.empty(); }
};

// Checks that E1*(s) maps the window into the plane of normal M^T v, and
// that distinct source faces have disjoint images.
inline PlaneImageReport check_plane_image(const DualSubstitution& d, const PlaneSpec& plane,
                                          const Pattern& window) {
  if (!plane.is_exact()) throw std::invalid_argument("plane image check needs an exact normal");
  for (const auto& f : window)
    if (!in_discrete_plane(f, plane).inside)
      throw std::invalid_argument("window face not in the discrete plane");
  PlaneImageReport r;
  r.source_normal = plane.exact_normal();
  r.image_normal = d.matrix().transposed() * r.source_normal;
  r.window_faces = window.size();
  const PlaneSpec target = PlaneSpec::exact(r.image_normal);
  std::map<Face, std::size_t> owner;
  for (std::size_t k = 0; k < window.size(); ++k) {
    for (const auto& g : apply(d, Pattern{window[k]})) {
      auto [it, fresh] = owner.try_emplace(g, k);
      if (!fresh) r.multiply_attributed.push_back(g);
      if (fresh && !in_discrete_plane(g, target).inside) r.outside.push_back(g);
    }
  }
  r.image_faces = owner.size();
  return r;
}

}  // namespace rauzy
