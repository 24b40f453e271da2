#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>

#include "rauzy/integer.hpp"
#include "rauzy/substitution.hpp"

namespace rauzy {

// Monic cubic x^3 + c2 x^2 + c1 x + c0 with integer coefficients.
struct CubicPolynomial {
  std::int64_t c2 = 0, c1 = 0, c0 = 0;

  std::int64_t eval(std::int64_t x) const {
    std::int64_t r = checked::add(x, c2);
    r = checked::add(checked::mul(r, x), c1);
    return checked::add(checked::mul(r, x), c0);
  }
  double eval(double x) const { return ((x + c2) * x + c1) * x + c0; }
  double derivative(double x) const { return (3 * x + 2 * c2) * x + c1; }
};

inline CubicPolynomial characteristic_polynomial(const IMat3& m) {
  return {checked::sub(0, m.trace()), m.principal_minor_sum(),
          checked::sub(0, m.determinant())};
}

namespace detail {
inline void divisor_roots(std::int64_t c, const std::function<bool(std::int64_t)>& is_root,
                          std::optional<std::int64_t>& best) {
  const std::int64_t a = std::llabs(c);
  for (std::int64_t d = 1; d * d <= a; ++d) {
    if (a % d != 0) continue;
    for (std::int64_t cand : {d, -d, a / d, -(a / d)})
      if (is_root(cand) && (!best || cand > *best)) best = cand;
  }
}
}  // namespace detail

// Largest integer root; integer roots of a monic integer polynomial divide
// its lowest nonzero coefficient.
inline std::optional<std::int64_t> largest_integer_root(const CubicPolynomial& p) {
  std::optional<std::int64_t> best;
  if (p.c0 != 0) {
    detail::divisor_roots(p.c0, [&](std::int64_t x) { return p.eval(x) == 0; }, best);
    return best;
  }
  best = 0;
  if (p.c1 != 0)
    detail::divisor_roots(p.c1, [&](std::int64_t x) { return (x + p.c2) * x + p.c1 == 0; }, best);
  else
    best = std::max<std::int64_t>(0, -p.c2);
  return best;
}

// A monic integer cubic is reducible over Q iff it has an integer root.
inline bool is_irreducible(const CubicPolynomial& p) { return !largest_integer_root(p); }

// Largest real root, bracketed on an interval where the cubic is monotone,
// bisected, then polished by Newton steps.
inline double largest_real_root(const CubicPolynomial& p, double tol = 1e-12) {
  const double bound =
      1.0 + std::max({std::fabs(double(p.c2)), std::fabs(double(p.c1)), std::fabs(double(p.c0))});
  double lo = -bound, hi = bound;
  // critical points of 3x^2 + 2 c2 x + c1
  const double disc = 4.0 * p.c2 * p.c2 - 12.0 * p.c1;
  if (disc > 0) {
    const double s = std::sqrt(disc);
    const double left = (-2.0 * p.c2 - s) / 6.0, right = (-2.0 * p.c2 + s) / 6.0;
    if (p.eval(right) <= 0)
      lo = right;
    else
      hi = left;
  }
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (p.eval(mid) > 0 ? hi : lo) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double d = p.derivative(x);
    if (d == 0) break;
    const double next = x - p.eval(x) / d;
    if (!std::isfinite(next) || std::fabs(next - x) > 10 * tol) break;
    x = next;
  }
  return x;
}

struct SpectralReport {
  IMat3 matrix;
  std::int64_t determinant = 0;
  std::optional<int> det_sign;  // empty when not unimodular
  CubicPolynomial char_poly;
  bool irreducible = false;
  double beta = 0;  // dominant (Perron) eigenvalue
  std::array<double, 2> conjugate_moduli{};
  bool conjugates_complex = false;
  bool is_pisot_irreducible = false;

  bool unimodular() const { return det_sign.has_value(); }
};

inline SpectralReport spectral_report(const IMat3& m) {
  SpectralReport r;
  r.matrix = m;
  r.determinant = m.determinant();
  if (r.determinant == 1 || r.determinant == -1) r.det_sign = static_cast<int>(r.determinant);
  r.char_poly = characteristic_polynomial(m);
  r.irreducible = is_irreducible(r.char_poly);
  // deflate p(x) = (x - root)(x^2 + b x + c), exactly when an integer root exists
  const auto int_root = largest_integer_root(r.char_poly);
  const double root = int_root ? double(*int_root) : largest_real_root(r.char_poly);
  const double b = r.char_poly.c2 + root;
  const double c = r.char_poly.c1 + root * b;
  r.beta = root;
  const double disc = b * b - 4 * c;
  if (disc < 0) {
    r.conjugates_complex = true;
    const double mod = std::sqrt(std::max(c, 0.0));
    r.conjugate_moduli = {mod, mod};
  } else {
    const double s = std::sqrt(disc);
    // stable quadratic roots
    const double q = -0.5 * (b + (b >= 0 ? s : -s));
    const double x1 = q;
    const double x2 = q != 0 ? c / q : 0.0;
    std::array<double, 3> roots{root, x1, x2};
    std::sort(roots.begin(), roots.end(), std::greater<>());
    // dominant eigenvalue is the largest real root; the others are its conjugates
    r.beta = roots[0];
    r.conjugate_moduli = {std::fabs(roots[1]), std::fabs(roots[2])};
    std::sort(r.conjugate_moduli.begin(), r.conjugate_moduli.end(), std::greater<>());
  }
  r.is_pisot_irreducible = r.unimodular() && r.irreducible && r.beta > 1 &&
                           r.conjugate_moduli[0] < 1 && r.conjugate_moduli[1] < 1;
  return r;
}

inline SpectralReport spectral_report(const Substitution& s) {
  return spectral_report(incidence_matrix(s));
}

}  // namespace rauzy
