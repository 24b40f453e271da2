#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rauzy {

// Raised whenever exact integer arithmetic would wrap around.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what)
      : std::overflow_error("integer overflow: " + what) {}
};

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("multiplication");
  return r;
}

}  // namespace checked

using IVec3 = std::array<std::int64_t, 3>;

// Row-major 3x3 integer matrix; entries()[r][c].
class IMat3 {
 public:
  using Rows = std::array<std::array<std::int64_t, 3>, 3>;

  constexpr IMat3() = default;
  constexpr explicit IMat3(const Rows& rows) : m_(rows) {}

  static constexpr IMat3 identity() {
    return IMat3(Rows{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
  }

  constexpr std::int64_t operator()(int r, int c) const { return m_[r][c]; }
  constexpr std::int64_t& operator()(int r, int c) { return m_[r][c]; }
  constexpr const Rows& rows() const { return m_; }

  IMat3 transposed() const {
    IMat3 t;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) t(c, r) = m_[r][c];
    return t;
  }

  std::int64_t trace() const {
    return checked::add(checked::add(m_[0][0], m_[1][1]), m_[2][2]);
  }

  std::int64_t minor(int r0, int r1, int c0, int c1) const {
    return checked::sub(checked::mul(m_[r0][c0], m_[r1][c1]),
                        checked::mul(m_[r0][c1], m_[r1][c0]));
  }

  std::int64_t determinant() const {
    std::int64_t d = checked::mul(m_[0][0], minor(1, 2, 1, 2));
    d = checked::sub(d, checked::mul(m_[0][1], minor(1, 2, 0, 2)));
    return checked::add(d, checked::mul(m_[0][2], minor(1, 2, 0, 1)));
  }

  // Sum of the principal 2x2 minors.
  std::int64_t principal_minor_sum() const {
    return checked::add(checked::add(minor(0, 1, 0, 1), minor(0, 2, 0, 2)),
                        minor(1, 2, 1, 2));
  }

  std::int64_t sum() const {
    std::int64_t s = 0;
    for (const auto& row : m_)
      for (auto e : row) s = checked::add(s, e);
    return s;
  }

  std::int64_t row_sum(int r) const {
    return checked::add(checked::add(m_[r][0], m_[r][1]), m_[r][2]);
  }

  friend bool operator==(const IMat3&, const IMat3&) = default;

 private:
  Rows m_{};
};

inline IMat3 operator*(const IMat3& a, const IMat3& b) {
  IMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < 3; ++k) s = checked::add(s, checked::mul(a(i, k), b(k, j)));
      r(i, j) = s;
    }
  return r;
}

inline IVec3 operator*(const IMat3& a, const IVec3& x) {
  IVec3 r{};
  for (int i = 0; i < 3; ++i) {
    std::int64_t s = 0;
    for (int k = 0; k < 3; ++k) s = checked::add(s, checked::mul(a(i, k), x[k]));
    r[i] = s;
  }
  return r;
}

inline IVec3 operator+(const IVec3& a, const IVec3& b) {
  return {checked::add(a[0], b[0]), checked::add(a[1], b[1]), checked::add(a[2], b[2])};
}

inline IVec3 operator-(const IVec3& a, const IVec3& b) {
  return {checked::sub(a[0], b[0]), checked::sub(a[1], b[1]), checked::sub(a[2], b[2])};
}

inline IVec3 operator-(const IVec3& a) { return IVec3{} - a; }

inline std::int64_t dot(const IVec3& a, const IVec3& b) {
  std::int64_t s = 0;
  for (int k = 0; k < 3; ++k) s = checked::add(s, checked::mul(a[k], b[k]));
  return s;
}

inline IMat3 power(const IMat3& m, unsigned n) {
  IMat3 r = IMat3::identity();
  for (unsigned k = 0; k < n; ++k) r = r * m;
  return r;
}

// Inverse of a matrix with determinant +-1; the adjugate divided by the
// determinant is then integral.
inline IMat3 unimodular_inverse(const IMat3& m) {
  const std::int64_t det = m.determinant();
  if (det != 1 && det != -1)
    throw std::domain_error("matrix is not unimodular (det = " + std::to_string(det) + ")");
  IMat3 inv;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      // cofactor of (c, r)
      const int r0 = r == 0 ? 1 : 0, r1 = r == 2 ? 1 : 2;
      const int c0 = c == 0 ? 1 : 0, c1 = c == 2 ? 1 : 2;
      std::int64_t cof = m.minor(c0, c1, r0, r1);
      if ((r + c) % 2 == 1) cof = checked::sub(0, cof);
      inv(r, c) = checked::mul(cof, det);
    }
  return inv;
}

inline std::ostream& operator<<(std::ostream& os, const IVec3& v) {
  return os << '(' << v[0] << ',' << v[1] << ',' << v[2] << ')';
}

inline std::ostream& operator<<(std::ostream& os, const IMat3& m) {
  os << '[';
  for (int r = 0; r < 3; ++r) {
    os << (r ? ",[" : "[") << m(r, 0) << ',' << m(r, 1) << ',' << m(r, 2) << ']';
  }
  return os << ']';
}

}  // namespace rauzy
