#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rauzy/integer.hpp"

namespace rauzy {

// A letter of the alphabet {1,2,3}.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr explicit Letter(int value) : value_(value) {
    if (value < 1 || value > 3) throw std::invalid_argument("letter must be 1, 2 or 3");
  }

  constexpr int value() const { return value_; }
  constexpr int index() const { return value_ - 1; }

  friend constexpr auto operator<=>(const Letter&, const Letter&) = default;

 private:
  int value_ = 1;
};

// Words are stored as strings over the characters '1', '2', '3'.
using Word = std::string;

inline void validate_word(std::string_view w) {
  for (char c : w)
    if (c < '1' || c > '3')
      throw std::invalid_argument("word contains a character outside \"123\": '" +
                                  std::string(w) + "'");
}

// Letter-count vector of a word.
inline IVec3 abelianize(std::string_view w) {
  IVec3 v{};
  for (char c : w) {
    if (c < '1' || c > '3') throw std::invalid_argument("invalid letter in word");
    ++v[c - '1'];
  }
  return v;
}

class Substitution {
 public:
  Substitution() : Substitution("1", "2", "3") {}

  Substitution(Word a, Word b, Word c) : images_{std::move(a), std::move(b), std::move(c)} {
    for (const auto& w : images_) {
      validate_word(w);
      if (w.empty()) throw std::invalid_argument("substitution images must be non-empty");
    }
  }

  static Substitution identity() { return {}; }

  const Word& image(Letter a) const { return images_[a.index()]; }
  const Word& image(int letter) const { return image(Letter(letter)); }
  const std::array<Word, 3>& images() const { return images_; }

  Word apply(std::string_view w) const {
    Word out;
    for (char c : w) out += image(c - '0');
    return out;
  }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::array<Word, 3> images_;
};

// m(i, j) = occurrences of letter i+1 in the image of letter j+1.
inline IMat3 incidence_matrix(const Substitution& s) {
  IMat3 m;
  for (int j = 0; j < 3; ++j) {
    const IVec3 col = abelianize(s.images()[j]);
    for (int i = 0; i < 3; ++i) m(i, j) = col[i];
  }
  return m;
}

// (s o t)(a) = s(t(a)).
inline Substitution compose(const Substitution& s, const Substitution& t) {
  return {s.apply(t.image(1)), s.apply(t.image(2)), s.apply(t.image(3))};
}

// Left-to-right composition of a chain: compose_all({a, b, c}) = a o b o c.
inline Substitution compose_all(const std::vector<Substitution>& chain) {
  Substitution r;
  for (const auto& s : chain) r = compose(r, s);
  return r;
}

// sigma_i : i -> i, j -> j i for j != i.
inline Substitution arnoux_rauzy(Letter i) {
  std::array<Word, 3> w;
  for (int j = 1; j <= 3; ++j) {
    w[j - 1] = std::to_string(j);
    if (j != i.value()) w[j - 1] += std::to_string(i.value());
  }
  return {w[0], w[1], w[2]};
}

// epsilon_{i,j} : j -> j i, other letters fixed.  With this orientation
// sigma_1 = epsilon_{1,2} o epsilon_{1,3} and similarly for sigma_2, sigma_3.
inline Substitution elementary(Letter i, Letter j) {
  if (i == j) throw std::invalid_argument("elementary substitution needs i != j");
  std::array<Word, 3> w{"1", "2", "3"};
  w[j.index()] += std::to_string(i.value());
  return {w[0], w[1], w[2]};
}

// Product sigma_{i1} o ... o sigma_{in} for a sequence of generator indices.
inline Substitution arnoux_rauzy_product(const std::vector<int>& indices) {
  std::vector<Substitution> chain;
  chain.reserve(indices.size());
  for (int i : indices) chain.push_back(arnoux_rauzy(Letter(i)));
  return compose_all(chain);
}

// First n letters of lim s^k(a), where a is the smallest letter whose image
// begins with a and has length at least 2.
inline Word fixed_point_prefix(const Substitution& s, std::size_t n) {
  int start = 0;
  for (int a = 1; a <= 3 && start == 0; ++a) {
    const Word& img = s.image(a);
    if (img.size() >= 2 && img.front() - '0' == a) start = a;
  }
  if (start == 0)
    throw std::domain_error(
        "no letter a with s(a) starting with a and |s(a)| >= 2; no infinite fixed point");
  Word w(1, static_cast<char>('0' + start));
  while (w.size() < n) {
    w = s.apply(w);
    if (w.size() > n) w.resize(n);
  }
  w.resize(n);
  return w;
}

struct FactorCount {
  std::size_t count = 0;
  std::size_t prefix_length = 0;  // prefix length at which the count saturated
};

inline std::size_t distinct_factors(std::string_view w, std::size_t n) {
  if (n == 0) return 1;
  if (w.size() < n) return 0;
  std::unordered_set<std::string_view> seen;
  for (std::size_t k = 0; k + n <= w.size(); ++k) seen.insert(w.substr(k, n));
  return seen.size();
}

// Number of distinct length-n factors of the fixed point.  The analysed
// prefix doubles until the count is unchanged across one doubling.
inline FactorCount factor_count(const Substitution& s, std::size_t n,
                                std::size_t max_prefix = std::size_t{1} << 24) {
  std::size_t len = std::max<std::size_t>(64, 4 * n);
  Word w = fixed_point_prefix(s, len);
  std::size_t previous = distinct_factors(w, n);
  while (true) {
    if (2 * len > max_prefix)
      throw std::runtime_error("factor count did not saturate below the prefix limit");
    len *= 2;
    w = fixed_point_prefix(s, len);
    const std::size_t current = distinct_factors(w, n);
    if (current == previous) return {current, len};
    previous = current;
  }
}

}  // namespace rauzy
