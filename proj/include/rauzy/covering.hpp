#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rauzy/dual.hpp"
#include "rauzy/lattice.hpp"
#include "rauzy/union_find.hpp"

namespace rauzy {

// Connected patterns stored in canonical position, no two translates of
// each other.
class PatternLibrary {
 public:
  PatternLibrary() = default;
  explicit PatternLibrary(std::string name) : name_(std::move(name)) {}

  // Returns false when a translate of p is already present.
  bool add(const Pattern& p) {
    if (p.empty()) throw std::invalid_argument("library patterns must be non-empty");
    if (!pattern_connected(p)) throw std::invalid_argument("library patterns must be connected");
    Pattern c = canonical(p);
    if (find(c)) return false;
    protos_.push_back(std::move(c));
    return true;
  }

  std::optional<std::size_t> find(const Pattern& p) const {
    const Pattern c = canonical(p);
    for (std::size_t k = 0; k < protos_.size(); ++k)
      if (protos_[k] == c) return k;
    return std::nullopt;
  }

  const std::vector<Pattern>& protos() const { return protos_; }
  const Pattern& operator[](std::size_t k) const { return protos_[k]; }
  std::size_t size() const { return protos_.size(); }
  bool empty() const { return protos_.empty(); }

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const std::vector<std::string>& notes() const { return notes_; }
  void add_note(std::string n) { notes_.push_back(std::move(n)); }

 private:
  std::string name_;
  std::vector<std::string> notes_;
  std::vector<Pattern> protos_;
};

struct Placement {
  std::size_t proto = 0;
  IVec3 offset{};
  friend auto operator<=>(const Placement&, const Placement&) = default;
};

inline Pattern placed(const PatternLibrary& lib, const Placement& pl) {
  return translate(lib[pl.proto], pl.offset);
}

// Every translate of a proto contained in host.  The smallest proto face is
// anchored on each host face of the same kind, which reaches every placement.
inline std::vector<Placement> enumerate_placements(const Pattern& host, const PatternLibrary& lib) {
  std::vector<Placement> out;
  for (std::size_t k = 0; k < lib.size(); ++k) {
    const Pattern& proto = lib[k];
    const Face& anchor = proto[0];
    for (const Face& h : host) {
      if (h.kind != anchor.kind) continue;
      const IVec3 offset = h.pos - anchor.pos;
      const bool inside = std::all_of(proto.begin(), proto.end(), [&](const Face& f) {
        return host.contains(Face(f.pos + offset, f.kind));
      });
      if (inside) out.push_back({k, offset});
    }
  }
  return out;
}

struct CoverCertificate {
  Pattern host;
  std::vector<Placement> placements;
  std::vector<std::pair<Face, Face>> edges;  // spanning edges witnessed by placements
  bool covered = false;
  bool vacuous = false;  // empty host
  std::vector<Face> uncovered;
  // Components of the placement face graph; uncovered faces are singletons.
  std::vector<std::vector<Face>> components;
};

// The host is covered iff every face lies in a placement and the graph
// joining faces that share a placement is connected.  By chain
// concatenation this is the same as every pair of faces admitting a chain.
inline CoverCertificate is_covered(const Pattern& host, const PatternLibrary& lib) {
  CoverCertificate c;
  c.host = host;
  if (host.empty()) {
    c.covered = true;
    c.vacuous = true;
    return c;
  }
  c.placements = enumerate_placements(host, lib);
  UnionFind uf(host.size());
  std::vector<bool> hit(host.size(), false);
  for (const auto& pl : c.placements) {
    const Pattern& proto = lib[pl.proto];
    const Face first(proto[0].pos + pl.offset, proto[0].kind);
    const std::size_t a = host.index_of(first);
    hit[a] = true;
    for (std::size_t k = 1; k < proto.size(); ++k) {
      const Face g(proto[k].pos + pl.offset, proto[k].kind);
      const std::size_t b = host.index_of(g);
      hit[b] = true;
      if (uf.unite(a, b)) c.edges.emplace_back(first, g);
    }
  }
  for (std::size_t k = 0; k < host.size(); ++k)
    if (!hit[k]) c.uncovered.push_back(host[k]);
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t k = 0; k < host.size(); ++k) {
    auto [it, fresh] = slot.try_emplace(uf.find(k), c.components.size());
    if (fresh) c.components.emplace_back();
    c.components[it->second].push_back(host[k]);
  }
  c.covered = c.uncovered.empty() && c.components.size() == 1;
  return c;
}

using Chain = std::vector<Placement>;

// Shortest chain of placements from a placement containing e to one
// containing f, consecutive placements sharing a face.
inline std::optional<Chain> find_chain(const CoverCertificate& cert, const PatternLibrary& lib,
                                       const Face& e, const Face& f) {
  const auto& pls = cert.placements;
  std::unordered_map<Face, std::vector<std::size_t>, FaceHash> by_face;
  for (std::size_t k = 0; k < pls.size(); ++k)
    for (const auto& g : placed(lib, pls[k])) by_face[g].push_back(k);
  const auto start = by_face.find(e);
  if (start == by_face.end() || !by_face.count(f)) return std::nullopt;

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> prev(pls.size(), none);
  std::vector<bool> seen(pls.size(), false);
  std::deque<std::size_t> queue;
  for (auto k : start->second) {
    seen[k] = true;
    queue.push_back(k);
  }
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    const Pattern faces = placed(lib, pls[k]);
    if (faces.contains(f)) {
      Chain chain;
      for (std::size_t at = k; at != none; at = prev[at]) chain.push_back(pls[at]);
      std::reverse(chain.begin(), chain.end());
      return chain;
    }
    for (const auto& g : faces)
      for (auto next : by_face[g])
        if (!seen[next]) {
          seen[next] = true;
          prev[next] = k;
          queue.push_back(next);
        }
  }
  return std::nullopt;
}

// Checks the chain conditions directly: e in the first pattern, f in the
// last, consecutive patterns share a face, every pattern lies in host.
inline bool is_valid_chain(const Pattern& host, const PatternLibrary& lib, const Chain& chain,
                           const Face& e, const Face& f) {
  if (chain.empty()) return false;
  std::vector<Pattern> pats;
  for (const auto& pl : chain) {
    if (pl.proto >= lib.size()) return false;
    pats.push_back(placed(lib, pl));
    if (!host.includes(pats.back())) return false;
  }
  if (!pats.front().contains(e) || !pats.back().contains(f)) return false;
  for (std::size_t k = 0; k + 1 < pats.size(); ++k) {
    const auto& a = pats[k].faces();
    const auto& b = pats[k + 1].faces();
    std::vector<Face> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (common.empty()) return false;
  }
  return true;
}

inline Chain concatenate(Chain a, const Chain& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct StabilityCheck {
  std::size_t proto = 0;
  std::size_t dual = 0;
  Pattern image;
  CoverCertificate certificate;
};

struct StabilityReport {
  std::vector<StabilityCheck> checks;  // ordered by (proto, dual)
  std::size_t passed = 0;
  bool stable() const { return passed == checks.size(); }
};

inline StabilityReport is_stable(const PatternLibrary& lib, std::span<const DualSubstitution> duals) {
  StabilityReport r;
  for (std::size_t p = 0; p < lib.size(); ++p)
    for (std::size_t d = 0; d < duals.size(); ++d) {
      StabilityCheck c{p, d, apply(duals[d], lib[p]), {}};
      c.certificate = is_covered(c.image, lib);
      if (c.certificate.covered) ++r.passed;
      r.checks.push_back(std::move(c));
    }
  return r;
}

struct DiscoveryBudget {
  std::size_t max_protos = 64;
  std::size_t max_faces = 8;
  unsigned max_lookahead = 3;
};

struct DiscoveryResult {
  bool success = false;
  PatternLibrary library;
  unsigned lookahead = 0;  // lookahead depth of the successful run
  std::vector<std::string> log;
  std::vector<Pattern> failing_images;
};

namespace detail {

// Connected sub-patterns of host with exactly `size` faces, as sorted index
// lists, grown one intersecting face at a time.
inline std::vector<std::vector<std::size_t>> connected_subsets(
    const std::vector<std::vector<std::size_t>>& adjacency,
    const std::vector<std::vector<std::size_t>>& smaller) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& s : smaller)
    for (auto a : s)
      for (auto b : adjacency[a]) {
        if (std::binary_search(s.begin(), s.end(), b)) continue;
        auto t = s;
        t.insert(std::upper_bound(t.begin(), t.end(), b), b);
        out.insert(std::move(t));
      }
  return {out.begin(), out.end()};
}

// A pattern whose image under some dual is disconnected can never belong to
// a stable library of connected patterns; look that many levels ahead.
inline bool images_stay_connected(const Pattern& p, std::span<const DualSubstitution> duals,
                                  unsigned depth) {
  std::vector<Pattern> level{p};
  for (unsigned k = 0; k < depth; ++k) {
    std::vector<Pattern> next;
    for (const auto& q : level)
      for (const auto& d : duals) {
        Pattern im = apply(d, q);
        if (!pattern_connected(im)) return false;
        next.push_back(std::move(im));
      }
    level = std::move(next);
  }
  return true;
}

// Smallest admissible connected sub-pattern of host meeting two distinct
// components of the cover; ties go to the lexicographically smallest
// canonical form.
inline std::optional<Pattern> bridging_pattern(const Pattern& host, const CoverCertificate& cert,
                                               std::span<const DualSubstitution> duals,
                                               std::size_t max_faces, unsigned lookahead) {
  std::vector<std::size_t> comp(host.size());
  for (std::size_t c = 0; c < cert.components.size(); ++c)
    for (const auto& f : cert.components[c]) comp[host.index_of(f)] = c;
  std::vector<std::vector<std::size_t>> adjacency(host.size());
  for_each_intersecting_pair(host, [&](std::size_t a, std::size_t b) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  });
  std::vector<std::vector<std::size_t>> level;
  for (std::size_t k = 0; k < host.size(); ++k) level.push_back({k});
  for (std::size_t size = 2; size <= max_faces; ++size) {
    level = connected_subsets(adjacency, level);
    std::vector<Pattern> candidates;
    for (const auto& s : level) {
      const bool bridges = std::any_of(s.begin(), s.end(),
                                       [&](std::size_t k) { return comp[k] != comp[s.front()]; });
      if (!bridges) continue;
      std::vector<Face> faces;
      for (auto k : s) faces.push_back(host[k]);
      candidates.push_back(canonical(Pattern(std::move(faces))));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& c : candidates)
      if (images_stay_connected(c, duals, lookahead)) return c;
  }
  return std::nullopt;
}

inline std::string describe(const Pattern& p) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < p.size(); ++k) os << (k ? ", " : "") << p[k];
  os << '}';
  return os.str();
}

}  // namespace detail

// Completion loop: while the seed U or some image of a proto is not
// covered, add the smallest admissible pattern bridging two components of
// the failing host.  When no admissible bridge exists the loop restarts with
// a deeper lookahead.
inline DiscoveryResult discover_stable_set(std::span<const DualSubstitution> duals,
                                           const PatternLibrary& seed,
                                           const DiscoveryBudget& budget = {}) {
  DiscoveryResult r;
  for (unsigned lookahead = 1; lookahead <= budget.max_lookahead; ++lookahead) {
    PatternLibrary lib = seed;
    r.log.push_back("lookahead " + std::to_string(lookahead));
    bool restart = false;
    while (!restart) {
      std::optional<Pattern> failing;
      CoverCertificate cert = is_covered(Pattern::seed(), lib);
      if (!cert.covered) failing = Pattern::seed();
      for (std::size_t p = 0; p < lib.size() && !failing; ++p)
        for (std::size_t d = 0; d < duals.size() && !failing; ++d) {
          Pattern im = apply(duals[d], lib[p]);
          cert = is_covered(im, lib);
          if (!cert.covered) failing = std::move(im);
        }
      if (!failing) {
        r.success = true;
        r.library = std::move(lib);
        r.lookahead = lookahead;
        r.failing_images.clear();
        r.log.push_back("stable with " + std::to_string(r.library.size()) + " patterns");
        return r;
      }
      if (lib.size() >= budget.max_protos) {
        r.log.push_back("pattern budget exhausted");
        r.library = std::move(lib);
        r.failing_images = {*failing};
        return r;
      }
      auto bridge = detail::bridging_pattern(*failing, cert, duals, budget.max_faces, lookahead);
      if (!bridge) {
        r.log.push_back("no admissible bridge in " + detail::describe(*failing));
        r.failing_images = {*failing};
        r.library = std::move(lib);
        restart = true;
        continue;
      }
      lib.add(*bridge);
      r.log.push_back("add " + detail::describe(*bridge));
    }
  }
  return r;
}

struct IterateCertificate {
  bool valid = false;
  std::string failure;  // first failing precondition
  bool protos_connected = false;
  StabilityReport stability;
  CoverCertificate seed_cover;
  std::size_t iterations = 0;
  std::size_t iterate_faces = 0;
  bool iterate_connected = false;  // direct check of the n-th iterate
};

// Stability of lib under every dual and a cover of U imply, by covering
// propagation, that every iterate is covered and hence connected.  The
// n-th iterate is also checked directly.
inline IterateCertificate certify_connected_iterates(std::span<const DualSubstitution> duals,
                                                     const PatternLibrary& lib, std::size_t n) {
  IterateCertificate c;
  c.iterations = n;
  c.protos_connected = std::all_of(lib.protos().begin(), lib.protos().end(),
                                   [](const Pattern& p) { return pattern_connected(p); });
  c.stability = is_stable(lib, duals);
  c.seed_cover = is_covered(Pattern::seed(), lib);
  const Pattern it = iterate(duals, Pattern::seed(), n);
  c.iterate_faces = it.size();
  c.iterate_connected = pattern_connected(it);
  if (!c.protos_connected) {
    c.failure = "a library pattern is not connected";
  } else if (!c.stability.stable()) {
    for (const auto& chk : c.stability.checks)
      if (!chk.certificate.covered) {
        c.failure = "stability: image of pattern " + std::to_string(chk.proto) +
                    " under dual " + std::to_string(chk.dual) + " is not covered";
        break;
      }
  } else if (!c.seed_cover.covered) {
    c.failure = "seed U is not covered by the library";
  }
  c.valid = c.failure.empty();
  return c;
}

}  // namespace rauzy
