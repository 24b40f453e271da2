#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "rauzy/covering.hpp"
#include "rauzy/dual.hpp"
#include "rauzy/fractal.hpp"
#include "rauzy/lattice.hpp"
#include "rauzy/spectral.hpp"
#include "rauzy/substitution.hpp"

namespace rauzy::io {

using nlohmann::json;

// Malformed input documents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// {"images": {"1": "12", "2": "13", "3": "1"}}
inline json to_json(const Substitution& s) {
  return {{"images", {{"1", s.image(1)}, {"2", s.image(2)}, {"3", s.image(3)}}}};
}

inline Substitution substitution_from_json(const json& j) {
  try {
    const auto& im = j.at("images");
    return {im.at("1").get<std::string>(), im.at("2").get<std::string>(),
            im.at("3").get<std::string>()};
  } catch (const json::exception& e) {
    throw FormatError(std::string("substitution: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("substitution: ") + e.what());
  }
}

inline json to_json(const IVec3& v) { return json::array({v[0], v[1], v[2]}); }

inline json to_json(const IMat3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(json::array({m(r, 0), m(r, 1), m(r, 2)}));
  return rows;
}

inline json to_json(const Face& f) { return {{"x", to_json(f.pos)}, {"i", f.kind}}; }

inline Face face_from_json(const json& j) {
  try {
    const auto& x = j.at("x");
    if (!x.is_array() || x.size() != 3) throw FormatError("face position must have 3 entries");
    return Face({x[0].get<std::int64_t>(), x[1].get<std::int64_t>(), x[2].get<std::int64_t>()},
                j.at("i").get<int>());
  } catch (const json::exception& e) {
    throw FormatError(std::string("face: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("face: ") + e.what());
  }
}

inline json faces_json(const Pattern& p) {
  json arr = json::array();
  for (const auto& f : p) arr.push_back(to_json(f));
  return arr;
}

inline Pattern faces_from_json(const json& arr) {
  if (!arr.is_array()) throw FormatError("face list must be an array");
  std::vector<Face> faces;
  for (const auto& f : arr) faces.push_back(face_from_json(f));
  return Pattern(std::move(faces));
}

// {"faces": [{"x": [0,0,0], "i": 1}, ...]}, faces in lexicographic order.
inline json to_json(const Pattern& p) { return {{"faces", faces_json(p)}}; }

inline Pattern pattern_from_json(const json& j) {
  if (!j.contains("faces")) throw FormatError("pattern: missing \"faces\"");
  return faces_from_json(j.at("faces"));
}

inline json to_json(const PatternLibrary& lib) {
  json protos = json::array();
  for (const auto& p : lib.protos()) protos.push_back(faces_json(p));
  json j = {{"name", lib.name()}, {"protos", protos}};
  if (!lib.notes().empty()) j["notes"] = lib.notes();
  return j;
}

inline PatternLibrary library_from_json(const json& j) {
  PatternLibrary lib(j.value("name", std::string{}));
  if (!j.contains("protos") || !j.at("protos").is_array())
    throw FormatError("library: missing \"protos\" array");
  for (const auto& p : j.at("protos")) {
    try {
      lib.add(faces_from_json(p));
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("library: ") + e.what());
    }
  }
  if (j.contains("notes"))
    for (const auto& n : j.at("notes")) lib.add_note(n.get<std::string>());
  return lib;
}

// Per kind i the (offset, kind) pairs of E1*(s)([0, i]*).
inline json to_json(const DualSubstitution& d) {
  json images = json::object();
  for (int i = 1; i <= 3; ++i) {
    json list = json::array();
    for (const auto& f : d.base_image(i)) list.push_back({{"offset", to_json(f.pos)}, {"i", f.kind}});
    images[std::to_string(i)] = list;
  }
  return {{"minv", to_json(d.inverse())}, {"images", images}};
}

inline json to_json(const SpectralReport& r) {
  json j = {{"matrix", to_json(r.matrix)},
            {"determinant", r.determinant},
            {"unimodular", r.unimodular()},
            {"char_poly", json::array({r.char_poly.c2, r.char_poly.c1, r.char_poly.c0})},
            {"irreducible", r.irreducible},
            {"beta", r.beta},
            {"conjugate_moduli", json::array({r.conjugate_moduli[0], r.conjugate_moduli[1]})},
            {"conjugates_complex", r.conjugates_complex},
            {"pisot_irreducible", r.is_pisot_irreducible}};
  j["det_sign"] = r.det_sign ? json(*r.det_sign) : json("not unimodular");
  return j;
}

inline json to_json(const SpectralFrame& f) {
  return {{"beta", f.beta},
          {"u", f.u},
          {"v", f.v},
          {"basis", json::array({f.basis[0], f.basis[1]})},
          {"residual_u", f.residual_u},
          {"residual_v", f.residual_v}};
}

inline json to_json(const CoverCertificate& c) {
  json pls = json::array();
  for (const auto& p : c.placements) pls.push_back({{"proto", p.proto}, {"offset", to_json(p.offset)}});
  json edges = json::array();
  for (const auto& [a, b] : c.edges) edges.push_back(json::array({to_json(a), to_json(b)}));
  json j = {{"verdict", c.covered ? "covered" : "not-covered"},
            {"host", faces_json(c.host)},
            {"placements", pls},
            {"edges", edges},
            {"components", c.components.size()}};
  if (c.vacuous) j["vacuous"] = true;
  if (!c.uncovered.empty()) j["uncovered"] = faces_json(Pattern(c.uncovered));
  return j;
}

inline json to_json(const StabilityReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"proto", c.proto}, {"dual", c.dual}, {"certificate", to_json(c.certificate)}});
  return {{"verdict", r.stable() ? "stable" : "not-stable"},
          {"passed", r.passed},
          {"total", r.checks.size()},
          {"checks", checks}};
}

inline json to_json(const IterateCertificate& c) {
  json j = {{"valid", c.valid},
            {"protos_connected", c.protos_connected},
            {"stability", to_json(c.stability)},
            {"seed_cover", to_json(c.seed_cover)},
            {"iterations", c.iterations},
            {"iterate_faces", c.iterate_faces},
            {"iterate_connected", c.iterate_connected}};
  if (!c.failure.empty()) j["failure"] = c.failure;
  return j;
}

inline json to_json(const Approximant& a) {
  json polys = json::array();
  for (std::size_t k = 0; k < a.polygons.size(); ++k) {
    json pts = json::array();
    for (const auto& p : a.polygons[k]) pts.push_back(json::array({p[0], p[1]}));
    polys.push_back({{"i", a.source_faces[k].kind}, {"vertices", pts}});
  }
  return {{"level", a.level},
          {"renormalized", a.renormalized},
          {"face_count", a.source_faces.size()},
          {"polygons", polys}};
}

}  // namespace rauzy::io
