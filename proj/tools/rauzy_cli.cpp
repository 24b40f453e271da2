// Command-line front end: analyze, iterate, verify, discover, complexity,
// hausdorff.  Exit codes: 0 success / verified, 1 verification failed,
// 2 input error.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rauzy/io.hpp"
#include "rauzy/rauzy.hpp"

namespace {

using namespace rauzy;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Substitution load_substitution(const std::string& path) {
  return io::substitution_from_json(io::read_json_file(path));
}

// "1", "2", "3" name the Arnoux-Rauzy substitutions, "eIJ" the elementary
// substitution epsilon_{I,J}; anything else is a substitution JSON file.
Substitution parse_generator(const std::string& token) {
  if (token == "1" || token == "2" || token == "3") return arnoux_rauzy(Letter(token[0] - '0'));
  if (token.size() == 3 && token[0] == 'e')
    return elementary(Letter(token[1] - '0'), Letter(token[2] - '0'));
  return load_substitution(token);
}

std::vector<DualSubstitution> parse_generators(const std::vector<std::string>& tokens) {
  std::vector<DualSubstitution> duals;
  for (const auto& t : tokens) {
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) duals.push_back(build_dual(parse_generator(part)));
  }
  if (duals.empty()) throw InputError("no generators given");
  return duals;
}

std::string matrix_text(const IMat3& m) {
  std::ostringstream os;
  for (int r = 0; r < 3; ++r) os << "  [" << m(r, 0) << ' ' << m(r, 1) << ' ' << m(r, 2) << "]\n";
  return os.str();
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const std::string& path, bool as_json) {
  const Substitution s = load_substitution(path);
  const SpectralReport r = spectral_report(s);
  json out = {{"substitution", io::to_json(s)}, {"spectral", io::to_json(r)}};
  if (r.unimodular()) out["dual"] = io::to_json(build_dual(s));
  if (r.is_pisot_irreducible) out["frame"] = io::to_json(spectral_frame(s));
  if (as_json) {
    std::cout << out.dump(2) << '\n';
    return kOk;
  }
  std::cout << "incidence matrix:\n" << matrix_text(r.matrix);
  std::cout << "determinant: " << r.determinant << (r.unimodular() ? " (unimodular)" : " (not unimodular)")
            << '\n';
  std::cout << "characteristic polynomial: x^3 + (" << r.char_poly.c2 << ")x^2 + (" << r.char_poly.c1
            << ")x + (" << r.char_poly.c0 << ")" << (r.irreducible ? ", irreducible" : ", reducible")
            << '\n';
  std::cout << std::setprecision(12) << "dominant eigenvalue: " << r.beta << '\n'
            << "conjugate moduli: " << r.conjugate_moduli[0] << ", " << r.conjugate_moduli[1] << '\n';
  std::cout << (r.is_pisot_irreducible ? "unimodular Pisot irreducible" : "not Pisot irreducible")
            << '\n';
  if (r.unimodular()) {
    const DualSubstitution d = build_dual(s);
    for (int i = 1; i <= 3; ++i) {
      std::cout << "E1*([0," << i << "]*) =";
      for (const auto& f : d.base_image(i)) std::cout << ' ' << f;
      std::cout << '\n';
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- iterate

struct IterateOptions {
  std::string subst;
  std::size_t n = 0;
  std::string seed;
  std::string out;
  std::string render;
  std::string approximant_out;
  bool check_connected = false;
  bool scan = false;
  bool no_renormalize = false;
  double tolerance = 1e-10;
};

int cmd_iterate(const IterateOptions& o) {
  const Substitution s = load_substitution(o.subst);
  const DualSubstitution d = build_dual(s);
  const Pattern seed = o.seed.empty() ? Pattern::seed() : io::pattern_from_json(io::read_json_file(o.seed));
  json meta = {{"substitution", io::to_json(s)},
               {"n", o.n},
               {"seed", o.seed.empty() ? "U" : o.seed},
               {"renormalize", !o.no_renormalize},
               {"tolerance", o.tolerance}};

  if (o.scan) {
    Pattern cur = seed;
    std::size_t first = 0;
    for (std::size_t k = 1; k <= o.n; ++k) {
      cur = apply(d, cur);
      if (!pattern_connected(cur)) {
        first = k;
        break;
      }
    }
    if (first)
      std::cout << "first disconnected level: " << first << " (finite-level evidence)\n";
    else
      std::cout << "all levels 1.." << o.n << " connected\n";
    return first && o.check_connected ? kFailed : kOk;
  }

  Pattern cur = seed;
  for (std::size_t k = 0; k < o.n; ++k) cur = apply(d, cur);
  std::cout << "level " << o.n << ": " << cur.size() << " faces\n";
  if (o.seed.empty())
    std::cout << "sum of entries of M^" << o.n << ": " << power(d.matrix(), unsigned(o.n)).sum() << '\n';
  if (!o.out.empty()) {
    json j = io::to_json(cur);
    j["metadata"] = meta;
    io::write_text_file(o.out, j.dump(1) + "\n");
  }
  if (!o.render.empty() || !o.approximant_out.empty()) {
    const SpectralFrame frame = spectral_frame(s, o.tolerance);
    Approximant a = project_pattern(frame, cur, o.n, !o.no_renormalize);
    a.level = o.n;
    if (!o.render.empty()) io::write_text_file(o.render, render_svg(a));
    if (!o.approximant_out.empty()) {
      json j = io::to_json(a);
      j["metadata"] = meta;
      j["frame"] = io::to_json(frame);
      io::write_text_file(o.approximant_out, j.dump(1) + "\n");
    }
  }
  if (o.check_connected) {
    const Connectivity c = pattern_components(cur);
    std::cout << (c.connected ? "connected" : "NOT connected") << " (" << c.components.size()
              << " component" << (c.components.size() == 1 ? "" : "s") << ")\n";
    if (!c.connected) return kFailed;
  }
  return kOk;
}

// ----------------------------------------------------------------- verify

int cmd_verify(const std::string& lib_path, const std::vector<std::string>& generators,
               std::size_t certify, const std::string& json_out) {
  const PatternLibrary lib = io::library_from_json(io::read_json_file(lib_path));
  const auto duals = parse_generators(generators);
  const StabilityReport r = is_stable(lib, duals);
  const CoverCertificate seed = is_covered(Pattern::seed(), lib);
  json out = {{"library", lib.name()}, {"stability", io::to_json(r)}, {"seed_cover", io::to_json(seed)}};
  std::cout << (r.stable() ? "STABLE" : "NOT STABLE") << " (" << r.passed << '/' << r.checks.size()
            << " checks)\n";
  for (const auto& c : r.checks)
    if (!c.certificate.covered) {
      std::cout << "  image of pattern " << c.proto << " under generator " << c.dual
                << " not covered: " << detail::describe(c.image) << '\n';
      break;
    }
  std::cout << "U " << (seed.covered ? "covered" : "NOT covered") << '\n';
  bool ok = r.stable() && seed.covered;
  if (certify > 0) {
    const IterateCertificate c = certify_connected_iterates(duals, lib, certify);
    out["iterates"] = io::to_json(c);
    std::cout << "iterate " << certify << ": " << c.iterate_faces << " faces, certificate "
              << (c.valid ? "valid" : "INVALID (" + c.failure + ")") << ", direct check "
              << (c.iterate_connected ? "connected" : "NOT connected") << '\n';
    ok = ok && c.valid && c.iterate_connected;
  }
  if (!json_out.empty()) io::write_text_file(json_out, out.dump(1) + "\n");
  return ok ? kOk : kFailed;
}

// --------------------------------------------------------------- discover

int cmd_discover(const std::vector<std::string>& generators, const DiscoveryBudget& budget,
                 const std::string& seed_path, const std::string& out, const std::string& render) {
  const auto duals = parse_generators(generators);
  const PatternLibrary seed =
      seed_path.empty() ? PatternLibrary("seed") : io::library_from_json(io::read_json_file(seed_path));
  DiscoveryResult r = discover_stable_set(duals, seed, budget);
  for (const auto& line : r.log) std::cout << line << '\n';
  if (!r.success) {
    std::cout << "discovery FAILED\n";
    for (const auto& p : r.failing_images) std::cout << "  failing image: " << detail::describe(p) << '\n';
    return kFailed;
  }
  r.library.set_name("discovered");
  r.library.add_note("completion loop, lookahead " + std::to_string(r.lookahead) + ", budget " +
                     std::to_string(budget.max_protos) + " patterns x " +
                     std::to_string(budget.max_faces) + " faces");
  const StabilityReport check = is_stable(r.library, duals);
  const bool seed_ok = is_covered(Pattern::seed(), r.library).covered;
  std::cout << r.library.size() << " patterns; re-verification: "
            << (check.stable() ? "STABLE" : "NOT STABLE") << " (" << check.passed << '/'
            << check.checks.size() << " checks), U " << (seed_ok ? "covered" : "NOT covered") << '\n';
  if (!out.empty()) io::write_text_file(out, io::to_json(r.library).dump(1) + "\n");
  if (!render.empty()) io::write_text_file(render, render_library_svg(r.library.protos()));
  return check.stable() && seed_ok ? kOk : kFailed;
}

// ------------------------------------------------------------- complexity

int cmd_complexity(const std::string& path, std::size_t n) {
  const Substitution s = load_substitution(path);
  const FactorCount fc = factor_count(s, n);
  std::cout << "factors of length " << n << ": " << fc.count << " (saturated at prefix length "
            << fc.prefix_length << ")\n";
  return kOk;
}

// -------------------------------------------------------------- hausdorff

int cmd_hausdorff(const std::string& path, std::size_t n, std::size_t m, double resolution) {
  const Substitution s = load_substitution(path);
  const Approximant a = approximant(s, n);
  const Approximant b = approximant(s, m);
  const HausdorffResult h = hausdorff_distance(a, b, resolution);
  std::cout << std::setprecision(10) << "d(D_" << n << ", D_" << m << ") = " << h.distance
            << " (+/- " << h.error_bound << ", " << h.samples << " samples)\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual substitutions, stable pattern libraries and Rauzy fractal approximants"};
  app.require_subcommand(1);

  bool as_json = false;
  std::string subst;
  auto* analyze = app.add_subcommand("analyze", "incidence matrix, spectral report, dual images");
  analyze->add_option("substitution", subst, "substitution JSON file")->required();
  analyze->add_flag("--json", as_json, "print JSON");

  IterateOptions it;
  auto* iterate = app.add_subcommand("iterate", "iterate E1*(s) on the seed");
  iterate->add_option("substitution", it.subst, "substitution JSON file")->required();
  iterate->add_option("-n,--levels", it.n, "number of iterations")->required();
  iterate->add_option("--seed", it.seed, "seed pattern JSON (default U)");
  iterate->add_option("--out", it.out, "write the iterate as pattern JSON");
  iterate->add_option("--render", it.render, "write an SVG of the approximant");
  iterate->add_option("--approximant", it.approximant_out, "write approximant polygons as JSON");
  iterate->add_flag("--check-connected", it.check_connected, "exit 1 when the iterate is disconnected");
  iterate->add_flag("--scan", it.scan, "report the first disconnected level in 1..n");
  iterate->add_flag("--no-renormalize", it.no_renormalize, "project without applying M^n");
  iterate->add_option("--tolerance", it.tolerance, "eigenvector residual tolerance");

  std::string lib_path;
  std::vector<std::string> generators{"1,2,3"};
  std::size_t certify = 0;
  std::string json_out;
  auto* verify = app.add_subcommand("verify", "check stability of a pattern library");
  verify->add_option("library", lib_path, "library JSON file")->required();
  verify->add_option("-g,--generators", generators, "generators: 1,2,3, eIJ or substitution files");
  verify->add_option("--certify", certify, "also certify connectedness of the n-th iterate");
  verify->add_option("--json", json_out, "write the certificate JSON");

  DiscoveryBudget budget;
  std::string seed_lib, lib_out, lib_render;
  auto* discover = app.add_subcommand("discover", "search for a stable pattern library");
  discover->add_option("-g,--generators", generators, "generators: 1,2,3, eIJ or substitution files");
  discover->add_option("--max-protos", budget.max_protos, "pattern budget");
  discover->add_option("--max-faces", budget.max_faces, "face budget per pattern");
  discover->add_option("--max-lookahead", budget.max_lookahead, "lookahead depth limit");
  discover->add_option("--seed", seed_lib, "seed library JSON");
  discover->add_option("--out", lib_out, "write the library JSON");
  discover->add_option("--render", lib_render, "write an SVG of the library");

  std::size_t length = 1;
  auto* complexity = app.add_subcommand("complexity", "factor complexity of the fixed point");
  complexity->add_option("substitution", subst, "substitution JSON file")->required();
  complexity->add_option("-n,--length", length, "factor length")->required();

  std::size_t hn = 1, hm = 0;
  double resolution = 0.01;
  auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance between approximants");
  hausdorff->add_option("substitution", subst, "substitution JSON file")->required();
  hausdorff->add_option("-n", hn, "first level")->required();
  hausdorff->add_option("-m", hm, "second level (default n+1)");
  hausdorff->add_option("--resolution", resolution, "sample spacing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze) return cmd_analyze(subst, as_json);
    if (*iterate) return cmd_iterate(it);
    if (*verify) return cmd_verify(lib_path, generators, certify, json_out);
    if (*discover) return cmd_discover(generators, budget, seed_lib, lib_out, lib_render);
    if (*complexity) return cmd_complexity(subst, length);
    if (*hausdorff) return cmd_hausdorff(subst, hn, hm ? hm : hn + 1, resolution);
  } catch (const rauzy::io::FormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}
