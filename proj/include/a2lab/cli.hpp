#pragma once

// Command-line front end. dispatch() parses a token list, runs one
// subcommand and returns the process exit status: 0 on success, 2 for
// invalid input, 1 when an internal consistency check fails.

#include <a2lab/birational.hpp>
#include <a2lab/conic_pell.hpp>
#include <a2lab/curves.hpp>
#include <a2lab/diophantine.hpp>
#include <a2lab/io.hpp>
#include <a2lab/surface.hpp>
#include <a2lab/symbolic.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace a2lab::cli {

using io::json;

/// Parsed flags shared by the subcommands.
struct RunConfig {
  std::string command;
  std::string surface = "S0";
  std::string target;  // second surface for classify
  std::int64_t N = 100;
  std::string region = "positive";
  bool exclude_lines = false;
  std::string point;
  std::string word;
  std::string out;
  unsigned workers = 1;
  std::size_t count = 10;
  std::size_t iterate = 0;
  std::string curve;
  std::string invariants;
  bool sigma_ab = false;
  bool generic = false;
  bool with_polys = true;
  bool lift = false;
  std::string format = "csv";
};

/// A2LAB_WORKERS, or 1 when unset or malformed.
inline unsigned default_workers() {
  if (const char* env = std::getenv("A2LAB_WORKERS")) {
    try {
      long v = std::stol(env);
      if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

inline Point2 parse_point2(std::string_view text) {
  auto parts = split(text, ',');
  if (parts.size() != 2 && parts.size() != 3) throw ValidationError("point must look like x,y or x,y,z");
  return {parse_integer(parts[0]), parse_integer(parts[1])};
}

namespace detail {

inline json check(const std::string& name, bool ok) { return {{"check", name}, {"passed", ok}}; }

/// σx∘σx, σy∘σy, τ∘τ are identities modulo the ideal, and each generator
/// pulls the target equation back into the source ideal.
inline json run_verify(const RunConfig& cfg, bool& all_ok) {
  const SurfaceSpec s = parse_surface(cfg.surface);
  json checks = json::array();
  auto record = [&](const std::string& name, bool ok) {
    checks.push_back(check(name, ok));
    all_ok = all_ok && ok;
  };
  const AnySurface any{s};
  for (Letter l : {Letter::SigmaX, Letter::SigmaY, Letter::Tau}) {
    record(letter_name(l) + " maps into " + format(push_surface(l, s)), verify_map(generator_map(l, s)));
    record(letter_name(l) + "^2 = id", is_identity_mod(word_map({l, l}, any)));
  }
  const SymbolicSurface generic;
  record("generic sy maps into its target", verify_map(generator_map(Letter::SigmaY, generic)));
  record("generic sx maps into its target", verify_map(generator_map(Letter::SigmaX, generic)));
  json out{{"surface", format(s)}, {"checks", checks}};
  if (cfg.sigma_ab) {
    auto rep = sigma_ab_symbolic();
    record("sigma_ab degrees", rep.reduced.degrees == kExpectedDegrees);
    record("sigma_ab pointwise certificate", rep.certificate.passed());
    out["checks"] = checks;
    out["sigma_ab"] = io::to_json(rep);
  }
  out["passed"] = all_ok;
  return out;
}

inline std::string run_census(const RunConfig& cfg) {
  const SurfaceSpec s = parse_surface(cfg.surface);
  CensusOptions opts;
  opts.workers = cfg.workers;
  if (cfg.exclude_lines) opts.exclude = on_known_line;
  auto rep = census(s, cfg.N, parse_region(cfg.region), opts);
  if (cfg.format == "json") return io::to_json(rep).dump(2) + "\n";
  if (cfg.format != "csv") throw ValidationError("census format must be csv or json");
  return census_csv(rep);
}

inline json run_reduce(const RunConfig& cfg) {
  if (!cfg.invariants.empty()) {
    auto parts = split(cfg.invariants, ',');
    if (parts.size() != 2) throw ValidationError("invariants must look like p,q");
    auto trace = reduce_curve_invariants({parse_integer(parts[0]), parse_integer(parts[1])});
    return io::to_json(trace);
  }
  if (parse_surface(cfg.surface) != surface_S0()) throw ValidationError("reduce: only S0 has a fundamental domain here");
  if (cfg.point.empty()) throw ValidationError("reduce: --point is required");
  auto [q, w] = reduce_to_fundamental_domain(parse_point(cfg.point));
  return {{"point", io::to_json(q)}, {"word", format(w.letters)}};
}

inline json run_orbit(const RunConfig& cfg) {
  const SurfaceSpec s = parse_surface(cfg.surface);
  if (cfg.point.empty()) throw ValidationError("orbit: --point is required");
  const Point3 p = parse_point(cfg.point);
  if (!contains(s, p)) throw ValidationError("orbit: point is not on the surface");
  json out{{"surface", format(s)}, {"start", io::to_json(p)}};
  if (cfg.iterate > 0) {
    json pts = json::array();
    Point3 q = p;
    for (std::size_t i = 0; i < cfg.iterate; ++i) {
      q = sigma_ab(s, q);
      pts.push_back({{"point", io::to_json(q)}, {"max_abs_xy", to_string(max_abs_xy(q))}});
    }
    out["sigma_ab_iterates"] = pts;
    return out;
  }
  auto w = GeneratorWord::from_letters(parse_letters(cfg.word), s);
  auto tp = apply_word(w, p);
  out["word"] = format(w.letters);
  out["target"] = format(tp.surface);
  out["point"] = io::to_json(tp.point);
  return out;
}

inline json run_classify(const RunConfig& cfg) {
  const SurfaceSpec s = parse_surface(cfg.surface);
  json orbit = json::array();
  for (const auto& t : eight_orbit(s)) orbit.push_back(format(t));
  json out{{"surface", format(s)}, {"eight_orbit", orbit}, {"aut", io::to_json(aut_structure(s))}};
  if (!cfg.target.empty()) {
    auto w = are_isomorphic(s, parse_surface(cfg.target));
    out["isomorphic"] = w.has_value();
    if (w) out["word"] = format(w->letters);
  }
  return out;
}

inline json run_conic(const RunConfig& cfg) {
  const SurfaceSpec s = parse_surface(cfg.surface);
  if (cfg.point.empty()) throw ValidationError("conic: --point is required");
  const Point2 p = parse_point2(cfg.point);
  const Pencil pen = pencil(s);
  ConicFamily fam = solve_conic(member_through(pen, p[0], p[1]));
  json out{{"surface", format(s)},
           {"pencil", {{"p", io::to_json(pen.p)}, {"q", io::to_json(pen.q)}}},
           {"through", io::to_json(p)}};
  if (cfg.lift) {
    fam = lift_family(s, fam);
    json pts = json::array();
    for (const auto& q : lifted_points(s, fam, cfg.count)) pts.push_back(io::to_json(q));
    out["lifted_points"] = pts;
  }
  out["family"] = io::to_json(fam, cfg.count);
  return out;
}

inline json run_lines(const RunConfig& cfg) {
  json out = json::array();
  std::vector<ParamCurve> curves;
  if (cfg.curve.empty())
    curves = line_catalog();
  else
    curves.push_back(catalog_curve(cfg.curve));
  for (const auto& c : curves) {
    if (!cfg.word.empty()) {
      if (!c.surface) throw ValidationError("lines: " + c.label + " has no surface to push along");
      out.push_back(io::to_json(push_curve(GeneratorWord::from_letters(parse_letters(cfg.word), *c.surface), c)));
    } else {
      out.push_back(io::to_json(c));
    }
  }
  return out;
}

inline json run_compose(const RunConfig& cfg) {
  const auto letters = parse_letters(cfg.word);
  const AnySurface s = cfg.generic ? AnySurface{SymbolicSurface{}} : AnySurface{parse_surface(cfg.surface)};
  return io::to_json(word_map(letters, s), cfg.with_polys);
}

}  // namespace detail

inline int dispatch(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  RunConfig cfg;
  cfg.workers = default_workers();

  CLI::App app{"Integral points and automorphisms of xyz = a(x) + b(y) - c", "a2lab"};
  app.require_subcommand(1);
  auto surface_opt = [&](CLI::App* sub) {
    sub->add_option("--surface", cfg.surface, "a=<coeffs>;b=<coeffs>, S0, or Tn,m");
  };
  auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "write the report here (atomic)"); };

  auto* verify = app.add_subcommand("verify", "symbolic identity suite");
  surface_opt(verify);
  verify->add_flag("--sigma-ab", cfg.sigma_ab, "also build the generic sigma_ab report (slow)");
  out_opt(verify);

  auto* cen = app.add_subcommand("census", "integral points in a box");
  surface_opt(cen);
  cen->add_option("--N", cfg.N, "box bound")->check(CLI::Range(std::int64_t{1}, std::int64_t{100'000'000}));
  cen->add_option("--region", cfg.region, "positive or symmetric");
  cen->add_flag("--exclude-lines", cfg.exclude_lines, "drop points on known affine lines");
  cen->add_option("--workers", cfg.workers, "threads")->check(CLI::Range(1u, 1024u));
  cen->add_option("--format", cfg.format, "csv or json");
  out_opt(cen);

  auto* red = app.add_subcommand("reduce", "fundamental-domain reduction on S0");
  surface_opt(red);
  red->add_option("--point", cfg.point, "x,y,z");
  red->add_option("--invariants", cfg.invariants, "p,q: run the curve-invariant reduction instead");
  out_opt(red);

  auto* orb = app.add_subcommand("orbit", "apply a word or iterate sigma_ab");
  surface_opt(orb);
  orb->add_option("--point", cfg.point, "x,y,z");
  orb->add_option("--word", cfg.word, "letters sx,sy,t applied left to right");
  orb->add_option("--iterate", cfg.iterate, "number of sigma_ab steps");
  out_opt(orb);

  auto* cls = app.add_subcommand("classify", "eight-orbit, automorphism structure, isomorphism");
  surface_opt(cls);
  cls->add_option("--to", cfg.target, "test isomorphism with this surface");
  out_opt(cls);

  auto* con = app.add_subcommand("conic", "pencil member through a point, its solutions and lift");
  surface_opt(con);
  con->add_option("--point", cfg.point, "x,y");
  con->add_option("--count", cfg.count, "solutions to list");
  con->add_flag("--lift", cfg.lift, "lift the family to integral points on the surface");
  out_opt(con);

  auto* lin = app.add_subcommand("lines", "curve catalog and push-forward along a word");
  lin->add_option("--curve", cfg.curve, "l1, l2, l3, nu or phi");
  lin->add_option("--word", cfg.word, "push the curves along this word");
  out_opt(lin);

  auto* cmp = app.add_subcommand("compose", "export the polynomial map of a word");
  surface_opt(cmp);
  cmp->add_option("--word", cfg.word, "letters sx,sy,t")->required();
  cmp->add_flag("--generic", cfg.generic, "use indeterminate coefficients a1,a2,b1,b2");
  cmp->add_flag("!--no-polys", cfg.with_polys, "only report degrees and term counts");
  out_opt(cmp);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::string text;
    int status = 0;
    if (verify->parsed()) {
      bool ok = true;
      text = detail::run_verify(cfg, ok).dump(2) + "\n";
      status = ok ? 0 : 1;
    } else if (cen->parsed()) {
      text = detail::run_census(cfg);
    } else if (red->parsed()) {
      text = detail::run_reduce(cfg).dump(2) + "\n";
    } else if (orb->parsed()) {
      text = detail::run_orbit(cfg).dump(2) + "\n";
    } else if (cls->parsed()) {
      text = detail::run_classify(cfg).dump(2) + "\n";
    } else if (con->parsed()) {
      text = detail::run_conic(cfg).dump(2) + "\n";
    } else if (lin->parsed()) {
      text = detail::run_lines(cfg).dump(2) + "\n";
    } else if (cmp->parsed()) {
      text = detail::run_compose(cfg).dump(2) + "\n";
    }
    if (cfg.out.empty())
      out << text;
    else
      io::write_atomic(cfg.out, text);
    return status;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace a2lab::cli
