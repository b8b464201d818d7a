#pragma once

// JSON views of the library's results. Every integer is emitted as a
// decimal string so consumers never lose precision.

#include <a2lab/birational.hpp>
#include <a2lab/conic_pell.hpp>
#include <a2lab/curves.hpp>
#include <a2lab/diophantine.hpp>
#include <a2lab/surface.hpp>
#include <a2lab/symbolic.hpp>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace a2lab::io {

using json = nlohmann::ordered_json;

inline json to_json(const Integer& v) { return to_string(v); }

inline json to_json(const Rational& v) { return to_string(v); }

template <std::size_t N>
inline json to_json(const std::array<Integer, N>& p) {
  json out = json::array();
  for (const auto& v : p) out.push_back(to_string(v));
  return out;
}

inline json to_json(const UniPoly& p) {
  json cs = json::array();
  for (const auto& c : p.coeffs()) cs.push_back(to_string(c));
  return {{"text", format(p)}, {"coefficients", cs}};
}

/// Terms as exponent vectors over the listed variables.
inline json to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json e = json::array();
    for (std::size_t i = 0; i < p.vars().size(); ++i) e.push_back(exponent(m, i));
    terms.push_back({{"exponents", e}, {"coefficient", to_string(c)}});
  }
  return {{"variables", p.vars()}, {"terms", terms}};
}

inline json to_json(const SurfaceSpec& s) {
  return {{"spec", format(s)}, {"a", to_json(s.a())}, {"b", to_json(s.b())}, {"c", to_string(s.c())}};
}

inline json to_json(const AnySurface& s) {
  if (const auto* spec = std::get_if<SurfaceSpec>(&s)) return to_json(*spec);
  return {{"spec", format(s)}, {"generic", true}};
}

inline json to_json(const GeneratorWord& w) {
  return {{"word", format(w.letters)}, {"source", format(w.source)}, {"target", format(w.target)}};
}

inline json to_json(const ComponentStats& s) {
  return {{"degrees", s.degrees}, {"monomials", s.monomials}, {"xyz_support", s.xyz_support}};
}

/// `with_polys` off keeps only the statistics (σ_{a,b} has ~10^6 terms).
inline json to_json(const PolyMap& m, bool with_polys = true) {
  json out{{"word", format(m.word)}, {"source", to_json(m.source)}, {"target", to_json(m.target)},
           {"stats", to_json(component_stats(m))}};
  if (with_polys) {
    json comps = json::array();
    for (const auto& c : m.components) comps.push_back(to_json(c));
    out["components"] = comps;
  }
  return out;
}

inline json to_json(const SpecializationStats& s) {
  return {{"values", {{"a2", s.values[0]}, {"a1", s.values[1]}, {"b2", s.values[2]}, {"b1", s.values[3]}}},
          {"unreduced", to_json(s.unreduced)},
          {"reduced", to_json(s.reduced)},
          {"reduced_leading_x", to_json(s.reduced_leading_x)},
          {"matches_generic_specialization", s.matches_generic_specialization}};
}

inline json to_json(const SigmaAbReport& r) {
  json specs = json::array();
  for (const auto& s : r.specializations) specs.push_back(to_json(s));
  json out{{"map", to_json(r.map, false)}, {"reduced", to_json(r.reduced)}};
  if (r.unreduced) out["unreduced"] = to_json(*r.unreduced);
  out["expected_degrees"] = kExpectedDegrees;
  out["expected_reduced_counts"] = kExpectedReducedCounts;
  out["specializations"] = specs;
  out["counts_match_expected"] = r.counts_match_expected;
  out["certificate"] = {{"surfaces", r.certificate.surfaces},
                        {"points", r.certificate.points},
                        {"agreements", r.certificate.agreements},
                        {"passed", r.certificate.passed()}};
  return out;
}

inline json to_json(const CensusReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back(to_json(p));
  return {{"surface", format(r.surface)},
          {"bound", r.bound},
          {"region", region_name(r.region)},
          {"count", r.count},
          {"fitted_c", r.fitted_c},
          {"picard_exponent", r.picard},
          {"heuristic_coefficient", to_string(r.heuristic_coefficient)},
          {"predictors",
           {{"log2_heuristic", r.predictors.log2_heuristic},
            {"log_picard", r.predictors.log_picard},
            {"log_picard_plus2", r.predictors.log_picard_plus2}}},
          {"lines_excluded", r.lines_excluded},
          {"points", pts}};
}

inline json to_json(const AutStructure& a) {
  json gens = json::array(), loops = json::array();
  for (const auto& g : a.generators) gens.push_back(format(g.letters));
  for (const auto& g : a.closed_loops) loops.push_back(format(g.letters));
  return {{"structure", a.label}, {"orbit_size", a.orbit_size}, {"generators", gens}, {"closed_loops", loops}};
}

inline json to_json(const CurveInvariants& c) { return json::array({to_string(c.p), to_string(c.q)}); }

inline json to_json(const CurveTrace& t) {
  json states = json::array();
  for (const auto& s : t.states) states.push_back(to_json(s));
  return {{"states", states}, {"unrealizable", t.unrealizable}, {"stalled", t.stalled}};
}

inline json to_json(const ConicEquation& q) {
  json cs = json::array();
  for (const auto& c : q.coeffs()) cs.push_back(to_string(c));
  return {{"text", format(q)}, {"coefficients", cs}, {"discriminant", to_string(q.discriminant())}};
}

inline json to_json(const AffineMap2& f) {
  return {{"matrix", to_json(f.m)}, {"translation", to_json(f.t)}, {"max_digits", f.max_digits()}};
}

inline json to_json(const ConicFamily& f, std::size_t sample = 10) {
  json out{{"equation", to_json(f.equation)}, {"classification", class_name(f.classification)}};
  json sols = json::array();
  for (const auto& p : f.generate(sample)) sols.push_back(to_json(p));
  out["solutions"] = sols;
  if (f.classification == ConicClass::Infinite && f.forward) {
    json seeds = json::array();
    for (const auto& s : f.seeds) seeds.push_back(to_json(s));
    out["seeds"] = seeds;
    out["unit"] = {to_string(f.unit_u), to_string(f.unit_v)};
    out["unit_power"] = f.unit_power;
    out["forward"] = to_json(*f.forward);
    out["backward"] = to_json(*f.backward);
  }
  if (!f.parametric.empty()) {
    json fams = json::array();
    for (const auto& p : f.parametric) fams.push_back({{"x", to_json(p.x)}, {"y", to_json(p.y)}});
    out["parametric"] = fams;
  }
  if (!f.z_data.empty()) {
    json zs = json::array();
    for (const auto& z : f.z_data)
      zs.push_back({{"alpha", to_string(z.alpha)},
                    {"beta", to_string(z.beta)},
                    {"gamma", to_string(z.gamma)},
                    {"period", z.period},
                    {"integral_residues", z.integral_residues}});
    out["z"] = zs;
  }
  return out;
}

inline json to_json(const ParamCurve& c) {
  json comps = json::array();
  for (const auto& p : c.components) comps.push_back(to_json(p));
  json out{{"label", c.label}, {"components", comps}, {"degrees", component_degrees(c)}};
  out["surface"] = c.surface ? json(format(*c.surface)) : json(nullptr);
  out["defect"] = format(c.defect);
  return out;
}

/// Writes through a temporary file in the same directory and renames it
/// into place, so a failed run never leaves a partial file behind.
inline void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ValidationError("cannot open '" + tmp.string() + "' for writing");
    os << content;
    os.flush();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ValidationError("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ValidationError("cannot move output into '" + path + "'");
  }
}

}  // namespace a2lab::io
