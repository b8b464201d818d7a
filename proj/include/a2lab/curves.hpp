#pragma once

// Parametrized curves on S0 (affine lines, the conic family φ), pushing
// curves through generator words, and the product morphisms
// S_{a1,b1} -> S_{a1 a2, b1 b2}.

#include <a2lab/multipoly.hpp>
#include <a2lab/surface.hpp>
#include <a2lab/symbolic.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace a2lab {

struct ParamCurve {
  std::string label;
  std::array<MultiPoly, 3> components;  // x, y, z in the parameters
  /// The surface the curve lies on; empty for φ, which is checked against
  /// xyz - x^3 - y^3 and carries its defect instead.
  std::optional<SurfaceSpec> surface;
  /// h(C) that construction proved; zero for curves on their surface.
  MultiPoly defect;

  const Vars& params() const { return components[0].vars(); }
};

inline const Vars& t_vars() {
  static const Vars v{"t"};
  return v;
}

inline const Vars& uv_vars() {
  static const Vars v{"u", "v"};
  return v;
}

inline MultiPoly in_t(const UniPoly& p) { return MultiPoly::from_unipoly(t_vars(), 0, p); }

inline Point3 evaluate(const ParamCurve& c, const std::vector<Integer>& params) {
  return {c.components[0].eval(params), c.components[1].eval(params), c.components[2].eval(params)};
}

struct OnSurfaceResult {
  bool on_surface = false;
  MultiPoly defect;  // h(x(t), y(t), z(t))
};

/// Substitutes the parametrization into a polynomial in x, y, z.
inline OnSurfaceResult on_surface_symbolic(const ParamCurve& c, const MultiPoly& h) {
  if (h.vars() != xyz_vars()) throw ValidationError("on_surface_symbolic: polynomial must be in x, y, z");
  OnSurfaceResult r;
  r.defect = h.substitute({c.components[0], c.components[1], c.components[2]});
  r.on_surface = r.defect.is_zero();
  return r;
}

/// Against the curve's own surface, or xyz - x^3 - y^3 when it has none.
inline OnSurfaceResult on_surface_symbolic(const ParamCurve& c) {
  if (c.surface) return on_surface_symbolic(c, c.surface->defining());
  const auto& v = xyz_vars();
  const MultiPoly x = MultiPoly::variable(v, 0), y = MultiPoly::variable(v, 1), z = MultiPoly::variable(v, 2);
  return on_surface_symbolic(c, x * y * z - x.pow(3) - y.pow(3));
}

/// ℓ1, ℓ2, ℓ3 and ν on S0, and φ. Each is checked on construction.
inline std::vector<ParamCurve> line_catalog() {
  const SurfaceSpec s0 = surface_S0();
  const MultiPoly t = in_t(UniPoly{0, 1});
  auto cst = [](long c) { return in_t(UniPoly{c}); };
  std::vector<ParamCurve> out{
      {"l1", {cst(0), cst(-1), t}, s0, {}},
      {"l2", {cst(-1), cst(0), t}, s0, {}},
      {"l3", {t, in_t(UniPoly{-1, -1}), cst(3)}, s0, {}},
      {"nu", {in_t(UniPoly{-1, 1, -1}), t, in_t(UniPoly{-3, 3, -2, 1})}, s0, {}},
  };
  const MultiPoly u = MultiPoly::variable(uv_vars(), 0), v = MultiPoly::variable(uv_vars(), 1);
  const Integer two(2), eight(8), ten(10);
  out.push_back({"phi", {u * u - u * v + v * v, u * u + u * v + v * v, two * (u * u) + ten * (v * v)}, std::nullopt,
                 eight * v.pow(6)});
  for (auto& c : out) {
    auto r = on_surface_symbolic(c);
    if (c.defect.vars().empty()) c.defect = MultiPoly(c.params());
    if (r.defect != c.defect) throw InternalError("catalog curve " + c.label + " fails its defect identity");
  }
  return out;
}

inline ParamCurve catalog_curve(const std::string& label) {
  for (auto& c : line_catalog())
    if (c.label == label) return c;
  throw ValidationError("unknown catalog curve '" + label + "'");
}

/// The curve t -> w(C(t)) on w.target, verified there.
inline ParamCurve push_curve(const GeneratorWord& w, const ParamCurve& c) {
  if (!c.surface) throw ValidationError("push_curve: curve has no surface");
  if (*c.surface != w.source) throw ValidationError("push_curve: curve is not on the word's source surface");
  ParamCurve out{c.label, c.components, w.target, c.defect};
  if (!w.letters.empty()) {
    PolyMap m = word_map(w.letters, AnySurface{w.source});
    std::vector<MultiPoly> images{c.components[0], c.components[1], c.components[2]};
    for (std::size_t i = 0; i < 3; ++i) out.components[i] = m.components[i].substitute(images);
    out.label = format(w.letters) + "(" + c.label + ")";
  }
  if (!on_surface_symbolic(out).on_surface) throw InternalError("push_curve: image left the target surface");
  return out;
}

inline std::array<int, 3> component_degrees(const ParamCurve& c) {
  return {c.components[0].total_degree(), c.components[1].total_degree(), c.components[2].total_degree()};
}

/// Substitutes t -> f(t) in a one-parameter curve.
inline ParamCurve reparametrize(const ParamCurve& c, const UniPoly& f) {
  if (c.params() != t_vars()) throw ValidationError("reparametrize: one-parameter curves only");
  ParamCurve out = c;
  for (auto& comp : out.components) comp = comp.substitute({in_t(f)});
  return out;
}

/// Whether p = C(t) for some integer t, when one component of C is
/// t -> ±t + k (enough for the lines and ν).
inline bool curve_contains(const ParamCurve& c, const Point3& p) {
  if (c.params() != t_vars()) return false;
  for (std::size_t i = 0; i < 3; ++i) {
    UniPoly f = c.components[i].to_unipoly(0);
    if (f.degree() != 1 || abs(f.leading()) != 1) continue;
    Integer t = (p[i] - f.constant()) * f.leading();
    return evaluate(c, {t}) == p;
  }
  // Constant curve components only.
  return evaluate(c, {Integer(0)}) == p;
}

/// Points on the known affine lines of s: the fibers x = 0 (with b(y) = 0)
/// and y = 0 (with a(x) = 0), plus the catalog curves when s is S0.
inline bool on_known_line(const SurfaceSpec& s, const Point3& p) {
  if (p[0] == 0 || p[1] == 0) return true;
  if (s != surface_S0()) return false;
  for (const auto& c : line_catalog())
    if (c.surface && curve_contains(c, p)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Product morphisms

/// Sends P on xyz = a1(x) + b1(y) - 1 to a point on xyz = a1a2(x) + b1b2(y) - 1
/// via u = xz - b1*(y), v = yz - a1*(x), u' = u a2(x), v' = v b2(y),
/// z' = u'v' - (a1a2)*(x) (b1b2)*(y).
inline Point3 product_morphism(const UniPoly& a1, const UniPoly& b1, const Point3& p, const UniPoly& a2,
                               const UniPoly& b2) {
  for (const UniPoly* f : {&a1, &b1, &a2, &b2})
    if (f->constant() != 1) throw ValidationError("product_morphism: all factors need constant term 1");
  const Integer &x = p[0], &y = p[1], &z = p[2];
  if (x * y * z != a1.eval(x) + b1.eval(y) - 1) throw ValidationError("product_morphism: point is not on the source surface");
  auto star_or_zero = [](const UniPoly& f) { return f.degree() >= 1 ? star(f) : UniPoly{}; };
  const Integer u = x * z - star_or_zero(b1).eval(y);
  const Integer v = y * z - star_or_zero(a1).eval(x);
  const UniPoly a = a1 * a2, b = b1 * b2;
  const Integer zp = u * a2.eval(x) * v * b2.eval(y) - star_or_zero(a).eval(x) * star_or_zero(b).eval(y);
  Point3 out{x, y, zp};
  if (x * y * zp != a.eval(x) + b.eval(y) - 1) throw InternalError("product_morphism: image is not on the target surface");
  return out;
}

}  // namespace a2lab
