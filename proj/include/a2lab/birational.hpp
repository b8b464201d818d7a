#pragma once

// Point-level action of σx, σy, τ and the composite σ_{a,b}; reduction to
// the fundamental domain on S0; the (p,q) curve-invariant dynamics.

#include <a2lab/multipoly.hpp>
#include <a2lab/surface.hpp>

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace a2lab {

/// Horner evaluation of a univariate polynomial at a polynomial argument.
inline MultiPoly compose(const UniPoly& f, const MultiPoly& arg) {
  MultiPoly acc(arg.vars());
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it)
    acc = acc * arg + MultiPoly::constant(arg.vars(), *it);
  return acc;
}

namespace detail {

/// Quotient of n by d where d has leading coefficient ±1; throws unless
/// the remainder vanishes.
inline UniPoly exact_quotient(const UniPoly& n, const UniPoly& d) {
  if (abs(d.leading()) != 1) throw InternalError("exact_quotient: divisor must be monic up to sign");
  std::vector<Integer> rem(n.coeffs());
  if (n.degree() < d.degree()) {
    if (!n.is_zero()) throw InternalError("exact_quotient: nonzero remainder");
    return {};
  }
  std::vector<Integer> q(static_cast<std::size_t>(n.degree() - d.degree()) + 1);
  for (int k = n.degree() - d.degree(); k >= 0; --k) {
    Integer coef = rem[static_cast<std::size_t>(k + d.degree())] * d.leading();
    q[static_cast<std::size_t>(k)] = coef;
    for (int i = 0; i <= d.degree(); ++i)
      rem[static_cast<std::size_t>(k + i)] -= coef * d.coeffs()[static_cast<std::size_t>(i)];
  }
  for (const auto& r : rem)
    if (r != 0) throw InternalError("exact_quotient: nonzero remainder");
  return UniPoly(std::move(q));
}

/// Polynomial formula for σy : S_{a,b} -> S_{ā,b} in any degree.
///   x̄ = yz - a*(x),  ȳ = y,
///   z̄ = (ā*(x̄) + x)/y, made polynomial by splitting E = ā*(x̄) + x as
///   E0(x) + y E1 with a(x) | E0 and a(x) = y (xz - b*(y)) on the surface.
inline std::array<MultiPoly, 3> sigma_y_formula(const SurfaceSpec& s) {
  const auto& v = xyz_vars();
  const MultiPoly x = MultiPoly::variable(v, 0), y = MultiPoly::variable(v, 1), z = MultiPoly::variable(v, 2);
  const MultiPoly xbar = y * z - compose(star(s.a()), x);
  const MultiPoly e = compose(star(bar(s.a())), xbar) + x;
  auto by_y = e.coefficients_in(1);
  MultiPoly e0 = by_y.empty() ? MultiPoly(v) : by_y[0];
  MultiPoly e1 = (e - e0);
  // e1 is divisible by y termwise.
  std::vector<MultiPoly::Term> shifted;
  for (const auto& [m, c] : e1.terms()) shifted.emplace_back(with_exponent(m, 1, exponent(m, 1) - 1), c);
  e1 = MultiPoly::from_terms(v, std::move(shifted));
  UniPoly r = exact_quotient(e0.to_unipoly(0), s.a());
  MultiPoly zbar = e1 + compose(r, x) * (x * z - compose(star(s.b()), y));
  return {xbar, y, zbar};
}

inline std::array<MultiPoly, 3> swap_xy(const std::array<MultiPoly, 3>& f) {
  const auto& v = xyz_vars();
  std::vector<MultiPoly> img{MultiPoly::variable(v, 1), MultiPoly::variable(v, 0), MultiPoly::variable(v, 2)};
  return {f[1].substitute(img), f[0].substitute(img), f[2].substitute(img)};
}

}  // namespace detail

/// Polynomial components (in x,y,z) of one generator leaving `s`.
/// σx is σy conjugated by the coordinate swap.
inline std::array<MultiPoly, 3> generator_formula(Letter l, const SurfaceSpec& s) {
  const auto& v = xyz_vars();
  switch (l) {
    case Letter::Tau: return {MultiPoly::variable(v, 1), MultiPoly::variable(v, 0), MultiPoly::variable(v, 2)};
    case Letter::SigmaY: return detail::sigma_y_formula(s);
    case Letter::SigmaX: {
      auto swapped = make_surface(s.b(), s.a());
      return detail::swap_xy(detail::sigma_y_formula(swapped));
    }
  }
  throw InternalError("unreachable letter");
}

/// Applies one generator to a point of `s`; returns the target surface and
/// the image point. The new coordinate of σy is z̄ = (ā(x̄)+b(y)-c)/(x̄ y)
/// by exact division; on the locus x̄ y = 0 the polynomial formula is used.
inline std::pair<SurfaceSpec, Point3> apply_generator(Letter l, const SurfaceSpec& s, const Point3& p) {
  if (!contains(s, p)) throw ValidationError("apply_generator: point " + format(p) + " is not on the surface");
  SurfaceSpec target = push_surface(l, s);
  Point3 out;
  switch (l) {
    case Letter::Tau: out = {p[1], p[0], p[2]}; break;
    case Letter::SigmaY: {
      Integer xbar = p[1] * p[2] - star(s.a()).eval(p[0]);
      Integer den = xbar * p[1];
      if (den != 0) {
        out = {xbar, p[1], exact_div(target.a().eval(xbar) + s.b().eval(p[1]) - s.c(), den, "sigma_y z-coordinate")};
      } else {
        auto f = generator_formula(l, s);
        std::vector<Integer> pt{p[0], p[1], p[2]};
        out = {f[0].eval(pt), f[1].eval(pt), f[2].eval(pt)};
      }
      break;
    }
    case Letter::SigmaX: {
      Integer ybar = p[0] * p[2] - star(s.b()).eval(p[1]);
      Integer den = ybar * p[0];
      if (den != 0) {
        out = {p[0], ybar, exact_div(s.a().eval(p[0]) + target.b().eval(ybar) - s.c(), den, "sigma_x z-coordinate")};
      } else {
        auto f = generator_formula(l, s);
        std::vector<Integer> pt{p[0], p[1], p[2]};
        out = {f[0].eval(pt), f[1].eval(pt), f[2].eval(pt)};
      }
      break;
    }
  }
  if (!contains(target, out)) throw InternalError("apply_generator: image " + format(out) + " left the target surface");
  return {target, out};
}

struct TrackedPoint {
  Point3 point;
  SurfaceSpec surface;
  GeneratorWord history;
};

inline TrackedPoint apply_word(const GeneratorWord& w, const Point3& p) {
  SurfaceSpec s = w.source;
  Point3 q = p;
  for (Letter l : w.letters) std::tie(s, q) = apply_generator(l, s, q);
  if (s != w.target) throw InternalError("apply_word: word ended on an unexpected surface");
  return {q, s, w};
}

/// σ_{a,b}: toggle a, then b, then a, then b, returning to `s`.
inline Point3 sigma_ab(const SurfaceSpec& s, const Point3& p) {
  return apply_word(GeneratorWord::from_letters(sigma_ab_letters(), s), p).point;
}

inline Integer max_abs_xy(const Point3& p) { return std::max(abs(p[0]), abs(p[1])); }

/// Moves a positive integral point of S0 into x <= y, y^2 <= x^3 + 1.
/// τ is applied only when x > y; otherwise σx when y^2 > x^3 + 1 (it
/// replaces y by (x^3+1)/y < y).
inline std::pair<Point3, GeneratorWord> reduce_to_fundamental_domain(const Point3& p) {
  const SurfaceSpec s0 = surface_S0();
  if (p[0] <= 0 || p[1] <= 0 || p[2] <= 0)
    throw ValidationError("reduce_to_fundamental_domain: coordinates must be positive");
  if (!contains(s0, p)) throw ValidationError("reduce_to_fundamental_domain: point is not on S0");
  std::vector<Letter> word;
  Point3 q = p;
  while (true) {
    if (q[0] > q[1]) {
      word.push_back(Letter::Tau);
      q = apply_generator(Letter::Tau, s0, q).second;
    } else if (q[1] * q[1] > q[0] * q[0] * q[0] + 1) {
      word.push_back(Letter::SigmaX);
      q = apply_generator(Letter::SigmaX, s0, q).second;
    } else {
      break;
    }
  }
  return {q, GeneratorWord{word, s0, s0}};
}

// ---------------------------------------------------------------------------
// (p,q) invariants of a curve with one place at infinity

struct CurveInvariants {
  Integer p;  // multiplicity along the exceptional curve
  Integer q;  // intersection with the boundary curve
  Integer degree() const { return p + q; }
  friend bool operator==(const CurveInvariants&, const CurveInvariants&) = default;
};

/// (p,q) -> (p, 2p-q) when q <= 2p, else (q-2p, 2q-3p).
inline CurveInvariants curve_invariant_step(const CurveInvariants& ci) {
  if (ci.p < 0 || ci.q < 0 || ci.p + ci.q < 1) throw ValidationError("curve invariants need p,q >= 0 and p+q >= 1");
  if (ci.q <= 2 * ci.p) return {ci.p, 2 * ci.p - ci.q};
  return {ci.q - 2 * ci.p, 2 * ci.q - 3 * ci.p};
}

struct CurveTrace {
  std::vector<CurveInvariants> states;
  /// Indices of states with p >= q and degree >= 3 (not realizable by a
  /// curve with one place at infinity).
  std::vector<std::size_t> unrealizable;
  /// True when a step failed to lower the degree and the walk stopped.
  bool stalled = false;
};

/// Applies the step while degree >= 3 and 4p > degree.
inline CurveTrace reduce_curve_invariants(const CurveInvariants& start) {
  CurveTrace t;
  t.states.push_back(start);
  auto flag = [&](std::size_t i) {
    const auto& s = t.states[i];
    if (s.p >= s.q && s.degree() >= 3) t.unrealizable.push_back(i);
  };
  flag(0);
  while (true) {
    const auto cur = t.states.back();
    if (cur.degree() < 3 || 4 * cur.p <= cur.degree()) break;
    auto next = curve_invariant_step(cur);
    if (next.degree() >= cur.degree()) {
      t.stalled = true;
      break;
    }
    t.states.push_back(next);
    flag(t.states.size() - 1);
  }
  return t;
}

}  // namespace a2lab
