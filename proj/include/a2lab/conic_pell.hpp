#pragma once

// Conic pencils through integral points of S_{a,b} and integer solutions of
// binary quadratic equations Ax^2 + Bxy + Cy^2 + Dx + Ey + F = 0.

#include <a2lab/integer.hpp>
#include <a2lab/surface.hpp>
#include <a2lab/unipoly.hpp>

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace a2lab {

using Point2 = std::array<Integer, 2>;

// ---------------------------------------------------------------------------
// Pencils

struct Pencil {
  SurfaceSpec surface;
  Rational alpha, beta;  // rational roots of a and b
  UniPoly p, q;          // a(x) ∝ (x - α) p(x), b(y) ∝ (y - β) q(y), p(0) = q(0) = c
  Integer c;

  /// p(x) + q(y) - c at an integer point.
  Integer first(const Integer& x, const Integer& y) const { return p.eval(x) + q.eval(y) - c; }
};

/// The pencil λ(p(x) + q(y) - c) + μxy of conics through four of the six
/// base points.
inline Pencil pencil(const SurfaceSpec& s, const Rational& alpha, const Rational& beta) {
  if (s.a().degree() != 3 || s.b().degree() != 3) throw ValidationError("pencil: cubic surfaces only");
  if (s.a().eval(alpha) != 0) throw ValidationError("pencil: alpha is not a root of a");
  if (s.b().eval(beta) != 0) throw ValidationError("pencil: beta is not a root of b");
  return {s, alpha, beta, quadratic_cofactor(s.a(), alpha, s.c()), quadratic_cofactor(s.b(), beta, s.c()), s.c()};
}

/// Uses the first rational roots of a and b.
inline Pencil pencil(const SurfaceSpec& s) {
  if (s.a().degree() != 3 || s.b().degree() != 3) throw ValidationError("pencil: cubic surfaces only");
  auto ra = rational_roots(s.a());
  auto rb = rational_roots(s.b());
  if (ra.empty() || rb.empty()) throw ValidationError("pencil: a and b both need a rational root");
  return pencil(s, ra.front(), rb.front());
}

struct ConicEquation {
  Integer A, B, C, D, E, F;
  /// (λ:μ) in lowest terms when the conic came from a pencil.
  std::optional<std::pair<Integer, Integer>> lambda_mu;

  Integer eval(const Integer& x, const Integer& y) const {
    return A * x * x + B * x * y + C * y * y + D * x + E * y + F;
  }
  Integer discriminant() const { return B * B - 4 * A * C; }
  bool is_zero() const { return A == 0 && B == 0 && C == 0 && D == 0 && E == 0 && F == 0; }
  std::array<Integer, 6> coeffs() const { return {A, B, C, D, E, F}; }

  friend bool operator==(const ConicEquation& l, const ConicEquation& r) { return l.coeffs() == r.coeffs(); }
};

/// Divides out the content and makes the first nonzero coefficient positive.
inline ConicEquation normalize(ConicEquation q) {
  if (q.is_zero()) throw ValidationError("conic equation is identically zero");
  Integer g(0);
  for (const auto& c : q.coeffs()) g = gcd(g, c);
  Integer sign(1);
  for (const auto& c : q.coeffs())
    if (c != 0) {
      sign = c < 0 ? -1 : 1;
      break;
    }
  g *= sign;
  for (Integer* c : {&q.A, &q.B, &q.C, &q.D, &q.E, &q.F}) *c = exact_div(*c, g, "conic content");
  return q;
}

inline std::string format(const ConicEquation& q) {
  static const char* names[] = {"x^2", "x*y", "y^2", "x", "y", ""};
  std::string out;
  auto cs = q.coeffs();
  for (std::size_t i = 0; i < 6; ++i) {
    if (cs[i] == 0) continue;
    Integer mag = abs(cs[i]);
    if (out.empty())
      out += cs[i] < 0 ? "-" : "";
    else
      out += cs[i] < 0 ? " - " : " + ";
    if (mag != 1 || i == 5) out += to_string(mag);
    out += names[i];
  }
  return (out.empty() ? "0" : out) + " = 0";
}

/// The unique member through (x0, y0): (λ:μ) = (x0 y0 : -(p(x0)+q(y0)-c)).
inline ConicEquation member_through(const Pencil& pen, const Integer& x0, const Integer& y0) {
  Integer lambda = x0 * y0;
  Integer mu = -pen.first(x0, y0);
  if (lambda == 0 && mu == 0) throw ValidationError("member_through: point is a base point of the pencil");
  Integer g = gcd(lambda, mu);
  lambda /= g;
  mu /= g;
  if (lambda < 0 || (lambda == 0 && mu < 0)) {
    lambda = -lambda;
    mu = -mu;
  }
  ConicEquation q{lambda * pen.p.coeff(2), mu,
                  lambda * pen.q.coeff(2), lambda * pen.p.coeff(1),
                  lambda * pen.q.coeff(1), lambda * (pen.p.coeff(0) + pen.q.coeff(0) - pen.c),
                  std::nullopt};
  q = normalize(q);
  q.lambda_mu = std::make_pair(lambda, mu);
  if (q.eval(x0, y0) != 0) throw InternalError("member_through: conic misses its point");
  return q;
}

// ---------------------------------------------------------------------------
// Solution families

/// (x, y) -> (m00 x + m01 y + t0, m10 x + m11 y + t1).
struct AffineMap2 {
  std::array<Integer, 4> m{1, 0, 0, 1};
  std::array<Integer, 2> t{0, 0};

  Point2 operator()(const Point2& p) const { return {m[0] * p[0] + m[1] * p[1] + t[0], m[2] * p[0] + m[3] * p[1] + t[1]}; }
  std::size_t max_digits() const {
    std::size_t d = 0;
    for (const auto& v : m) d = std::max(d, to_string(abs(v)).size());
    for (const auto& v : t) d = std::max(d, to_string(abs(v)).size());
    return d;
  }
};

/// k -> (x(k), y(k)) for k in Z.
struct ParamFamily {
  UniPoly x, y;
  Point2 at(const Integer& k) const { return {x.eval(k), y.eval(k)}; }
};

/// Integrality of z = (a(x) + b(y) - c)/(xy) along one orbit. On a pencil
/// conic z is the restriction of an affine function αx + βy + γ, so it is
/// integral on a union of residue classes of the orbit index.
struct ZData {
  Rational alpha, beta, gamma;
  std::size_t period = 0;                   // of the orbit modulo the denominators
  std::vector<std::size_t> integral_residues;  // orbit indices j mod period with integral z
};

enum class ConicClass { Empty, Finite, Infinite };

inline std::string class_name(ConicClass c) {
  switch (c) {
    case ConicClass::Empty: return "empty";
    case ConicClass::Finite: return "finite";
    case ConicClass::Infinite: return "infinite";
  }
  return "?";
}

struct ConicFamily {
  ConicEquation equation;
  ConicClass classification = ConicClass::Empty;
  std::vector<Point2> solutions;  // the complete list when finite

  // Hyperbolic case: every solution is T^n(seed) for exactly one seed.
  std::vector<Point2> seeds;
  std::optional<AffineMap2> forward, backward;
  Integer unit_u, unit_v;        // fundamental solution of u^2 - Δv^2 = 1
  unsigned unit_power = 0;       // forward corresponds to (u + v√Δ)^unit_power

  // Degenerate conics: lines and parabolas.
  std::vector<ParamFamily> parametric;

  std::vector<ZData> z_data;  // one per seed after lift_family

  /// Up to `count` distinct solutions, nearest orbit indices first.
  std::vector<Point2> generate(std::size_t count) const {
    std::vector<Point2> out;
    std::set<Point2> seen;
    auto push = [&](const Point2& p) {
      if (out.size() < count && seen.insert(p).second) out.push_back(p);
    };
    if (classification == ConicClass::Finite) {
      for (const auto& s : solutions) push(s);
      return out;
    }
    if (classification != ConicClass::Infinite) return out;
    std::vector<Point2> fw(seeds), bw(seeds);
    for (const auto& s : seeds) push(s);
    for (long k = 0; k < 100000 && out.size() < count; ++k) {
      for (std::size_t i = 0; i < seeds.size(); ++i) {
        fw[i] = (*forward)(fw[i]);
        bw[i] = (*backward)(bw[i]);
        push(fw[i]);
        push(bw[i]);
      }
      for (const auto& f : parametric) {
        push(f.at(k));
        push(f.at(-k - 1));
      }
    }
    return out;
  }

  /// Orbit of seeds[i]: T^n(seed) for n >= 0 (or T^{-n} when reverse).
  std::vector<Point2> orbit(std::size_t i, std::size_t length, bool reverse = false) const {
    std::vector<Point2> out{seeds.at(i)};
    const AffineMap2& step = reverse ? *backward : *forward;
    while (out.size() < length) out.push_back(step(out.back()));
    return out;
  }
};

namespace detail {

using RationalAffine = std::array<Rational, 6>;  // x' = r0 x + r1 y + r2, y' = r3 x + r4 y + r5

inline std::optional<AffineMap2> to_integral(const RationalAffine& r) {
  AffineMap2 out;
  for (const auto& v : r)
    if (v.get_den() != 1) return std::nullopt;
  out.m = {r[0].get_num(), r[1].get_num(), r[3].get_num(), r[4].get_num()};
  out.t = {r[2].get_num(), r[5].get_num()};
  return out;
}

/// Solutions of D x + E y + F = 0 as a one-parameter family, if any.
inline std::optional<ParamFamily> linear_family(const Integer& D, const Integer& E, const Integer& F) {
  if (D == 0 && E == 0) throw InternalError("linear_family: degenerate equation");
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), D.get_mpz_t(), E.get_mpz_t());
  if (!divides(g, F)) return std::nullopt;
  Integer f = -F / g;
  Integer x0 = s * f, y0 = t * f;
  return ParamFamily{UniPoly(std::vector<Integer>{x0, E / g}), UniPoly(std::vector<Integer>{y0, -D / g})};
}

inline bool same_line(const ParamFamily& a, const ParamFamily& b, const ConicEquation&) {
  // Both are lines k -> p0 + k d; they agree iff directions are parallel and
  // b's base point lies on a.
  const Integer dx = a.x.coeff(1), dy = a.y.coeff(1);
  if (dx * b.y.coeff(1) - dy * b.x.coeff(1) != 0) return false;
  return dx * (b.y.coeff(0) - a.y.coeff(0)) - dy * (b.x.coeff(0) - a.x.coeff(0)) == 0;
}

/// Fundamental solution of u^2 - Δv^2 = 1 from the continued fraction of √Δ.
inline std::pair<Integer, Integer> pell_unit(const Integer& delta) {
  if (delta <= 0 || is_square(delta)) throw ValidationError("pell_unit: Δ must be a positive non-square");
  const Integer a0 = isqrt(delta);
  Integer m(0), d(1), a = a0;
  Integer h_prev(1), h = a0, k_prev(0), k(1);
  while (h * h - delta * k * k != 1) {
    m = d * a - m;
    d = (delta - m * m) / d;
    a = (a0 + m) / d;
    Integer hn = a * h + h_prev, kn = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = hn;
    k = kn;
  }
  return {h, k};
}

}  // namespace detail

/// Fundamental solution of u^2 - Δv^2 = 1.
inline std::pair<Integer, Integer> pell_fundamental(const Integer& delta) { return detail::pell_unit(delta); }

/// Class representatives of u^2 - Δv^2 = K (Δ > 0 non-square, K != 0):
/// every solution is ±(u + v√Δ)(u1 + v1√Δ)^n for one returned (u, v).
/// Uses the classical bounds on fundamental solutions:
///   K > 0: 0 <= v <= v1 sqrt(K / (2(u1+1))),
///   K < 0: sqrt(|K|/Δ) <= v <= v1 sqrt(|K| / (2(u1-1))).
inline std::vector<std::pair<Integer, Integer>> norm_form_representatives(const Integer& delta, const Integer& K,
                                                                         std::uint64_t max_steps = 400000000ULL) {
  if (K == 0) throw ValidationError("norm_form_representatives: K must be nonzero");
  auto [u1, v1] = detail::pell_unit(delta);
  const Integer absK = abs(K);
  Integer denom = K > 0 ? Integer(2 * (u1 + 1)) : Integer(2 * (u1 - 1));
  Integer vmax = isqrt(v1 * v1 * absK / denom) + 1;
  Integer vmin = K > 0 ? Integer(0) : isqrt(absK / delta);
  if (vmax - vmin > Integer(static_cast<unsigned long>(max_steps)))
    throw ValidationError("norm form search range too large (" + to_string(Integer(vmax - vmin)) + " values)");
  std::vector<std::pair<Integer, Integer>> reps;
  auto record = [&](const Integer& v) {
    Integer t = K + delta * v * v;
    if (t >= 0 && is_square(t)) {
      Integer u = isqrt(t);
      reps.emplace_back(u, v);
      if (u != 0) reps.emplace_back(-u, v);
    }
  };
  // 128-bit scan when Δ vmax^2 + |K| is small; exact check on hits.
  Integer top = delta * vmax * vmax + absK;
  if (mpz_sizeinbase(top.get_mpz_t(), 2) < 120 && fits_int64(vmax) && fits_int64(delta) && fits_int64(K)) {
    const __int128 d = to_int64(delta), k = to_int64(K);
    for (std::int64_t v = to_int64(vmin); v <= to_int64(vmax); ++v) {
      __int128 t = k + d * v * v;
      if (t < 0) continue;
      // Square test via floating estimate and exact correction.
      auto r = static_cast<__int128>(std::sqrt(static_cast<long double>(t)));
      while (r * r > t) --r;
      while ((r + 1) * (r + 1) <= t) ++r;
      if (r * r == t) record(Integer(static_cast<long>(v)));
    }
  } else {
    for (Integer v = vmin; v <= vmax; ++v) record(v);
  }
  return reps;
}

namespace detail {

/// Recovers (x, y) from (u, v) with u = Δy + g, v = 2Ax + By + D.
struct UVFrame {
  Integer A, B, D, delta, g;

  std::optional<Point2> to_xy(const Integer& u, const Integer& v) const {
    if (!divides(delta, u - g)) return std::nullopt;
    Integer y = (u - g) / delta;
    Integer num = v - B * y - D;
    if (!divides(2 * A, num)) return std::nullopt;
    return Point2{num / (2 * A), y};
  }

  /// The affine map on (x, y) induced by multiplying u + v√Δ by p + q√Δ.
  RationalAffine induced(const Integer& p, const Integer& q) const {
    auto image = [&](const Rational& x, const Rational& y) {
      Rational u = Rational(delta) * y + Rational(g);
      Rational v = Rational(2 * A) * x + Rational(B) * y + Rational(D);
      Rational u2 = Rational(p) * u + Rational(delta * q) * v;
      Rational v2 = Rational(q) * u + Rational(p) * v;
      Rational y2 = (u2 - Rational(g)) / Rational(delta);
      Rational x2 = (v2 - Rational(B) * y2 - Rational(D)) / Rational(2 * A);
      x2.canonicalize();
      y2.canonicalize();
      return std::make_pair(x2, y2);
    };
    auto o = image(0, 0), ex = image(1, 0), ey = image(0, 1);
    RationalAffine r{ex.first - o.first, ey.first - o.first, o.first, ex.second - o.second, ey.second - o.second,
                     o.second};
    for (auto& v : r) v.canonicalize();
    return r;
  }
};

inline Point2 swap(const Point2& p) { return {p[1], p[0]}; }

inline AffineMap2 swap(const AffineMap2& f) {
  AffineMap2 g;
  g.m = {f.m[3], f.m[2], f.m[1], f.m[0]};
  g.t = {f.t[1], f.t[0]};
  return g;
}

inline std::vector<Point2> dedupe(std::vector<Point2> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline Integer size_of(const Point2& p) { return abs(p[0]) + abs(p[1]); }

/// The smallest point of the orbit of p (ties broken lexicographically).
inline Point2 canonical_in_orbit(const Point2& p, const AffineMap2& fw, const AffineMap2& bw) {
  Point2 best = p;
  for (const AffineMap2* step : {&fw, &bw}) {
    Point2 cur = p;
    for (int guard = 0; guard < 10000; ++guard) {
      Point2 next = (*step)(cur);
      if (size_of(next) > size_of(cur) && size_of(next) > size_of(best)) break;
      cur = next;
      if (cur == p) break;
      if (size_of(cur) < size_of(best) || (size_of(cur) == size_of(best) && cur < best)) best = cur;
    }
  }
  return best;
}

/// Solves with A != 0 (callers swap x and y when needed).
inline ConicFamily solve_with_a(const ConicEquation& q) {
  ConicFamily fam;
  fam.equation = q;
  const Integer &A = q.A, &B = q.B, &D = q.D, &E = q.E, &F = q.F;
  const Integer delta = q.discriminant();
  auto finish_finite = [&](std::vector<Point2> sols) {
    fam.solutions = dedupe(std::move(sols));
    fam.classification = fam.solutions.empty() ? ConicClass::Empty : ConicClass::Finite;
  };

  if (delta == 0) {
    // 4A Q = v^2 + L y + F' with v = 2Ax + By + D.
    const Integer L = 4 * A * E - 2 * B * D;
    const Integer Fp = 4 * A * F - D * D;
    if (L == 0) {
      if (!is_square(-Fp)) {
        finish_finite({});
        return fam;
      }
      Integer r = isqrt(-Fp);
      for (const Integer& v : {r, Integer(-r)}) {
        if (auto f = linear_family(2 * A, B, D - v)) {
          bool dup = false;
          for (const auto& g : fam.parametric) dup |= same_line(g, *f, q);
          if (!dup) fam.parametric.push_back(*f);
        }
        if (r == 0) break;
      }
    } else {
      const Integer M = abs(L) * abs(2 * A);
      if (M > 10000000) throw ValidationError("parabolic conic: residue search too large");
      for (Integer r = 0; r < M; ++r) {
        if (!divides(L, r * r + Fp)) continue;
        Integer y0 = -(r * r + Fp) / L;
        if (!divides(2 * A, r - D - B * y0)) continue;
        // v = r + M k.
        std::vector<Integer> ys{y0, -(2 * r * M) / L, -(M * M) / L};
        UniPoly y(ys);
        UniPoly xnum = UniPoly(std::vector<Integer>{r - D, M}) - B * y;
        std::vector<Integer> xs;
        for (const auto& c : xnum.coeffs()) xs.push_back(exact_div(c, 2 * A, "parabolic family"));
        fam.parametric.push_back({UniPoly(xs), y});
      }
    }
    fam.classification = fam.parametric.empty() ? ConicClass::Empty : ConicClass::Infinite;
    return fam;
  }

  const Integer g = B * D - 2 * A * E;
  const Integer K = g * g - delta * (D * D - 4 * A * F);
  const UVFrame frame{A, B, D, delta, g};

  if (delta < 0) {
    // u^2 + |Δ| v^2 = K bounds both u and v.
    std::vector<Point2> sols;
    if (K >= 0) {
      Integer vmax = isqrt(K / (-delta));
      for (Integer v = -vmax; v <= vmax; ++v) {
        Integer t = K + delta * v * v;
        if (!is_square(t)) continue;
        Integer u = isqrt(t);
        for (const Integer& uu : {u, Integer(-u)})
          if (auto p = frame.to_xy(uu, v)) sols.push_back(*p);
      }
    }
    finish_finite(std::move(sols));
    return fam;
  }

  if (is_square(delta)) {
    const Integer s = isqrt(delta);
    if (K == 0) {
      // u = ±s v: two rational lines.
      for (int sign : {1, -1}) {
        Integer sg(sign);
        auto f = linear_family(-sg * 2 * A * s, delta - sg * s * B, g - sg * s * D);
        if (!f) continue;
        bool dup = false;
        for (const auto& h : fam.parametric) dup |= same_line(h, *f, q);
        if (!dup) fam.parametric.push_back(*f);
      }
      fam.classification = fam.parametric.empty() ? ConicClass::Empty : ConicClass::Infinite;
      return fam;
    }
    // (u - s v)(u + s v) = K.
    std::vector<Point2> sols;
    for (const auto& d0 : positive_divisors(K))
      for (const Integer& d : {d0, Integer(-d0)}) {
        Integer e = K / d;
        if (!divides(2, d + e) || !divides(2 * s, e - d)) continue;
        Integer u = (d + e) / 2, v = (e - d) / (2 * s);
        if (auto p = frame.to_xy(u, v)) sols.push_back(*p);
      }
    finish_finite(std::move(sols));
    return fam;
  }

  // Hyperbolic, Δ > 0 non-square.
  if (K == 0) {
    std::vector<Point2> sols;
    if (auto p = frame.to_xy(0, 0)) sols.push_back(*p);
    finish_finite(std::move(sols));
    return fam;
  }
  auto [u1, v1] = pell_unit(delta);
  fam.unit_u = u1;
  fam.unit_v = v1;
  // Smallest power of the unit whose induced map is integral.
  Integer pu = u1, pv = v1;
  std::optional<AffineMap2> fw;
  unsigned power = 1;
  for (; power <= 2000; ++power) {
    if ((fw = to_integral(frame.induced(pu, pv)))) break;
    Integer nu = pu * u1 + delta * pv * v1, nv = pu * v1 + pv * u1;
    pu = nu;
    pv = nv;
  }
  if (!fw) throw ValidationError("no integral recurrence found within 2000 powers of the fundamental unit");
  auto bw = to_integral(frame.induced(pu, -pv));
  if (!bw) throw InternalError("inverse recurrence is not integral");
  fam.unit_power = power;
  fam.forward = fw;
  fam.backward = bw;

  std::vector<Point2> seeds;
  for (auto [u, v] : norm_form_representatives(delta, K)) {
    for (int sign : {1, -1}) {
      Integer cu = sign * u, cv = sign * v;
      for (unsigned j = 0; j < power; ++j) {
        if (auto p = frame.to_xy(cu, cv)) seeds.push_back(canonical_in_orbit(*p, *fw, *bw));
        Integer nu = cu * u1 + delta * cv * v1, nv = cu * v1 + cv * u1;
        cu = nu;
        cv = nv;
      }
    }
  }
  fam.seeds = dedupe(std::move(seeds));
  fam.classification = fam.seeds.empty() ? ConicClass::Empty : ConicClass::Infinite;
  return fam;
}

}  // namespace detail

/// All integer solutions of Q = 0: an explicit finite list, or seeds with
/// an integral affine recurrence (hyperbolic case), or polynomial families
/// (lines and parabolas). Every reported solution is checked on Q.
inline ConicFamily solve_conic(const ConicEquation& q) {
  if (q.is_zero()) throw ValidationError("solve_conic: equation is identically zero");
  ConicFamily fam;
  if (q.A != 0) {
    fam = detail::solve_with_a(q);
  } else if (q.C != 0) {
    ConicEquation sw{q.C, q.B, q.A, q.E, q.D, q.F, q.lambda_mu};
    fam = detail::solve_with_a(sw);
    fam.equation = q;
    for (auto& p : fam.solutions) p = detail::swap(p);
    for (auto& p : fam.seeds) p = detail::swap(p);
    fam.solutions = detail::dedupe(fam.solutions);
    fam.seeds = detail::dedupe(fam.seeds);
    if (fam.forward) fam.forward = detail::swap(*fam.forward);
    if (fam.backward) fam.backward = detail::swap(*fam.backward);
    for (auto& f : fam.parametric) std::swap(f.x, f.y);
  } else if (q.B != 0) {
    // (Bx + E)(By + D) = DE - BF.
    fam.equation = q;
    const Integer R = q.D * q.E - q.B * q.F;
    if (R != 0) {
      std::vector<Point2> sols;
      for (const auto& d0 : positive_divisors(R))
        for (const Integer& d : {d0, Integer(-d0)}) {
          Integer e = R / d;
          if (divides(q.B, d - q.E) && divides(q.B, e - q.D)) sols.push_back({(d - q.E) / q.B, (e - q.D) / q.B});
        }
      fam.solutions = detail::dedupe(sols);
      fam.classification = fam.solutions.empty() ? ConicClass::Empty : ConicClass::Finite;
    } else {
      if (divides(q.B, q.E))
        fam.parametric.push_back({UniPoly(std::vector<Integer>{-q.E / q.B}), UniPoly{0, 1}});
      if (divides(q.B, q.D))
        fam.parametric.push_back({UniPoly{0, 1}, UniPoly(std::vector<Integer>{-q.D / q.B})});
      fam.classification = fam.parametric.empty() ? ConicClass::Empty : ConicClass::Infinite;
    }
  } else {
    fam.equation = q;
    if (q.D == 0 && q.E == 0) {
      fam.classification = ConicClass::Empty;  // F != 0
    } else if (auto f = detail::linear_family(q.D, q.E, q.F)) {
      fam.parametric.push_back(*f);
      fam.classification = ConicClass::Infinite;
    }
  }

  // Re-verification of everything reported.
  for (const auto& p : fam.solutions)
    if (q.eval(p[0], p[1]) != 0) throw InternalError("solve_conic: reported solution fails the equation");
  for (const auto& s : fam.seeds) {
    Point2 f = (*fam.forward)(s), b = (*fam.backward)(s);
    if (q.eval(s[0], s[1]) != 0 || q.eval(f[0], f[1]) != 0 || q.eval(b[0], b[1]) != 0 || (*fam.backward)(f) != s)
      throw InternalError("solve_conic: recurrence fails the equation");
  }
  for (const auto& f : fam.parametric)
    for (long k : {-2L, -1L, 0L, 1L, 2L}) {
      Point2 p = f.at(k);
      if (q.eval(p[0], p[1]) != 0) throw InternalError("solve_conic: parametric family fails the equation");
    }
  return fam;
}

// ---------------------------------------------------------------------------
// Lifting to the surface

inline std::optional<Integer> z_on_surface(const SurfaceSpec& s, const Point2& p) {
  Integer den = p[0] * p[1];
  if (den == 0) return std::nullopt;
  Integer num = s.a().eval(p[0]) + s.b().eval(p[1]) - s.c();
  if (!divides(den, num)) return std::nullopt;
  return num / den;
}

namespace detail {

inline Rational z_rational(const SurfaceSpec& s, const Point2& p) {
  Rational z(s.a().eval(p[0]) + s.b().eval(p[1]) - s.c(), p[0] * p[1]);
  z.canonicalize();
  return z;
}

/// Solves for (α, β, γ) with z = αx + βy + γ through three points.
inline std::optional<std::array<Rational, 3>> fit_affine(const std::vector<std::pair<Point2, Rational>>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const auto& [p, zp] = pts[i];
        const auto& [q, zq] = pts[j];
        const auto& [r, zr] = pts[k];
        Rational m[3][4] = {{Rational(p[0]), Rational(p[1]), 1, zp},
                            {Rational(q[0]), Rational(q[1]), 1, zq},
                            {Rational(r[0]), Rational(r[1]), 1, zr}};
        bool singular = false;
        for (int c = 0; c < 3 && !singular; ++c) {
          int piv = -1;
          for (int row = c; row < 3; ++row)
            if (m[row][c] != 0) {
              piv = row;
              break;
            }
          if (piv < 0) {
            singular = true;
            break;
          }
          std::swap(m[c], m[piv]);
          for (int row = 0; row < 3; ++row) {
            if (row == c || m[row][c] == 0) continue;
            Rational f = m[row][c] / m[c][c];
            for (int col = c; col < 4; ++col) m[row][col] -= f * m[c][col];
          }
        }
        if (singular) continue;
        std::array<Rational, 3> sol;
        for (int c = 0; c < 3; ++c) {
          sol[c] = m[c][3] / m[c][c];
          sol[c].canonicalize();
        }
        return sol;
      }
  return std::nullopt;
}

}  // namespace detail

/// Fits z on each orbit as an affine function of (x, y), detects the period
/// of the orbit modulo the denominators, and records the orbit indices with
/// integral z.
inline ConicFamily lift_family(const SurfaceSpec& s, ConicFamily fam) {
  if (fam.classification != ConicClass::Infinite || !fam.forward)
    throw ValidationError("lift_family: needs an infinite hyperbolic family");
  fam.z_data.clear();
  for (std::size_t i = 0; i < fam.seeds.size(); ++i) {
    std::vector<std::pair<Point2, Rational>> sample;
    for (const auto& dir : {false, true})
      for (const auto& p : fam.orbit(i, 6, dir))
        if (p[0] != 0 && p[1] != 0) sample.emplace_back(p, detail::z_rational(s, p));
    auto fit = detail::fit_affine(sample);
    if (!fit) throw ValidationError("lift_family: z is not affine along the orbit (conic not from a pencil?)");
    const auto [alpha, beta, gamma] = *fit;
    for (const auto& [p, z] : sample)
      if (alpha * p[0] + beta * p[1] + gamma != z) throw ValidationError("lift_family: z is not affine along the orbit");

    ZData zd{alpha, beta, gamma, 0, {}};
    Integer L = lcm(lcm(alpha.get_den(), beta.get_den()), gamma.get_den());
    Point2 start{mod(fam.seeds[i][0], L), mod(fam.seeds[i][1], L)};
    Point2 cur = fam.seeds[i];
    for (std::size_t j = 0; j < 1000000; ++j) {
      Rational z = alpha * cur[0] + beta * cur[1] + gamma;
      z.canonicalize();
      if (z.get_den() == 1) zd.integral_residues.push_back(j);
      Point2 next = (*fam.forward)(cur);
      Point2 red{mod(next[0], L), mod(next[1], L)};  // the walk only matters modulo L
      cur = red;
      if (red == start) {
        zd.period = j + 1;
        break;
      }
    }
    if (zd.period == 0) throw ValidationError("lift_family: period exceeds search limit");
    fam.z_data.push_back(std::move(zd));
  }
  return fam;
}

/// Integral points of s on the lifted family, in order of orbit distance.
inline std::vector<Point3> lifted_points(const SurfaceSpec& s, const ConicFamily& fam, std::size_t count,
                                         std::size_t max_steps = 200) {
  std::vector<Point3> out;
  std::set<Point3> seen;
  for (std::size_t step = 0; step < max_steps && out.size() < count; ++step)
    for (std::size_t i = 0; i < fam.seeds.size() && out.size() < count; ++i)
      for (bool rev : {false, true}) {
        Point2 p = fam.seeds[i];
        const AffineMap2& f = rev ? *fam.backward : *fam.forward;
        for (std::size_t k = 0; k < step; ++k) p = f(p);
        if (auto z = z_on_surface(s, p)) {
          Point3 q{p[0], p[1], *z};
          if (!contains(s, q)) throw InternalError("lifted point is not on the surface");
          if (seen.insert(q).second && out.size() < count) out.push_back(q);
        }
      }
  return out;
}

/// Number of family solutions with 1 <= x, y <= bound.
inline std::size_t count_positive_below(const ConicFamily& fam, const Integer& bound) {
  std::set<Point2> seen;
  for (std::size_t i = 0; i < fam.seeds.size(); ++i)
    for (bool rev : {false, true}) {
      Point2 p = fam.seeds[i];
      const AffineMap2& f = rev ? *fam.backward : *fam.forward;
      for (int k = 0; k < 10000; ++k) {
        if (p[0] >= 1 && p[1] >= 1 && p[0] <= bound && p[1] <= bound) seen.insert(p);
        Point2 n = f(p);
        if (detail::size_of(n) > detail::size_of(p) && detail::size_of(p) > 4 * bound) break;
        p = n;
      }
    }
  return seen.size();
}

}  // namespace a2lab
