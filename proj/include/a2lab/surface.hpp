#pragma once

// Surfaces S_{a,b} : xyz = a(x) + b(y) - c, the generator alphabet, and the
// isomorphism classification of normalized cubic surfaces over the integers.

#include <a2lab/integer.hpp>
#include <a2lab/multipoly.hpp>
#include <a2lab/unipoly.hpp>

#include <array>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace a2lab {

using Point3 = std::array<Integer, 3>;

inline std::string format(const Point3& p) {
  return to_string(p[0]) + "," + to_string(p[1]) + "," + to_string(p[2]);
}

inline Point3 parse_point(std::string_view text) {
  auto fields = split(text, ',');
  if (fields.size() != 3) throw ValidationError("point must have three comma-separated coordinates");
  return {parse_integer(fields[0]), parse_integer(fields[1]), parse_integer(fields[2])};
}

inline const Vars& xyz_vars() {
  static const Vars v{"x", "y", "z"};
  return v;
}

/// The affine cubic-type surface xyz = a(x) + b(y) - c with c = a(0) = b(0).
///
/// Instances only come out of make_surface, which enforces deg a, deg b >= 3,
/// unit leading and constant coefficients, and a(0) = b(0).
class SurfaceSpec {
public:
  const UniPoly& a() const { return a_; }
  const UniPoly& b() const { return b_; }
  const Integer& c() const { return c_; }

  /// Degree (3,3) with a_0 = b_0 = a_3 = b_3 = 1.
  bool is_normalized_cubic() const {
    return a_.degree() == 3 && b_.degree() == 3 && c_ == 1 && a_.leading() == 1 && b_.leading() == 1;
  }

  /// h = xyz - a(x) - b(y) + c, recomputed on every call.
  MultiPoly defining() const {
    const auto& v = xyz_vars();
    MultiPoly xyz = MultiPoly::variable(v, 0) * MultiPoly::variable(v, 1) * MultiPoly::variable(v, 2);
    return xyz - rhs();
  }

  /// a(x) + b(y) - c, the value xyz must take on the surface.
  MultiPoly rhs() const {
    const auto& v = xyz_vars();
    return MultiPoly::from_unipoly(v, 0, a_) + MultiPoly::from_unipoly(v, 1, b_) - MultiPoly::constant(v, c_);
  }

  Integer residual(const Point3& p) const { return p[0] * p[1] * p[2] - a_.eval(p[0]) - b_.eval(p[1]) + c_; }

  friend bool operator==(const SurfaceSpec& l, const SurfaceSpec& r) { return l.a_ == r.a_ && l.b_ == r.b_; }
  friend bool operator!=(const SurfaceSpec& l, const SurfaceSpec& r) { return !(l == r); }
  friend bool operator<(const SurfaceSpec& l, const SurfaceSpec& r) {
    return std::make_pair(format(l.a_), format(l.b_)) < std::make_pair(format(r.a_), format(r.b_));
  }

private:
  friend SurfaceSpec make_surface(const UniPoly& a, const UniPoly& b);
  SurfaceSpec(UniPoly a, UniPoly b) : a_(std::move(a)), b_(std::move(b)), c_(a_.constant()) {}

  UniPoly a_;
  UniPoly b_;
  Integer c_;
};

inline SurfaceSpec make_surface(const UniPoly& a, const UniPoly& b) {
  if (a.degree() < 3 || b.degree() < 3) throw ValidationError("surface polynomials must have degree at least 3");
  if (!a.is_unit_normalized() || !b.is_unit_normalized())
    throw ValidationError("surface polynomials need leading and constant coefficients in {+1,-1}");
  if (a.constant() != b.constant()) throw ValidationError("a(0) and b(0) must agree");
  return SurfaceSpec(a, b);
}

inline bool contains(const SurfaceSpec& s, const Point3& p) { return s.residual(p) == 0; }

inline SurfaceSpec surface_S0() { return make_surface(UniPoly{1, 0, 0, 1}, UniPoly{1, 0, 0, 1}); }

/// T_{n,m} : xyz = x^3 + y^3 + n x + m y + 1.
inline SurfaceSpec surface_T(long n, long m) {
  return make_surface(UniPoly{1, n, 0, 1}, UniPoly{1, m, 0, 1});
}

inline std::string format(const SurfaceSpec& s) { return "a=" + format(s.a()) + ";b=" + format(s.b()); }

/// Accepts "a=<coeffs>;b=<coeffs>", the alias "S0", or "Tn,m".
inline SurfaceSpec parse_surface(std::string_view text) {
  if (text == "S0") return surface_S0();
  if (!text.empty() && text.front() == 'T') {
    auto parts = split(text.substr(1), ',');
    if (parts.size() != 2) throw ValidationError("alias must look like Tn,m");
    Integer n = parse_integer(parts[0]);
    Integer m = parse_integer(parts[1]);
    if (n == 0 || m == 0) throw ValidationError("T_{n,m} needs nonzero n and m");
    return make_surface(UniPoly(std::vector<Integer>{1, n, 0, 1}), UniPoly(std::vector<Integer>{1, m, 0, 1}));
  }
  auto parts = split(text, ';');
  if (parts.size() != 2 || parts[0].rfind("a=", 0) != 0 || parts[1].rfind("b=", 0) != 0)
    throw ValidationError("surface must look like a=<coeffs>;b=<coeffs>");
  return make_surface(parse_unipoly(parts[0].substr(2)), parse_unipoly(parts[1].substr(2)));
}

// ---------------------------------------------------------------------------
// Generators

enum class Letter { SigmaX, SigmaY, Tau };

inline std::string letter_name(Letter l) {
  switch (l) {
    case Letter::SigmaX: return "sx";
    case Letter::SigmaY: return "sy";
    case Letter::Tau: return "t";
  }
  return "?";
}

inline Letter parse_letter(std::string_view s) {
  if (s == "sx") return Letter::SigmaX;
  if (s == "sy") return Letter::SigmaY;
  if (s == "t") return Letter::Tau;
  throw ValidationError("unknown generator '" + std::string(s) + "' (expected sx, sy or t)");
}

inline std::vector<Letter> parse_letters(std::string_view text) {
  std::vector<Letter> out;
  if (text.empty()) return out;
  for (const auto& f : split(text, ',')) out.push_back(parse_letter(f));
  return out;
}

inline std::string format(const std::vector<Letter>& letters) {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ',';
    out += letter_name(letters[i]);
  }
  return out;
}

/// Surface reached by one generator: σy toggles a ↔ ā, σx toggles b ↔ b̄,
/// τ swaps a and b.
inline SurfaceSpec push_surface(Letter l, const SurfaceSpec& s) {
  switch (l) {
    case Letter::SigmaY: return make_surface(bar(s.a()), s.b());
    case Letter::SigmaX: return make_surface(s.a(), bar(s.b()));
    case Letter::Tau: return make_surface(s.b(), s.a());
  }
  throw InternalError("unreachable letter");
}

/// A word in {σx, σy, τ}, applied left to right, with its end surfaces.
struct GeneratorWord {
  std::vector<Letter> letters;
  SurfaceSpec source;
  SurfaceSpec target;

  static GeneratorWord from_letters(std::vector<Letter> letters, const SurfaceSpec& source) {
    SurfaceSpec t = source;
    for (auto l : letters) t = push_surface(l, t);
    return {std::move(letters), source, t};
  }

  GeneratorWord reversed() const {
    return from_letters(std::vector<Letter>(letters.rbegin(), letters.rend()), target);
  }

  bool is_loop() const { return source == target; }
};

/// The word toggling a, then b, then a, then b.
inline std::vector<Letter> sigma_ab_letters() {
  return {Letter::SigmaY, Letter::SigmaX, Letter::SigmaY, Letter::SigmaX};
}

// ---------------------------------------------------------------------------
// Normalization over the integers

struct SignTransform {
  int ex = 1, ey = 1, ez = 1;  // (x,y,z) -> (ex x, ey y, ez z)
  bool is_identity() const { return ex == 1 && ey == 1 && ez == 1; }
  friend bool operator==(const SignTransform&, const SignTransform&) = default;
};

struct Normalized {
  SurfaceSpec surface;
  SignTransform transform;
};

/// Finds the coordinate sign change (ex,ey,ez) taking xyz = a(x)+b(y)-a(0)
/// to a surface with a_0 = b_0 = a_3 = b_3 = 1. Substituting x = ex X,
/// y = ey Y, z = ez Z and dividing by s = ex ey ez gives
/// XYZ = s a(ex X) + s b(ey Y) - s c; all eight sign patterns are searched.
inline Normalized normalize(const UniPoly& a, const UniPoly& b) {
  if (a.degree() != 3 || b.degree() != 3) throw ValidationError("normalize: cubic polynomials required");
  if (!a.is_unit_normalized() || !b.is_unit_normalized())
    throw ValidationError("normalize: leading and constant coefficients must be +1 or -1");
  if (a.constant() != b.constant()) throw ValidationError("normalize: a(0) and b(0) must agree");
  auto twist = [](const UniPoly& p, int scale, int sign) {
    std::vector<Integer> v(p.coeffs());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= scale * ((i % 2 == 1 && sign < 0) ? -1 : 1);
    return UniPoly(std::move(v));
  };
  for (int ex : {1, -1})
    for (int ey : {1, -1})
      for (int ez : {1, -1}) {
        int s = ex * ey * ez;
        UniPoly na = twist(a, s, ex);
        UniPoly nb = twist(b, s, ey);
        if (na.constant() == 1 && nb.constant() == 1 && na.leading() == 1 && nb.leading() == 1)
          return {make_surface(na, nb), {ex, ey, ez}};
      }
  throw ValidationError("normalize: no sign pattern reaches a monic normalized surface");
}

inline Point3 apply_signs(const SignTransform& t, const Point3& p) {
  return {p[0] * t.ex, p[1] * t.ey, p[2] * t.ez};
}

// ---------------------------------------------------------------------------
// The eight-surface orbit and isomorphism testing

inline void require_normalized(const SurfaceSpec& s, const char* op) {
  if (!s.is_normalized_cubic())
    throw ValidationError(std::string(op) + ": surface must be a normalized cubic (a_0=b_0=a_3=b_3=1)");
}

/// The surfaces S_{a,b}, S_{ā,b}, S_{a,b̄}, S_{ā,b̄} and their τ-images,
/// deduplicated as ordered pairs (a,b), in that order.
inline std::vector<SurfaceSpec> eight_orbit(const SurfaceSpec& s) {
  require_normalized(s, "eight_orbit");
  const UniPoly& a = s.a();
  const UniPoly& b = s.b();
  UniPoly ab = bar(a), bb = bar(b);
  std::vector<SurfaceSpec> all{make_surface(a, b),   make_surface(ab, b),  make_surface(a, bb),
                               make_surface(ab, bb), make_surface(b, a),   make_surface(bb, a),
                               make_surface(b, ab),  make_surface(bb, ab)};
  std::vector<SurfaceSpec> out;
  for (auto& t : all)
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  return out;
}

/// Shortest word in {σx, σy, τ} from `from` to `to` (length at most 3 for
/// normalized cubics), or nullopt when `to` is outside the orbit of `from`.
inline std::optional<GeneratorWord> are_isomorphic(const SurfaceSpec& from, const SurfaceSpec& to) {
  require_normalized(from, "are_isomorphic");
  require_normalized(to, "are_isomorphic");
  std::map<SurfaceSpec, std::vector<Letter>> seen{{from, {}}};
  std::deque<SurfaceSpec> queue{from};
  while (!queue.empty()) {
    SurfaceSpec cur = queue.front();
    queue.pop_front();
    const auto word = seen.at(cur);
    if (cur == to) return GeneratorWord{word, from, to};
    if (word.size() >= 3) continue;
    for (Letter l : {Letter::SigmaX, Letter::SigmaY, Letter::Tau}) {
      SurfaceSpec next = push_surface(l, cur);
      if (seen.count(next)) continue;
      auto w = word;
      w.push_back(l);
      seen.emplace(next, std::move(w));
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

struct AutStructure {
  /// Every reduced word of length <= 4 that returns to the surface.
  std::vector<GeneratorWord> closed_loops;
  /// Generating set: closed single letters, plus σ_{a,b} unless σx and σy
  /// are both closed.
  std::vector<GeneratorWord> generators;
  std::size_t orbit_size = 0;
  /// "D∞", "ℤ⋊ℤ/2", "ℤ", or "unclassified".
  std::string label;
};

inline AutStructure aut_structure(const SurfaceSpec& s) {
  require_normalized(s, "aut_structure");
  AutStructure out;
  out.orbit_size = eight_orbit(s).size();

  std::vector<std::vector<Letter>> frontier{{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : frontier)
      for (Letter l : {Letter::SigmaX, Letter::SigmaY, Letter::Tau}) {
        if (!w.empty() && w.back() == l) continue;
        auto nw = w;
        nw.push_back(l);
        next.push_back(nw);
      }
    for (const auto& w : next) {
      auto gw = GeneratorWord::from_letters(w, s);
      if (gw.is_loop()) out.closed_loops.push_back(gw);
    }
    frontier = std::move(next);
  }

  bool sx = false, sy = false;
  for (Letter l : {Letter::SigmaX, Letter::SigmaY, Letter::Tau}) {
    auto gw = GeneratorWord::from_letters({l}, s);
    if (gw.is_loop()) {
      out.generators.push_back(gw);
      sx |= l == Letter::SigmaX;
      sy |= l == Letter::SigmaY;
    }
  }
  if (!(sx && sy)) out.generators.push_back(GeneratorWord::from_letters(sigma_ab_letters(), s));

  const UniPoly ab = bar(s.a()), bb = bar(s.b());
  const bool a_self = s.a() == ab, b_self = s.b() == bb, swap = s.a() == s.b();
  if (a_self && b_self && swap)
    out.label = "D∞";
  else if (swap && !a_self)
    out.label = "ℤ⋊ℤ/2";
  else if (out.orbit_size == 8)
    out.label = "ℤ";
  else
    out.label = "unclassified";
  return out;
}

}  // namespace a2lab
