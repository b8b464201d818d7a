#pragma once

// Normal forms modulo the principal ideal (xyz - a(x) - b(y) + c), polynomial
// maps between surfaces, and the symbolic construction of σ_{a,b}.

#include <a2lab/birational.hpp>
#include <a2lab/diophantine.hpp>
#include <a2lab/multipoly.hpp>
#include <a2lab/surface.hpp>

#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace a2lab {

/// xyz = (x^3 + a2 x^2 + a1 x + 1) + (y^3 + b2 y^2 + b1 y + 1) - 1 with the
/// four inner coefficients as indeterminates. The slot fields name the
/// variable currently sitting in each coefficient position, so the eight
/// surfaces of the orbit are just permutations of the same four names.
struct SymbolicSurface {
  std::string a2 = "a2", a1 = "a1", b2 = "b2", b1 = "b1";

  static const Vars& vars() {
    static const Vars v{"x", "y", "z", "a1", "a2", "b1", "b2"};
    return v;
  }

  MultiPoly var(const std::string& name) const { return MultiPoly::variable(vars(), name); }

  /// x^2 + a2 x + a1, i.e. a*(x).
  MultiPoly a_star() const {
    const MultiPoly x = var("x");
    return x * x + var(a2) * x + var(a1);
  }
  MultiPoly b_star() const {
    const MultiPoly y = var("y");
    return y * y + var(b2) * y + var(b1);
  }

  MultiPoly rhs() const {
    const MultiPoly one = MultiPoly::constant(vars(), 1);
    return var("x") * a_star() + var("y") * b_star() + one;
  }

  MultiPoly defining() const { return var("x") * var("y") * var("z") - rhs(); }

  /// Specializes the indeterminates; `values` is indexed by name.
  SurfaceSpec specialize(const std::map<std::string, Integer>& values) const {
    auto get = [&](const std::string& n) { return values.at(n); };
    UniPoly a(std::vector<Integer>{1, get(a1), get(a2), 1});
    UniPoly b(std::vector<Integer>{1, get(b1), get(b2), 1});
    return make_surface(a, b);
  }

  friend bool operator==(const SymbolicSurface&, const SymbolicSurface&) = default;
};

inline SymbolicSurface push_surface(Letter l, const SymbolicSurface& s) {
  SymbolicSurface t = s;
  switch (l) {
    case Letter::SigmaY: std::swap(t.a2, t.a1); break;
    case Letter::SigmaX: std::swap(t.b2, t.b1); break;
    case Letter::Tau:
      std::swap(t.a2, t.b2);
      std::swap(t.a1, t.b1);
      break;
  }
  return t;
}

inline std::string format(const SymbolicSurface& s) {
  return "a=t^3+" + s.a2 + "*t^2+" + s.a1 + "*t+1;b=t^3+" + s.b2 + "*t^2+" + s.b1 + "*t+1";
}

using AnySurface = std::variant<SymbolicSurface, SurfaceSpec>;

inline std::string format(const AnySurface& s) {
  return std::visit([](const auto& v) { return format(v); }, s);
}

inline const Vars& vars_of(const AnySurface& s) {
  return std::holds_alternative<SurfaceSpec>(s) ? xyz_vars() : SymbolicSurface::vars();
}

inline MultiPoly rhs_of(const AnySurface& s) {
  return std::visit([](const auto& v) { return v.rhs(); }, s);
}

inline MultiPoly defining_of(const AnySurface& s) {
  return std::visit([](const auto& v) { return v.defining(); }, s);
}

inline AnySurface push_surface(Letter l, const AnySurface& s) {
  return std::visit([l](const auto& v) -> AnySurface { return push_surface(l, v); }, s);
}

// ---------------------------------------------------------------------------
// Normal form

/// Reduction modulo h = xyz - g with g = a(x) + b(y) - c. Every monomial
/// divisible by xyz is rewritten by xyz -> g; g has no z, so the z-degree
/// drops with each step. Work is bucketed by z-degree and processed from the
/// top so that cancellations happen before further rewriting.
class Reducer {
public:
  explicit Reducer(const AnySurface& s) : vars_(vars_of(s)), g_(rhs_of(s)) {}

  const Vars& vars() const { return vars_; }

  MultiPoly normal_form(const MultiPoly& p) const {
    if (p.vars() != vars_) throw ValidationError("normal_form: polynomial uses a different variable list");
    if (detail::all_fit_int64(p.terms()) && detail::all_fit_int64(g_.terms())) {
      if (auto fast = normal_form_small(p)) return *fast;
    }
    const Monomial xyz = make_monomial({1, 1, 1});

    std::unordered_map<Monomial, Integer> result;
    std::vector<std::unordered_map<Monomial, Integer>> pending;
    for (const auto& [m, c] : p.terms()) {
      if (standard(m)) {
        result[m] += c;
      } else {
        unsigned k = exponent(m, 2);
        if (pending.size() <= k) pending.resize(k + 1);
        pending[k][m] += c;
      }
    }
    for (std::size_t k = pending.size(); k-- > 1;) {
      auto bucket = std::move(pending[k]);
      for (const auto& [m, c] : bucket) {
        if (c == 0) continue;
        const Monomial base = m - xyz;
        for (const auto& [gm, gc] : g_.terms()) {
          const Monomial nm = base + gm;
          Integer& slot = standard(nm) ? result[nm] : pending[k - 1][nm];
          mpz_addmul(slot.get_mpz_t(), c.get_mpz_t(), gc.get_mpz_t());
        }
      }
    }
    std::vector<MultiPoly::Term> terms;
    terms.reserve(result.size());
    for (auto& [m, c] : result)
      if (c != 0) terms.emplace_back(m, std::move(c));
    return MultiPoly::from_terms(vars_, std::move(terms));
  }

private:
  static bool standard(Monomial m) { return exponent(m, 0) == 0 || exponent(m, 1) == 0 || exponent(m, 2) == 0; }

  /// Same rewriting with 128-bit coefficients; nullopt on overflow.
  std::optional<MultiPoly> normal_form_small(const MultiPoly& p) const {
    const Monomial xyz = make_monomial({1, 1, 1});
    detail::SmallAccumulator result(p.size());
    std::vector<detail::SmallAccumulator> pending;
    bool ok = true;
    for (const auto& [m, c] : p.terms()) {
      if (standard(m)) {
        ok &= result.add(m, c.get_si());
      } else {
        unsigned k = exponent(m, 2);
        while (pending.size() <= k) pending.emplace_back();
        ok &= pending[k].add(m, c.get_si());
      }
    }
    for (std::size_t k = pending.size(); ok && k-- > 1;) {
      const detail::SmallAccumulator bucket = std::move(pending[k]);
      bucket.for_each([&](Monomial m, __int128 c) {
        if (c == 0 || !ok) return;
        const Monomial base = m - xyz;
        for (const auto& [gm, gc] : g_.terms()) {
          __int128 v;
          if (__builtin_mul_overflow(c, static_cast<__int128>(gc.get_si()), &v)) {
            ok = false;
            return;
          }
          const Monomial nm = base + gm;
          ok &= standard(nm) ? result.add(nm, v) : pending[k - 1].add(nm, v);
        }
      });
    }
    if (!ok) return std::nullopt;
    std::vector<MultiPoly::Term> terms;
    terms.reserve(result.size());
    result.for_each([&](Monomial m, __int128 v) {
      if (v != 0) terms.emplace_back(m, from_int128(v));
    });
    return MultiPoly::from_terms(vars_, std::move(terms));
  }

  Vars vars_;
  MultiPoly g_;
};

inline MultiPoly normal_form(const MultiPoly& p, const AnySurface& s) { return Reducer(s).normal_form(p); }

/// Normal form with x^n (n = deg a) as the marked term instead of xyz,
/// which is what a graded reverse-lexicographic order with x > y > z picks.
/// Rewrites x^n -> a_n (xyz - (g - a_n x^n)); the x-degree drops each step.
inline MultiPoly normal_form_leading_x(const MultiPoly& p, const AnySurface& s) {
  const Vars& v = vars_of(s);
  if (p.vars() != v) throw ValidationError("normal_form_leading_x: variable mismatch");
  const MultiPoly g = rhs_of(s);
  unsigned n = 0;
  Integer lead;
  for (const auto& [m, c] : g.terms())
    if (m == with_exponent(0, 0, exponent(m, 0)) && exponent(m, 0) > n) {
      n = exponent(m, 0);
      lead = c;
    }
  if (n < 3 || abs(lead) != 1) throw InternalError("normal_form_leading_x: unexpected leading coefficient");
  const Monomial marked = with_exponent(0, 0, n);
  const MultiPoly xyz = MultiPoly::variable(v, 0) * MultiPoly::variable(v, 1) * MultiPoly::variable(v, 2);
  const MultiPoly tail = lead * (xyz - g + MultiPoly::from_terms(v, {{marked, lead}}));

  std::unordered_map<Monomial, Integer> result;
  std::map<unsigned, std::unordered_map<Monomial, Integer>> pending;
  auto put = [&](Monomial m, const Integer& c) {
    if (exponent(m, 0) >= n)
      pending[exponent(m, 0)][m] += c;
    else
      result[m] += c;
  };
  for (const auto& [m, c] : p.terms()) put(m, c);
  while (!pending.empty()) {
    auto top = std::prev(pending.end());
    auto bucket = std::move(top->second);
    pending.erase(top);
    for (const auto& [m, c] : bucket) {
      if (c == 0) continue;
      const Monomial base = m - marked;
      for (const auto& [tm, tc] : tail.terms()) put(base + tm, c * tc);
    }
  }
  std::vector<MultiPoly::Term> terms;
  for (auto& [m, c] : result)
    if (c != 0) terms.emplace_back(m, std::move(c));
  return MultiPoly::from_terms(v, std::move(terms));
}

// ---------------------------------------------------------------------------
// Polynomial maps

struct PolyMap {
  std::array<MultiPoly, 3> components;  // images of x, y, z
  AnySurface source;
  AnySurface target;
  std::vector<Letter> word;  // applied left to right
};

inline PolyMap generator_map(Letter l, const SurfaceSpec& s) {
  return {generator_formula(l, s), AnySurface{s}, AnySurface{push_surface(l, s)}, {l}};
}

/// Generic formulas with the slot variables of `s`:
///   σy = (yz - a*(x), y, yz^2 - z a*(x) - (x + a2) b*(y)),
///   σx = (x, xz - b*(y), xz^2 - z b*(y) - (y + b2) a*(x)).
inline PolyMap generator_map(Letter l, const SymbolicSurface& s) {
  const MultiPoly x = s.var("x"), y = s.var("y"), z = s.var("z");
  const MultiPoly A = s.a_star(), B = s.b_star();
  std::array<MultiPoly, 3> comps;
  switch (l) {
    case Letter::Tau: comps = {y, x, z}; break;
    case Letter::SigmaY: comps = {y * z - A, y, y * z * z - z * A - (x + s.var(s.a2)) * B}; break;
    case Letter::SigmaX: comps = {x, x * z - B, x * z * z - z * B - (y + s.var(s.b2)) * A}; break;
  }
  return {comps, AnySurface{s}, AnySurface{push_surface(l, s)}, {l}};
}

inline PolyMap generator_map(Letter l, const AnySurface& s) {
  return std::visit([l](const auto& v) { return generator_map(l, v); }, s);
}

inline PolyMap identity_map(const AnySurface& s) {
  const Vars& v = vars_of(s);
  return {{MultiPoly::variable(v, 0), MultiPoly::variable(v, 1), MultiPoly::variable(v, 2)}, s, s, {}};
}

namespace detail {

inline std::vector<MultiPoly> substitution_images(const std::array<MultiPoly, 3>& comps, const Vars& vars) {
  std::vector<MultiPoly> images{comps[0], comps[1], comps[2]};
  for (std::size_t i = 3; i < vars.size(); ++i) images.push_back(MultiPoly::variable(vars, i));
  for (const auto& im : images)
    if (im.vars() != vars) throw ValidationError("map components use a different variable list");
  return images;
}

/// p(images) with every intermediate product reduced.
inline MultiPoly substitute_reduced(const MultiPoly& p, const std::array<MultiPoly, 3>& comps, const Reducer& r) {
  const Vars& v = r.vars();
  if (p.vars() != v) throw ValidationError("substitute: variable mismatch");
  auto mx = p.max_exponents();
  std::array<std::vector<MultiPoly>, 3> powers;
  for (std::size_t i = 0; i < 3; ++i) {
    powers[i].push_back(MultiPoly::constant(v, 1));
    for (unsigned k = 1; k <= mx[i]; ++k) powers[i].push_back(r.normal_form(powers[i].back() * comps[i]));
  }
  MultiPoly acc(v);
  for (const auto& [m, c] : p.terms()) {
    // Coefficient-variable part stays a monomial.
    Monomial rest = m;
    for (std::size_t i = 0; i < 3; ++i) rest = with_exponent(rest, i, 0);
    MultiPoly term = MultiPoly::from_terms(v, {{rest, c}});
    for (std::size_t i = 0; i < 3; ++i) {
      unsigned e = exponent(m, i);
      if (e) term = r.normal_form(term * powers[i][e]);
    }
    acc += term;
  }
  return r.normal_form(acc);
}

}  // namespace detail

/// p with (x, y, z) replaced by the components of m, fully expanded.
inline MultiPoly substitute_map(const PolyMap& m, const MultiPoly& p) {
  const Vars& v = vars_of(m.source);
  if (p.vars() != v) throw ValidationError("substitute_map: polynomial variables do not match the map");
  return p.substitute(detail::substitution_images(m.components, v));
}

/// True iff the target equation pulls back into the ideal of the source.
inline bool verify_map(const PolyMap& m) {
  if (vars_of(m.source) != vars_of(m.target)) return false;
  MultiPoly pulled = substitute_map(m, defining_of(m.target));
  return normal_form(pulled, m.source).is_zero();
}

/// Applies m1, then m2. Components are reduced modulo m1's source after
/// every multiplication.
inline PolyMap compose_maps(const PolyMap& m1, const PolyMap& m2) {
  if (!(m1.target == m2.source))
    throw ValidationError("compose_maps: first map ends on " + format(m1.target) + " but second starts on " +
                          format(m2.source));
  Reducer r(m1.source);
  std::array<MultiPoly, 3> comps;
  for (std::size_t i = 0; i < 3; ++i) comps[i] = detail::substitute_reduced(m2.components[i], m1.components, r);
  std::vector<Letter> word = m1.word;
  word.insert(word.end(), m2.word.begin(), m2.word.end());
  return {comps, m1.source, m2.target, word};
}

/// Composition by plain substitution, with no reduction at all.
inline PolyMap compose_maps_unreduced(const PolyMap& m1, const PolyMap& m2) {
  if (!(m1.target == m2.source)) throw ValidationError("compose_maps_unreduced: surface mismatch");
  std::array<MultiPoly, 3> comps;
  auto images = detail::substitution_images(m1.components, vars_of(m1.source));
  for (std::size_t i = 0; i < 3; ++i) comps[i] = m2.components[i].substitute(images);
  std::vector<Letter> word = m1.word;
  word.insert(word.end(), m2.word.begin(), m2.word.end());
  return {comps, m1.source, m2.target, word};
}

inline PolyMap word_map(const std::vector<Letter>& letters, const AnySurface& s) {
  PolyMap acc = identity_map(s);
  for (Letter l : letters) acc = compose_maps(acc, generator_map(l, acc.target));
  return acc;
}

inline bool is_identity_mod(const PolyMap& m) {
  if (!(m.source == m.target)) throw ValidationError("is_identity_mod: map is not an endomorphism");
  Reducer r(m.source);
  const Vars& v = r.vars();
  for (std::size_t i = 0; i < 3; ++i)
    if (r.normal_form(m.components[i]) != MultiPoly::variable(v, i)) return false;
  return true;
}

/// Evaluates the components at a point, with the coefficient indeterminates
/// (if any) set to `coeffs` (values for a1, a2, b1, b2 in variable order).
inline Point3 evaluate_map(const PolyMap& m, const Point3& p, const std::vector<Integer>& coeffs = {}) {
  std::vector<Integer> pt{p[0], p[1], p[2]};
  pt.insert(pt.end(), coeffs.begin(), coeffs.end());
  if (pt.size() != vars_of(m.source).size()) throw ValidationError("evaluate_map: wrong number of coefficient values");
  return {m.components[0].eval(pt), m.components[1].eval(pt), m.components[2].eval(pt)};
}

/// Substitutes integer values for the coefficient indeterminates and
/// returns a map on the concrete surface.
inline PolyMap specialize_map(const PolyMap& m, const std::map<std::string, Integer>& values) {
  const auto* src = std::get_if<SymbolicSurface>(&m.source);
  const auto* tgt = std::get_if<SymbolicSurface>(&m.target);
  if (!src || !tgt) throw ValidationError("specialize_map: map is not symbolic");
  const Vars& from = SymbolicSurface::vars();
  std::array<Integer, 7> val{0, 0, 0};
  for (std::size_t i = 3; i < from.size(); ++i) val[i] = values.at(from[i]);
  std::array<MultiPoly, 3> comps;
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<MultiPoly::Term> terms;
    terms.reserve(m.components[i].size());
    for (const auto& [mono, c] : m.components[i].terms()) {
      Integer coef = c;
      for (std::size_t k = 3; k < from.size(); ++k)
        if (unsigned e = exponent(mono, k)) coef *= pow(val[k], e);
      if (coef == 0) continue;
      Monomial key = mono & 0xffffffULL;  // keep the x, y, z exponents
      terms.emplace_back(key, std::move(coef));
    }
    comps[i] = MultiPoly::from_terms(xyz_vars(), std::move(terms));
  }
  return {comps, AnySurface{src->specialize(values)}, AnySurface{tgt->specialize(values)}, m.word};
}

// ---------------------------------------------------------------------------
// σ_{a,b} over the symbolic surface

inline constexpr std::array<int, 3> kExpectedDegrees{13, 34, 55};
/// Reference monomial counts. They are reproduced by the specialization
/// (a2,a1,b2,b1) = (0,1,0,2): plain composition gives the unreduced counts
/// and the x^3-marked normal form gives the reduced ones.
inline constexpr std::array<std::size_t, 3> kExpectedUnreducedCounts{178, 3485, 15314};
inline constexpr std::array<std::size_t, 3> kExpectedReducedCounts{110, 998, 2881};
inline constexpr std::array<long, 4> kReferenceSpecialization{0, 1, 0, 2};

struct ComponentStats {
  std::array<int, 3> degrees{};               // total degree in x, y, z
  std::array<std::size_t, 3> monomials{};     // coefficient indeterminates counted as variables
  std::array<std::size_t, 3> xyz_support{};   // distinct exponent patterns in x, y, z
};

inline ComponentStats component_stats(const std::array<MultiPoly, 3>& comps) {
  ComponentStats s;
  for (std::size_t i = 0; i < 3; ++i) {
    s.degrees[i] = comps[i].degree_in({0, 1, 2});
    s.monomials[i] = comps[i].size();
    s.xyz_support[i] = comps[i].support_size_in({0, 1, 2});
  }
  return s;
}

inline ComponentStats component_stats(const PolyMap& m) { return component_stats(m.components); }

struct SpecializationStats {
  std::array<long, 4> values{};  // (a2, a1, b2, b1)
  ComponentStats unreduced;      // plain substitution, no reduction
  ComponentStats reduced;        // xyz-marked normal form
  ComponentStats reduced_leading_x;  // x^3-marked normal form
  /// The generic map specialized agrees with σ_{a,b} built on the
  /// concrete surface.
  bool matches_generic_specialization = false;
};

struct PointwiseCertificate {
  std::size_t surfaces = 0;
  std::size_t points = 0;
  std::size_t agreements = 0;
  bool passed() const { return points >= 100 && surfaces >= 10 && agreements == points; }
};

struct SigmaAbReport {
  PolyMap map;
  ComponentStats reduced;  // generic map, xyz-marked normal form
  std::optional<ComponentStats> unreduced;
  std::vector<SpecializationStats> specializations;
  /// The reference specialization reproduces the expected counts.
  bool counts_match_expected = false;
  PointwiseCertificate certificate;
};

struct SigmaAbOptions {
  bool generic_unreduced = false;  // slow: millions of terms
  std::vector<std::array<long, 4>> specializations{{0, 1, 0, 2}, {0, 1, 0, 1}};
  std::size_t certificate_surfaces = 10;
  std::size_t certificate_points = 100;
  std::uint64_t seed = 20240501;
};

inline std::map<std::string, Integer> coefficient_values(const std::array<long, 4>& v) {
  return {{"a2", v[0]}, {"a1", v[1]}, {"b2", v[2]}, {"b1", v[3]}};
}

inline PolyMap word_map_unreduced(const std::vector<Letter>& letters, const AnySurface& s) {
  PolyMap acc = identity_map(s);
  for (Letter l : letters) acc = compose_maps_unreduced(acc, generator_map(l, acc.target));
  return acc;
}

/// Checks σ_{a,b} at integral points of random surfaces with
/// |a2|,|a1|,|b2|,|b1| <= 5 against the stepwise point action.
inline PointwiseCertificate certify_pointwise(const PolyMap& generic, std::size_t surfaces, std::size_t min_points,
                                              std::uint64_t seed) {
  PointwiseCertificate cert;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-5, 5);
  const std::size_t per_surface = std::max<std::size_t>(1, (min_points + surfaces - 1) / surfaces);
  std::size_t attempts = 0;
  while ((cert.surfaces < surfaces || cert.points < min_points) && attempts++ < 50 * surfaces) {
    const std::array<long, 4> v{coef(rng), coef(rng), coef(rng), coef(rng)};
    const auto values = coefficient_values(v);
    const SurfaceSpec s = SymbolicSurface{}.specialize(values);
    auto rep = census(s, 40, Region::SymmetricBox);
    std::vector<Point3> pts;
    for (const auto& p : rep.points)
      if (p[0] != 0 && p[1] != 0) pts.push_back(p);
    if (pts.size() < per_surface) continue;
    std::shuffle(pts.begin(), pts.end(), rng);
    pts.resize(per_surface);
    const PolyMap concrete = specialize_map(generic, values);
    const GeneratorWord word = GeneratorWord::from_letters(generic.word, s);
    for (const auto& p : pts) {
      ++cert.points;
      if (evaluate_map(concrete, p) == apply_word(word, p).point) ++cert.agreements;
    }
    ++cert.surfaces;
  }
  return cert;
}

inline SpecializationStats specialization_stats(const PolyMap& generic, const std::array<long, 4>& v) {
  SpecializationStats st;
  st.values = v;
  const auto values = coefficient_values(v);
  const AnySurface s{SymbolicSurface{}.specialize(values)};
  const PolyMap direct = word_map(generic.word, s);
  st.reduced = component_stats(direct);
  st.unreduced = component_stats(word_map_unreduced(generic.word, s));
  std::array<MultiPoly, 3> lx;
  for (std::size_t i = 0; i < 3; ++i) lx[i] = normal_form_leading_x(direct.components[i], s);
  st.reduced_leading_x = component_stats(lx);
  st.matches_generic_specialization = specialize_map(generic, values).components == direct.components;
  return st;
}

inline SigmaAbReport sigma_ab_symbolic(const SigmaAbOptions& opts = {}) {
  SigmaAbReport rep;
  const AnySurface generic{SymbolicSurface{}};
  rep.map = word_map(sigma_ab_letters(), generic);
  rep.reduced = component_stats(rep.map);
  if (opts.generic_unreduced) rep.unreduced = component_stats(word_map_unreduced(sigma_ab_letters(), generic));

  auto specs = opts.specializations;
  if (std::find(specs.begin(), specs.end(), kReferenceSpecialization) == specs.end())
    specs.insert(specs.begin(), kReferenceSpecialization);
  for (const auto& v : specs) {
    rep.specializations.push_back(specialization_stats(rep.map, v));
    const auto& st = rep.specializations.back();
    if (v == kReferenceSpecialization)
      rep.counts_match_expected = st.unreduced.monomials == kExpectedUnreducedCounts &&
                                  st.reduced_leading_x.monomials == kExpectedReducedCounts;
  }

  rep.certificate = certify_pointwise(rep.map, opts.certificate_surfaces, opts.certificate_points, opts.seed);
  return rep;
}

}  // namespace a2lab
