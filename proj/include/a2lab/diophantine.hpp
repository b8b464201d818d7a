#pragma once

// Integral points of S_{a,b}: a divisibility sieve over x | b(y), y | a(x),
// modular root finding, Mordell's explicit family, and growth reporting.

#include <a2lab/integer.hpp>
#include <a2lab/surface.hpp>
#include <a2lab/unipoly.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace a2lab {

/// Roots of a fixed integer polynomial modulo arbitrary moduli. Roots mod
/// each prime are found exhaustively and cached; prime powers are reached
/// by Hensel lifting and moduli are assembled by CRT.
///
/// Not thread-safe (it caches); use one instance per worker.
class RootFinder {
public:
  explicit RootFinder(const UniPoly& f) : f_(f) {}

  /// Sorted residues r in [0, m) with f(r) ≡ 0 (mod m).
  std::vector<std::uint64_t> roots(std::uint64_t m) { return roots(m, factor_u64(m)); }

  std::vector<std::uint64_t> roots(std::uint64_t m, const std::vector<PrimePower>& factors) {
    if (m == 0) throw ValidationError("roots_mod: modulus must be positive");
    std::vector<std::uint64_t> acc{0};
    std::uint64_t modulus = 1;
    for (const auto& [p, e] : factors) {
      std::uint64_t pe = 1;
      for (unsigned i = 0; i < e; ++i) pe *= p;
      const auto& local = prime_power_roots(p, e, pe);
      if (local.empty()) return {};
      // CRT: x ≡ r (mod modulus), x ≡ s (mod pe).
      const std::uint64_t inv = inverse(modulus % pe, pe);
      std::vector<std::uint64_t> next;
      next.reserve(acc.size() * local.size());
      for (auto r : acc)
        for (auto s : local) {
          std::uint64_t diff = (s + pe - r % pe) % pe;
          std::uint64_t t = detail::mulmod(diff, inv, pe);
          next.push_back(r + static_cast<std::uint64_t>(static_cast<unsigned __int128>(modulus) * t));
        }
      acc = std::move(next);
      modulus *= pe;
    }
    std::sort(acc.begin(), acc.end());
    return acc;
  }

private:
  std::uint64_t eval_mod(std::uint64_t t, std::uint64_t m) const {
    std::uint64_t acc = 0;
    for (auto it = f_.coeffs().rbegin(); it != f_.coeffs().rend(); ++it) {
      Integer c = mod(*it, Integer(static_cast<unsigned long>(m)));
      acc = (detail::mulmod(acc, t, m) + c.get_ui()) % m;
    }
    return acc;
  }

  std::uint64_t deriv_mod(std::uint64_t t, std::uint64_t m) const {
    std::uint64_t acc = 0;
    const auto& cs = f_.coeffs();
    for (std::size_t i = cs.size(); i-- > 1;) {
      Integer c = mod(cs[i] * static_cast<unsigned long>(i), Integer(static_cast<unsigned long>(m)));
      acc = (detail::mulmod(acc, t, m) + c.get_ui()) % m;
    }
    return acc;
  }

  static std::uint64_t inverse(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    Integer r;
    Integer A(static_cast<unsigned long>(a)), M(static_cast<unsigned long>(m));
    if (mpz_invert(r.get_mpz_t(), A.get_mpz_t(), M.get_mpz_t()) == 0) throw InternalError("CRT moduli not coprime");
    return r.get_ui();
  }

  const std::vector<std::uint64_t>& prime_roots(std::uint64_t p) {
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    // Horner over machine residues; exhaustive over [0, p).
    std::vector<std::uint64_t> cs;
    for (const auto& c : f_.coeffs()) cs.push_back(mod(c, Integer(static_cast<unsigned long>(p))).get_ui());
    std::vector<std::uint64_t> out;
    for (std::uint64_t t = 0; t < p; ++t) {
      std::uint64_t acc = 0;
      for (auto c = cs.rbegin(); c != cs.rend(); ++c) acc = (detail::mulmod(acc, t, p) + *c) % p;
      if (acc == 0) out.push_back(t);
    }
    return cache_.emplace(p, std::move(out)).first->second;
  }

  const std::vector<std::uint64_t>& prime_power_roots(std::uint64_t p, unsigned e, std::uint64_t pe) {
    if (e == 1) return prime_roots(p);
    auto it = cache_.find(pe);
    if (it != cache_.end()) return it->second;
    std::vector<std::uint64_t> cur = prime_roots(p);
    std::uint64_t pk = p;
    for (unsigned k = 1; k < e; ++k) {
      const std::uint64_t pk1 = pk * p;
      std::vector<std::uint64_t> next;
      for (auto r : cur) {
        if (deriv_mod(r, p) != 0) {
          // Simple root: the unique lift r + t p^k with
          // t ≡ -(f(r)/p^k) f'(r)^{-1} (mod p).
          std::uint64_t fr = eval_mod(r, pk1);
          std::uint64_t quotient = fr / pk;  // f(r) ≡ 0 (mod p^k)
          std::uint64_t t = detail::mulmod((p - quotient % p) % p, inverse(deriv_mod(r, p), p), p);
          next.push_back(r + t * pk);
        } else {
          for (std::uint64_t t = 0; t < p; ++t)
            if (eval_mod(r + t * pk, pk1) == 0) next.push_back(r + t * pk);
        }
      }
      cur = std::move(next);
      pk = pk1;
      if (cur.empty()) break;
    }
    std::sort(cur.begin(), cur.end());
    return cache_.emplace(pe, std::move(cur)).first->second;
  }

  UniPoly f_;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> cache_;
};

/// Sorted residues r in [0, m) with f(r) ≡ 0 (mod m).
inline std::vector<std::uint64_t> roots_mod(const UniPoly& f, std::uint64_t m) { return RootFinder(f).roots(m); }

// ---------------------------------------------------------------------------
// Census

enum class Region { PositiveBox, SymmetricBox };

inline std::string region_name(Region r) { return r == Region::PositiveBox ? "positive" : "symmetric"; }

inline Region parse_region(std::string_view s) {
  if (s == "positive") return Region::PositiveBox;
  if (s == "symmetric") return Region::SymmetricBox;
  throw ValidationError("region must be 'positive' or 'symmetric'");
}

/// Picard number over Q of S_{a,b} for cubic a, b: the number of distinct
/// irreducible factors of a plus those of b, minus 2.
inline int irreducible_factor_count(const UniPoly& a) {
  if (a.degree() < 1 || a.degree() > 3) throw ValidationError("factor count implemented for degrees 1..3");
  auto roots = rational_roots(a);
  RationalPoly rest = to_rational(a);
  for (const auto& r : roots)
    while (rest.size() >= 2 && eval(rest, r) == 0) rest = deflate(rest, r);
  int remaining_degree = static_cast<int>(rest.size()) - 1;
  // A leftover factor of degree 2 or 3 with no rational root is irreducible.
  return static_cast<int>(roots.size()) + (remaining_degree > 0 ? 1 : 0);
}

inline int picard_exponent(const SurfaceSpec& s) {
  if (s.a().degree() != 3 || s.b().degree() != 3) throw ValidationError("picard_exponent: cubic surfaces only");
  return irreducible_factor_count(s.a()) + irreducible_factor_count(s.b()) - 2;
}

struct GrowthPredictors {
  double log2_heuristic = 0;  // (1 - (n+m)/(2nm)) log^2 N
  double log_picard = 0;      // log^ρ N
  double log_picard_plus2 = 0;  // log^{ρ+2} N
};

struct CensusReport {
  SurfaceSpec surface;
  std::int64_t bound = 0;
  Region region = Region::PositiveBox;
  std::vector<Point3> points;  // sorted lexicographically
  std::size_t count = 0;
  double fitted_c = 0;  // count / log^2 N; reported, never asserted
  int picard = 0;
  Rational heuristic_coefficient;
  GrowthPredictors predictors;
  bool lines_excluded = false;
};

struct CensusOptions {
  unsigned workers = 1;
  /// Points for which this returns true are dropped (used to remove points
  /// on known affine lines).
  std::function<bool(const SurfaceSpec&, const Point3&)> exclude;
};

namespace detail {

inline __int128 eval128(const std::vector<__int128>& cs, __int128 t) {
  __int128 acc = 0;
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

inline std::vector<__int128> to_int128(const UniPoly& p) {
  std::vector<__int128> out;
  for (const auto& c : p.coeffs()) out.push_back(to_int64(c));
  return out;
}

/// Checks that |p(t)| stays far below 2^127 for |t| <= bound.
inline void check_machine_range(const UniPoly& p, std::int64_t bound) {
  Integer total(0);
  Integer bp(1);
  for (const auto& c : p.coeffs()) {
    total += abs(c) * bp;
    bp *= static_cast<long>(bound);
  }
  if (mpz_sizeinbase(total.get_mpz_t(), 2) > 100)
    throw ValidationError("census bound too large for 128-bit evaluation of the surface polynomials");
}

/// Integer roots of p lying in [lo, hi].
inline std::vector<std::int64_t> integer_roots_in(const UniPoly& p, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (const auto& r : rational_roots(p)) {
    if (r.get_den() != 1) continue;
    const Integer& n = r.get_num();
    if (fits_int64(n) && n >= lo && n <= hi) out.push_back(n.get_si());
  }
  return out;
}

}  // namespace detail

/// Enumerates integral points with x, y in the region by sieving: for each
/// x the admissible y are the roots of b modulo |x|, lifted into range,
/// then xy | a(x) + b(y) - c is tested directly.
///
/// In the symmetric box the fibers x = 0 (b(y) = 0) and y = 0 (a(x) = 0)
/// are lines with free z; their points are listed for -N <= z <= N.
inline CensusReport census(const SurfaceSpec& s, std::int64_t bound, Region region, const CensusOptions& opts = {}) {
  if (bound < 1) throw ValidationError("census bound must be at least 1");
  detail::check_machine_range(s.a(), bound);
  detail::check_machine_range(s.b(), bound);
  const auto a = detail::to_int128(s.a());
  const auto b = detail::to_int128(s.b());
  const __int128 c = to_int64(s.c());
  const std::int64_t lo = region == Region::PositiveBox ? 1 : -bound;
  const std::int64_t hi = bound;

  // Smallest-prime-factor table for fast factorization of |x|.
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(bound) + 1, 0);
  for (std::uint64_t i = 2; i <= static_cast<std::uint64_t>(bound); ++i)
    if (spf[i] == 0)
      for (std::uint64_t j = i; j <= static_cast<std::uint64_t>(bound); j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  auto factor = [&](std::uint64_t n) {
    std::vector<PrimePower> f;
    while (n > 1) {
      std::uint64_t p = spf[n];
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.push_back({p, e});
    }
    return f;
  };

  auto scan = [&](std::int64_t x_from, std::int64_t x_to, std::vector<Point3>& out) {
    RootFinder finder(s.b());
    for (std::int64_t x = x_from; x <= x_to; ++x) {
      if (x == 0) continue;
      const std::uint64_t m = static_cast<std::uint64_t>(x < 0 ? -x : x);
      const __int128 ax = detail::eval128(a, x);
      for (std::uint64_t r : finder.roots(m, factor(m))) {
        // Smallest y >= lo with y ≡ r (mod m).
        std::int64_t start = lo + static_cast<std::int64_t>(((static_cast<__int128>(r) - lo) % m + m) % m);
        for (std::int64_t y = start; y <= hi; y += static_cast<std::int64_t>(m)) {
          if (y == 0) continue;
          const __int128 num = ax + detail::eval128(b, y) - c;
          const __int128 den = static_cast<__int128>(x) * y;
          if (num % den != 0) continue;
          out.push_back({Integer(static_cast<long>(x)), Integer(static_cast<long>(y)), from_int128(num / den)});
        }
      }
    }
  };

  const unsigned workers = std::max(1u, opts.workers);
  std::vector<std::vector<Point3>> shards(workers);
  {
    const std::int64_t span = hi - lo + 1;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      std::int64_t from = lo + span * w / workers;
      std::int64_t to = lo + span * (w + 1) / workers - 1;
      if (workers == 1)
        scan(from, to, shards[w]);
      else
        pool.emplace_back([&, from, to, w] { scan(from, to, shards[w]); });
    }
    for (auto& t : pool) t.join();
  }
  std::vector<Point3> points;
  for (auto& sh : shards) points.insert(points.end(), sh.begin(), sh.end());

  if (region == Region::SymmetricBox) {
    for (auto y : detail::integer_roots_in(s.b(), lo, hi))
      if (y != 0)
        for (std::int64_t z = -bound; z <= bound; ++z)
          points.push_back({Integer(0), Integer(static_cast<long>(y)), Integer(static_cast<long>(z))});
    for (auto x : detail::integer_roots_in(s.a(), lo, hi))
      if (x != 0)
        for (std::int64_t z = -bound; z <= bound; ++z)
          points.push_back({Integer(static_cast<long>(x)), Integer(0), Integer(static_cast<long>(z))});
  }

  if (opts.exclude)
    points.erase(std::remove_if(points.begin(), points.end(), [&](const Point3& p) { return opts.exclude(s, p); }),
                 points.end());
  std::sort(points.begin(), points.end());

  CensusReport rep{s, bound, region, {}, 0, 0.0, 0, Rational(0), GrowthPredictors{}, false};
  rep.points = std::move(points);
  rep.count = rep.points.size();
  rep.lines_excluded = static_cast<bool>(opts.exclude);
  const double logn = std::log(static_cast<double>(bound));
  rep.fitted_c = logn > 0 ? static_cast<double>(rep.count) / (logn * logn) : 0.0;
  const int n = s.a().degree(), mdeg = s.b().degree();
  rep.heuristic_coefficient = Rational(1) - Rational(n + mdeg, 2 * n * mdeg);
  rep.heuristic_coefficient.canonicalize();
  if (n == 3 && mdeg == 3) rep.picard = picard_exponent(s);
  rep.predictors.log2_heuristic = rep.heuristic_coefficient.get_d() * logn * logn;
  rep.predictors.log_picard = std::pow(logn, rep.picard);
  rep.predictors.log_picard_plus2 = std::pow(logn, rep.picard + 2);
  return rep;
}

/// Census points as CSV: header x,y,z then one row per point.
inline std::string census_csv(const CensusReport& rep) {
  std::string out = "x,y,z\n";
  for (const auto& p : rep.points) out += format(p) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

/// Mordell's solution of xyz = A x^3 + B y^3 + C:
///   u = A^3 B C^5 + 1, y = u^3 + A C^2,
///   x = B u^8 + 3 A B C^2 u^5 + 3 A^2 B C^4 u^2 + C,
/// with z obtained by exact division.
inline Point3 mordell_point(const Integer& A, const Integer& B, const Integer& C) {
  if (A == 0 || B == 0 || C == 0) throw ValidationError("mordell_point: coefficients must be nonzero");
  const Integer u = A * A * A * B * pow(C, 5) + 1;
  const Integer x = B * pow(u, 8) + 3 * A * B * C * C * pow(u, 5) + 3 * A * A * B * pow(C, 4) * u * u + C;
  const Integer y = u * u * u + A * C * C;
  const Integer rhs = A * x * x * x + B * y * y * y + C;
  // e.g. (1,2,-1): u = -1 and y = 0, so z is unconstrained.
  if (x * y == 0) throw ValidationError("mordell_point: formula degenerates to x*y = 0");
  Point3 p{x, y, exact_div(rhs, x * y, "Mordell z-coordinate")};
  if (p[0] * p[1] * p[2] != rhs) throw InternalError("mordell_point: equation check failed");
  return p;
}

}  // namespace a2lab
