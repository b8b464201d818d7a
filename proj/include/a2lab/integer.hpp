#pragma once

// Arbitrary-precision integer helpers shared by every module.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace a2lab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for malformed input or violated preconditions.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails (exact division that
/// should have been exact, an image point off its surface, ...).
class InternalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Integer& v) { return v.get_str(10); }

inline std::string to_string(const Rational& v) { return v.get_str(10); }

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw ValidationError("empty integer literal");
  s = s.substr(b, e - b + 1);
  if (s.front() == '+') s.erase(0, 1);
  std::size_t start = (!s.empty() && s.front() == '-') ? 1 : 0;
  if (start == s.size() ||
      !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                   [](char c) { return c >= '0' && c <= '9'; }))
    throw ValidationError("malformed integer literal '" + std::string(text) + "'");
  return Integer(s, 10);
}

/// Splits on `sep`, keeping empty fields.
inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto next = text.find(sep, pos);
    out.emplace_back(text.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

inline Integer abs(const Integer& v) { return v < 0 ? Integer(-v) : v; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Floor of the square root; `v` must be nonnegative.
inline Integer isqrt(const Integer& v) {
  if (v < 0) throw ValidationError("isqrt of a negative number");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

inline bool is_square(const Integer& v) {
  return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

/// floor(a / b) for b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Nonnegative residue of a mod m, m > 0.
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool divides(const Integer& d, const Integer& n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// n / d, throwing InternalError unless the division is exact.
inline Integer exact_div(const Integer& n, const Integer& d, const char* what = "exact division") {
  if (d == 0 || !divides(d, n)) throw InternalError(std::string(what) + " failed");
  Integer q;
  mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

inline bool fits_int64(const Integer& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

inline std::int64_t to_int64(const Integer& v) {
  if (!fits_int64(v)) throw ValidationError("integer " + to_string(v) + " exceeds 64 bits");
  return static_cast<std::int64_t>(v.get_si());
}

inline Integer from_int128(__int128 v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return Integer(static_cast<long>(v));
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

// ---------------------------------------------------------------------------
// Factorization of machine-size integers: trial division backed by a
// deterministic Miller-Rabin test (bases valid for all 64-bit inputs).

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
};

/// Prime factorization of n >= 1 by trial division; the cofactor left after
/// trial division up to 10^6 must be prime (checked), so inputs are limited
/// to about 10^12 unless they have small factors.
inline std::vector<PrimePower> factor_u64(std::uint64_t n) {
  std::vector<PrimePower> out;
  if (n == 0) throw ValidationError("cannot factor zero");
  auto take = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  };
  take(2);
  take(3);
  for (std::uint64_t p = 5; p * p <= n; p += 6) {
    take(p);
    take(p + 2);
    if (p > 1'000'000 && n > 1) {
      if (!is_prime_u64(n))
        throw ValidationError("factorization beyond trial-division range");
      break;
    }
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

/// All positive divisors of |n|, n != 0, in increasing order.
inline std::vector<Integer> positive_divisors(const Integer& n) {
  Integer m = abs(n);
  if (m == 0) throw ValidationError("divisors of zero");
  if (!mpz_fits_ulong_p(m.get_mpz_t())) throw ValidationError("divisor enumeration beyond 64 bits");
  auto fac = factor_u64(m.get_ui());
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [p, e] : fac) {
    std::size_t base = divs.size();
    Integer pk(1);
    for (unsigned k = 1; k <= e; ++k) {
      pk *= static_cast<unsigned long>(p);
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace a2lab
