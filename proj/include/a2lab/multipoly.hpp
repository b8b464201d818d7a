#pragma once

// Sparse multivariate integer polynomials over an explicit variable list.

#include <a2lab/integer.hpp>
#include <a2lab/unipoly.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace a2lab {

using Vars = std::vector<std::string>;

/// A monomial packs up to eight exponents, one byte each (variable i in
/// bits 8i..8i+7).
using Monomial = std::uint64_t;

inline constexpr std::size_t kMaxVars = 8;
inline constexpr unsigned kMaxExponent = 255;

inline unsigned exponent(Monomial m, std::size_t var) {
  return static_cast<unsigned>((m >> (8 * var)) & 0xffu);
}

inline Monomial with_exponent(Monomial m, std::size_t var, unsigned e) {
  if (e > kMaxExponent) throw ValidationError("monomial exponent exceeds 255");
  m &= ~(Monomial{0xff} << (8 * var));
  return m | (Monomial{e} << (8 * var));
}

inline Monomial make_monomial(const std::vector<unsigned>& exps) {
  if (exps.size() > kMaxVars) throw ValidationError("too many variables");
  Monomial m = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) m = with_exponent(m, i, exps[i]);
  return m;
}

namespace detail {

/// Open-addressing map Monomial -> __int128 used on the hot paths while all
/// coefficients stay small. `add` reports overflow instead of wrapping; the
/// caller then redoes the work with GMP.
class SmallAccumulator {
public:
  explicit SmallAccumulator(std::size_t expected = 16) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    resize(cap);
  }

  bool add(Monomial m, __int128 v) {
    std::size_t i = slot(m);
    if (!used_[i]) {
      used_[i] = 1;
      keys_[i] = m;
      vals_[i] = v;
      if (++count_ * 2 > keys_.size()) grow();
      return true;
    }
    return !__builtin_add_overflow(vals_[i], v, &vals_[i]);
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (used_[i]) f(keys_[i], vals_[i]);
  }

  std::size_t size() const { return count_; }

private:
  static std::uint64_t mix(std::uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    return k;
  }

  std::size_t slot(Monomial m) const {
    std::size_t mask = keys_.size() - 1;
    std::size_t i = mix(m) & mask;
    while (used_[i] && keys_[i] != m) i = (i + 1) & mask;
    return i;
  }

  void resize(std::size_t cap) {
    keys_.assign(cap, 0);
    vals_.assign(cap, 0);
    used_.assign(cap, 0);
  }

  void grow() {
    auto keys = std::move(keys_);
    auto vals = std::move(vals_);
    auto used = std::move(used_);
    resize(keys.size() * 2);
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (used[i]) {
        std::size_t j = slot(keys[i]);
        used_[j] = 1;
        keys_[j] = keys[i];
        vals_[j] = vals[i];
      }
  }

  std::vector<Monomial> keys_;
  std::vector<__int128> vals_;
  std::vector<std::uint8_t> used_;
  std::size_t count_ = 0;
};

inline bool all_fit_int64(const std::vector<std::pair<Monomial, Integer>>& terms) {
  for (const auto& t : terms)
    if (!mpz_fits_slong_p(t.second.get_mpz_t())) return false;
  return true;
}

}  // namespace detail

/// Sparse polynomial: a sorted list of (monomial, nonzero coefficient)
/// pairs. Values are immutable in practice; every operation returns a new
/// polynomial. Binary operations require identical variable lists.
class MultiPoly {
public:
  using Term = std::pair<Monomial, Integer>;

  MultiPoly() = default;
  explicit MultiPoly(Vars vars) : vars_(std::move(vars)) {
    if (vars_.size() > kMaxVars) throw ValidationError("MultiPoly supports at most 8 variables");
  }

  static MultiPoly constant(const Vars& vars, const Integer& c) {
    MultiPoly p(vars);
    if (c != 0) p.terms_.emplace_back(0, c);
    return p;
  }

  static MultiPoly variable(const Vars& vars, std::size_t index, unsigned power = 1) {
    if (index >= vars.size()) throw ValidationError("variable index out of range");
    MultiPoly p(vars);
    p.terms_.emplace_back(with_exponent(0, index, power), Integer(1));
    return p;
  }

  static MultiPoly variable(const Vars& vars, const std::string& name, unsigned power = 1) {
    return variable(vars, index_of(vars, name), power);
  }

  /// Builds from unsorted terms; repeated monomials are summed.
  static MultiPoly from_terms(const Vars& vars, std::vector<Term> terms) {
    MultiPoly p(vars);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first)
        p.terms_.back().second += t.second;
      else
        p.terms_.push_back(std::move(t));
    }
    p.drop_zeros();
    return p;
  }

  /// Univariate polynomial a in variable `index`.
  static MultiPoly from_unipoly(const Vars& vars, std::size_t index, const UniPoly& a) {
    MultiPoly p(vars);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
      if (a.coeffs()[i] != 0) p.terms_.emplace_back(with_exponent(0, index, static_cast<unsigned>(i)), a.coeffs()[i]);
    std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    return p;
  }

  static std::size_t index_of(const Vars& vars, const std::string& name) {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return i;
    throw ValidationError("unknown variable '" + name + "'");
  }

  const Vars& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Integer coeff(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial k) { return t.first < k; });
    return (it != terms_.end() && it->first == m) ? it->second : Integer(0);
  }

  /// Total degree restricted to the given variable indices.
  int degree_in(const std::vector<std::size_t>& indices) const {
    int best = -1;
    for (const auto& [m, c] : terms_) {
      int d = 0;
      for (auto i : indices) d += static_cast<int>(exponent(m, i));
      best = std::max(best, d);
    }
    return best;
  }

  int total_degree() const {
    std::vector<std::size_t> all(vars_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return degree_in(all);
  }

  /// Largest exponent of each variable.
  std::array<unsigned, kMaxVars> max_exponents() const {
    std::array<unsigned, kMaxVars> mx{};
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < vars_.size(); ++i) mx[i] = std::max(mx[i], exponent(t.first, i));
    return mx;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }

  MultiPoly operator-() const {
    MultiPoly r(*this);
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend MultiPoly operator*(const Integer& s, const MultiPoly& a) {
    if (s == 0) return MultiPoly(a.vars_);
    MultiPoly r(a);
    for (auto& t : r.terms_) t.second *= s;
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_vars(a, b);
    MultiPoly r(a.vars_);
    if (a.is_zero() || b.is_zero()) return r;
    auto ma = a.max_exponents();
    auto mb = b.max_exponents();
    for (std::size_t i = 0; i < a.vars_.size(); ++i)
      if (ma[i] + mb[i] > kMaxExponent) throw ValidationError("product exponent exceeds 255");
    if (a.size() == 1 || b.size() == 1) {
      const MultiPoly& single = a.size() == 1 ? a : b;
      const MultiPoly& other = a.size() == 1 ? b : a;
      const auto& [m, c] = single.terms_.front();
      r.terms_.reserve(other.size());
      for (const auto& t : other.terms_) r.terms_.emplace_back(t.first + m, t.second * c);
      return r;  // shifting by a monomial preserves order
    }
    if (detail::all_fit_int64(a.terms_) && detail::all_fit_int64(b.terms_)) {
      detail::SmallAccumulator fast(std::min<std::size_t>(a.size() * b.size(), 1u << 22));
      bool ok = true;
      for (const auto& [ma_, ca] : a.terms_) {
        const __int128 va = ca.get_si();
        for (const auto& [mb_, cb] : b.terms_) ok &= fast.add(ma_ + mb_, va * cb.get_si());
        if (!ok) break;
      }
      if (ok) {
        r.terms_.reserve(fast.size());
        fast.for_each([&](Monomial m, __int128 v) {
          if (v != 0) r.terms_.emplace_back(m, from_int128(v));
        });
        std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        return r;
      }
    }
    std::unordered_map<Monomial, Integer> acc;
    acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 22));
    for (const auto& [ma_, ca] : a.terms_) {
      for (const auto& [mb_, cb] : b.terms_) {
        Integer& slot = acc[ma_ + mb_];
        mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      }
    }
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) r.terms_.emplace_back(m, std::move(c));
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly pow(unsigned e) const {
    MultiPoly result = constant(vars_, 1);
    MultiPoly base = *this;
    while (e) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Exact evaluation at an integer point (one value per variable).
  Integer eval(const std::vector<Integer>& point) const {
    if (point.size() != vars_.size()) throw ValidationError("eval: point has wrong dimension");
    auto mx = max_exponents();
    std::vector<std::vector<Integer>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      powers[i].resize(mx[i] + 1);
      powers[i][0] = 1;
      for (unsigned k = 1; k <= mx[i]; ++k) powers[i][k] = powers[i][k - 1] * point[i];
    }
    Integer acc(0), term;
    for (const auto& [m, c] : terms_) {
      term = c;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        unsigned e = exponent(m, i);
        if (e) term *= powers[i][e];
      }
      acc += term;
    }
    return acc;
  }

  /// Replaces every variable i by images[i]; all images share one variable
  /// list, which becomes the result's.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const {
    if (images.size() != vars_.size()) throw ValidationError("substitute: one image per variable required");
    if (images.empty()) return *this;
    const Vars& out_vars = images.front().vars();
    for (const auto& im : images)
      if (im.vars() != out_vars) throw ValidationError("substitute: images use different variable lists");
    auto mx = max_exponents();
    std::vector<std::vector<MultiPoly>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      powers[i].push_back(constant(out_vars, 1));
      for (unsigned k = 1; k <= mx[i]; ++k) powers[i].push_back(powers[i].back() * images[i]);
    }
    MultiPoly acc(out_vars);
    for (const auto& [m, c] : terms_) {
      MultiPoly term = constant(out_vars, c);
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        unsigned e = exponent(m, i);
        if (e) term *= powers[i][e];
      }
      acc += term;
    }
    return acc;
  }

  /// Re-expresses the polynomial over a variable list containing all of
  /// its variables (matched by name).
  MultiPoly embed(const Vars& target) const {
    std::vector<std::size_t> where(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) where[i] = index_of(target, vars_[i]);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      Monomial nm = 0;
      for (std::size_t i = 0; i < vars_.size(); ++i) nm = with_exponent(nm, where[i], exponent(m, i));
      out.emplace_back(nm, c);
    }
    return from_terms(target, std::move(out));
  }

  /// Number of distinct exponent patterns in the given variables (other
  /// variables are treated as coefficients).
  std::size_t support_size_in(const std::vector<std::size_t>& indices) const {
    std::vector<Monomial> keys;
    keys.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial k = 0;
      for (auto i : indices) k = with_exponent(k, i, exponent(t.first, i));
      keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end());
    return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
  }

  /// Collects terms as a polynomial in one variable whose coefficients are
  /// polynomials in the rest: result[k] is the coefficient of var^k.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const {
    auto mx = max_exponents();
    std::vector<std::vector<Term>> parts(is_zero() ? 0 : mx[var] + 1);
    for (const auto& [m, c] : terms_) parts[exponent(m, var)].emplace_back(with_exponent(m, var, 0), c);
    std::vector<MultiPoly> out;
    for (auto& p : parts) out.push_back(from_terms(vars_, std::move(p)));
    return out;
  }

  /// Converts a polynomial in the single variable `var` to a UniPoly.
  UniPoly to_unipoly(std::size_t var) const {
    std::vector<Integer> coeffs;
    for (const auto& [m, c] : terms_) {
      if (m != with_exponent(0, var, exponent(m, var)))
        throw ValidationError("to_unipoly: polynomial involves other variables");
      unsigned e = exponent(m, var);
      if (coeffs.size() <= e) coeffs.resize(e + 1);
      coeffs[e] = c;
    }
    return UniPoly(std::move(coeffs));
  }

private:
  static void check_vars(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ != b.vars_) throw ValidationError("MultiPoly operands use different variable lists");
  }

  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    check_vars(a, b);
    MultiPoly r(a.vars_);
    r.terms_.reserve(a.size() + b.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        r.terms_.emplace_back(j->first, subtract ? Integer(-j->second) : j->second);
        ++j;
      } else {
        Integer c = subtract ? Integer(i->second - j->second) : Integer(i->second + j->second);
        if (c != 0) r.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  void drop_zeros() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return t.second == 0; }),
                 terms_.end());
  }

  Vars vars_;
  std::vector<Term> terms_;
};

/// Human-readable rendering, e.g. "x*z^2 - y^2*z + 3".
inline std::string format(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  // Highest total degree first reads more naturally.
  std::vector<MultiPoly::Term> terms = p.terms();
  auto deg = [&](Monomial m) {
    unsigned d = 0;
    for (std::size_t i = 0; i < p.vars().size(); ++i) d += exponent(m, i);
    return d;
  };
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    return deg(a.first) != deg(b.first) ? deg(a.first) > deg(b.first) : a.first > b.first;
  });
  bool first = true;
  for (const auto& [m, c] : terms) {
    Integer mag = abs(c);
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < p.vars().size(); ++i) {
      unsigned e = exponent(m, i);
      if (!e) continue;
      if (!mono.empty()) mono += '*';
      mono += p.vars()[i];
      if (e > 1) mono += '^' + std::to_string(e);
    }
    if (mono.empty())
      out += to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += to_string(mag) + '*' + mono;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << format(p); }

}  // namespace a2lab
