#pragma once

// Univariate integer polynomials a(t), b(t) and the two transforms a* and ā.

#include <a2lab/integer.hpp>

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace a2lab {

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs()[i]` is the coefficient of t^i; the representation is trimmed so
/// the last stored coefficient is nonzero (the zero polynomial stores
/// nothing). Membership in P_n (nonzero leading and constant coefficients)
/// and unit normalization are predicates rather than construction
/// invariants, because a* of a polynomial in P_n generally has a zero
/// constant term.
class UniPoly {
public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static UniPoly monomial(unsigned degree, const Integer& c = 1) {
    std::vector<Integer> v(degree + 1);
    v[degree] = c;
    return UniPoly(std::move(v));
  }

  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Integer>& coeffs() const { return coeffs_; }

  Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  Integer leading() const { return is_zero() ? Integer(0) : coeffs_.back(); }
  Integer constant() const { return coeff(0); }

  /// a_n != 0 != a_0.
  bool in_P() const { return !is_zero() && constant() != 0; }

  /// a_n, a_0 in {+1, -1}.
  bool is_unit_normalized() const {
    return in_P() && abs(leading()) == 1 && abs(constant()) == 1;
  }

  Integer eval(const Integer& t) const {
    Integer acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  Rational eval(const Rational& t) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + Rational(*it);
    return acc;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Integer> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return UniPoly(std::move(v));
  }

  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Integer> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
    return UniPoly(std::move(v));
  }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(v));
  }

  friend UniPoly operator*(const Integer& s, const UniPoly& a) {
    std::vector<Integer> v(a.coeffs_);
    for (auto& c : v) c *= s;
    return UniPoly(std::move(v));
  }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Integer> coeffs_;
};

/// Canonical text form: comma-separated coefficients from t^0 upward.
inline std::string format(const UniPoly& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (i) out += ',';
    out += to_string(a.coeffs()[i]);
  }
  return out;
}

/// Parses the canonical text form. Anything that would not re-format to
/// the identical string (spaces, '+', leading zeros, a zero leading
/// coefficient) is rejected.
inline UniPoly parse_unipoly(std::string_view text) {
  if (text.empty()) throw ValidationError("empty polynomial string");
  std::vector<Integer> coeffs;
  for (const auto& field : split(text, ',')) coeffs.push_back(parse_integer(field));
  UniPoly p(std::move(coeffs));
  if (format(p) != text)
    throw ValidationError("polynomial string '" + std::string(text) + "' is not in canonical form");
  return p;
}

inline std::ostream& operator<<(std::ostream& os, const UniPoly& a) { return os << format(a); }

/// a*(t), defined by a(t) = t a*(t) + a_0.
inline UniPoly star(const UniPoly& a) {
  if (a.degree() < 1) throw ValidationError("star: degree must be at least 1");
  return UniPoly(std::vector<Integer>(a.coeffs().begin() + 1, a.coeffs().end()));
}

/// ā(t) = t^n a(a_0 / t) / (a_0^{n-1} a_n). Only defined here for
/// unit-normalized input, where it has integer coefficients.
inline UniPoly bar(const UniPoly& a) {
  if (!a.is_unit_normalized())
    throw ValidationError("bar: leading and constant coefficients must be +1 or -1");
  const int n = a.degree();
  const Integer a0 = a.constant();
  // 1/(a0^{n-1} a_n) equals a0^{n-1} a_n for units.
  const Integer scale = pow(a0, static_cast<unsigned long>(n - 1)) * a.leading();
  std::vector<Integer> v(static_cast<std::size_t>(n) + 1);
  Integer a0_pow(1);
  for (int i = 0; i <= n; ++i) {
    v[static_cast<std::size_t>(n - i)] = a.coeff(static_cast<std::size_t>(i)) * a0_pow * scale;
    a0_pow *= a0;
  }
  return UniPoly(std::move(v));
}

// ---------------------------------------------------------------------------
// Rational-coefficient helpers used for root extraction and cofactors.

using RationalPoly = std::vector<Rational>;  // index i holds the t^i coefficient

inline RationalPoly to_rational(const UniPoly& a) {
  RationalPoly r;
  for (const auto& c : a.coeffs()) r.emplace_back(c);
  return r;
}

/// Divides p by (t - root) assuming p(root) == 0; returns the quotient.
inline RationalPoly deflate(const RationalPoly& p, const Rational& root) {
  if (p.size() < 2) throw ValidationError("deflate: degree must be at least 1");
  RationalPoly q(p.size() - 1);
  Rational carry(0);
  for (std::size_t k = p.size() - 1; k >= 1; --k) {
    carry = p[k] + carry * root;
    q[k - 1] = carry;
  }
  Rational rem = p[0] + carry * root;
  if (rem != 0) throw ValidationError("deflate: value is not a root");
  return q;
}

inline Rational eval(const RationalPoly& p, const Rational& t) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

/// All rational roots, sorted and without repetition, via the rational
/// root theorem: every root is ±d/e with d | a_0 and e | a_n.
inline std::vector<Rational> rational_roots(const UniPoly& a) {
  if (a.is_zero()) throw ValidationError("rational_roots: zero polynomial");
  std::vector<Rational> roots;
  // Strip factors of t so the constant term is nonzero.
  std::size_t shift = 0;
  while (a.coeffs()[shift] == 0) ++shift;
  if (shift > 0) roots.emplace_back(0);
  UniPoly core(std::vector<Integer>(a.coeffs().begin() + static_cast<std::ptrdiff_t>(shift), a.coeffs().end()));
  if (core.degree() >= 1) {
    for (const auto& num : positive_divisors(core.constant())) {
      for (const auto& den : positive_divisors(core.leading())) {
        for (int sign : {1, -1}) {
          Rational r(sign * num, den);
          r.canonicalize();
          if (core.eval(r) == 0) roots.push_back(r);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Multiplicity of the rational root r of a (0 if r is not a root).
inline unsigned root_multiplicity(const UniPoly& a, const Rational& r) {
  RationalPoly p = to_rational(a);
  unsigned m = 0;
  while (p.size() >= 2 && eval(p, r) == 0) {
    p = deflate(p, r);
    ++m;
  }
  return m;
}

/// The degree-2 cofactor p of a cubic a with a(x) = s (x - root) p(x) for a
/// rational scalar s, scaled so that p(0) = c.
inline UniPoly quadratic_cofactor(const UniPoly& a, const Rational& root, const Integer& c) {
  if (a.degree() != 3) throw ValidationError("quadratic_cofactor: cubic input required");
  if (a.eval(root) != 0) throw ValidationError("quadratic_cofactor: value is not a root");
  if (c == 0) throw ValidationError("quadratic_cofactor: normalization constant must be nonzero");
  RationalPoly q = deflate(to_rational(a), root);
  if (q[0] == 0) throw ValidationError("quadratic_cofactor: cofactor vanishes at 0");
  Rational scale = Rational(c) / q[0];
  std::vector<Integer> coeffs;
  for (const auto& qi : q) {
    Rational v = qi * scale;
    v.canonicalize();
    if (v.get_den() != 1) throw ValidationError("quadratic_cofactor: cofactor is not integral");
    coeffs.push_back(v.get_num());
  }
  return UniPoly(std::move(coeffs));
}

}  // namespace a2lab
