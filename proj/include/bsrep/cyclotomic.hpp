#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bsrep/numtheory.hpp"

namespace bsrep {

using Rational = mpq_class;

/// Order L of a cyclotomic field Q(zeta_L).
using Order = unsigned long;

/// Largest field order the library will build. Monomial elements are cheap at
/// any order, but dense arithmetic is quadratic in phi(L).
inline constexpr Order kMaxOrder = Order{1} << 31;

/// The L-th cyclotomic polynomial, monic, coefficients in ascending degree.
struct CycPoly {
  Order order = 1;
  std::vector<BigInt> coeffs;

  std::size_t degree() const { return coeffs.size() - 1; }
};

/// Phi_L computed by exact division of x^L - 1 by Phi_d for every proper
/// divisor d of L. Results are cached process-wide.
CycPoly cyclotomic_polynomial(Order L);

/// phi(L) for field orders (word-size shortcut of euler_phi).
Order field_degree(Order L);

/// An exact element of Q(zeta_L), in the power basis 1, z, ..., z^(phi(L)-1)
/// reduced modulo Phi_L.
///
/// Elements of the form r * zeta^e (r rational) are stored as a tagged
/// monomial so that products of roots of unity never touch the dense
/// coefficient vector; everything else is stored as integer numerators over a
/// common positive denominator. The tag is normalized (r > 0 when L is even)
/// so equal values always compare equal. coeffs() gives the canonical power
/// basis coordinates regardless of the internal form.
class CycNum {
 public:
  /// Zero of Q(zeta_1) = Q.
  CycNum();

  static CycNum zero(Order L);
  static CycNum one(Order L);
  static CycNum from_rational(const Rational& r, Order L);
  static CycNum from_integer(long v, Order L) { return from_rational(Rational(v), L); }
  /// zeta_L^t; t may be negative.
  static CycNum zeta(Order L, long long t);
  static CycNum zeta(Order L, const BigInt& t);
  /// r * zeta_L^t.
  static CycNum monomial(const Rational& r, Order L, long long t);
  /// Element with the given power-basis coordinates (length phi(L)).
  static CycNum from_coeffs(Order L, const std::vector<Rational>& coeffs);

  Order order() const { return order_; }
  std::size_t degree() const;

  std::vector<Rational> coeffs() const;

  bool is_zero() const { return kind_ == Kind::Zero; }
  bool is_one() const;
  bool is_rational() const;
  /// True when stored as r * zeta^e. A dense value may still happen to be a
  /// monomial; this reports the internal form only.
  bool is_monomial() const { return kind_ == Kind::Monomial; }
  /// For monomial form: the exponent e in [0, L) and the coefficient r.
  Order monomial_exponent() const { return exp_; }
  const Rational& monomial_coefficient() const { return coef_; }

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& y);
  CycNum& operator-=(const CycNum& y);
  CycNum& operator*=(const CycNum& y);

  friend CycNum operator+(CycNum x, const CycNum& y) { return x += y; }
  friend CycNum operator-(CycNum x, const CycNum& y) { return x -= y; }
  friend CycNum operator*(const CycNum& x, const CycNum& y);

  CycNum inverse() const;
  CycNum pow(long long k) const;

  /// Same element in Q(zeta_M), via zeta_L -> zeta_M^(M/L). Requires L | M.
  CycNum change_order(Order M) const;

  /// Principal embedding zeta_L -> exp(2 pi i / L).
  std::complex<double> to_complex() const;

  /// Human readable form in terms of z = zeta(L), e.g. "1/2 + 3*z^2".
  std::string to_string() const;

  friend bool operator==(const CycNum& x, const CycNum& y);
  friend bool operator!=(const CycNum& x, const CycNum& y) { return !(x == y); }

 private:
  enum class Kind : unsigned char { Zero, Monomial, Dense };

  struct Dense {
    std::vector<BigInt> num;  // length phi(L)
    BigInt den = 1;           // > 0, coprime to the content of num
  };

  Dense to_dense() const;
  static CycNum from_dense(Order L, Dense d);
  static CycNum make_monomial(Order L, Rational r, Order e);

  Order order_ = 1;
  Kind kind_ = Kind::Zero;
  Rational coef_;
  Order exp_ = 0;
  std::vector<BigInt> num_;
  BigInt den_ = 1;
};

CycNum add(const CycNum& x, const CycNum& y);
CycNum sub(const CycNum& x, const CycNum& y);
CycNum mul(const CycNum& x, const CycNum& y);
CycNum neg(const CycNum& x);
CycNum inverse(const CycNum& x);
CycNum change_order(const CycNum& x, Order M);
std::complex<double> to_complex(const CycNum& x);

/// lcm of the two orders, the smallest field containing both operands.
Order common_order(Order a, Order b);

/// Ring homomorphism Z_(P)[zeta_L] -> F_P sending zeta_L to a fixed element
/// of exact multiplicative order L, for a prime P = 1 (mod L) below 2^62.
/// Reduction through it can only lower ranks, so a full rank image certifies
/// full rank over Q(zeta_L).
class ResidueEmbedding {
 public:
  /// The index-th such prime counting down from 2^62.
  static ResidueEmbedding for_order(Order L, unsigned index = 0);

  Order order() const { return order_; }
  std::uint64_t prime() const { return prime_; }
  std::uint64_t root() const { return root_; }

  /// Image of x, whose order must divide L. Empty if a denominator of x is
  /// divisible by P.
  std::optional<std::uint64_t> map(const CycNum& x) const;

 private:
  Order order_ = 1;
  std::uint64_t prime_ = 0;
  std::uint64_t root_ = 1;
};

}  // namespace bsrep
