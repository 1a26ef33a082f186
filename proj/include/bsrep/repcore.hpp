#pragma once

#include <cstdint>
#include <vector>

#include "bsrep/cyclotomic.hpp"
#include "bsrep/exactlinalg.hpp"
#include "bsrep/numtheory.hpp"

namespace bsrep {

/// Parameters of BS(p, q) = <a, b | a b^p = b^q a> with p, q nonzero and
/// coprime, not both of absolute value 1. Normalized so that q > 0, using
/// BS(p, q) = BS(-p, -q); sign_flipped records whether that happened.
struct BSParams {
  BigInt p;
  BigInt q;
  bool sign_flipped = false;

  /// Validates and normalizes. Throws ZeroParameter or InvalidParams.
  static BSParams make(const BigInt& p, const BigInt& q);

  friend bool operator==(const BSParams& a, const BSParams& b) {
    return a.p == b.p && a.q == b.q && a.sign_flipped == b.sign_flipped;
  }
};

/// Discrete data of one canonical representation: a acts by c times the
/// cyclic shift e_i -> e_{i+1}, b by diag(zeta_ell^(t s^i)).
///
/// dim is the matrix size. s solves q s = p (mod ell).
struct RepSpec {
  BSParams params;
  unsigned dim = 1;
  std::uint64_t ell = 1;
  std::uint64_t t = 0;
  std::uint64_t s = 0;
  CycNum c = CycNum::one(1);

  /// Computes s from the params and validates. Throws InvalidSpec.
  static RepSpec make(const BSParams& params, unsigned dim, std::uint64_t ell, std::uint64_t t,
                      const CycNum& c);

  /// Throws InvalidSpec naming the first violated invariant.
  void validate() const;
  bool is_valid() const;

  friend bool operator==(const RepSpec& a, const RepSpec& b) {
    return a.params == b.params && a.dim == b.dim && a.ell == b.ell && a.t == b.t &&
           a.s == b.s && a.c == b.c;
  }
};

/// Exact matrices of a representation over the common field Q(zeta_order).
/// ell is the order of B (B^ell = I), carried along so exponents of B can be
/// reduced before powering.
struct MatrixPair {
  CycMatrix a;
  CycMatrix b;
  Order order = 1;
  std::uint64_t ell = 1;

  std::size_t dim() const { return a.rows(); }

  friend bool operator==(const MatrixPair& x, const MatrixPair& y) {
    return x.a == y.a && x.b == y.b && x.order == y.order && x.ell == y.ell;
  }
};

/// [t s^0, t s^1, ..., t s^(dim-1)] mod ell: the exponents on B's diagonal.
std::vector<std::uint64_t> eigenvalue_exponents(const RepSpec& spec);

/// Canonical pair for a validated spec. Throws InvalidSpec.
MatrixPair build_matrices(const RepSpec& spec);

/// The same construction with no validation beyond shape: used to probe
/// data that fails the existence condition.
MatrixPair build_canonical_pair(unsigned dim, std::uint64_t ell, std::uint64_t t,
                                std::uint64_t s, const CycNum& c);

/// A B^p == B^q A, exactly.
bool verify_relation(const MatrixPair& pair, const BSParams& params);

/// A^-1 B A == B^s. Throws Singular when A is not invertible.
bool verify_conjugation_law(const MatrixPair& pair, const BigInt& s);

inline constexpr int kMaxPowerIdentityExponent = 6;

/// B^(p^k) == A^-k B^(q^k) A^k. For k < 0 the exponents p^k, q^k are read as
/// powers of the inverses of p, q modulo ell, which needs B^ell = I.
bool verify_power_identity(const MatrixPair& pair, const BSParams& params, int k);

/// Returns c^dim after checking A^dim = c^dim I. Throws StructureViolation.
CycNum a_power_scalar(const MatrixPair& pair);

/// B^e with e reduced modulo ell when B^ell = I has been confirmed.
CycMatrix b_power(const MatrixPair& pair, const BigInt& e);

}  // namespace bsrep
