#include "bsrep/repcore.hpp"

#include <string>

#include "bsrep/error.hpp"

namespace bsrep {

namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }

BigInt big(std::uint64_t v) {
  BigInt b;
  mpz_import(b.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return b;
}

bool b_has_order_dividing_ell(const MatrixPair& pair) {
  return mat_pow(pair.b, static_cast<long long>(pair.ell)).is_identity();
}

}  // namespace

BSParams BSParams::make(const BigInt& p, const BigInt& q) {
  if (p == 0 || q == 0)
    throw Error(ErrorKind::ZeroParameter, "Baumslag-Solitar parameters must be nonzero");
  if (gcd(p, q) != 1)
    throw Error(ErrorKind::InvalidParams,
                "p = " + p.get_str() + " and q = " + q.get_str() + " are not relatively prime");
  if (abs(p) == 1 && abs(q) == 1)
    throw Error(ErrorKind::InvalidParams, "p and q must not both be +-1");
  BSParams out{p, q, false};
  if (q < 0) {
    out.p = -p;
    out.q = -q;
    out.sign_flipped = true;
  }
  return out;
}

RepSpec RepSpec::make(const BSParams& params, unsigned dim, std::uint64_t ell, std::uint64_t t,
                      const CycNum& c) {
  if (ell == 0) throw Error(ErrorKind::InvalidSpec, "ell must be positive");
  RepSpec spec;
  spec.params = params;
  spec.dim = dim;
  spec.ell = ell;
  spec.t = t;
  spec.c = c;
  try {
    spec.s = solve_s(params.p, params.q, big(ell)).get_ui();
  } catch (const Error&) {
    throw Error(ErrorKind::InvalidSpec,
                "q = " + params.q.get_str() + " is not invertible modulo ell = " + str(ell));
  }
  spec.validate();
  return spec;
}

void RepSpec::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidSpec, why); };
  if (dim == 0) fail("dim must be positive");
  if (ell == 0) fail("ell must be positive");
  if (ell > kMaxOrder) fail("ell exceeds the supported field order");
  if (t >= ell) fail("t must lie in [0, ell)");
  if (s >= ell) fail("s must lie in [0, ell)");
  const BigInt L = big(ell);
  if (gcd(big(t), L) != 1) fail("gcd(t, ell) != 1");
  if (mod_floor(params.q * big(s) - params.p, L) != 0)
    fail("q*s != p (mod ell) for s = " + str(s));
  const BigInt modulus = power_difference(params.p, params.q, dim);
  if (!mpz_divisible_p(modulus.get_mpz_t(), L.get_mpz_t()))
    fail("existence criterion fails: " + str(ell) + " \u2224 " +
         BigInt(abs(modulus)).get_str());
  if (c.is_zero()) fail("c must be nonzero");
}

bool RepSpec::is_valid() const {
  try {
    validate();
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<std::uint64_t> eigenvalue_exponents(const RepSpec& spec) {
  std::vector<std::uint64_t> out;
  out.reserve(spec.dim);
  const std::uint64_t ell = spec.ell;
  std::uint64_t e = ell == 1 ? 0 : spec.t % ell;
  for (unsigned i = 0; i < spec.dim; ++i) {
    out.push_back(e);
    e = ell == 1 ? 0 : mul_mod_u64(e, spec.s % ell, ell);
  }
  return out;
}

MatrixPair build_canonical_pair(unsigned dim, std::uint64_t ell, std::uint64_t t,
                                std::uint64_t s, const CycNum& c) {
  if (dim == 0) throw Error(ErrorKind::InvalidSpec, "dim must be positive");
  if (ell == 0 || ell > kMaxOrder) throw Error(ErrorKind::InvalidSpec, "ell out of range");
  if (c.is_zero()) throw Error(ErrorKind::InvalidSpec, "c must be nonzero");
  const Order L = common_order(ell, c.order());
  const CycNum c_lifted = c.change_order(L);
  const Order step = L / ell;

  MatrixPair pair;
  pair.order = L;
  pair.ell = ell;
  pair.a = CycMatrix(dim, dim, L);
  for (unsigned i = 0; i < dim; ++i) pair.a.set((i + 1) % dim, i, c_lifted);

  std::vector<CycNum> diag;
  std::uint64_t e = t % ell;
  for (unsigned i = 0; i < dim; ++i) {
    diag.push_back(CycNum::zeta(L, static_cast<long long>(e * step)));
    e = mul_mod_u64(e, s % ell, ell);
  }
  pair.b = CycMatrix::diagonal(diag);
  return pair;
}

MatrixPair build_matrices(const RepSpec& spec) {
  spec.validate();
  return build_canonical_pair(spec.dim, spec.ell, spec.t, spec.s, spec.c);
}

CycMatrix b_power(const MatrixPair& pair, const BigInt& e) {
  if (pair.ell >= 1 && b_has_order_dividing_ell(pair))
    return mat_pow(pair.b, mod_floor(e, big(pair.ell)));
  return mat_pow(pair.b, e);
}

bool verify_relation(const MatrixPair& pair, const BSParams& params) {
  if (!pair.a.is_square() || pair.a.rows() != pair.b.rows() ||
      pair.a.order() != pair.b.order())
    return false;
  try {
    return pair.a * b_power(pair, params.p) == b_power(pair, params.q) * pair.a;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Singular) return false;
    throw;
  }
}

bool verify_conjugation_law(const MatrixPair& pair, const BigInt& s) {
  const CycMatrix a_inv = mat_inverse(pair.a);
  return a_inv * pair.b * pair.a == b_power(pair, s);
}

bool verify_power_identity(const MatrixPair& pair, const BSParams& params, int k) {
  if (k < -kMaxPowerIdentityExponent || k > kMaxPowerIdentityExponent)
    throw Error(ErrorKind::PreconditionFailed, "power identity exponent out of range");
  if (k == 0) return true;
  BigInt p_exp, q_exp;
  if (k > 0) {
    mpz_pow_ui(p_exp.get_mpz_t(), params.p.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(q_exp.get_mpz_t(), params.q.get_mpz_t(), static_cast<unsigned long>(k));
  } else {
    const BigInt ell = big(pair.ell);
    if (!b_has_order_dividing_ell(pair)) return false;
    if (gcd(params.p, ell) != 1 || gcd(params.q, ell) != 1) return false;
    const BigInt pinv = mod_inverse(params.p, ell), qinv = mod_inverse(params.q, ell);
    const unsigned long j = static_cast<unsigned long>(-k);
    mpz_powm_ui(p_exp.get_mpz_t(), pinv.get_mpz_t(), j, ell.get_mpz_t());
    mpz_powm_ui(q_exp.get_mpz_t(), qinv.get_mpz_t(), j, ell.get_mpz_t());
  }
  try {
    const CycMatrix a_k = mat_pow(pair.a, static_cast<long long>(k));
    const CycMatrix a_minus_k = mat_pow(pair.a, static_cast<long long>(-k));
    return b_power(pair, p_exp) == a_minus_k * b_power(pair, q_exp) * a_k;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Singular) return false;
    throw;
  }
}

CycNum a_power_scalar(const MatrixPair& pair) {
  const CycMatrix power = mat_pow(pair.a, static_cast<long long>(pair.dim()));
  auto c = power.scalar_value();
  if (!c)
    throw Error(ErrorKind::StructureViolation,
                "A^" + std::to_string(pair.dim()) + " is not a scalar matrix");
  return *c;
}

}  // namespace bsrep
