#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace bsrep {

using BigInt = mpz_class;

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower& a, const PrimePower& b) {
    return a.prime == b.prime && a.exponent == b.exponent;
  }
};

/// Prime factorization with primes strictly increasing. Empty for 1.
using Factorization = std::vector<PrimePower>;

/// Effort limits for factorize() and divisors(). The defaults are what the
/// library uses when no budget is passed; the CLI reads overrides from
/// BSIRREP_MAX_FACTOR_BITS and BSIRREP_MAX_DIVISORS.
struct NumtheoryBudget {
  unsigned max_factor_bits = 128;
  std::size_t max_divisors = 1'000'000;
  std::uint64_t rho_iterations = std::uint64_t{1} << 18;

  static NumtheoryBudget from_environment();
};

enum class HopfianStatus { ResiduallyFinite, Hopfian, NonHopfian };

const char* to_string(HopfianStatus status) noexcept;

/// Representative of a in [0, m).
BigInt mod_floor(const BigInt& a, const BigInt& m);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// x in [0, m) with a*x = 1 (mod m). Returns 0 for m = 1.
BigInt mod_inverse(const BigInt& a, const BigInt& m);

/// The conjugation exponent: unique s in [0, ell) with q*s = p (mod ell).
BigInt solve_s(const BigInt& p, const BigInt& q, const BigInt& ell);

/// Smallest k >= 1 with s^k = 1 (mod m); 1 when m = 1.
BigInt multiplicative_order(const BigInt& s, const BigInt& m,
                            const NumtheoryBudget& budget = {});

BigInt euler_phi(const BigInt& m, const NumtheoryBudget& budget = {});
BigInt euler_phi(const Factorization& f);

/// Miller-Rabin. Deterministic below 3.3e24, strong probable prime above.
bool is_probable_prime(const BigInt& n);

/// Trial division to 10^6, then Pollard-Brent rho on whatever is left.
Factorization factorize(const BigInt& m, const NumtheoryBudget& budget = {});

BigInt factorization_value(const Factorization& f);

/// All positive divisors of the factored number, ascending.
std::vector<BigInt> divisors(const Factorization& f,
                             const NumtheoryBudget& budget = {});

/// q^k - p^k, exactly.
BigInt power_difference(const BigInt& p, const BigInt& q, unsigned long k);

HopfianStatus hopfian_status(const BigInt& p, const BigInt& q);

// Word-size helpers for the hot paths. Arguments must already be reduced.
std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp,
                          std::uint64_t m);
bool is_prime_u64(std::uint64_t n);

}  // namespace bsrep
