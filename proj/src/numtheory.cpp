#include "bsrep/numtheory.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "bsrep/error.hpp"

namespace bsrep {

namespace {

constexpr std::uint32_t kTrialBound = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialBound; j += i)
        composite[j] = true;
    }
    return out;
  }();
  return primes;
}

std::string str(const BigInt& x) { return x.get_str(); }

bool read_env_unsigned(const char* name, unsigned long long& out) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return false;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0') return false;
  out = v;
  return true;
}

// Strong probable-prime test of odd n > 2 to base a.
bool strong_probable_prime(const BigInt& n, const BigInt& a) {
  BigInt d = n - 1;
  unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const BigInt n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long i = 1; i < r; ++i) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
BigInt pollard_brent(const BigInt& n, unsigned long c, std::uint64_t budget) {
  constexpr std::uint64_t kBatch = 128;
  BigInt y = 2, x, ys, q = 1, g = 1;
  std::uint64_t r = 1, spent = 0;
  auto f = [&](BigInt& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) f(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t steps = std::min(kBatch, r - k);
      for (std::uint64_t i = 0; i < steps; ++i) {
        f(y);
        BigInt diff = x - y;
        q = q * abs(diff);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd(q, n);
      k += steps;
      spent += steps;
    }
    r *= 2;
    if (spent > budget) break;
  }
  if (g == n) {
    // Batch overshot; replay one step at a time from the saved point.
    do {
      f(ys);
      g = gcd(abs(BigInt(x - ys)), n);
    } while (g == 1);
  }
  if (g == 1 || g == n) return 0;
  return g;
}

void split_cofactor(const BigInt& n, const NumtheoryBudget& budget,
                    std::vector<BigInt>& primes) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    primes.push_back(n);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    split_cofactor(root, budget, primes);
    split_cofactor(root, budget, primes);
    return;
  }
  // Cofactors within the bit bound get a longer rho run before giving up.
  const bool within_bits = mpz_sizeinbase(n.get_mpz_t(), 2) <= budget.max_factor_bits;
  const std::uint64_t iterations =
      within_bits ? budget.rho_iterations * 16 : budget.rho_iterations;
  for (unsigned long c = 1; c <= 8; ++c) {
    BigInt d = pollard_brent(n, c, iterations);
    if (d != 0) {
      split_cofactor(d, budget, primes);
      split_cofactor(n / d, budget, primes);
      return;
    }
  }
  throw Error(ErrorKind::FactorizationBudgetExceeded,
              "unable to split composite cofactor " + str(n) + " (" +
                  std::to_string(mpz_sizeinbase(n.get_mpz_t(), 2)) +
                  " bits) within the rho budget");
}

}  // namespace

NumtheoryBudget NumtheoryBudget::from_environment() {
  NumtheoryBudget b;
  unsigned long long v = 0;
  if (read_env_unsigned("BSIRREP_MAX_FACTOR_BITS", v)) b.max_factor_bits = static_cast<unsigned>(v);
  if (read_env_unsigned("BSIRREP_MAX_DIVISORS", v)) b.max_divisors = static_cast<std::size_t>(v);
  return b;
}

const char* to_string(HopfianStatus status) noexcept {
  switch (status) {
    case HopfianStatus::ResiduallyFinite: return "ResiduallyFinite";
    case HopfianStatus::Hopfian: return "Hopfian";
    case HopfianStatus::NonHopfian: return "NonHopfian";
  }
  return "Unknown";
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  if (m < 1)
    throw Error(ErrorKind::PreconditionFailed, "mod_inverse: modulus must be >= 1");
  if (m == 1) return 0;
  BigInt x;
  if (mpz_invert(x.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(ErrorKind::NotInvertible,
                str(a) + " is not invertible modulo " + str(m));
  return mod_floor(x, m);
}

BigInt solve_s(const BigInt& p, const BigInt& q, const BigInt& ell) {
  if (ell < 1) throw Error(ErrorKind::PreconditionFailed, "solve_s: ell must be >= 1");
  if (ell == 1) return 0;
  return mod_floor(mod_floor(p, ell) * mod_inverse(q, ell), ell);
}

BigInt euler_phi(const Factorization& f) {
  BigInt phi = 1;
  for (const auto& [prime, e] : f) {
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), prime.get_mpz_t(), e - 1);
    phi *= pe * (prime - 1);
  }
  return phi;
}

BigInt euler_phi(const BigInt& m, const NumtheoryBudget& budget) {
  if (m < 1) throw Error(ErrorKind::PreconditionFailed, "euler_phi: m must be >= 1");
  return euler_phi(factorize(m, budget));
}

BigInt multiplicative_order(const BigInt& s, const BigInt& m,
                            const NumtheoryBudget& budget) {
  if (m < 1)
    throw Error(ErrorKind::PreconditionFailed, "multiplicative_order: modulus must be >= 1");
  const BigInt base = mod_floor(s, m);
  if (gcd(base, m) != 1)
    throw Error(ErrorKind::NotInvertible,
                str(s) + " is not a unit modulo " + str(m));
  if (m == 1) return 1;

  // Factor phi(m) from the factorization of m: phi = prod p^(e-1) (p-1).
  Factorization mf = factorize(m, budget);
  std::vector<BigInt> phi_primes;
  BigInt phi = 1;
  for (const auto& [prime, e] : mf) {
    if (e > 1) phi_primes.push_back(prime);
    for (const auto& pp : factorize(prime - 1, budget)) phi_primes.push_back(pp.prime);
  }
  std::sort(phi_primes.begin(), phi_primes.end());
  phi_primes.erase(std::unique(phi_primes.begin(), phi_primes.end()), phi_primes.end());
  phi = euler_phi(mf);

  BigInt order = phi, t;
  for (const BigInt& r : phi_primes) {
    while (mpz_divisible_p(order.get_mpz_t(), r.get_mpz_t())) {
      BigInt candidate = order / r;
      mpz_powm(t.get_mpz_t(), base.get_mpz_t(), candidate.get_mpz_t(), m.get_mpz_t());
      if (t != 1) break;
      order = candidate;
    }
  }
  return order;
}

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  static const unsigned kBases[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                    37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79};
  for (unsigned b : kBases) {
    if (n == b) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
  }
  // The first 13 bases are a deterministic certificate below 3.3e24.
  for (unsigned b : kBases)
    if (!strong_probable_prime(n, BigInt(b))) return false;
  return true;
}

Factorization factorize(const BigInt& m, const NumtheoryBudget& budget) {
  if (m < 1) throw Error(ErrorKind::PreconditionFailed, "factorize: m must be >= 1");
  Factorization out;
  BigInt rest = m;
  for (std::uint32_t p : small_primes()) {
    if (rest == 1) break;
    if (BigInt(p) * p > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) out.push_back({BigInt(p), e});
  }
  if (rest == 1) return out;

  std::vector<BigInt> large;
  const BigInt bound = BigInt(kTrialBound) * kTrialBound;
  if (rest < bound) {
    large.push_back(rest);  // no factor <= 10^6, so it is prime
  } else {
    split_cofactor(rest, budget, large);
  }
  std::sort(large.begin(), large.end());
  for (const BigInt& p : large) {
    if (!out.empty() && out.back().prime == p)
      ++out.back().exponent;
    else
      out.push_back({p, 1});
  }
  return out;
}

BigInt factorization_value(const Factorization& f) {
  BigInt v = 1;
  for (const auto& [prime, e] : f) {
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), prime.get_mpz_t(), e);
    v *= pe;
  }
  return v;
}

std::vector<BigInt> divisors(const Factorization& f, const NumtheoryBudget& budget) {
  std::size_t count = 1;
  for (const auto& pp : f) {
    if (count > budget.max_divisors / (pp.exponent + 1) + 1)
      throw Error(ErrorKind::DivisorBudgetExceeded, "divisor count exceeds budget");
    count *= pp.exponent + 1;
  }
  if (count > budget.max_divisors)
    throw Error(ErrorKind::DivisorBudgetExceeded,
                "divisor count " + std::to_string(count) + " exceeds budget of " +
                    std::to_string(budget.max_divisors));
  std::vector<BigInt> out{BigInt(1)};
  out.reserve(count);
  for (const auto& [prime, e] : f) {
    const std::size_t prev = out.size();
    BigInt pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= prime;
      for (std::size_t i = 0; i < prev; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigInt power_difference(const BigInt& p, const BigInt& q, unsigned long k) {
  BigInt pk, qk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
  mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), k);
  return qk - pk;
}

HopfianStatus hopfian_status(const BigInt& p, const BigInt& q) {
  if (p == 0 || q == 0)
    throw Error(ErrorKind::ZeroParameter, "Baumslag-Solitar parameters must be nonzero");
  const BigInt ap = abs(p), aq = abs(q);
  if (ap == aq || ap == 1 || aq == 1) return HopfianStatus::ResiduallyFinite;
  if (mpz_divisible_p(aq.get_mpz_t(), ap.get_mpz_t()) ||
      mpz_divisible_p(ap.get_mpz_t(), aq.get_mpz_t()))
    return HopfianStatus::Hopfian;
  const Factorization fp = factorize(ap), fq = factorize(aq);
  bool same = fp.size() == fq.size();
  for (std::size_t i = 0; same && i < fp.size(); ++i) same = fp[i].prime == fq[i].prime;
  return same ? HopfianStatus::Hopfian : HopfianStatus::NonHopfian;
}

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod_u64(result, base, m);
    base = mul_mod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static const std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t b : kBases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = pow_mod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace bsrep
