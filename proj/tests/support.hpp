#pragma once

// Reference implementations used as test oracles. They deliberately avoid the
// library's algorithms: naive scans, trial division, and complex doubles.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bsrep/cyclotomic.hpp"
#include "bsrep/exactlinalg.hpp"
#include "bsrep/repcore.hpp"

// long long comparisons against mpz_class, for test expressions.
inline bool operator==(const mpz_class& a, long long b) { return a == static_cast<long>(b); }
inline bool operator!=(const mpz_class& a, long long b) { return a != static_cast<long>(b); }
inline bool operator<(const mpz_class& a, long long b) { return a < static_cast<long>(b); }
inline bool operator>(const mpz_class& a, long long b) { return a > static_cast<long>(b); }
inline mpz_class operator%(const mpz_class& a, long long b) {
  return mpz_class(a % static_cast<long>(b));
}

namespace oracle {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

inline long long scan_gcd(long long a, long long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  if (a == 0) return b;
  if (b == 0) return a;
  long long best = 1;
  for (long long d = 1; d <= std::min(a, b); ++d)
    if (a % d == 0 && b % d == 0) best = d;
  return best;
}

inline long long mod(long long a, long long m) { return ((a % m) + m) % m; }

/// x in [0, m) with a x = 1 (mod m), or -1.
inline long long scan_inverse(long long a, long long m) {
  for (long long x = 0; x < m; ++x)
    if (mod(a * x, m) == 1 % m) return x;
  return -1;
}

/// s in [0, ell) with q s = p (mod ell), or -1.
inline long long scan_s(long long p, long long q, long long ell) {
  for (long long s = 0; s < ell; ++s)
    if (mod(q * s - p, ell) == 0) return s;
  return -1;
}

inline long long iterate_order(long long s, long long m) {
  if (m == 1) return 1;
  long long x = mod(s, m);
  for (long long k = 1; k <= m; ++k) {
    if (x == 1) return k;
    x = mod(x * s, m);
  }
  return -1;
}

inline long long count_phi(long long m) {
  long long n = 0;
  for (long long k = 1; k <= m; ++k) n += scan_gcd(k, m) == 1;
  return n;
}

inline std::vector<long long> scan_divisors(long long m) {
  std::vector<long long> out;
  for (long long d = 1; d <= m; ++d)
    if (m % d == 0) out.push_back(d);
  return out;
}

inline std::vector<std::pair<long long, unsigned>> trial_factor(long long m) {
  std::vector<std::pair<long long, unsigned>> out;
  for (long long p = 2; p * p <= m; ++p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

/// All residues t in [1, ell) coprime to ell, split into orbits of t -> t s.
inline std::vector<std::vector<long long>> explicit_orbits(long long s, long long ell) {
  if (ell == 1) return {{0}};
  std::vector<std::vector<long long>> orbits;
  std::vector<bool> seen(static_cast<std::size_t>(ell), false);
  for (long long t = 1; t < ell; ++t) {
    if (scan_gcd(t, ell) != 1 || seen[static_cast<std::size_t>(t)]) continue;
    std::vector<long long> orbit;
    long long u = t;
    do {
      orbit.push_back(u);
      seen[static_cast<std::size_t>(u)] = true;
      u = mod(u * s, ell);
    } while (u != t);
    orbits.push_back(orbit);
  }
  return orbits;
}

inline cplx root(long long L, long long k) {
  const double angle = 2.0 * M_PI * static_cast<double>(mod(k, L)) / static_cast<double>(L);
  return {std::cos(angle), std::sin(angle)};
}

inline CMat to_complex(const bsrep::CycMatrix& m) {
  CMat out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_complex();
  return out;
}

/// Numerical rank from singular values above tol * (largest singular value).
inline int svd_rank(const CMat& m, double tol = 1e-8) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) < 1e-300) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv(i) > tol * std::max(1.0, sv(0));
  return r;
}

/// Canonical pair with c = 1 built directly from the displayed shape.
inline std::pair<CMat, CMat> complex_canonical(int dim, long long ell, long long t, long long s,
                                               cplx c = 1.0) {
  CMat a = CMat::Zero(dim, dim), b = CMat::Zero(dim, dim);
  long long e = mod(t, ell);
  for (int i = 0; i < dim; ++i) {
    a((i + 1) % dim, i) = c;
    b(i, i) = root(ell, e);
    e = mod(e * s, ell);
  }
  return {a, b};
}

/// Dimension of the algebra generated by the matrices, by float closure.
inline int float_algebra_dimension(const std::vector<CMat>& gens, int d) {
  std::vector<CMat> basis{CMat::Identity(d, d)};
  auto flat_rank = [&](const std::vector<CMat>& ms) {
    CMat stack(static_cast<Eigen::Index>(ms.size()), d * d);
    for (std::size_t k = 0; k < ms.size(); ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) stack(static_cast<Eigen::Index>(k), i * d + j) = ms[k](i, j);
    return svd_rank(stack);
  };
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<CMat> current = basis;
    for (const CMat& x : current)
      for (const CMat& g : gens) {
        std::vector<CMat> trial = basis;
        trial.push_back(g * x);
        if (flat_rank(trial) > static_cast<int>(basis.size())) {
          basis.push_back(g * x);
          grew = true;
        }
      }
  }
  return static_cast<int>(basis.size());
}

/// Random element of Q(zeta_L) with small coefficients.
inline bsrep::CycNum random_cyc(std::mt19937_64& rng, bsrep::Order L, int bound = 5) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, 4);
  std::vector<bsrep::Rational> coeffs;
  for (std::size_t i = 0; i < bsrep::field_degree(L); ++i) {
    bsrep::Rational r(num(rng), den(rng));
    r.canonicalize();
    coeffs.push_back(r);
  }
  return bsrep::CycNum::from_coeffs(L, coeffs);
}

}  // namespace oracle
