#include "bsrep/classify.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "bsrep/error.hpp"

namespace bsrep {

namespace {

// Residues are enumerated one by one, so very large ell only gets a partial list.
constexpr std::uint64_t kOrbitEnumerationLimit = 50'000'000;

bool divides(const BigInt& d, const BigInt& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

void check_ell(const BigInt& ell) {
  if (ell < 1) throw Error(ErrorKind::InvalidSpec, "ell must be positive");
}

bool is_orbit_minimum(std::uint64_t t, std::uint64_t s, std::uint64_t ell) {
  std::uint64_t u = mul_mod_u64(t, s, ell);
  while (u != t) {
    if (u < t) return false;
    u = mul_mod_u64(u, s, ell);
  }
  return true;
}

CycMatrix as_matrix(const CycVector& v, std::size_t d) {
  CycMatrix x(d, d, v.order());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) x.set(i, j, v[i * d + j]);
  return x;
}

bool invertible(const CycMatrix& x) { return rank(x) == x.rows(); }

// Rows (i, j) of X A1 - A2 X followed by rows of X B1 - B2 X; unknown u = a d + b is X_ab.
CycMatrix intertwiner_system(const MatrixPair& first, const MatrixPair& second) {
  const std::size_t d = first.dim();
  const Order L = common_order(first.order, second.order);
  const CycMatrix a1 = first.a.change_order(L), b1 = first.b.change_order(L);
  const CycMatrix a2 = second.a.change_order(L), b2 = second.b.change_order(L);
  CycMatrix system(2 * d * d, d * d, L);
  auto fill = [&](std::size_t offset, const CycMatrix& m1, const CycMatrix& m2) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const std::size_t row = offset + i * d + j;
        for (std::size_t b = 0; b < d; ++b)
          if (!m1(b, j).is_zero()) system.set(row, i * d + b, system(row, i * d + b) + m1(b, j));
        for (std::size_t a = 0; a < d; ++a)
          if (!m2(i, a).is_zero()) system.set(row, a * d + j, system(row, a * d + j) - m2(i, a));
      }
  };
  fill(0, a1, a2);
  fill(d * d, b1, b2);
  return system;
}

void check_pair_shapes(const MatrixPair& first, const MatrixPair& second) {
  if (first.dim() != second.dim() || !first.a.is_square() || !second.a.is_square() ||
      first.b.rows() != first.dim() || second.b.rows() != second.dim())
    throw Error(ErrorKind::DimensionMismatch, "pairs must have equal square shapes");
}

}  // namespace

bool exists_rep(const BSParams& params, unsigned dim, const BigInt& ell) {
  check_ell(ell);
  return divides(ell, power_difference(params.p, params.q, dim));
}

bool is_irreducible(const BSParams& params, unsigned dim, const BigInt& ell) {
  if (!exists_rep(params, dim, ell))
    throw Error(ErrorKind::PreconditionFailed,
                "no representation exists: ell = " + ell.get_str() + " does not divide q^" +
                    std::to_string(dim) + " - p^" + std::to_string(dim));
  for (unsigned k = 1; k < dim; ++k)
    if (divides(ell, power_difference(params.p, params.q, k))) return false;
  return true;
}

std::vector<std::uint64_t> orbit_of(std::uint64_t t, std::uint64_t s, std::uint64_t ell) {
  if (ell == 0) throw Error(ErrorKind::InvalidSpec, "ell must be positive");
  std::vector<std::uint64_t> out{t % ell};
  std::uint64_t u = mul_mod_u64(t % ell, s % ell, ell);
  while (u != out.front()) {
    out.push_back(u);
    u = mul_mod_u64(u, s % ell, ell);
  }
  return out;
}

ClassRecord classify_ell(const BSParams& params, unsigned dim, const BigInt& ell,
                         const ClassifyOptions& options) {
  ClassRecord rec;
  rec.ell = ell;
  rec.irreducible = is_irreducible(params, dim, ell);
  rec.s = solve_s(params.p, params.q, ell);
  rec.orbit_size = ell == 1 ? BigInt(1) : multiplicative_order(rec.s, ell, options.budget);
  const BigInt phi = euler_phi(ell, options.budget);
  rec.class_count = rec.irreducible ? BigInt(phi / rec.orbit_size) : BigInt(0);

  if (ell == 1) {
    rec.orbit_reps = {BigInt(0)};
    return rec;
  }
  if (!ell.fits_ulong_p() || ell.get_ui() > kOrbitEnumerationLimit) {
    rec.orbit_reps_complete = false;
    return rec;
  }
  const std::uint64_t m = ell.get_ui(), s = rec.s.get_ui();
  const BigInt expected = phi / rec.orbit_size;
  for (std::uint64_t t = 1; t < m; ++t) {
    if (std::gcd(t, m) != 1 || !is_orbit_minimum(t, s, m)) continue;
    if (rec.orbit_reps.size() >= options.max_orbit_reps) break;
    rec.orbit_reps.emplace_back(static_cast<unsigned long>(t));
  }
  rec.orbit_reps_complete = BigInt(static_cast<unsigned long>(rec.orbit_reps.size())) == expected;
  return rec;
}

ClassificationReport classify_dimension(const BSParams& params, unsigned dim,
                                        const ClassifyOptions& options) {
  if (dim == 0) throw Error(ErrorKind::InvalidSpec, "dim must be positive");
  ClassificationReport report;
  report.params = params;
  report.dim = dim;
  report.max_ell = options.max_ell;
  report.modulus = power_difference(params.p, params.q, dim);
  report.factorization = factorize(abs(report.modulus), options.budget);
  for (const BigInt& ell : divisors(report.factorization, options.budget)) {
    if (options.max_ell && ell > *options.max_ell) break;
    report.records.push_back(classify_ell(params, dim, ell, options));
  }
  return report;
}

BigInt count_irreducibles(const BSParams& params, unsigned dim, const ClassifyOptions& options) {
  BigInt total = 0;
  for (const ClassRecord& rec : classify_dimension(params, dim, options).records)
    if (rec.irreducible) total += rec.class_count;
  return total;
}

std::size_t intertwiner_dimension(const MatrixPair& first, const MatrixPair& second) {
  check_pair_shapes(first, second);
  return kernel_basis(intertwiner_system(first, second)).size();
}

std::optional<CycMatrix> find_intertwiner(const MatrixPair& first, const MatrixPair& second) {
  check_pair_shapes(first, second);
  const std::size_t d = first.dim();
  const std::vector<CycVector> kernel = kernel_basis(intertwiner_system(first, second));
  if (kernel.empty()) return std::nullopt;

  for (const CycVector& v : kernel) {
    CycMatrix x = as_matrix(v, d);
    if (invertible(x)) return x;
  }
  if (kernel.size() == 1) return std::nullopt;

  // Random integer combinations; det is a nonzero polynomial on the kernel
  // whenever some element is invertible.
  std::mt19937_64 rng(0x5eedULL + kernel.size());
  std::uniform_int_distribution<long> coeff(-16, 16);
  const Order L = kernel.front().order();
  for (int attempt = 0; attempt < 24; ++attempt) {
    CycVector v(d * d, L);
    for (const CycVector& k : kernel) {
      const CycNum r = CycNum::from_integer(coeff(rng), L);
      if (r.is_zero()) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v.set(i, v[i] + r * k[i]);
    }
    CycMatrix x = as_matrix(v, d);
    if (invertible(x)) return x;
  }
  return std::nullopt;
}

std::optional<CycMatrix> find_intertwiner(const RepSpec& first, const RepSpec& second) {
  if (!(first.params == second.params) || first.dim != second.dim)
    throw Error(ErrorKind::IncompatibleSpecs, "specs differ in (p, q) or dim");
  return find_intertwiner(build_matrices(first), build_matrices(second));
}

bool are_equivalent(const RepSpec& first, const RepSpec& second) {
  return find_intertwiner(first, second).has_value();
}

}  // namespace bsrep
