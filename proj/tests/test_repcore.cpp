#include <doctest.h>

#include <random>
#include <set>

#include "bsrep/error.hpp"
#include "bsrep/repcore.hpp"
#include "support.hpp"

using namespace bsrep;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::ParseError;
}

const BSParams kBS25 = BSParams::make(2, 5);

RepSpec spec(std::uint64_t ell, std::uint64_t t = 1, CycNum c = CycNum::one(1), unsigned dim = 3) {
  return RepSpec::make(kBS25, dim, ell, t, c);
}

}  // namespace

TEST_CASE("BSParams") {
  const BSParams p = BSParams::make(2, 5);
  CHECK(p.p == 2);
  CHECK(p.q == 5);
  CHECK(!p.sign_flipped);
  const BSParams n = BSParams::make(2, -5);
  CHECK(n.p == -2);
  CHECK(n.q == 5);
  CHECK(n.sign_flipped);
  CHECK(kind_of([] { BSParams::make(0, 5); }) == ErrorKind::ZeroParameter);
  CHECK(kind_of([] { BSParams::make(2, 4); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { BSParams::make(-1, 1); }) == ErrorKind::InvalidParams);
  CHECK_NOTHROW(BSParams::make(1, 2));
}

TEST_CASE("RepSpec validation") {
  const RepSpec s = spec(9);
  CHECK(s.s == 4);
  CHECK(s.is_valid());
  try {
    spec(7);
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidSpec);
    CHECK(std::string(e.what()) == "existence criterion fails: 7 ∤ 117");
  }
  CHECK(kind_of([] { spec(9, 3); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { spec(9, 9); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { spec(9, 1, CycNum::zero(1)); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { spec(10); }) == ErrorKind::InvalidSpec);
  RepSpec bad = s;
  bad.s = 2;
  CHECK(!bad.is_valid());
}

TEST_CASE("eigenvalue exponents") {
  CHECK(eigenvalue_exponents(spec(9)) == std::vector<std::uint64_t>{1, 4, 7});
  CHECK(eigenvalue_exponents(spec(3)) == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(eigenvalue_exponents(spec(3, 2, CycNum::one(1), 1)) == std::vector<std::uint64_t>{2});
}

TEST_CASE("build_matrices") {
  const MatrixPair p = build_matrices(spec(9));
  CHECK(p.order == 9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(p.a(i, j) == (i == (j + 1) % 3 ? CycNum::one(9) : CycNum::zero(9)));
  CHECK(p.b == CycMatrix::diagonal({CycNum::zeta(9, 1), CycNum::zeta(9, 4), CycNum::zeta(9, 7)}));

  const MatrixPair p3 = build_matrices(spec(3, 1, CycNum::zeta(4, 1)));
  CHECK(p3.order == 12);
  CHECK(p3.b == CycMatrix::scalar(3, CycNum::zeta(3, 1).change_order(12)));

  const MatrixPair p1 = build_matrices(spec(3, 1, CycNum::from_integer(2, 1), 1));
  CHECK(p1.a == CycMatrix::scalar(1, CycNum::from_integer(2, 3)));
  CHECK(p1.b == CycMatrix::scalar(1, CycNum::zeta(3, 1)));

  const auto [ca, cb] = oracle::complex_canonical(3, 9, 1, 4);
  CHECK((oracle::to_complex(p.a) - ca).norm() < 1e-12);
  CHECK((oracle::to_complex(p.b) - cb).norm() < 1e-12);
}

TEST_CASE("verify_relation") {
  CHECK(verify_relation(build_matrices(spec(9)), kBS25));
  CHECK(!verify_relation(build_canonical_pair(3, 7, 1, 6, CycNum::one(1)), kBS25));
  MatrixPair trivial{CycMatrix::identity(2, 1), CycMatrix::identity(2, 1), 1, 1};
  CHECK(verify_relation(trivial, kBS25));
}

TEST_CASE("verify_conjugation_law") {
  CHECK(verify_conjugation_law(build_matrices(spec(9)), 4));
  CHECK(verify_conjugation_law(build_matrices(spec(3)), 1));
  CHECK(!verify_conjugation_law(build_matrices(spec(9)), 2));
  MatrixPair singular{CycMatrix(2, 2, 1), CycMatrix::identity(2, 1), 1, 1};
  CHECK(kind_of([&] { verify_conjugation_law(singular, 1); }) == ErrorKind::Singular);
}

TEST_CASE("verify_power_identity") {
  CHECK(verify_power_identity(build_matrices(spec(9)), kBS25, 0));
  CHECK(verify_power_identity(build_matrices(spec(9)), kBS25, 1));
  const MatrixPair p13 = build_matrices(spec(13));
  CHECK(verify_power_identity(p13, kBS25, 2));
  // direct: B^4 = A^-2 B^25 A^2 with 25 = 12 (mod 13)
  CHECK(mat_pow(p13.b, 4) == mat_pow(p13.a, -2) * mat_pow(p13.b, 12) * mat_pow(p13.a, 2));
  for (int k = -kMaxPowerIdentityExponent; k <= kMaxPowerIdentityExponent; ++k)
    CHECK(verify_power_identity(p13, kBS25, k));
  CHECK(kind_of([&] { verify_power_identity(p13, kBS25, 7); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("a_power_scalar") {
  CHECK(a_power_scalar(build_matrices(spec(9))).is_one());
  CHECK(a_power_scalar(build_matrices(spec(9, 1, CycNum::from_integer(2, 1)))) ==
        CycNum::from_integer(8, 9));
  const BSParams bs12 = BSParams::make(1, 2);
  const MatrixPair p = build_matrices(RepSpec::make(bs12, 2, 3, 1, CycNum::zeta(4, 1)));
  CHECK(a_power_scalar(p) == CycNum::from_integer(-1, p.order));
  MatrixPair odd{CycMatrix::diagonal({CycNum::one(1), CycNum::from_integer(2, 1)}),
                 CycMatrix::identity(2, 1), 1, 1};
  CHECK(kind_of([&] { a_power_scalar(odd); }) == ErrorKind::StructureViolation);
}

TEST_CASE("randomized structural properties") {
  std::mt19937_64 rng(101);
  int checked = 0;
  for (int attempt = 0; attempt < 4000 && checked < 120; ++attempt) {
    const long p = std::uniform_int_distribution<long>(-7, 7)(rng);
    const long q = std::uniform_int_distribution<long>(1, 7)(rng);
    if (p == 0 || oracle::scan_gcd(p, q) != 1 || (std::abs(p) == 1 && q == 1)) continue;
    const unsigned dim = std::uniform_int_distribution<unsigned>(1, 5)(rng);
    const BSParams params = BSParams::make(p, q);
    const BigInt m = abs(power_difference(params.p, params.q, dim));
    const auto divs = oracle::scan_divisors(std::min<long long>(m.get_si(), 400));
    std::vector<long long> ells;
    for (long long d : divs)
      if (m % static_cast<long>(d) == 0) ells.push_back(d);
    const long long ell = ells[std::uniform_int_distribution<std::size_t>(0, ells.size() - 1)(rng)];
    long long t = std::uniform_int_distribution<long long>(0, ell - 1)(rng);
    while (oracle::scan_gcd(t, ell) != 1) t = (t + 1) % ell;
    const RepSpec s = RepSpec::make(params, dim, ell, t, CycNum::one(1));
    const MatrixPair pair = build_matrices(s);
    ++checked;
    CHECK(verify_relation(pair, params));
    CHECK(mat_pow(pair.b, ell).is_identity());
    for (long long k = 1; k < ell && ell <= 60; ++k) CHECK(!mat_pow(pair.b, k).is_identity());
    const auto ex = eigenvalue_exponents(s);
    const bool distinct = std::set<std::uint64_t>(ex.begin(), ex.end()).size() == ex.size();
    CHECK(distinct == (oracle::iterate_order(s.s, ell) >= dim));
    CHECK_NOTHROW(a_power_scalar(pair));
  }
  CHECK(checked == 120);
}
