#include <doctest.h>

#include <random>

#include "bsrep/error.hpp"
#include "bsrep/exactlinalg.hpp"
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

CycMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, Order L,
                        int zero_percent = 30) {
  CycMatrix m(r, c, L);
  std::uniform_int_distribution<int> pct(0, 99);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (pct(rng) >= zero_percent) m.set(i, j, oracle::random_cyc(rng, L, 3));
  return m;
}

MatrixPair example(std::uint64_t ell) {
  return build_matrices(RepSpec::make(BSParams::make(2, 5), 3, ell, 1, CycNum::one(1)));
}

}  // namespace

TEST_CASE("mat_mul") {
  const MatrixPair p = example(9);
  const CycMatrix id = CycMatrix::identity(3, 9);
  CHECK(id * p.a == p.a);
  CycMatrix two_step(3, 3, 9);
  for (std::size_t i = 0; i < 3; ++i) two_step.set((i + 2) % 3, i, CycNum::one(9));
  CHECK(p.a * p.a == two_step);
  CHECK(p.b * p.a != p.a * p.b);
  CHECK(kind_of([] { (void)(CycMatrix(2, 3, 1) * CycMatrix(2, 3, 1)); }) ==
        ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { (void)(CycMatrix(2, 2, 3) * CycMatrix(2, 2, 5)); }) ==
        ErrorKind::OrderMismatch);
}

TEST_CASE("mat_pow") {
  const MatrixPair p = example(9);
  CHECK(mat_pow(p.a, 0).is_identity());
  CHECK(mat_pow(p.b, 9).is_identity());
  for (int k = 1; k < 9; ++k) CHECK(!mat_pow(p.b, k).is_identity());
  const MatrixPair p2 = build_matrices(
      RepSpec::make(BSParams::make(2, 5), 3, 9, 1, CycNum::from_integer(2, 1)));
  CHECK(mat_pow(p2.a, 3) == CycMatrix::scalar(3, CycNum::from_integer(8, 9)));
  CHECK(kind_of([] { mat_pow(CycMatrix(2, 2, 1), -1); }) == ErrorKind::Singular);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    const CycMatrix x = random_matrix(rng, 3, 3, 5, 0);
    if (rank(x) < 3) continue;
    const int j = std::uniform_int_distribution<int>(-3, 3)(rng);
    const int k = std::uniform_int_distribution<int>(-3, 3)(rng);
    CHECK(mat_pow(x, j + k) == mat_pow(x, j) * mat_pow(x, k));
  }
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 20; ++i) {
    const CycMatrix x = random_matrix(rng, 4, 4, 7, 10);
    if (rank(x) < 4) {
      CHECK(kind_of([&] { mat_inverse(x); }) == ErrorKind::Singular);
      continue;
    }
    CHECK((x * mat_inverse(x)).is_identity());
  }
}

TEST_CASE("rank") {
  CHECK(rank(CycMatrix(3, 4, 5)) == 0);
  CHECK(rank(CycMatrix::identity(4, 7)) == 4);

  std::vector<CycMatrix> words;
  const MatrixPair p = example(9);
  CycMatrix flat(9, 9, p.order);
  std::size_t row = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j, ++row) {
      const CycVector v = (mat_pow(p.a, i) * mat_pow(p.b, j)).flatten();
      for (std::size_t k = 0; k < 9; ++k) flat.set(row, k, v[k]);
    }
  CHECK(rank(flat) == 9);
  CHECK(oracle::svd_rank(oracle::to_complex(flat)) == 9);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    const Order L = std::uniform_int_distribution<Order>(1, 12)(rng);
    const std::size_t r = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const std::size_t c = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    CycMatrix x = random_matrix(rng, r, c, L, 40);
    if (r > 2 && i % 2 == 0)
      for (std::size_t k = 0; k < c; ++k) x.set(r - 1, k, x(0, k) + x(1, k));
    CHECK(rank(x) == static_cast<std::size_t>(oracle::svd_rank(oracle::to_complex(x))));
    const CycMatrix y = random_matrix(rng, c, 3, L, 40);
    CHECK(rank(x * y) <= std::min(rank(x), rank(y)));
  }
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(CycMatrix::identity(3, 1)).empty());
  CHECK(kernel_basis(CycMatrix(2, 2, 1)).size() == 2);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 40; ++i) {
    const Order L = std::uniform_int_distribution<Order>(1, 10)(rng);
    const std::size_t r = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    const std::size_t c = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const CycMatrix x = random_matrix(rng, r, c, L, 50);
    const auto kernel = kernel_basis(x);
    CHECK(kernel.size() == c - rank(x));
    for (const CycVector& v : kernel) {
      CHECK(!v.is_zero());
      CHECK(mat_apply(x, v).is_zero());
    }
  }
}

TEST_CASE("span_dimension") {
  CHECK(span_dimension({CycMatrix::identity(3, 1)}) == 1);
  std::mt19937_64 rng(31);
  const CycMatrix x = random_matrix(rng, 3, 3, 4, 0);
  CHECK(span_dimension({x, mat_scale(x, CycNum::from_integer(2, 4))}) == 1);

  const MatrixPair p = example(3);
  std::vector<CycMatrix> words;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) words.push_back(mat_pow(p.a, i) * mat_pow(p.b, j));
  CHECK(span_dimension(words) == 3);
  std::vector<oracle::CMat> gens{oracle::to_complex(p.a), oracle::to_complex(p.b)};
  CHECK(oracle::float_algebra_dimension(gens, 3) == 3);
  CHECK(kind_of([] { span_dimension({CycMatrix(2, 2, 1), CycMatrix(3, 3, 1)}); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("echelon basis") {
  EchelonBasis basis(3, 5);
  CycVector e1(3, 5), e2(3, 5);
  e1.set(0, CycNum::zeta(5, 1));
  e2.set(1, CycNum::one(5));
  CHECK(basis.insert(e1));
  CHECK(!basis.insert(e1));
  CHECK(basis.insert(e2));
  CycVector sum(3, 5);
  sum.set(0, CycNum::zeta(5, 2));
  sum.set(1, CycNum::zeta(5, 3));
  CHECK(basis.contains(sum));
  CHECK(basis.dimension() == 2);
}
