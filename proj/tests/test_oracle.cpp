#include <doctest.h>

#include <random>

#include "bsrep/classify.hpp"
#include "bsrep/error.hpp"
#include "bsrep/oracle.hpp"
#include "support.hpp"

using namespace bsrep;

namespace {

const BSParams kBS25 = BSParams::make(2, 5);

MatrixPair pair_for(std::uint64_t ell, std::uint64_t t = 1, unsigned dim = 3,
                    const BSParams& params = kBS25, CycNum c = CycNum::one(1)) {
  return build_matrices(RepSpec::make(params, dim, ell, t, c));
}

GroupWord random_word(std::mt19937_64& rng, int length) {
  std::uniform_int_distribution<int> gen(0, 1), ex(-4, 4);
  GroupWord w;
  for (int i = 0; i < length; ++i) {
    const int e = ex(rng);
    if (e != 0) w.append(gen(rng) ? Generator::A : Generator::B, e);
  }
  return w;
}

}  // namespace

TEST_CASE("GroupWord reduction") {
  GroupWord w = GroupWord::a(2) * GroupWord::a(-2);
  CHECK(w.empty());
  w = GroupWord::a(1) * GroupWord::b(3) * GroupWord::b(-1);
  REQUIRE(w.syllables().size() == 2);
  CHECK(w.syllables()[1].exponent == 2);
  CHECK((w * w.inverse()).empty());
  CHECK(GroupWord::relation(kBS25).to_string() == "a b^2 a^-1 b^-5");
  CHECK(GroupWord::generator(Generator::B, 0).empty());
}

TEST_CASE("evaluate_word examples") {
  const MatrixPair p = pair_for(9);
  CHECK(evaluate_word(p, GroupWord::relation(kBS25)).is_identity());
  CHECK(evaluate_word(p, GroupWord()).is_identity());
  CHECK(evaluate_word(p, GroupWord::b(9)).is_identity());
  CHECK(evaluate_word(p, GroupWord::a(-1)) == mat_inverse(p.a));
  const GroupWord lhs = GroupWord::a(-2) * GroupWord::b(25) * GroupWord::a(2);
  CHECK(evaluate_word(p, lhs) == evaluate_word(p, GroupWord::b(4)));
  const MatrixPair p13 = pair_for(13);
  CHECK(evaluate_word(p13, lhs) == mat_pow(p13.b, 4));
  CHECK(evaluate_word(p13, lhs, false) == mat_pow(p13.b, 4));
  MatrixPair singular{CycMatrix(2, 2, 1), CycMatrix::identity(2, 1), 1, 1};
  CHECK_THROWS_AS(evaluate_word(singular, GroupWord::a(-1)), Error);
}

TEST_CASE("evaluate_word is a homomorphism") {
  std::mt19937_64 rng(7);
  const MatrixPair p = pair_for(39, 2);
  for (int i = 0; i < 40; ++i) {
    const GroupWord u = random_word(rng, 5), v = random_word(rng, 5);
    const CycMatrix eu = evaluate_word(p, u), ev = evaluate_word(p, v);
    CHECK(evaluate_word(p, u * v) == eu * ev);
    CHECK(evaluate_word(p, u, false) == eu);
    CHECK(evaluate_word(p, u * GroupWord::relation(kBS25) * u.inverse()).is_identity());
  }
}

TEST_CASE("burnside examples") {
  CHECK(burnside_irreducible(pair_for(9)));
  CHECK(algebra_dimension(pair_for(9)) == 9);
  CHECK(!burnside_irreducible(pair_for(3)));
  CHECK(algebra_dimension(pair_for(3)) == 3);
  CHECK(!burnside_irreducible(pair_for(1, 0)));
  CHECK(burnside_irreducible(pair_for(13, 2)));
  CHECK(burnside_irreducible(pair_for(3, 1, 1)));
  const MatrixPair p2 = pair_for(3, 1, 2, BSParams::make(1, 2));
  CHECK(burnside_irreducible(p2));
}

TEST_CASE("exact closure agrees with prefilter and float closure") {
  BurnsideOptions exact;
  exact.modular_prefilter = false;
  for (long p : {-3, -2, 1, 2, 3})
    for (long q : {2, 3, 5}) {
      if (oracle::scan_gcd(p, q) != 1 || (std::abs(p) == 1 && q == 1)) continue;
      const BSParams params = BSParams::make(p, q);
      for (unsigned dim = 2; dim <= 3; ++dim) {
        const ClassificationReport r = classify_dimension(params, dim);
        for (const ClassRecord& rec : r.records) {
          if (rec.ell > 200) continue;
          std::uint64_t t = 1;
          while (oracle::scan_gcd(static_cast<long long>(t), rec.ell.get_si()) != 1) ++t;
          if (rec.ell == 1) t = 0;
          const MatrixPair m = pair_for(rec.ell.get_ui(), t, dim, params);
          const std::size_t d = algebra_dimension(m);
          CHECK(d == algebra_dimension(m, exact));
          CHECK(burnside_irreducible(m) == rec.irreducible);
          const int fd = oracle::float_algebra_dimension(
              {oracle::to_complex(m.a), oracle::to_complex(mat_inverse(m.a)), oracle::to_complex(m.b)},
              static_cast<int>(dim));
          CHECK(fd == static_cast<int>(d));
        }
      }
    }
}

TEST_CASE("invariant subspace witness") {
  const RepSpec s3 = RepSpec::make(kBS25, 3, 3, 1, CycNum::one(1));
  const MatrixPair p3 = build_matrices(s3);
  const auto w = invariant_subspace_witness(p3, s3);
  REQUIRE(w);
  CHECK(w->size() == 1);
  CHECK(is_invariant_subspace(p3.a, *w));
  CHECK(is_invariant_subspace(p3.b, *w));
  CHECK((*w)[0] == CycVector({CycNum::one(3), CycNum::one(3), CycNum::one(3)}));

  const RepSpec s9 = RepSpec::make(kBS25, 3, 9, 1, CycNum::one(1));
  CHECK(!invariant_subspace_witness(build_matrices(s9), s9));

  // BS(1,3) dim 4: 3^4 - 1 = 80, ell = 8 gives s = 3 with order 2
  const BSParams bs13 = BSParams::make(1, 3);
  const RepSpec s8 = RepSpec::make(bs13, 4, 8, 1, CycNum::from_integer(2, 1));
  const MatrixPair p8 = build_matrices(s8);
  const auto w8 = invariant_subspace_witness(p8, s8);
  REQUIRE(w8);
  CHECK(w8->size() == 2);
  CHECK(is_invariant_subspace(p8.a, *w8));
  CHECK(is_invariant_subspace(p8.b, *w8));
  CHECK(!burnside_irreducible(p8));
  CHECK(!is_invariant_subspace(p8.a, {CycVector({CycNum::one(8), CycNum::zero(8), CycNum::zero(8),
                                                  CycNum::zero(8)})}));
}
