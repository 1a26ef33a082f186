#include <doctest.h>

#include <random>

#include "bsrep/error.hpp"
#include "bsrep/serialize.hpp"
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
  return ErrorKind::InvalidSpec;
}

}  // namespace

TEST_CASE("c literal parser") {
  CHECK(parse_cyc_literal("1") == CycNum::one(1));
  CHECK(parse_cyc_literal("-3/6") == CycNum::from_rational(Rational(-1, 2), 1));
  CHECK(parse_cyc_literal("zeta(3)") == CycNum::zeta(3, 1));
  CHECK(parse_cyc_literal("zeta(4)^-1") == CycNum::zeta(4, 3));
  CHECK(parse_cyc_literal("2*zeta(3)^2") == CycNum::monomial(Rational(2), 3, 2));
  CHECK(parse_cyc_literal("-zeta(5)") == -CycNum::zeta(5, 1));
  const CycNum mixed = parse_cyc_literal("zeta(4) * zeta(3)");
  CHECK(mixed.order() == 12);
  CHECK(mixed == CycNum::zeta(12, 7));
  for (const char* bad : {"", "zeta", "zeta(0)", "1/0", "2*", "abc", "zeta(3)^", "1 2"})
    CHECK(kind_of([&] { parse_cyc_literal(bad); }) == ErrorKind::ParseError);
}

TEST_CASE("cyclotomic json round trip") {
  std::mt19937_64 rng(3);
  for (Order L : {1u, 3u, 4u, 9u, 12u, 15u}) {
    for (int i = 0; i < 20; ++i) {
      const CycNum x = oracle::random_cyc(rng, L);
      CHECK(cyc_from_json(cyc_to_json(x)) == x);
    }
  }
  const Json z = cyc_to_json(CycNum::zero(5));
  CHECK(z["order"] == 5);
  CHECK(z["coeffs"].empty());
  const Json h = cyc_to_json(CycNum::from_rational(Rational(1, 2), 3));
  CHECK(h.dump() == R"({"order":3,"coeffs":[{"num":"1","den":"2"}]})");
  CHECK(kind_of([] { cyc_from_json(Json::parse(R"({"order":3})")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] {
          cyc_from_json(Json::parse(R"({"order":3,"coeffs":[{"num":"1","den":"0"}]})"));
        }) == ErrorKind::ParseError);
  CHECK(kind_of([] {
          cyc_from_json(Json::parse(
              R"({"order":3,"coeffs":[{"num":"1","den":"1"},{"num":"1","den":"1"},{"num":"1","den":"1"}]})"));
        }) == ErrorKind::ParseError);
}

TEST_CASE("record round trip") {
  const BSParams bs = BSParams::make(-2, -5);
  const RepSpec s = RepSpec::make(bs, 3, 13, 2, parse_cyc_literal("3/2*zeta(4)"));
  for (bool fl : {false, true}) {
    const RepRecord r = make_record(s, fl);
    const Json j = record_to_json(r);
    CHECK(j["p"] == "2");
    CHECK(j["q"] == "5");
    CHECK(j["sign_flipped"] == true);
    CHECK(j["ell"] == "13");
    CHECK(j.contains("float_render") == fl);
    CHECK(record_from_json(Json::parse(j.dump())) == r);
  }
  CHECK(kind_of([] { record_from_json(Json::parse("[]")); }) == ErrorKind::ParseError);
  Json j = record_to_json(make_record(s));
  j.erase("matrices");
  CHECK(kind_of([&] { record_from_json(j); }) == ErrorKind::ParseError);
  j = record_to_json(make_record(s));
  j["dim"] = "x";
  CHECK(kind_of([&] { record_from_json(j); }) == ErrorKind::ParseError);
  j = record_to_json(make_record(s));
  j["p"] = "4";
  j["q"] = "6";
  CHECK(kind_of([&] { record_from_json(j); }) == ErrorKind::InvalidParams);
}

TEST_CASE("float rendering") {
  CHECK(round_significant(0.1 + 0.2) == 0.3);
  CHECK(round_significant(-0.0) == 0.0);
  CHECK(!std::signbit(round_significant(-1e-30 * 0.0)));
  CHECK(round_significant(123456789.123456789) == 123456789.123457);
  const CycMatrix m = CycMatrix::scalar(1, CycNum::zeta(4, 1));
  const Json f = matrix_float_json(m);
  CHECK(f[0][0]["re"] == 0.0);
  CHECK(f[0][0]["im"] == 1.0);
  const CycMatrix w = CycMatrix::scalar(1, CycNum::zeta(3, 1));
  const double re = matrix_float_json(w)[0][0]["re"].get<double>();
  CHECK(re == doctest::Approx(-0.5));
}

TEST_CASE("report round trip") {
  ClassifyOptions o;
  o.max_ell = BigInt(50);
  ClassificationReport r = classify_dimension(BSParams::make(2, 5), 3, o);
  r.records[2].oracle_irreducible = true;
  const Json j = report_to_json(r);
  CHECK(j["modulus"] == "117");
  CHECK(j["records"][2]["oracle_checked"] == true);
  CHECK(j["records"][1]["oracle_checked"] == false);
  CHECK(!j["records"][1].contains("oracle_irreducible"));
  const ClassificationReport back = report_from_json(Json::parse(j.dump()));
  CHECK(back.modulus == r.modulus);
  CHECK(back.factorization == r.factorization);
  CHECK(back.records == r.records);
  CHECK(back.max_ell == r.max_ell);
  const std::string table = report_table(r);
  CHECK(table.find("117") != std::string::npos);
}
