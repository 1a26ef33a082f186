#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bsrep/cli.hpp"
#include "bsrep/serialize.hpp"

using namespace bsrep;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("bsirrep_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("classify") {
  const Run r = run({"classify", "2", "5", "3"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["modulus"] == "117");
  CHECK(j["records"].size() == 6);
  CHECK(j["records"][2]["class_count"] == "2");

  const Run o = run({"classify", "2", "5", "3", "--oracle", "--max-ell", "50"});
  REQUIRE(o.code == kExitOk);
  const Json jo = Json::parse(o.out);
  CHECK(jo["records"].size() == 5);
  for (const Json& rec : jo["records"]) {
    CHECK(rec["oracle_checked"] == true);
    CHECK(rec["oracle_irreducible"] == rec["irreducible"]);
  }

  const Run t = run({"classify", "2", "5", "3", "--table"});
  CHECK(t.code == kExitOk);
  CHECK(t.out.find("117") != std::string::npos);

  CHECK(run({"classify", "-2", "5", "3"}).code == kExitOk);
  CHECK(run({"classify", "2", "4", "2"}).code == kExitInputError);
  CHECK(run({"classify", "0", "5", "2"}).code == kExitInputError);
  CHECK(run({"classify", "1", "-1", "2"}).code == kExitInputError);
  CHECK(run({"classify", "2", "5"}).code == kExitInputError);
  CHECK(run({"classify", "2", "x", "3"}).code == kExitInputError);
  CHECK(run({"bogus"}).code == kExitInputError);
}

TEST_CASE("construct, verify and equiv") {
  const Run bad = run({"construct", "2", "5", "3", "7", "1", "1"});
  CHECK(bad.code == kExitInputError);
  CHECK(bad.err.find("existence criterion fails: 7 ∤ 117") != std::string::npos);
  CHECK(run({"construct", "2", "5", "3", "9", "3", "1"}).code == kExitInputError);
  CHECK(run({"construct", "2", "5", "3", "9", "1", "0"}).code == kExitInputError);
  CHECK(run({"construct", "2", "5", "3", "9", "1", "zeta("}).code == kExitInputError);

  const Run c1 = run({"construct", "2", "5", "3", "9", "1", "1", "--float"});
  REQUIRE(c1.code == kExitOk);
  CHECK(Json::parse(c1.out).contains("float_render"));
  const Run c4 = run({"construct", "2", "5", "3", "9", "4", "1"});
  const Run c2 = run({"construct", "2", "5", "3", "9", "2", "1"});
  const std::string f1 = temp_file("t1.json", c1.out), f4 = temp_file("t4.json", c4.out),
                    f2 = temp_file("t2.json", c2.out);

  const Run v = run({"verify", f1});
  CHECK(v.code == kExitOk);
  CHECK(v.out.find("relation A B^p = B^q A: pass") != std::string::npos);
  CHECK(v.out.find("irreducible: true") != std::string::npos);

  Json tampered = Json::parse(c1.out);
  tampered["matrices"]["B"][0][0] = cyc_to_json(CycNum::zeta(9, 2));
  const Run vt = run({"verify", temp_file("bad.json", tampered.dump())});
  CHECK(vt.code == kExitCheckFailed);
  CHECK(vt.out.find("FAIL") != std::string::npos);

  CHECK(run({"verify", temp_file("junk.json", "{not json")}).code == kExitInputError);
  CHECK(run({"verify", "/nonexistent/file.json"}).code == kExitInputError);

  const Run r3 = run({"construct", "2", "5", "3", "3", "1", "1"});
  const Run v3 = run({"verify", temp_file("t3.json", r3.out)});
  CHECK(v3.code == kExitOk);
  CHECK(v3.out.find("irreducible: false") != std::string::npos);

  const Run e14 = run({"equiv", f1, f4});
  CHECK(e14.code == kExitOk);
  CHECK(e14.out.rfind("equivalent", 0) == 0);
  const Run e12 = run({"equiv", f1, f2, "--json"});
  CHECK(e12.code == kExitCheckFailed);
  CHECK(Json::parse(e12.out)["equivalent"] == false);
  CHECK(run({"equiv", f1, temp_file("t3.json", r3.out)}).code == kExitCheckFailed);
  const Run d1 = run({"construct", "2", "5", "1", "3", "1", "1"});
  CHECK(run({"equiv", f1, temp_file("d1.json", d1.out)}).code == kExitInputError);
}

TEST_CASE("sweep") {
  const Run s = run({"sweep", "3", "3", "3", "--dim-min", "2"});
  CHECK(s.code == kExitOk);
  CHECK(s.out.find(" 0 disagreements") != std::string::npos);
  const Run f = run({"sweep", "3", "3", "3", "--inject-fault"});
  CHECK(f.code == kExitOracleDisagreement);
  CHECK(f.out.find("counterexample") != std::string::npos);
}

TEST_CASE("budget exit code") {
  ::setenv("BSIRREP_MAX_DIVISORS", "3", 1);
  const Run r = run({"classify", "2", "5", "3"});
  ::unsetenv("BSIRREP_MAX_DIVISORS");
  CHECK(r.code == kExitBudget);
  CHECK(run({"classify", "2", "5", "3"}).code == kExitOk);
}
