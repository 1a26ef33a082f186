#include "bsrep/serialize.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "bsrep/error.hpp"

namespace bsrep {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

std::string dec(std::uint64_t v) { return std::to_string(v); }

BigInt big_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (v.is_number_integer()) return BigInt(v.dump());
  if (!v.is_string()) parse_error(std::string("field '") + key + "' must be a decimal string");
  BigInt out;
  const std::string s = v.get<std::string>();
  if (s.empty() || out.set_str(s, 10) != 0)
    parse_error(std::string("field '") + key + "' is not a decimal integer: " + s);
  return out;
}

std::uint64_t u64_field(const Json& j, const char* key) {
  const BigInt v = big_field(j, key);
  if (v < 0 || !v.fits_ulong_p()) parse_error(std::string("field '") + key + "' out of range");
  return v.get_ui();
}

bool bool_field(const Json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) parse_error(std::string("field '") + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

std::string pad_left(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

std::string matrix_block(const CycMatrix& m, const std::string& indent) {
  std::vector<std::size_t> width(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      width[j] = std::max(width[j], m(i, j).to_string().size());
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += indent + "[ ";
    for (std::size_t j = 0; j < m.cols(); ++j) out += pad_right(m(i, j).to_string(), width[j]) + " ";
    out += "]\n";
  }
  return out;
}

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : s_(text) {}

  CycNum parse() {
    CycNum acc = factor();
    skip();
    while (peek() == '*') {
      ++pos_;
      CycNum next = factor();
      const Order L = common_order(acc.order(), next.order());
      acc = acc.change_order(L) * next.change_order(L);
      skip();
    }
    if (pos_ != s_.size()) fail("unexpected character");
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    parse_error("bad c literal '" + std::string(s_) + "' at position " + std::to_string(pos_) +
                ": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  BigInt integer(bool allow_sign) {
    skip();
    std::size_t start = pos_;
    if (allow_sign && (peek() == '-' || peek() == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == digits) fail("expected digits");
    std::string text(s_.substr(start, pos_ - start));
    if (text.front() == '+') text.erase(0, 1);
    return BigInt(text);
  }

  CycNum factor() {
    skip();
    bool negative = false;
    if (peek() == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'z') {
      negative = true;
      ++pos_;
    }
    CycNum out;
    if (s_.substr(pos_, 4) == "zeta") {
      pos_ += 4;
      skip();
      if (peek() != '(') fail("expected '('");
      ++pos_;
      const BigInt L = integer(false);
      skip();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      if (L < 1 || L > kMaxOrder) fail("order out of range");
      BigInt k = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        k = integer(true);
      }
      out = CycNum::zeta(static_cast<Order>(L.get_ui()), k);
    } else {
      const BigInt num = integer(true);
      BigInt den = 1;
      skip();
      if (peek() == '/') {
        ++pos_;
        den = integer(false);
        if (den == 0) fail("zero denominator");
      }
      Rational r(num, den);
      r.canonicalize();
      out = CycNum::from_rational(r, 1);
    }
    return negative ? -out : out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RepRecord make_record(const RepSpec& spec, bool float_render) {
  return RepRecord{spec, build_matrices(spec), float_render};
}

Json cyc_to_json(const CycNum& x) {
  Json coeffs = Json::array();
  if (!x.is_zero()) {
    const std::vector<Rational> c = x.coeffs();
    std::size_t used = c.size();
    while (used > 0 && c[used - 1] == 0) --used;
    for (std::size_t i = 0; i < used; ++i)
      coeffs.push_back({{"num", c[i].get_num().get_str()}, {"den", c[i].get_den().get_str()}});
  }
  return Json{{"order", x.order()}, {"coeffs", std::move(coeffs)}};
}

CycNum cyc_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
    parse_error("cyclotomic literal needs 'order' and 'coeffs'");
  const BigInt order = big_field(j, "order");
  if (order < 1 || order > kMaxOrder) parse_error("cyclotomic order out of range");
  const Order L = static_cast<Order>(order.get_ui());
  const Json& list = j.at("coeffs");
  if (!list.is_array()) parse_error("'coeffs' must be an array");
  const std::size_t phi = field_degree(L);
  if (list.size() > phi)
    parse_error("too many coefficients for order " + std::to_string(L) + ": " +
                std::to_string(list.size()) + " > " + std::to_string(phi));
  std::vector<Rational> coeffs(phi, Rational(0));
  for (std::size_t i = 0; i < list.size(); ++i) {
    const BigInt num = big_field(list[i], "num"), den = big_field(list[i], "den");
    if (den == 0) parse_error("zero denominator in coefficient");
    coeffs[i] = Rational(num, den);
    coeffs[i].canonicalize();
  }
  return CycNum::from_coeffs(L, coeffs);
}

Json matrix_to_json(const CycMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(cyc_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CycMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_error("matrix must be a nonempty array of rows");
  std::vector<std::vector<CycNum>> rows;
  Order L = 1;
  for (const Json& r : j) {
    if (!r.is_array() || r.size() != j.front().size() || r.empty())
      parse_error("matrix rows must be nonempty arrays of equal length");
    std::vector<CycNum> row;
    for (const Json& e : r) {
      row.push_back(cyc_from_json(e));
      L = common_order(L, row.back().order());
      if (L > kMaxOrder) parse_error("matrix entries have incompatible orders");
    }
    rows.push_back(std::move(row));
  }
  for (auto& row : rows)
    for (auto& e : row) e = e.change_order(L);
  return CycMatrix::from_rows(rows);
}

double round_significant(double x, int digits) {
  if (x == 0 || !std::isfinite(x)) return x == 0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  const double out = std::strtod(buf, nullptr);
  return out == 0 ? 0.0 : out;
}

Json matrix_float_json(const CycMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::complex<double> z = m(i, j).to_complex();
      // components below 15 digits of |z| become 0
      const double floor = std::abs(z) * 1e-15;
      const double re = std::abs(z.real()) < floor ? 0.0 : z.real();
      const double im = std::abs(z.imag()) < floor ? 0.0 : z.imag();
      row.push_back({{"re", round_significant(re)}, {"im", round_significant(im)}});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json record_to_json(const RepRecord& r) {
  const RepSpec& s = r.spec;
  Json j{{"p", s.params.p.get_str()},
         {"q", s.params.q.get_str()},
         {"sign_flipped", s.params.sign_flipped},
         {"dim", dec(s.dim)},
         {"ell", dec(s.ell)},
         {"t", dec(s.t)},
         {"s", dec(s.s)},
         {"c", cyc_to_json(s.c)},
         {"matrices", {{"A", matrix_to_json(r.pair.a)}, {"B", matrix_to_json(r.pair.b)}}}};
  if (r.float_render)
    j["float_render"] = {{"A", matrix_float_json(r.pair.a)}, {"B", matrix_float_json(r.pair.b)}};
  return j;
}

RepRecord record_from_json(const Json& j) {
  if (!j.is_object()) parse_error("representation record must be a JSON object");
  RepRecord r;
  RepSpec& s = r.spec;
  s.params = BSParams::make(big_field(j, "p"), big_field(j, "q"));
  s.params.sign_flipped = bool_field(j, "sign_flipped", false);
  const std::uint64_t dim = u64_field(j, "dim");
  if (dim == 0 || dim > 4096) parse_error("dim out of range");
  s.dim = static_cast<unsigned>(dim);
  s.ell = u64_field(j, "ell");
  s.t = u64_field(j, "t");
  s.s = u64_field(j, "s");
  if (!j.contains("c")) parse_error("missing field 'c'");
  s.c = cyc_from_json(j.at("c"));
  if (!j.contains("matrices") || !j.at("matrices").is_object())
    parse_error("missing object 'matrices'");
  const Json& m = j.at("matrices");
  if (!m.contains("A") || !m.contains("B")) parse_error("'matrices' needs 'A' and 'B'");
  CycMatrix a = matrix_from_json(m.at("A")), b = matrix_from_json(m.at("B"));
  if (!a.is_square() || a.rows() != b.rows() || !b.is_square() || a.rows() != s.dim)
    parse_error("matrices must both be dim x dim");
  const Order L = common_order(a.order(), b.order());
  r.pair.a = a.change_order(L);
  r.pair.b = b.change_order(L);
  r.pair.order = L;
  r.pair.ell = s.ell;
  r.float_render = j.contains("float_render");
  return r;
}

Json report_to_json(const ClassificationReport& r) {
  Json factorization = Json::array();
  for (const PrimePower& pp : r.factorization)
    factorization.push_back({{"prime", pp.prime.get_str()}, {"exponent", dec(pp.exponent)}});
  Json records = Json::array();
  for (const ClassRecord& c : r.records) {
    Json reps = Json::array();
    for (const BigInt& t : c.orbit_reps) reps.push_back(t.get_str());
    Json rec{{"ell", c.ell.get_str()},
             {"s", c.s.get_str()},
             {"irreducible", c.irreducible},
             {"orbit_size", c.orbit_size.get_str()},
             {"class_count", c.class_count.get_str()},
             {"orbit_reps", std::move(reps)},
             {"orbit_reps_complete", c.orbit_reps_complete},
             {"oracle_checked", c.oracle_irreducible.has_value()}};
    if (c.oracle_irreducible) rec["oracle_irreducible"] = *c.oracle_irreducible;
    records.push_back(std::move(rec));
  }
  Json j{{"params",
          {{"p", r.params.p.get_str()},
           {"q", r.params.q.get_str()},
           {"sign_flipped", r.params.sign_flipped}}},
         {"dim", dec(r.dim)},
         {"modulus", r.modulus.get_str()},
         {"factorization", std::move(factorization)}};
  if (r.max_ell) j["max_ell"] = r.max_ell->get_str();
  j["records"] = std::move(records);
  return j;
}

ClassificationReport report_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("params")) parse_error("report needs 'params'");
  ClassificationReport r;
  const Json& params = j.at("params");
  r.params = BSParams::make(big_field(params, "p"), big_field(params, "q"));
  r.params.sign_flipped = bool_field(params, "sign_flipped", false);
  const std::uint64_t dim = u64_field(j, "dim");
  if (dim == 0 || dim > 1'000'000) parse_error("dim out of range");
  r.dim = static_cast<unsigned>(dim);
  r.modulus = big_field(j, "modulus");
  if (j.contains("max_ell")) r.max_ell = big_field(j, "max_ell");
  if (!j.contains("factorization") || !j.at("factorization").is_array())
    parse_error("report needs a 'factorization' array");
  for (const Json& f : j.at("factorization")) {
    const std::uint64_t e = u64_field(f, "exponent");
    if (e > 1'000'000) parse_error("exponent out of range");
    r.factorization.push_back({big_field(f, "prime"), static_cast<unsigned>(e)});
  }
  if (!j.contains("records") || !j.at("records").is_array())
    parse_error("report needs a 'records' array");
  for (const Json& rj : j.at("records")) {
    ClassRecord c;
    c.ell = big_field(rj, "ell");
    c.s = big_field(rj, "s");
    if (!rj.contains("irreducible") || !rj.at("irreducible").is_boolean())
      parse_error("record needs boolean 'irreducible'");
    c.irreducible = rj.at("irreducible").get<bool>();
    c.orbit_size = big_field(rj, "orbit_size");
    c.class_count = big_field(rj, "class_count");
    if (!rj.contains("orbit_reps") || !rj.at("orbit_reps").is_array())
      parse_error("record needs an 'orbit_reps' array");
    for (const Json& t : rj.at("orbit_reps")) {
      Json wrap{{"t", t}};
      c.orbit_reps.push_back(big_field(wrap, "t"));
    }
    c.orbit_reps_complete = bool_field(rj, "orbit_reps_complete", true);
    if (bool_field(rj, "oracle_checked", false)) {
      if (!rj.contains("oracle_irreducible")) parse_error("oracle_checked without a verdict");
      c.oracle_irreducible = bool_field(rj, "oracle_irreducible", false);
    }
    r.records.push_back(std::move(c));
  }
  return r;
}

CycNum parse_cyc_literal(std::string_view text) { return LiteralParser(text).parse(); }

std::string report_table(const ClassificationReport& r) {
  std::ostringstream os;
  os << "BS(" << r.params.p.get_str() << "," << r.params.q.get_str() << ")  dim " << r.dim
     << '\n';
  os << "modulus " << r.modulus.get_str();
  if (!r.factorization.empty()) {
    os << " = ";
    if (r.modulus < 0) os << "-";
    for (std::size_t i = 0; i < r.factorization.size(); ++i) {
      os << (i ? " * " : "") << r.factorization[i].prime.get_str();
      if (r.factorization[i].exponent > 1) os << "^" << r.factorization[i].exponent;
    }
  }
  os << '\n';
  if (r.max_ell) os << "divisors up to " << r.max_ell->get_str() << " only\n";

  bool oracle = false;
  for (const ClassRecord& c : r.records) oracle = oracle || c.oracle_irreducible.has_value();
  std::vector<std::string> head{"ell", "s", "irreducible", "orbit_size", "class_count"};
  if (oracle) head.push_back("oracle");
  std::vector<std::vector<std::string>> rows;
  for (const ClassRecord& c : r.records) {
    std::vector<std::string> row{c.ell.get_str(), c.s.get_str(), c.irreducible ? "yes" : "no",
                                 c.orbit_size.get_str(), c.class_count.get_str()};
    if (oracle)
      row.push_back(!c.oracle_irreducible ? "-" : (*c.oracle_irreducible ? "yes" : "no"));
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width;
  for (const auto& h : head) width.push_back(h.size());
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());

  auto line = [&](const std::vector<std::string>& cells, const std::string& tail) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      os << (i ? " | " : "") << (i == 2 || (oracle && i == 5) ? pad_right(cells[i], width[i])
                                                              : pad_left(cells[i], width[i]));
    os << " | " << tail << '\n';
  };
  line(head, "orbit_reps");
  for (std::size_t i = 0; i < width.size(); ++i)
    os << (i ? "-+-" : "") << std::string(width[i], '-');
  os << "-+-" << std::string(10, '-') << '\n';

  BigInt total = 0;
  for (std::size_t k = 0; k < r.records.size(); ++k) {
    const ClassRecord& c = r.records[k];
    if (c.irreducible) total += c.class_count;
    std::string reps;
    constexpr std::size_t kShown = 8;
    for (std::size_t i = 0; i < c.orbit_reps.size() && i < kShown; ++i)
      reps += (i ? " " : "") + c.orbit_reps[i].get_str();
    if (c.orbit_reps.size() > kShown || !c.orbit_reps_complete) reps += " ...";
    line(rows[k], reps);
  }
  os << "irreducible classes: " << total.get_str() << '\n';
  return os.str();
}

std::string record_table(const RepRecord& r) {
  const RepSpec& s = r.spec;
  std::ostringstream os;
  os << "BS(" << s.params.p.get_str() << "," << s.params.q.get_str() << ")  dim " << s.dim
     << "  ell " << s.ell << "  t " << s.t << "  s " << s.s << '\n';
  os << "c = " << s.c.to_string() << "   (z = zeta(" << s.c.order() << "))\n";
  os << "matrices over Q(zeta(" << r.pair.order << ")), z = zeta(" << r.pair.order << ")\n";
  os << "A =\n" << matrix_block(r.pair.a, "  ");
  os << "B =\n" << matrix_block(r.pair.b, "  ");
  if (r.float_render) {
    auto render = [&](const CycMatrix& m) {
      std::string out;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        out += "  [ ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
          const std::complex<double> z = m(i, j).to_complex();
          std::ostringstream cell;
          cell << std::setprecision(15) << round_significant(z.real()) << ' '
               << (std::signbit(round_significant(z.imag())) ? '-' : '+') << ' '
               << std::abs(round_significant(z.imag())) << 'i';
          out += pad_right(cell.str(), 40) + " ";
        }
        out += "]\n";
      }
      return out;
    };
    os << "A (float) =\n" << render(r.pair.a);
    os << "B (float) =\n" << render(r.pair.b);
  }
  return os.str();
}

}  // namespace bsrep
