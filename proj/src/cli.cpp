#include "bsrep/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bsrep/classify.hpp"
#include "bsrep/error.hpp"
#include "bsrep/oracle.hpp"
#include "bsrep/serialize.hpp"
#include "bsrep/sweep.hpp"

namespace bsrep {

namespace {

constexpr unsigned kMaxDim = 10'000;

/// Input problems found after CLI11 has accepted the arguments.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BigInt parse_big(const std::string& name, const std::string& text) {
  BigInt v;
  std::string s = text;
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty() || v.set_str(s, 10) != 0)
    throw InputError(name + " must be a decimal integer, got '" + text + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& name, const std::string& text, std::uint64_t lo,
                        std::uint64_t hi) {
  const BigInt v = parse_big(name, text);
  if (v < static_cast<unsigned long>(lo) || v > static_cast<unsigned long>(hi))
    throw InputError(name + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                     "], got " + text);
  return v.get_ui();
}

BSParams parse_params(const std::string& p, const std::string& q) {
  return BSParams::make(parse_big("p", p), parse_big("q", q));
}

Json read_json_file(const std::string& path) {
  std::ifstream in;
  std::istream* src = &std::cin;
  if (path != "-") {
    in.open(path);
    if (!in) throw InputError("cannot open " + path);
    src = &in;
  }
  try {
    return Json::parse(*src);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroParameter:
    case ErrorKind::InvalidParams:
    case ErrorKind::InvalidSpec:
    case ErrorKind::ParseError:
    case ErrorKind::IncompatibleSpecs:
    case ErrorKind::NotInvertible:
    case ErrorKind::DivisionByZero:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::IncompatibleOrders:
      return true;
    default:
      return false;
  }
}

struct ClassifyArgs {
  std::string p, q, dim, max_ell;
  bool table = false, json = false, oracle = false;
  std::uint64_t oracle_max_phi = 5000;
};

struct ConstructArgs {
  std::string p, q, dim, ell, t, c;
  bool table = false, json = false, float_render = false;
};

struct VerifyArgs {
  std::string file;
};

struct EquivArgs {
  std::string first, second;
  bool json = false;
};

struct SweepArgs {
  std::string pmax, qmax, dim_max;
  unsigned dim_min = 1;
  std::uint64_t max_ell = 2000, seed = 1;
  unsigned jobs = 1;
  bool inject_fault = false, no_props = false, json = false;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err) {
  const BSParams params = parse_params(a.p, a.q);
  const unsigned dim = static_cast<unsigned>(parse_u64("dim", a.dim, 1, kMaxDim));
  ClassifyOptions options;
  options.budget = NumtheoryBudget::from_environment();
  if (!a.max_ell.empty()) options.max_ell = parse_big("--max-ell", a.max_ell);
  ClassificationReport report = classify_dimension(params, dim, options);

  std::vector<std::string> disagreements;
  if (a.oracle) {
    for (ClassRecord& rec : report.records) {
      if (rec.ell > kMaxOrder || rec.orbit_reps.empty()) continue;
      if (euler_phi(rec.ell, options.budget) > static_cast<unsigned long>(a.oracle_max_phi))
        continue;
      const RepSpec spec =
          RepSpec::make(params, dim, rec.ell.get_ui(), rec.orbit_reps.front().get_ui(),
                        CycNum::one(1));
      rec.oracle_irreducible = burnside_irreducible(build_matrices(spec));
      if (*rec.oracle_irreducible != rec.irreducible)
        disagreements.push_back("ell = " + rec.ell.get_str() + ", t = " +
                                rec.orbit_reps.front().get_str() + ": criterion says " +
                                (rec.irreducible ? "irreducible" : "reducible") +
                                ", Burnside oracle says " +
                                (*rec.oracle_irreducible ? "irreducible" : "reducible"));
    }
  }
  if (a.table)
    out << report_table(report);
  else
    out << report_to_json(report).dump(2) << '\n';
  if (!disagreements.empty()) {
    for (const auto& d : disagreements) err << "oracle disagreement: " << d << '\n';
    return kExitOracleDisagreement;
  }
  return kExitOk;
}

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err) {
  const BSParams params = parse_params(a.p, a.q);
  const unsigned dim = static_cast<unsigned>(parse_u64("dim", a.dim, 1, kMaxDim));
  const std::uint64_t ell = parse_u64("ell", a.ell, 1, kMaxOrder);
  const BigInt t_raw = parse_big("t", a.t);
  if (t_raw < 0 || t_raw >= static_cast<unsigned long>(ell))
    throw InputError("t must lie in [0, ell), got " + a.t);
  const CycNum c = parse_cyc_literal(a.c);
  const RepSpec spec = RepSpec::make(params, dim, ell, t_raw.get_ui(), c);
  const RepRecord record = make_record(spec, a.float_render);
  if (!verify_relation(record.pair, params)) {
    err << "error: constructed pair fails A B^p = B^q A\n";
    return kExitCheckFailed;
  }
  if (a.table)
    out << record_table(record);
  else
    out << record_to_json(record).dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream&) {
  const RepRecord record = record_from_json(read_json_file(a.file));
  const MatrixPair& pair = record.pair;
  const RepSpec& spec = record.spec;
  bool ok = true;
  auto report = [&](const std::string& name, bool pass, const std::string& extra = "") {
    out << name << ": " << (pass ? "pass" : "FAIL") << extra << '\n';
    ok = ok && pass;
  };
  auto guarded = [](auto&& f) {
    try {
      return static_cast<bool>(f());
    } catch (const Error&) {
      return false;
    }
  };

  report("relation A B^p = B^q A", guarded([&] { return verify_relation(pair, spec.params); }));
  report("conjugation A^-1 B A = B^s", guarded([&] {
           return verify_conjugation_law(pair, BigInt(static_cast<unsigned long>(spec.s)));
         }));
  for (int k = -3; k <= 3; ++k) {
    if (k == 0) continue;
    report("power identity k = " + std::to_string(k),
           guarded([&] { return verify_power_identity(pair, spec.params, k); }));
  }
  std::string scalar_note;
  report("A^dim scalar", guarded([&] {
           const CycNum s = a_power_scalar(pair);
           scalar_note = " (c^dim = " + s.to_string() + ")";
           const Order L = common_order(s.order(), spec.c.order());
           return s.change_order(L) ==
                  spec.c.change_order(L).pow(static_cast<long long>(spec.dim));
         }),
         scalar_note);
  bool irreducible = false;
  const bool ran = guarded([&] {
    irreducible = burnside_irreducible(pair);
    return true;
  });
  out << "irreducible: " << (ran ? (irreducible ? "true" : "false") : "unknown") << '\n';
  out << (ok ? "all structural checks passed" : "structural checks FAILED") << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_equiv(const EquivArgs& a, std::ostream& out, std::ostream&) {
  const RepRecord first = record_from_json(read_json_file(a.first));
  const RepRecord second = record_from_json(read_json_file(a.second));
  if (first.spec.params.p != second.spec.params.p || first.spec.params.q != second.spec.params.q ||
      first.spec.dim != second.spec.dim)
    throw Error(ErrorKind::IncompatibleSpecs, "records differ in (p, q) or dim");
  const std::optional<CycMatrix> x = find_intertwiner(first.pair, second.pair);
  if (a.json) {
    Json j{{"equivalent", x.has_value()}};
    if (x) j["witness"] = matrix_to_json(*x);
    out << j.dump(2) << '\n';
  } else if (x) {
    out << "equivalent\nwitness X with X A1 = A2 X, X B1 = B2 X over Q(zeta(" << x->order()
        << ")):\n";
    for (std::size_t i = 0; i < x->rows(); ++i) {
      out << "  [";
      for (std::size_t j = 0; j < x->cols(); ++j) out << ' ' << (*x)(i, j).to_string();
      out << " ]\n";
    }
  } else {
    out << "inequivalent\n";
  }
  return x ? kExitOk : kExitCheckFailed;
}

std::string describe(const SweepRecord& r) {
  std::ostringstream os;
  os << "BS(" << r.params.p.get_str() << "," << r.params.q.get_str() << ") dim " << r.dim
     << " ell " << r.ell.get_str() << " t " << r.t << ": criterion "
     << (r.criterion ? "irreducible" : "reducible") << ", burnside "
     << (r.burnside ? "irreducible" : "reducible") << ", witness "
     << (r.witness ? "found" : "none");
  if (!r.structure_ok()) os << ", structure check failed";
  if (!r.properties_ok()) os << ", group identity failed";
  if (!r.note.empty()) os << " [" << r.note << "]";
  return os.str();
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  SweepOptions o;
  o.pmax = static_cast<unsigned>(parse_u64("pmax", a.pmax, 1, 1000));
  o.qmax = static_cast<unsigned>(parse_u64("qmax", a.qmax, 1, 1000));
  o.dim_max = static_cast<unsigned>(parse_u64("dimmax", a.dim_max, 1, 64));
  o.dim_min = a.dim_min;
  if (o.dim_min < 1 || o.dim_min > o.dim_max)
    throw InputError("--dim-min must lie in [1, dimmax]");
  o.max_ell = a.max_ell;
  o.seed = a.seed;
  o.jobs = std::max(1u, a.jobs);
  o.properties = !a.no_props;
  o.inject_fault = a.inject_fault;
  o.budget = NumtheoryBudget::from_environment();
  const SweepSummary s = run_sweep(o);

  const std::size_t dis = s.disagreements(), structure = s.structure_failures(),
                    props = s.property_failures();
  if (a.json) {
    Json bad = Json::array();
    for (const SweepRecord& r : s.records)
      if (!r.agrees() || !r.structure_ok() || !r.properties_ok()) bad.push_back(describe(r));
    out << Json{{"pairs", std::to_string(s.pairs)},
                {"records", std::to_string(s.records.size())},
                {"disagreements", std::to_string(dis)},
                {"structure_failures", std::to_string(structure)},
                {"property_failures", std::to_string(props)},
                {"complete", s.budget_failures.empty()},
                {"budget_failures", s.budget_failures},
                {"counterexamples", bad}}
               .dump(2)
        << '\n';
  } else {
    out << "sweep |p| <= " << o.pmax << ", |q| <= " << o.qmax << ", dim " << o.dim_min << ".."
        << o.dim_max << ", ell <= " << o.max_ell << '\n';
    out << "parameter pairs:          " << s.pairs << '\n';
    out << "records checked:          " << s.records.size() << '\n';
    out << "oracle disagreements:     " << dis << '\n';
    out << "structure failures:       " << structure << '\n';
    out << "group identity failures:  " << (o.properties ? std::to_string(props) : "skipped")
        << '\n';
    for (const SweepRecord& r : s.records)
      if (!r.agrees() || !r.structure_ok() || !r.properties_ok())
        out << "counterexample: " << describe(r) << '\n';
    for (const auto& b : s.budget_failures) out << "PARTIAL, budget exhausted: " << b << '\n';
    out << s.records.size() << " records checked, " << dis << " disagreements\n";
  }
  if (!s.budget_failures.empty()) {
    err << "budget exhausted for " << s.budget_failures.size() << " case(s)\n";
    return kExitBudget;
  }
  if (dis > 0) return kExitOracleDisagreement;
  if (structure > 0 || props > 0) return kExitCheckFailed;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Irreducible representations of Baumslag-Solitar groups BS(p,q)", "bsirrep"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bsirrep 1.0.0");

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Classify dim-dimensional irreducibles of BS(p,q)");
  classify->add_option("p", ca.p)->required();
  classify->add_option("q", ca.q)->required();
  classify->add_option("dim", ca.dim)->required();
  classify->add_flag("--json", ca.json, "JSON report (default)");
  classify->add_flag("--table", ca.table, "ASCII table");
  classify->add_flag("--oracle", ca.oracle, "Cross-check each record with the Burnside oracle");
  classify->add_option("--max-ell", ca.max_ell, "Only report divisors ell up to this bound");
  classify->add_option("--oracle-max-phi", ca.oracle_max_phi,
                       "Skip the oracle on records with phi(ell) above this")
      ->capture_default_str();

  ConstructArgs co;
  auto* construct = app.add_subcommand("construct", "Build the canonical matrices A, B");
  construct->add_option("p", co.p)->required();
  construct->add_option("q", co.q)->required();
  construct->add_option("dim", co.dim)->required();
  construct->add_option("ell", co.ell)->required();
  construct->add_option("t", co.t)->required();
  construct->add_option("c", co.c, "e.g. 1, 3/2, zeta(8)^3, -2*zeta(5)")->required();
  construct->add_flag("--json", co.json, "JSON record (default)");
  construct->add_flag("--table", co.table, "Human readable matrices");
  construct->add_flag("--float", co.float_render, "Add a floating point rendering");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a representation record");
  verify->add_option("file", va.file, "Record file, or - for stdin")->required();

  EquivArgs ea;
  auto* equiv = app.add_subcommand("equiv", "Decide equivalence of two records");
  equiv->add_option("first", ea.first)->required();
  equiv->add_option("second", ea.second)->required();
  equiv->add_flag("--json", ea.json, "JSON verdict");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Criterion versus oracle agreement sweep");
  sweep->add_option("pmax", sa.pmax)->required();
  sweep->add_option("qmax", sa.qmax)->required();
  sweep->add_option("dimmax", sa.dim_max)->required();
  sweep->add_option("--dim-min", sa.dim_min)->capture_default_str();
  sweep->add_option("--max-ell", sa.max_ell)->capture_default_str();
  sweep->add_option("--seed", sa.seed)->capture_default_str();
  sweep->add_option("--jobs", sa.jobs)->capture_default_str();
  sweep->add_flag("--no-props", sa.no_props, "Skip the group identity checks");
  sweep->add_flag("--json", sa.json, "JSON summary");
  sweep->add_flag("--inject-fault", sa.inject_fault, "Test hook: corrupt one verdict");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*classify) return cmd_classify(ca, out, err);
    if (*construct) return cmd_construct(co, out, err);
    if (*verify) return cmd_verify(va, out, err);
    if (*equiv) return cmd_equiv(ea, out, err);
    if (*sweep) return cmd_sweep(sa, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::FactorizationBudgetExceeded ||
        e.kind() == ErrorKind::DivisorBudgetExceeded)
      return kExitBudget;
    return is_input_error(e.kind()) ? kExitInputError : kExitCheckFailed;
  }
  return kExitInputError;
}

}  // namespace bsrep
