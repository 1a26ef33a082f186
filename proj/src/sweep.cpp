#include "bsrep/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "bsrep/error.hpp"
#include "bsrep/oracle.hpp"

namespace bsrep {

namespace {

struct Task {
  BSParams params;
  unsigned dim;
  ClassRecord rec;
};

GroupWord random_word(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> exponent(-3, 3), length(0, 5);
  GroupWord w;
  const int n = length(rng);
  for (int i = 0; i < n; ++i) {
    w.append(Generator::A, exponent(rng));
    w.append(Generator::B, exponent(rng));
  }
  return w;
}

SweepRecord check(const Task& task, const SweepOptions& options, std::uint64_t index) {
  SweepRecord out;
  out.params = task.params;
  out.dim = task.dim;
  out.ell = task.rec.ell;
  out.s = task.rec.s;
  out.criterion = task.rec.irreducible;

  const std::uint64_t ell = task.rec.ell.get_ui();
  out.t = ell == 1 ? 0 : 1;
  const RepSpec spec = RepSpec::make(task.params, task.dim, ell, out.t, CycNum::one(1));
  const MatrixPair pair = build_matrices(spec);
  out.burnside = burnside_irreducible(pair);
  try {
    out.witness = invariant_subspace_witness(pair, spec).has_value();
  } catch (const Error& e) {
    out.witness = false;
    out.note = e.what();
  }

  const BigInt order = ell == 1 ? BigInt(1) : multiplicative_order(task.rec.s, task.rec.ell);
  out.order_criterion = order == task.dim;
  const BigInt phi = euler_phi(task.rec.ell);
  BigInt lhs, rhs;
  mpz_powm(lhs.get_mpz_t(), BigInt(mod_floor(task.params.p, task.rec.ell)).get_mpz_t(),
           phi.get_mpz_t(), task.rec.ell.get_mpz_t());
  mpz_powm(rhs.get_mpz_t(), BigInt(mod_floor(task.params.q, task.rec.ell)).get_mpz_t(),
           phi.get_mpz_t(), task.rec.ell.get_mpz_t());
  out.fermat_divisibility = lhs == rhs;

  if (options.properties) {
    out.relation_word = evaluate_word(pair, GroupWord::relation(task.params)).is_identity();
    std::mt19937_64 rng(options.seed * 0x9e3779b97f4a7c15ULL + index);
    const GroupWord w1 = random_word(rng), w2 = random_word(rng);
    const CycMatrix joined = evaluate_word(pair, w1 * w2);
    out.concatenation = joined == evaluate_word(pair, w1) * evaluate_word(pair, w2) &&
                        joined == evaluate_word(pair, w1 * w2, false);
  }
  return out;
}

}  // namespace

std::size_t SweepSummary::disagreements() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.agrees(); }));
}

std::size_t SweepSummary::structure_failures() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const auto& r) { return !r.structure_ok(); }));
}

std::size_t SweepSummary::property_failures() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const auto& r) { return !r.properties_ok(); }));
}

std::vector<BSParams> sweep_params(unsigned pmax, unsigned qmax) {
  std::vector<BSParams> out;
  const long pm = pmax, qm = qmax;
  for (long p = -pm; p <= pm; ++p)
    for (long q = -qm; q <= qm; ++q) {
      if (p == 0 || q == 0 || std::gcd(p, q) != 1) continue;
      if (std::abs(p) == 1 && std::abs(q) == 1) continue;
      const BSParams params = BSParams::make(p, q);
      if (std::none_of(out.begin(), out.end(), [&](const BSParams& x) {
            return x.p == params.p && x.q == params.q;
          }))
        out.push_back(params);
    }
  std::sort(out.begin(), out.end(), [](const BSParams& x, const BSParams& y) {
    return x.p != y.p ? x.p < y.p : x.q < y.q;
  });
  return out;
}

SweepSummary run_sweep(const SweepOptions& options) {
  SweepSummary summary;
  std::vector<Task> tasks;
  ClassifyOptions copts;
  copts.max_ell = BigInt(static_cast<unsigned long>(options.max_ell));
  copts.budget = options.budget;
  const std::vector<BSParams> all = sweep_params(options.pmax, options.qmax);
  summary.pairs = all.size();
  for (const BSParams& params : all)
    for (unsigned dim = std::max(1u, options.dim_min); dim <= options.dim_max; ++dim) {
      try {
        for (ClassRecord& rec : classify_dimension(params, dim, copts).records)
          tasks.push_back({params, dim, std::move(rec)});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::FactorizationBudgetExceeded &&
            e.kind() != ErrorKind::DivisorBudgetExceeded)
          throw;
        summary.budget_failures.push_back("BS(" + params.p.get_str() + "," + params.q.get_str() +
                                          ") dim " + std::to_string(dim) + ": " + e.what());
      }
    }

  summary.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < tasks.size(); i = next++)
        summary.records[i] = check(tasks[i], options, i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = tasks.size();
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  if (options.inject_fault)
    for (SweepRecord& r : summary.records)
      if (r.ell > 1) {
        r.criterion = !r.criterion;
        r.note = "injected fault";
        break;
      }
  return summary;
}

}  // namespace bsrep
