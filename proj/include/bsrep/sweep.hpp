#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bsrep/classify.hpp"

namespace bsrep {

struct SweepOptions {
  unsigned pmax = 7;
  unsigned qmax = 7;
  unsigned dim_min = 1;
  unsigned dim_max = 4;
  std::uint64_t max_ell = 2000;
  unsigned jobs = 1;
  /// Seed for the randomized word checks.
  std::uint64_t seed = 1;
  /// Also run the group-identity checks on every record.
  bool properties = true;
  /// Test hook: flips the criterion verdict of the first record with ell > 1.
  bool inject_fault = false;
  NumtheoryBudget budget;
};

/// One (params, dim, ell) triple and what each side said about it.
struct SweepRecord {
  BSParams params;
  unsigned dim = 1;
  BigInt ell;
  BigInt s;
  std::uint64_t t = 0;
  bool criterion = false;
  bool burnside = false;
  bool witness = false;
  /// ord_ell(s) == dim.
  bool order_criterion = false;
  /// ell | p^phi(ell) - q^phi(ell).
  bool fermat_divisibility = false;
  bool relation_word = true;
  bool concatenation = true;
  std::string note;

  bool agrees() const { return criterion == burnside && witness == !burnside; }
  bool structure_ok() const { return order_criterion == criterion && fermat_divisibility; }
  bool properties_ok() const { return relation_word && concatenation; }
};

struct SweepSummary {
  std::size_t pairs = 0;
  std::vector<SweepRecord> records;
  /// (params, dim) cases skipped because a budget ran out.
  std::vector<std::string> budget_failures;

  std::size_t disagreements() const;
  std::size_t structure_failures() const;
  std::size_t property_failures() const;
};

/// Coprime (p, q) with 1 <= |p| <= pmax, 1 <= |q| <= qmax, not both +-1,
/// normalized to q > 0 and deduplicated, in lexicographic order.
std::vector<BSParams> sweep_params(unsigned pmax, unsigned qmax);

/// Classifies every case and checks each record against the Burnside
/// oracle and the invariant subspace witness, using the canonical pair with
/// t the smallest residue coprime to ell and c = 1.
SweepSummary run_sweep(const SweepOptions& options);

}  // namespace bsrep
