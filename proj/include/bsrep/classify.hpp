#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bsrep/exactlinalg.hpp"
#include "bsrep/numtheory.hpp"
#include "bsrep/repcore.hpp"

namespace bsrep {

/// Classification data for one admissible order ell of B.
///
/// The orbit data refers to t -> t*s (mod ell) acting on residues coprime to
/// ell; each orbit is one choice of lambda up to the basis rotation that
/// replaces lambda by lambda^s.
struct ClassRecord {
  BigInt ell;
  BigInt s;
  bool irreducible = false;
  BigInt orbit_size = 1;
  /// phi(ell) / orbit_size for irreducible records, 0 otherwise.
  BigInt class_count = 0;
  /// Minimal element of each orbit, ascending. Possibly truncated, see below.
  std::vector<BigInt> orbit_reps;
  bool orbit_reps_complete = true;
  /// Set once the Burnside oracle has been run on the record.
  std::optional<bool> oracle_irreducible;

  friend bool operator==(const ClassRecord& a, const ClassRecord& b) {
    return a.ell == b.ell && a.s == b.s && a.irreducible == b.irreducible &&
           a.orbit_size == b.orbit_size && a.class_count == b.class_count &&
           a.orbit_reps == b.orbit_reps && a.orbit_reps_complete == b.orbit_reps_complete &&
           a.oracle_irreducible == b.oracle_irreducible;
  }
};

struct ClassificationReport {
  BSParams params;
  unsigned dim = 1;
  /// q^dim - p^dim, signed.
  BigInt modulus;
  /// Factorization of |modulus|.
  Factorization factorization;
  /// Ascending by ell.
  std::vector<ClassRecord> records;
  /// When set, records cover only the divisors up to this bound.
  std::optional<BigInt> max_ell;

  friend bool operator==(const ClassificationReport& a, const ClassificationReport& b) {
    return a.params == b.params && a.dim == b.dim && a.modulus == b.modulus &&
           a.factorization == b.factorization && a.records == b.records &&
           a.max_ell == b.max_ell;
  }
};

struct ClassifyOptions {
  std::optional<BigInt> max_ell;
  /// Orbit representatives are listed for at most this many orbits per record.
  std::size_t max_orbit_reps = 100'000;
  NumtheoryBudget budget;
};

/// ell divides q^dim - p^dim.
bool exists_rep(const BSParams& params, unsigned dim, const BigInt& ell);

/// ell divides no q^k - p^k for 1 <= k < dim. Throws PreconditionFailed when
/// exists_rep is false.
bool is_irreducible(const BSParams& params, unsigned dim, const BigInt& ell);

/// The record for one ell; requires exists_rep.
ClassRecord classify_ell(const BSParams& params, unsigned dim, const BigInt& ell,
                         const ClassifyOptions& options = {});

ClassificationReport classify_dimension(const BSParams& params, unsigned dim,
                                        const ClassifyOptions& options = {});

/// Sum of class_count over irreducible records.
BigInt count_irreducibles(const BSParams& params, unsigned dim,
                          const ClassifyOptions& options = {});

/// The orbit {t, t s, t s^2, ...} mod ell, in generation order.
std::vector<std::uint64_t> orbit_of(std::uint64_t t, std::uint64_t s, std::uint64_t ell);

/// An invertible X with X A1 = A2 X and X B1 = B2 X, if one is found.
///
/// The intertwiner space is the kernel of the stacked linear system. Kernel
/// basis vectors are tried first, then seeded random integer combinations;
/// for irreducible pairs any nonzero intertwiner is invertible.
std::optional<CycMatrix> find_intertwiner(const MatrixPair& first, const MatrixPair& second);
std::optional<CycMatrix> find_intertwiner(const RepSpec& first, const RepSpec& second);

/// Dimension of the space of all intertwiners from first to second.
std::size_t intertwiner_dimension(const MatrixPair& first, const MatrixPair& second);

/// Simultaneous conjugacy of the two canonical pairs. Throws
/// IncompatibleSpecs when params or dim differ.
bool are_equivalent(const RepSpec& first, const RepSpec& second);

}  // namespace bsrep
