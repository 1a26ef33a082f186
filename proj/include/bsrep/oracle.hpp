#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsrep/exactlinalg.hpp"
#include "bsrep/repcore.hpp"

namespace bsrep {

enum class Generator : unsigned char { A, B };

struct Syllable {
  Generator gen = Generator::A;
  BigInt exponent;

  friend bool operator==(const Syllable& x, const Syllable& y) {
    return x.gen == y.gen && x.exponent == y.exponent;
  }
};

/// Freely reduced word in a, b: exponents nonzero, neighbours on different
/// generators. Every constructor and append keeps it reduced.
class GroupWord {
 public:
  GroupWord() = default;

  static GroupWord generator(Generator g, const BigInt& exponent);
  static GroupWord a(const BigInt& exponent) { return generator(Generator::A, exponent); }
  static GroupWord b(const BigInt& exponent) { return generator(Generator::B, exponent); }
  /// a b^p a^-1 b^-q, trivial in BS(p, q).
  static GroupWord relation(const BSParams& params);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }

  void append(Generator g, const BigInt& exponent);
  GroupWord& operator*=(const GroupWord& other);
  friend GroupWord operator*(GroupWord x, const GroupWord& y) { return x *= y; }
  GroupWord inverse() const;

  std::string to_string() const;

  friend bool operator==(const GroupWord& x, const GroupWord& y) {
    return x.syllables_ == y.syllables_;
  }

 private:
  std::vector<Syllable> syllables_;
};

/// The image of w under a -> A, b -> B. With reduce_b, b-exponents are first
/// reduced modulo pair.ell, which is valid once B^ell = I. Throws Singular
/// for a negative a-exponent when A is not invertible.
CycMatrix evaluate_word(const MatrixPair& pair, const GroupWord& w, bool reduce_b = true);

struct BurnsideOptions {
  /// Try the closure modulo a prime first; full dimension there is already
  /// a certificate.
  bool modular_prefilter = true;
};

/// Dimension of the algebra spanned by words in A, A^-1, B: the fixpoint of
/// V -> V + A V + V A + A^-1 V + V A^-1 + B V + V B starting from V = span{I}.
std::size_t algebra_dimension(const MatrixPair& pair, const BurnsideOptions& options = {});

/// True iff the algebra generated by A, A^-1 and B is all d x d matrices.
bool burnside_irreducible(const MatrixPair& pair, const BurnsideOptions& options = {});

/// A basis of a proper nonzero subspace invariant under A and B when the
/// diagonal of B repeats with period m = ord_ell(s) < dim: the fixed space
/// of the shift power P^m, where A = c P. Empty when the exponents on B's
/// diagonal are pairwise distinct. The result is checked exactly before it
/// is returned; throws WitnessVerificationFailed otherwise.
std::optional<std::vector<CycVector>> invariant_subspace_witness(const MatrixPair& pair,
                                                                 const RepSpec& spec);

/// Whether span(basis) is mapped into itself by m.
bool is_invariant_subspace(const CycMatrix& m, const std::vector<CycVector>& basis);

}  // namespace bsrep
