#include "bsrep/oracle.hpp"

#include <deque>

#include "bsrep/error.hpp"

namespace bsrep {

namespace {

using ModMatrix = std::vector<std::uint64_t>;  // row-major d x d

struct ModField {
  std::uint64_t p;
  std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
    const std::uint64_t s = x + y;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t x, std::uint64_t y) const { return x >= y ? x - y : x + p - y; }
  std::uint64_t mul(std::uint64_t x, std::uint64_t y) const { return mul_mod_u64(x, y, p); }
  std::uint64_t inv(std::uint64_t x) const { return pow_mod_u64(x, p - 2, p); }
};

ModMatrix mod_mul(const ModField& f, const ModMatrix& x, const ModMatrix& y, std::size_t d) {
  ModMatrix out(d * d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const std::uint64_t xik = x[i * d + k];
      if (xik == 0) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (y[k * d + j] != 0) out[i * d + j] = f.add(out[i * d + j], f.mul(xik, y[k * d + j]));
    }
  return out;
}

class ModEchelon {
 public:
  ModEchelon(const ModField& f, std::size_t length) : f_(f), length_(length) {}

  std::size_t dimension() const { return rows_.size(); }

  bool insert(ModMatrix v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::uint64_t x = v[pivots_[r]];
      if (x == 0) continue;
      for (std::size_t j = pivots_[r]; j < length_; ++j)
        if (rows_[r][j] != 0) v[j] = f_.sub(v[j], f_.mul(x, rows_[r][j]));
    }
    std::size_t pivot = 0;
    while (pivot < length_ && v[pivot] == 0) ++pivot;
    if (pivot == length_) return false;
    const std::uint64_t scale = f_.inv(v[pivot]);
    for (std::size_t j = pivot; j < length_; ++j) v[j] = f_.mul(v[j], scale);
    // pivots_ stays ascending.
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < pivot) ++at;
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), pivot);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(v));
    return true;
  }

 private:
  ModField f_;
  std::size_t length_;
  std::vector<std::size_t> pivots_;
  std::vector<ModMatrix> rows_;
};

std::optional<ModMatrix> reduce_matrix(const ResidueEmbedding& emb, const CycMatrix& m) {
  ModMatrix out(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto v = emb.map(m(i, j));
      if (!v) return std::nullopt;
      out[i * m.cols() + j] = *v;
    }
  return out;
}

std::size_t modular_algebra_dimension(const std::vector<CycMatrix>& gens, std::size_t d,
                                      Order L) {
  const ResidueEmbedding emb = ResidueEmbedding::for_order(L);
  const ModField f{emb.prime()};
  std::vector<ModMatrix> mod_gens;
  for (const CycMatrix& g : gens) {
    auto r = reduce_matrix(emb, g);
    if (!r) return 0;
    mod_gens.push_back(std::move(*r));
  }
  ModEchelon basis(f, d * d);
  ModMatrix id(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) id[i * d + i] = 1;
  std::deque<ModMatrix> frontier;
  basis.insert(id);
  frontier.push_back(id);
  while (!frontier.empty() && basis.dimension() < d * d) {
    const ModMatrix x = std::move(frontier.front());
    frontier.pop_front();
    for (const ModMatrix& g : mod_gens)
      for (ModMatrix y : {mod_mul(f, g, x, d), mod_mul(f, x, g, d)})
        if (basis.insert(y)) frontier.push_back(std::move(y));
  }
  return basis.dimension();
}

std::size_t exact_algebra_dimension(const std::vector<CycMatrix>& gens, std::size_t d, Order L) {
  EchelonBasis basis(d * d, L);
  const CycMatrix id = CycMatrix::identity(d, L);
  std::deque<CycMatrix> frontier;
  basis.insert(id.flatten());
  frontier.push_back(id);
  while (!frontier.empty() && basis.dimension() < d * d) {
    const CycMatrix x = std::move(frontier.front());
    frontier.pop_front();
    for (const CycMatrix& g : gens)
      for (CycMatrix y : {g * x, x * g})
        if (basis.insert(y.flatten())) frontier.push_back(std::move(y));
  }
  return basis.dimension();
}

CycMatrix b_to(const MatrixPair& pair, const BigInt& e, bool reduce_b) {
  if (reduce_b && pair.ell >= 1) {
    BigInt ell;
    mpz_import(ell.get_mpz_t(), 1, -1, sizeof pair.ell, 0, 0, &pair.ell);
    return mat_pow(pair.b, mod_floor(e, ell));
  }
  return mat_pow(pair.b, e);
}

}  // namespace

GroupWord GroupWord::generator(Generator g, const BigInt& exponent) {
  GroupWord w;
  w.append(g, exponent);
  return w;
}

GroupWord GroupWord::relation(const BSParams& params) {
  return a(1) * b(params.p) * a(-1) * b(-params.q);
}

void GroupWord::append(Generator g, const BigInt& exponent) {
  if (exponent == 0) return;
  if (!syllables_.empty() && syllables_.back().gen == g) {
    syllables_.back().exponent += exponent;
    if (syllables_.back().exponent == 0) syllables_.pop_back();
    return;
  }
  syllables_.push_back({g, exponent});
}

GroupWord& GroupWord::operator*=(const GroupWord& other) {
  for (const Syllable& s : other.syllables_) append(s.gen, s.exponent);
  return *this;
}

GroupWord GroupWord::inverse() const {
  GroupWord w;
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
    w.append(it->gen, -it->exponent);
  return w;
}

std::string GroupWord::to_string() const {
  if (syllables_.empty()) return "1";
  std::string out;
  for (const Syllable& s : syllables_) {
    if (!out.empty()) out += ' ';
    out += s.gen == Generator::A ? 'a' : 'b';
    if (s.exponent != 1) out += "^" + s.exponent.get_str();
  }
  return out;
}

CycMatrix evaluate_word(const MatrixPair& pair, const GroupWord& w, bool reduce_b) {
  CycMatrix out = CycMatrix::identity(pair.dim(), pair.order);
  for (const Syllable& s : w.syllables()) {
    if (s.gen == Generator::A)
      out = out * mat_pow(pair.a, s.exponent);
    else
      out = out * b_to(pair, s.exponent, reduce_b);
  }
  return out;
}

std::size_t algebra_dimension(const MatrixPair& pair, const BurnsideOptions& options) {
  const std::size_t d = pair.dim();
  if (d == 0) return 0;
  const Order L = pair.order;
  std::vector<CycMatrix> gens{pair.a.change_order(L), pair.b.change_order(L)};
  gens.push_back(mat_inverse(gens[0]));
  if (options.modular_prefilter && modular_algebra_dimension(gens, d, L) == d * d) return d * d;
  return exact_algebra_dimension(gens, d, L);
}

bool burnside_irreducible(const MatrixPair& pair, const BurnsideOptions& options) {
  const std::size_t d = pair.dim();
  return algebra_dimension(pair, options) == d * d;
}

bool is_invariant_subspace(const CycMatrix& m, const std::vector<CycVector>& basis) {
  if (basis.empty()) return true;
  EchelonBasis span(basis.front().size(), m.order());
  for (const CycVector& v : basis) span.insert(v.change_order(m.order()));
  for (const CycVector& v : basis)
    if (!span.contains(mat_apply(m, v.change_order(m.order())))) return false;
  return true;
}

std::optional<std::vector<CycVector>> invariant_subspace_witness(const MatrixPair& pair,
                                                                 const RepSpec& spec) {
  const std::size_t d = pair.dim();
  if (d != spec.dim) throw Error(ErrorKind::DimensionMismatch, "pair and spec disagree on dim");
  std::size_t m = 1;
  for (; m < d; ++m) {
    bool periodic = true;
    for (std::size_t i = 0; i < d && periodic; ++i)
      periodic = pair.b(i, i) == pair.b((i + m) % d, (i + m) % d);
    if (periodic) break;
  }
  if (m >= d) return std::nullopt;

  const Order L = common_order(pair.order, spec.c.order());
  const CycMatrix a = pair.a.change_order(L);
  const CycMatrix b = pair.b.change_order(L);
  const CycNum c_m = spec.c.change_order(L).pow(static_cast<long long>(m));
  std::vector<CycVector> basis =
      kernel_basis(mat_pow(a, static_cast<long long>(m)) - CycMatrix::scalar(d, c_m));
  if (basis.empty() || basis.size() >= d || !is_invariant_subspace(a, basis) ||
      !is_invariant_subspace(b, basis))
    throw Error(ErrorKind::WitnessVerificationFailed,
                "fixed space of the shift power is not a proper invariant subspace");
  return basis;
}

}  // namespace bsrep
