#include "bsrep/exactlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "bsrep/error.hpp"

namespace bsrep {

namespace {

void require_order(Order expected, const CycNum& value) {
  if (value.order() != expected)
    throw Error(ErrorKind::OrderMismatch, "entry order " + std::to_string(value.order()) +
                                              " does not match " + std::to_string(expected));
}

void require_same_shape_order(const CycMatrix& x, const CycMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
  if (x.order() != y.order()) throw Error(ErrorKind::OrderMismatch, "matrix orders differ");
}

// Row reduction to reduced row echelon form, in place. Pivot is the first
// nonzero entry scanning rows downward in each column. Returns pivot columns.
std::vector<std::size_t> row_reduce(std::vector<std::vector<CycNum>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    if (!m[r][c].is_one()) {
      const CycNum inv = m[r][c].inverse();
      for (std::size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero()) m[r][j] *= inv;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const CycNum factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] -= factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<CycNum>> to_rows(const CycMatrix& x) {
  std::vector<std::vector<CycNum>> m(x.rows(), std::vector<CycNum>(x.cols()));
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) m[i][j] = x(i, j);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// CycVector

CycVector::CycVector(std::size_t size, Order L) : order_(L), entries_(size, CycNum::zero(L)) {}

CycVector::CycVector(std::vector<CycNum> entries) : entries_(std::move(entries)) {
  if (!entries_.empty()) order_ = entries_.front().order();
  for (const auto& e : entries_) require_order(order_, e);
}

void CycVector::set(std::size_t i, CycNum value) {
  require_order(order_, value);
  entries_.at(i) = std::move(value);
}

bool CycVector::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

CycVector CycVector::change_order(Order M) const {
  std::vector<CycNum> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.change_order(M));
  CycVector v(std::move(out));
  v.order_ = M;
  return v;
}

// ---------------------------------------------------------------------------
// CycMatrix

CycMatrix::CycMatrix(std::size_t rows, std::size_t cols, Order L)
    : rows_(rows), cols_(cols), order_(L), entries_(rows * cols, CycNum::zero(L)) {}

CycMatrix CycMatrix::identity(std::size_t n, Order L) {
  return scalar(n, CycNum::one(L));
}

CycMatrix CycMatrix::scalar(std::size_t n, const CycNum& c) {
  CycMatrix m(n, n, c.order());
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = c;
  return m;
}

CycMatrix CycMatrix::diagonal(const std::vector<CycNum>& diag) {
  if (diag.empty()) throw Error(ErrorKind::DimensionMismatch, "empty diagonal");
  const std::size_t n = diag.size();
  CycMatrix m(n, n, diag.front().order());
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, diag[i]);
  return m;
}

CycMatrix CycMatrix::from_rows(const std::vector<std::vector<CycNum>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw Error(ErrorKind::DimensionMismatch, "matrix must have at least one entry");
  CycMatrix m(rows.size(), rows.front().size(), rows.front().front().order());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw Error(ErrorKind::DimensionMismatch, "ragged rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void CycMatrix::set(std::size_t i, std::size_t j, CycNum value) {
  require_order(order_, value);
  if (i >= rows_ || j >= cols_) throw std::out_of_range("CycMatrix::set");
  entries_[i * cols_ + j] = std::move(value);
}

CycMatrix CycMatrix::change_order(Order M) const {
  if (M == order_) return *this;
  CycMatrix out(rows_, cols_, M);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].change_order(M);
  return out;
}

bool CycMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

bool CycMatrix::is_identity() const {
  auto c = scalar_value();
  return c && c->is_one();
}

bool CycMatrix::is_diagonal() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

std::optional<CycNum> CycMatrix::scalar_value() const {
  if (!is_diagonal() || rows_ == 0) return std::nullopt;
  for (std::size_t i = 1; i < rows_; ++i)
    if ((*this)(i, i) != (*this)(0, 0)) return std::nullopt;
  return (*this)(0, 0);
}

CycVector CycMatrix::row(std::size_t i) const {
  return CycVector(std::vector<CycNum>(entries_.begin() + i * cols_,
                                       entries_.begin() + (i + 1) * cols_));
}

CycVector CycMatrix::column(std::size_t j) const {
  std::vector<CycNum> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return CycVector(std::move(out));
}

CycVector CycMatrix::flatten() const {
  CycVector v(entries_);
  return v;
}

std::string CycMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
  }
  os << "] over Q(zeta_" << order_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// arithmetic

CycMatrix mat_mul(const CycMatrix& x, const CycMatrix& y) {
  if (x.cols() != y.rows())
    throw Error(ErrorKind::DimensionMismatch, "mat_mul: inner dimensions differ");
  if (x.order() != y.order()) throw Error(ErrorKind::OrderMismatch, "mat_mul: orders differ");
  CycMatrix out(x.rows(), y.cols(), x.order());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j) {
      CycNum acc = CycNum::zero(x.order());
      for (std::size_t k = 0; k < x.cols(); ++k) {
        if (x(i, k).is_zero() || y(k, j).is_zero()) continue;
        acc += x(i, k) * y(k, j);
      }
      out.set(i, j, std::move(acc));
    }
  }
  return out;
}

CycMatrix mat_add(const CycMatrix& x, const CycMatrix& y) {
  require_same_shape_order(x, y);
  CycMatrix out = x;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (!y(i, j).is_zero()) out.set(i, j, x(i, j) + y(i, j));
  return out;
}

CycMatrix mat_sub(const CycMatrix& x, const CycMatrix& y) {
  require_same_shape_order(x, y);
  CycMatrix out = x;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (!y(i, j).is_zero()) out.set(i, j, x(i, j) - y(i, j));
  return out;
}

CycMatrix mat_scale(const CycMatrix& x, const CycNum& c) {
  if (x.order() != c.order()) throw Error(ErrorKind::OrderMismatch, "mat_scale: orders differ");
  CycMatrix out(x.rows(), x.cols(), x.order());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (!x(i, j).is_zero()) out.set(i, j, x(i, j) * c);
  return out;
}

CycVector mat_apply(const CycMatrix& x, const CycVector& v) {
  if (x.cols() != v.size()) throw Error(ErrorKind::DimensionMismatch, "mat_apply: size mismatch");
  if (x.order() != v.order()) throw Error(ErrorKind::OrderMismatch, "mat_apply: orders differ");
  CycVector out(x.rows(), x.order());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    CycNum acc = CycNum::zero(x.order());
    for (std::size_t k = 0; k < x.cols(); ++k)
      if (!x(i, k).is_zero() && !v[k].is_zero()) acc += x(i, k) * v[k];
    out.set(i, std::move(acc));
  }
  return out;
}

CycMatrix mat_pow(const CycMatrix& x, long long k) {
  if (!x.is_square()) throw Error(ErrorKind::DimensionMismatch, "mat_pow: matrix is not square");
  if (k < 0) return mat_pow(mat_inverse(x), -k);
  CycMatrix result = CycMatrix::identity(x.rows(), x.order());
  CycMatrix base = x;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

CycMatrix mat_pow(const CycMatrix& x, const BigInt& k) {
  if (!x.is_square()) throw Error(ErrorKind::DimensionMismatch, "mat_pow: matrix is not square");
  if (sgn(k) < 0) return mat_pow(mat_inverse(x), BigInt(-k));
  if (k.fits_slong_p()) return mat_pow(x, static_cast<long long>(k.get_si()));
  CycMatrix result = CycMatrix::identity(x.rows(), x.order());
  CycMatrix base = x;
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t b = 0; b < bits; ++b) {
    if (mpz_tstbit(k.get_mpz_t(), b)) result = result * base;
    if (b + 1 < bits) base = base * base;
  }
  return result;
}

CycMatrix mat_inverse(const CycMatrix& x) {
  if (!x.is_square()) throw Error(ErrorKind::DimensionMismatch, "mat_inverse: matrix is not square");
  const std::size_t n = x.rows();
  const Order L = x.order();
  std::vector<std::vector<CycNum>> m(n, std::vector<CycNum>(2 * n, CycNum::zero(L)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = x(i, j);
    m[i][n + i] = CycNum::one(L);
  }
  const auto pivots = row_reduce(m, 2 * n);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw Error(ErrorKind::Singular, "matrix is singular");
  CycMatrix out(n, n, L);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, m[i][n + j]);
  return out;
}

std::size_t rank(const CycMatrix& x) {
  EchelonBasis basis(x.cols(), x.order());
  for (std::size_t i = 0; i < x.rows(); ++i) basis.insert(x.row(i));
  return basis.dimension();
}

std::vector<CycVector> kernel_basis(const CycMatrix& x) {
  auto m = to_rows(x);
  const auto pivots = row_reduce(m, x.cols());
  std::vector<bool> is_pivot(x.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<CycVector> basis;
  for (std::size_t free = 0; free < x.cols(); ++free) {
    if (is_pivot[free]) continue;
    CycVector v(x.cols(), x.order());
    v.set(free, CycNum::one(x.order()));
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (!m[r][free].is_zero()) v.set(pivots[r], -m[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t span_dimension(const std::vector<CycMatrix>& generators) {
  if (generators.empty()) return 0;
  const CycMatrix& first = generators.front();
  EchelonBasis basis(first.rows() * first.cols(), first.order());
  for (const auto& g : generators) {
    if (g.rows() != first.rows() || g.cols() != first.cols())
      throw Error(ErrorKind::DimensionMismatch, "span_dimension: generator shapes differ");
    if (g.order() != first.order())
      throw Error(ErrorKind::OrderMismatch, "span_dimension: generator orders differ");
    basis.insert(g.flatten());
  }
  return basis.dimension();
}

// ---------------------------------------------------------------------------
// EchelonBasis

CycVector EchelonBasis::reduce(CycVector v) const {
  if (v.size() != length_) throw Error(ErrorKind::DimensionMismatch, "vector length mismatch");
  if (v.order() != order_) throw Error(ErrorKind::OrderMismatch, "vector order mismatch");
  // Rows are zero left of their pivot, so clearing pivots in ascending order
  // never refills an earlier pivot column.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t c = pivots_[r];
    if (v[c].is_zero()) continue;
    const CycNum factor = v[c];
    for (std::size_t j = c; j < length_; ++j)
      if (!rows_[r][j].is_zero()) v.set(j, v[j] - factor * rows_[r][j]);
  }
  return v;
}

bool EchelonBasis::insert(const CycVector& v) {
  CycVector reduced = reduce(v);
  std::size_t c = 0;
  while (c < length_ && reduced[c].is_zero()) ++c;
  if (c == length_) return false;
  if (!reduced[c].is_one()) {
    const CycNum inv = reduced[c].inverse();
    for (std::size_t j = c; j < length_; ++j)
      if (!reduced[j].is_zero()) reduced.set(j, reduced[j] * inv);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c);
  const auto idx = pos - pivots_.begin();
  pivots_.insert(pos, c);
  rows_.insert(rows_.begin() + idx, std::move(reduced));
  return true;
}

bool EchelonBasis::contains(const CycVector& v) const { return reduce(v).is_zero(); }

}  // namespace bsrep
