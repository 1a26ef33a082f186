#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bsrep/cyclotomic.hpp"

namespace bsrep {

/// A vector over Q(zeta_L); every entry has the vector's order.
class CycVector {
 public:
  CycVector() = default;
  CycVector(std::size_t size, Order L);
  explicit CycVector(std::vector<CycNum> entries);

  Order order() const { return order_; }
  std::size_t size() const { return entries_.size(); }
  const CycNum& operator[](std::size_t i) const { return entries_[i]; }
  void set(std::size_t i, CycNum value);
  const std::vector<CycNum>& entries() const { return entries_; }

  bool is_zero() const;
  CycVector change_order(Order M) const;

  friend bool operator==(const CycVector& a, const CycVector& b) {
    return a.order_ == b.order_ && a.entries_ == b.entries_;
  }

 private:
  Order order_ = 1;
  std::vector<CycNum> entries_;
};

/// Dense row-major matrix over Q(zeta_L).
class CycMatrix {
 public:
  CycMatrix() = default;
  /// Zero matrix.
  CycMatrix(std::size_t rows, std::size_t cols, Order L);

  static CycMatrix identity(std::size_t n, Order L);
  static CycMatrix scalar(std::size_t n, const CycNum& c);
  static CycMatrix diagonal(const std::vector<CycNum>& diag);
  static CycMatrix from_rows(const std::vector<std::vector<CycNum>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Order order() const { return order_; }
  bool is_square() const { return rows_ == cols_; }

  const CycNum& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, CycNum value);

  CycMatrix change_order(Order M) const;

  bool is_zero() const;
  bool is_identity() const;
  bool is_diagonal() const;
  /// If this is c * identity, returns c.
  std::optional<CycNum> scalar_value() const;

  CycVector row(std::size_t i) const;
  CycVector column(std::size_t j) const;
  /// Row-major flattening into a vector of length rows * cols.
  CycVector flatten() const;

  std::string to_string() const;

  friend bool operator==(const CycMatrix& a, const CycMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.order_ == b.order_ &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const CycMatrix& a, const CycMatrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Order order_ = 1;
  std::vector<CycNum> entries_;
};

CycMatrix mat_mul(const CycMatrix& x, const CycMatrix& y);
CycMatrix mat_add(const CycMatrix& x, const CycMatrix& y);
CycMatrix mat_sub(const CycMatrix& x, const CycMatrix& y);
CycMatrix mat_scale(const CycMatrix& x, const CycNum& c);
CycVector mat_apply(const CycMatrix& x, const CycVector& v);

inline CycMatrix operator*(const CycMatrix& x, const CycMatrix& y) { return mat_mul(x, y); }
inline CycMatrix operator+(const CycMatrix& x, const CycMatrix& y) { return mat_add(x, y); }
inline CycMatrix operator-(const CycMatrix& x, const CycMatrix& y) { return mat_sub(x, y); }

/// Square-and-multiply; k < 0 inverts first, k = 0 gives the identity.
CycMatrix mat_pow(const CycMatrix& x, long long k);
CycMatrix mat_pow(const CycMatrix& x, const BigInt& k);

/// Gauss-Jordan inverse. Throws Singular.
CycMatrix mat_inverse(const CycMatrix& x);

std::size_t rank(const CycMatrix& x);

/// Basis of the right null space, one vector per free column of the reduced
/// row echelon form (free variable set to 1, the others to 0).
std::vector<CycVector> kernel_basis(const CycMatrix& x);

/// Dimension of the linear span of the generators viewed as vectors of
/// length rows * cols.
std::size_t span_dimension(const std::vector<CycMatrix>& generators);

/// Incrementally maintained row echelon basis of a subspace of Q(zeta_L)^n.
/// Pivot is the first nonzero column; pivot entries are normalized to 1.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t length, Order L) : length_(length), order_(L) {}

  std::size_t length() const { return length_; }
  std::size_t dimension() const { return rows_.size(); }

  /// Adds v to the spanning set; returns true if the dimension grew.
  bool insert(const CycVector& v);
  bool contains(const CycVector& v) const;

 private:
  CycVector reduce(CycVector v) const;

  std::size_t length_;
  Order order_;
  std::vector<std::size_t> pivots_;  // ascending
  std::vector<CycVector> rows_;
};

}  // namespace bsrep
