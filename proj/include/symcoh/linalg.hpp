#pragma once

// Exact dense linear algebra over the rationals.
//
// Every rank, kernel and image computation on the invariant-form complexes
// goes through this header. Nothing here touches floating point.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

namespace symcoh {

using Rational = mpq_class;

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix transpose() const;
  RationalMatrix column(std::size_t c) const;
  RationalMatrix columns(const std::vector<std::size_t>& which) const;
  bool is_zero() const;
  std::size_t nonzeros() const;

  RationalMatrix& operator+=(const RationalMatrix& o);
  RationalMatrix& operator-=(const RationalMatrix& o);
  RationalMatrix& operator*=(const Rational& s);

  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator-(RationalMatrix a) { return a *= Rational(-1); }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& s) { return a *= s; }
  friend RationalMatrix operator*(const Rational& s, RationalMatrix a) { return a *= s; }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

  /// [a | b]; row counts must match. An empty side contributes nothing.
  static RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b);
  /// [a ; b]; column counts must match.
  static RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::ostream& operator<<(std::ostream& os, const RationalMatrix& m);

/// Rank by fraction-free (Bareiss) elimination. Rows are first scaled to
/// integer entries, so every intermediate quantity is an exact integer.
std::size_t rank(const RationalMatrix& m);

/// Reduced row echelon form; `pivots` receives the pivot column of each
/// nonzero row.
RationalMatrix rref(const RationalMatrix& m, std::vector<std::size_t>* pivots = nullptr);

/// Basis of the right kernel, one column per basis vector (cols() x nullity).
RationalMatrix nullspace(const RationalMatrix& m);

/// A maximal linearly independent subset of the columns of m.
RationalMatrix column_basis(const RationalMatrix& m);

/// Some x with a * x = b, or nullopt when b is outside the column space.
std::optional<RationalMatrix> solve(const RationalMatrix& a, const RationalMatrix& b);

/// Exact inverse of a square matrix; nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// dim(span(a) ∩ span(b)) for two column sets living in the same space.
std::size_t intersection_dimension(const RationalMatrix& a, const RationalMatrix& b);

/// True when every column of `sub` lies in the column span of `super`.
bool column_span_contains(const RationalMatrix& super, const RationalMatrix& sub);

}  // namespace symcoh
