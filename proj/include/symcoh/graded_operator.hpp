#pragma once

#include "symcoh/exterior.hpp"

#include <functional>
#include <vector>

namespace symcoh {

/// A linear map Ω^• → Ω^• of fixed degree `shift`, stored as one exact
/// matrix per source degree k: block(k) is C(2n, k+shift) x C(2n, k), in the
/// monomial order of `monomials`. Blocks whose target degree is out of range
/// have zero rows.
class GradedOperator {
 public:
  GradedOperator(int dim, int shift);

  /// Matrix of a form-level linear map, column by column on monomials.
  static GradedOperator from_map(int dim, int shift, const std::function<KForm(const KForm&)>& f);
  static GradedOperator identity(int dim);
  static GradedOperator zero(int dim, int shift) { return {dim, shift}; }

  int dim() const { return dim_; }
  int shift() const { return shift_; }
  const RationalMatrix& block(int k) const { return blocks_.at(k); }
  RationalMatrix& block(int k) { return blocks_.at(k); }

  GradedOperator transpose() const;
  KForm apply(const KForm& a) const;
  bool is_zero() const;

  friend GradedOperator operator+(const GradedOperator& a, const GradedOperator& b);
  friend GradedOperator operator-(const GradedOperator& a, const GradedOperator& b);
  friend GradedOperator operator*(const Rational& s, const GradedOperator& a);
  /// Composition: (a * b)(x) = a(b(x)).
  friend GradedOperator operator*(const GradedOperator& a, const GradedOperator& b);
  friend bool operator==(const GradedOperator& a, const GradedOperator& b);

 private:
  int dim_;
  int shift_;
  std::vector<RationalMatrix> blocks_;
};

/// a b - b a
GradedOperator commutator(const GradedOperator& a, const GradedOperator& b);

/// Per-degree Hodge star, block k : Ω^k → Ω^{2n-k}.
std::vector<RationalMatrix> hodge_star_blocks(int dim);

}  // namespace symcoh
