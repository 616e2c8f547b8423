#include "symcoh/graded_operator.hpp"

#include <stdexcept>

namespace symcoh {

namespace {

std::size_t space_size(int dim, int degree) {
  return static_cast<std::size_t>(binomial(dim, degree));
}

}  // namespace

GradedOperator::GradedOperator(int dim, int shift) : dim_(dim), shift_(shift) {
  for (int k = 0; k <= dim; ++k) blocks_.emplace_back(space_size(dim, k + shift), space_size(dim, k));
}

GradedOperator GradedOperator::from_map(int dim, int shift, const std::function<KForm(const KForm&)>& f) {
  GradedOperator op(dim, shift);
  for (int k = 0; k <= dim; ++k) {
    const auto src = monomials(dim, k);
    const auto dst = monomials(dim, k + shift);
    RationalMatrix& b = op.blocks_[k];
    for (std::size_t c = 0; c < src.size(); ++c) {
      KForm e(dim, k);
      e.add(src[c], 1);
      const KForm img = f(e);
      if (img.degree() != k + shift && !img.is_zero())
        throw std::logic_error("GradedOperator::from_map: map has the wrong degree");
      for (std::size_t r = 0; r < dst.size(); ++r) b(r, c) = img.coefficient(dst[r]);
    }
  }
  return op;
}

GradedOperator GradedOperator::identity(int dim) {
  GradedOperator op(dim, 0);
  for (int k = 0; k <= dim; ++k) op.blocks_[k] = RationalMatrix::identity(space_size(dim, k));
  return op;
}

GradedOperator GradedOperator::transpose() const {
  GradedOperator t(dim_, -shift_);
  for (int k = 0; k <= dim_; ++k) {
    const int target = k + shift_;
    if (target < 0 || target > dim_) continue;
    t.blocks_[target] = blocks_[k].transpose();
  }
  return t;
}

KForm GradedOperator::apply(const KForm& a) const {
  if (a.dim() != dim_) throw std::invalid_argument("GradedOperator::apply: dimension mismatch");
  const int k = a.degree();
  if (k < 0 || k > dim_) return KForm(dim_, k + shift_);
  return from_column(dim_, k + shift_, blocks_[k] * to_vector(a));
}

bool GradedOperator::is_zero() const {
  for (const auto& b : blocks_)
    if (!b.is_zero()) return false;
  return true;
}

GradedOperator operator+(const GradedOperator& a, const GradedOperator& b) {
  if (a.dim_ != b.dim_ || a.shift_ != b.shift_) throw std::invalid_argument("GradedOperator sum: shape mismatch");
  GradedOperator out = a;
  for (int k = 0; k <= a.dim_; ++k) out.blocks_[k] += b.blocks_[k];
  return out;
}

GradedOperator operator-(const GradedOperator& a, const GradedOperator& b) {
  if (a.dim_ != b.dim_ || a.shift_ != b.shift_)
    throw std::invalid_argument("GradedOperator difference: shape mismatch");
  GradedOperator out = a;
  for (int k = 0; k <= a.dim_; ++k) out.blocks_[k] -= b.blocks_[k];
  return out;
}

GradedOperator operator*(const Rational& s, const GradedOperator& a) {
  GradedOperator out = a;
  for (auto& b : out.blocks_) b *= s;
  return out;
}

GradedOperator operator*(const GradedOperator& a, const GradedOperator& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("GradedOperator product: dimension mismatch");
  GradedOperator out(a.dim_, a.shift_ + b.shift_);
  for (int k = 0; k <= a.dim_; ++k) {
    const int mid = k + b.shift_;
    if (mid < 0 || mid > a.dim_) continue;
    out.blocks_[k] = a.blocks_[mid] * b.blocks_[k];
  }
  return out;
}

bool operator==(const GradedOperator& a, const GradedOperator& b) {
  return a.dim_ == b.dim_ && a.shift_ == b.shift_ && a.blocks_ == b.blocks_;
}

GradedOperator commutator(const GradedOperator& a, const GradedOperator& b) { return a * b - b * a; }

std::vector<RationalMatrix> hodge_star_blocks(int dim) {
  std::vector<RationalMatrix> out;
  for (int k = 0; k <= dim; ++k) {
    const auto src = monomials(dim, k);
    const auto dst = monomials(dim, dim - k);
    RationalMatrix b(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      KForm e(dim, k);
      e.add(src[c], 1);
      const KForm img = hodge_star(e);
      for (std::size_t r = 0; r < dst.size(); ++r) b(r, c) = img.coefficient(dst[r]);
    }
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace symcoh
