#include "symcoh/lie_algebra.hpp"

#include <fmt/core.h>

namespace symcoh {

LieAlgebraSpec::LieAlgebraSpec(std::string name, int dim, const std::vector<StructureConstant>& structure,
                               SymplecticData omega)
    : name_(std::move(name)), dim_(dim), omega_(std::move(omega)) {
  if (dim < 2 || dim % 2 != 0 || dim > kMaxBaseDimension)
    throw SpecError(fmt::format("dim must be even and in [2, {}], got {}", kMaxBaseDimension, dim));
  if (omega_.dim() != dim) throw SpecError("omega dimension does not match dim");

  for (int k = 0; k < dim; ++k) de_.emplace_back(dim, 2);
  for (const auto& s : structure) {
    if (s.k < 1 || s.k > dim || s.i < 1 || s.i > dim || s.j < 1 || s.j > dim)
      throw SpecError(fmt::format("structure constant index out of range: [{}, [{}, {}]]", s.k, s.i, s.j));
    if (s.i >= s.j)
      throw SpecError(fmt::format("structure constants must be given with i < j: [{}, [{}, {}]]", s.k, s.i, s.j));
    de_[s.k - 1].add((Mask{1} << (s.i - 1)) | (Mask{1} << (s.j - 1)), s.c);
  }

  for (int k = 0; k < dim; ++k)
    if (!d(de_[k]).is_zero())
      throw SpecError(fmt::format("Jacobi identity fails: d(d e_{}) = {} != 0", k + 1, d(de_[k]).to_string()));
  const KForm dw = d(omega_.omega_form());
  if (!dw.is_zero()) throw SpecError("omega is not closed: d omega = " + dw.to_string());
}

LieAlgebraSpec LieAlgebraSpec::abelian(int n) {
  return LieAlgebraSpec(fmt::format("torus{}", 2 * n), 2 * n, {}, SymplecticData::darboux(n));
}

KForm LieAlgebraSpec::d(const KForm& a) const {
  if (a.dim() != dim_) throw std::invalid_argument("d: dimension mismatch");
  KForm out(dim_, a.degree() + 1);
  for (const auto& [m, c] : a.terms()) {
    // d(e_{s1} ∧ ... ∧ e_{sk}) = Σ_p (-1)^p e_{s1} ∧ ... ∧ d e_{sp} ∧ ... ∧ e_{sk}
    int p = 0;
    for (Mask rest = m; rest; rest &= rest - 1, ++p) {
      const int slot = std::countr_zero(rest) + 1;
      const Mask below = m & ((Mask{1} << (slot - 1)) - 1);
      const Mask above = m & ~below & ~(Mask{1} << (slot - 1));
      KForm head(dim_, std::popcount(below));
      head.add(below, 1);
      KForm tail(dim_, std::popcount(above));
      tail.add(above, 1);
      KForm term = wedge(wedge(head, de_[slot - 1]), tail);
      out += term * ((p % 2 == 0) ? c : Rational(-c));
    }
  }
  return out;
}

bool LieAlgebraSpec::is_nilpotent() const {
  // Bracket [e_i, e_j] = -Σ_k c^k_ij e_k (the sign is irrelevant here).
  const auto dim = static_cast<std::size_t>(dim_);
  auto bracket = [&](const RationalMatrix& x, const RationalMatrix& y) {
    RationalMatrix out(dim, 1);
    for (int k = 0; k < dim_; ++k)
      for (const auto& [m, c] : de_[k].terms()) {
        const int i = std::countr_zero(m);
        const int j = 31 - std::countl_zero(m);
        out(k, 0) += c * (x(i, 0) * y(j, 0) - x(j, 0) * y(i, 0));
      }
    return out;
  };
  RationalMatrix current = RationalMatrix::identity(dim);
  for (int step = 0; step <= dim_; ++step) {
    if (rank(current) == 0) return true;
    RationalMatrix next(dim, 0);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < current.cols(); ++b)
        next = RationalMatrix::hstack(next, bracket(RationalMatrix::identity(dim).column(a), current.column(b)));
    current = next.cols() ? column_basis(next) : RationalMatrix(dim, 0);
  }
  return rank(current) == 0;
}

bool LieAlgebraSpec::is_unimodular() const {
  const Mask full = (Mask{1} << dim_) - 1;
  for (int s = 1; s <= dim_; ++s) {
    KForm f(dim_, dim_ - 1);
    f.add(full & ~(Mask{1} << (s - 1)), 1);
    if (!d(f).is_zero()) return false;
  }
  return true;
}

GradedOperator build_d(const LieAlgebraSpec& spec) {
  GradedOperator d = GradedOperator::from_map(spec.dim(), 1, [&](const KForm& a) { return spec.d(a); });
  const GradedOperator dd = d * d;
  for (int k = 0; k <= spec.dim(); ++k)
    if (!dd.block(k).is_zero()) throw SpecError(fmt::format("d∘d != 0 on {}-forms", k));
  return d;
}

std::vector<long long> betti_numbers(const GradedOperator& d) {
  const int dim = d.dim();
  std::vector<long long> ranks(dim + 1);
  for (int k = 0; k <= dim; ++k) ranks[k] = static_cast<long long>(rank(d.block(k)));
  std::vector<long long> b(dim + 1);
  for (int k = 0; k <= dim; ++k) b[k] = binomial(dim, k) - ranks[k] - (k > 0 ? ranks[k - 1] : 0);
  return b;
}

std::vector<long long> betti_numbers(const LieAlgebraSpec& spec) { return betti_numbers(build_d(spec)); }

}  // namespace symcoh
