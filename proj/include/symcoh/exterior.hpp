#pragma once

// Exterior algebra over a 2n-dimensional symplectic vector space with an
// orthonormal basis dx_1, ..., dx_2n.
//
// Monomials are bitmasks (bit s-1 <-> slot s) read in increasing slot order;
// every sign below is the parity of the transpositions needed to restore
// that order. Forms are sparse maps from monomial to coefficient and are
// homogeneous. A form whose degree lies outside [0, 2n] is always zero; such
// forms appear as results (e.g. L of a top form) and carry their nominal
// degree so operator degree bookkeeping stays uniform.

#include "symcoh/linalg.hpp"

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symcoh {

using Mask = std::uint32_t;

inline constexpr int kMaxBaseDimension = 16;

/// A monomial dx_{s1} ∧ ... ∧ dx_{sk}, s1 < ... < sk, slots 1-based.
struct BasisIndex {
  Mask mask = 0;

  static BasisIndex of(std::initializer_list<int> slots);
  int degree() const { return std::popcount(mask); }
  bool contains(int slot) const { return (mask >> (slot - 1)) & 1U; }
  std::vector<int> slots() const;
  std::string to_string() const;

  friend bool operator==(BasisIndex, BasisIndex) = default;
  friend auto operator<=>(BasisIndex, BasisIndex) = default;
};

/// Number of set bits of `mask` strictly below `slot`.
inline int slots_below(Mask mask, int slot) {
  return std::popcount(mask & ((Mask{1} << (slot - 1)) - 1));
}

/// dx_slot ∧ e_mask: nullopt when slot is present, else (sign, result mask).
inline std::optional<std::pair<int, Mask>> wedge_slot(int slot, Mask mask) {
  const Mask bit = Mask{1} << (slot - 1);
  if (mask & bit) return std::nullopt;
  return std::pair{(slots_below(mask, slot) & 1) ? -1 : 1, mask | bit};
}

/// ι_slot e_mask: nullopt when slot is absent.
inline std::optional<std::pair<int, Mask>> contract_slot(int slot, Mask mask) {
  const Mask bit = Mask{1} << (slot - 1);
  if (!(mask & bit)) return std::nullopt;
  return std::pair{(slots_below(mask, slot) & 1) ? -1 : 1, mask & ~bit};
}

/// e_a ∧ e_b as (sign, mask), or nullopt when they share a slot.
inline std::optional<std::pair<int, Mask>> wedge_masks(Mask a, Mask b) {
  if (a & b) return std::nullopt;
  int parity = 0;
  // Each slot of b must move left past every slot of a above it.
  for (Mask rest = b; rest; rest &= rest - 1) {
    const int slot = std::countr_zero(rest) + 1;
    parity += std::popcount(a >> slot);
  }
  return std::pair{(parity & 1) ? -1 : 1, a | b};
}

/// All monomials of degree k on `dim` slots, in increasing mask order.
std::vector<Mask> monomials(int dim, int degree);

long long binomial(int n, int k);

template <typename S>
class BasicKForm {
 public:
  using Scalar = S;
  using Terms = std::map<Mask, S>;

  BasicKForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > kMaxBaseDimension || dim % 2 != 0)
      throw std::invalid_argument("KForm: base dimension must be even and at most 16");
  }

  static BasicKForm constant(int dim, const S& value) {
    BasicKForm f(dim, 0);
    f.add(0, value);
    return f;
  }

  static BasicKForm monomial(int dim, std::initializer_list<int> slots, const S& coeff = S(1)) {
    const BasisIndex b = BasisIndex::of(slots);
    BasicKForm f(dim, b.degree());
    f.add(b.mask, coeff);
    return f;
  }

  int dim() const { return dim_; }
  int half_dim() const { return dim_ / 2; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coefficient(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  /// Accumulates `value` onto monomial `m`; entries that cancel are erased.
  void add(Mask m, const S& value) {
    if (std::popcount(m) != degree_) throw std::invalid_argument("KForm: inhomogeneous term");
    if (m >> dim_) throw std::invalid_argument("KForm: slot outside base dimension");
    if (value == S(0)) return;
    auto [it, inserted] = terms_.try_emplace(m, value);
    if (!inserted) {
      it->second += value;
      if (it->second == S(0)) terms_.erase(it);
    }
  }

  BasicKForm& operator+=(const BasicKForm& o) {
    require_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  BasicKForm& operator-=(const BasicKForm& o) {
    require_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  BasicKForm& operator*=(const S& s) {
    if (s == S(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend BasicKForm operator+(BasicKForm a, const BasicKForm& b) { return a += b; }
  friend BasicKForm operator-(BasicKForm a, const BasicKForm& b) { return a -= b; }
  friend BasicKForm operator-(BasicKForm a) { return a *= S(-1); }
  friend BasicKForm operator*(BasicKForm a, const S& s) { return a *= s; }
  friend BasicKForm operator*(const S& s, BasicKForm a) { return a *= s; }
  friend bool operator==(const BasicKForm& a, const BasicKForm& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  void require_compatible(const BasicKForm& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("KForm: dimension mismatch");
    if (o.degree_ != degree_) throw std::invalid_argument("KForm: degree mismatch");
  }

  int dim_;
  int degree_;
  Terms terms_;
};

using KForm = BasicKForm<Rational>;

template <typename S>
std::string BasicKForm<S>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string coeff;
    if constexpr (std::is_same_v<S, Rational>)
      coeff = c.get_str();
    else
      coeff = std::to_string(c);
    out += "(" + coeff + ")" + BasisIndex{m}.to_string();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Products and contractions

template <typename S>
BasicKForm<S> wedge(const BasicKForm<S>& a, const BasicKForm<S>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  BasicKForm<S> out(a.dim(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (auto w = wedge_masks(ma, mb)) out.add(w->second, w->first > 0 ? S(ca * cb) : S(-(ca * cb)));
  return out;
}

/// Interior product with the coordinate field ∂_slot.
template <typename S>
BasicKForm<S> contract(int slot, const BasicKForm<S>& a) {
  if (slot < 1 || slot > a.dim()) throw std::invalid_argument("contract: slot out of range");
  BasicKForm<S> out(a.dim(), a.degree() - 1);
  for (const auto& [m, c] : a.terms())
    if (auto r = contract_slot(slot, m)) out.add(r->second, r->first > 0 ? S(c) : S(-c));
  return out;
}

/// Interior product with a general vector (components indexed from slot 1).
template <typename S>
BasicKForm<S> contract(const std::vector<S>& vec, const BasicKForm<S>& a) {
  if (static_cast<int>(vec.size()) != a.dim()) throw std::invalid_argument("contract: vector length");
  BasicKForm<S> out(a.dim(), a.degree() - 1);
  for (int s = 1; s <= a.dim(); ++s)
    if (vec[s - 1] != S(0)) out += contract(s, a) * vec[s - 1];
  return out;
}

/// Euclidean pairing of coefficients; equals ∫ a ∧ ⋆b in the orthonormal basis.
template <typename S>
S inner(const BasicKForm<S>& a, const BasicKForm<S>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  S acc(0);
  if (a.degree() != b.degree()) return acc;
  for (const auto& [m, c] : a.terms()) {
    auto it = b.terms().find(m);
    if (it != b.terms().end()) acc += c * it->second;
  }
  return acc;
}

/// ⋆ for the orientation dx_1 ∧ ... ∧ dx_2n: e_I ∧ ⋆e_I = vol.
template <typename S>
BasicKForm<S> hodge_star(const BasicKForm<S>& a) {
  const int dim = a.dim();
  const Mask full = dim == 0 ? 0 : ((Mask{1} << dim) - 1);
  BasicKForm<S> out(dim, dim - a.degree());
  for (const auto& [m, c] : a.terms()) {
    const Mask comp = full & ~m;
    const auto w = wedge_masks(m, comp);
    out.add(comp, w->first > 0 ? S(c) : S(-c));
  }
  return out;
}

/// H: α ↦ (n - k) α.
template <typename S>
BasicKForm<S> counting_H(const BasicKForm<S>& a) {
  return a * S(a.half_dim() - a.degree());
}

// ---------------------------------------------------------------------------
// Symplectic data

/// Constant symplectic form ω = Σ_{i<j} ω_ij dx_i ∧ dx_j on an orthonormal
/// basis. Construction enforces compatibility with the metric: the matrix of
/// ω, read as an endomorphism J, must satisfy J² = -I.
///
/// `pi` holds the Poisson bivector π = Σ_{i<j} π^{ij} ∂_i ∧ ∂_j, normalised so
/// that the Darboux form dx_1 ∧ dx_2 has π = ∂_1 ∧ ∂_2 and Λ(dx_1 ∧ dx_2) = 1.
/// In matrix terms pi = (omega^{-1})^T, i.e. omega * pi^T = I.
class SymplecticData {
 public:
  SymplecticData(int n, RationalMatrix omega);

  /// ω = Σ_i dx_{2i-1} ∧ dx_{2i}.
  static SymplecticData darboux(int n);
  /// ω from a list of ((i, j), coefficient) with 1-based slots, i != j.
  static SymplecticData from_pairs(int n, const std::vector<std::pair<std::pair<int, int>, Rational>>& entries);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const RationalMatrix& omega() const { return omega_; }
  const RationalMatrix& pi() const { return pi_; }
  const KForm& omega_form() const { return omega_form_; }

 private:
  int n_;
  RationalMatrix omega_;
  RationalMatrix pi_;
  KForm omega_form_;
};

/// L α = ω ∧ α.
KForm lefschetz_L(const SymplecticData& s, const KForm& a);

/// Λ as the metric adjoint of L: ⟨Λα, β⟩ = ⟨α, Lβ⟩ for every monomial β.
KForm lefschetz_Lambda(const SymplecticData& s, const KForm& a);

/// Λ α = ι_π α computed directly, with ι_{∂_i ∧ ∂_j} = ι_j ι_i.
KForm lefschetz_Lambda_poisson(const SymplecticData& s, const KForm& a);

KForm lefschetz_L_power(const SymplecticData& s, const KForm& a, int power);
KForm lefschetz_Lambda_power(const SymplecticData& s, const KForm& a, int power);

/// Λα = 0. Also checks the equivalent L^{n-k+1}α = 0 and throws
/// std::logic_error if the two disagree.
bool is_primitive(const SymplecticData& s, const KForm& a);

/// Lα = 0. For k ≥ n also checks Λ^{k-n+1}α = 0 and throws on disagreement.
bool is_coeffective(const SymplecticData& s, const KForm& a);

/// Columns span PΩ^k (exact kernel of Λ on Ω^k, monomial order of `monomials`).
RationalMatrix primitive_basis(const SymplecticData& s, int k);

/// dim PΩ^k on R^{2n}: C(2n,k) - C(2n,k-2) for k ≤ n, and 0 above the middle
/// degree where Λ is injective.
long long dim_primitive(int n, int k);

struct LefschetzComponent {
  int r;
  KForm beta;  // primitive, degree k - 2r
};

/// a = Σ_r L^r β_r with every β_r primitive. Zero components are omitted.
std::vector<LefschetzComponent> primitive_decompose(const SymplecticData& s, const KForm& a);

/// α_V = ι_{v_k} ... ι_{v_1} vol for V = span(basis). Throws
/// std::invalid_argument if the vectors are linearly dependent.
KForm subspace_form(const SymplecticData& s, const std::vector<std::vector<Rational>>& basis);

// ---------------------------------------------------------------------------
// Coordinates

/// Column vector of `a` in the monomial basis of its degree.
RationalMatrix to_vector(const KForm& a);
/// Inverse of to_vector for a column of a matrix.
KForm from_column(int dim, int degree, const RationalMatrix& m, std::size_t col = 0);

}  // namespace symcoh
