#pragma once

// Symplectic Bott–Chern (d + d^Λ) and Aeppli (dd^Λ) cohomology of an
// invariant-form complex, computed twice: once from quotient ranks and once
// from kernels of the fourth-order operator 𝒟.
//
// The ellipticity of 𝒟 and 𝒟_P is a statement about principal symbols and has
// no content on a finite complex, so it is not represented here. Only the
// algebraic properties (self-adjointness, kernel characterisation,
// commutation with L and Λ) are checked.

#include "symcoh/lie_algebra.hpp"

#include <string>
#include <vector>

namespace symcoh {

/// Raised when two constructions that must agree do not (sign-convention
/// drift, containment failures, quotient vs harmonic mismatch).
class ConstructionMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Adjoints {
  GradedOperator d_star;        // transpose of d
  GradedOperator dLambda_star;  // [L, d*]
  bool d_star_matches_star_formula;        // d* == -⋆d⋆
  bool dLambda_star_matches_star_formula;  // [L, d*] == ⋆d^Λ⋆
};

/// Every operator of the complex, built once and shared by the checks.
struct SymplecticComplex {
  explicit SymplecticComplex(LieAlgebraSpec spec);

  LieAlgebraSpec spec;
  GradedOperator L, Lambda, Lambda_poisson, H;
  GradedOperator d, dLambda, d_star, dLambda_star;
  std::vector<RationalMatrix> star;       // ⋆ : Ω^k → Ω^{2n-k}
  std::vector<RationalMatrix> primitive;  // basis of PΩ^k, k = 0..2n
  GradedOperator D;                       // 𝒟
  GradedOperator DP;                      // three-term operator, not yet restricted
  std::vector<RationalMatrix> DP_compressed;  // Bᵀ 𝒟_P B on PΩ^k (k ≤ n)
  bool star_adjoint_formulas_hold;
};

/// d^Λ = dΛ - Λd. Throws ConstructionMismatch if (d^Λ)² ≠ 0.
GradedOperator build_dLambda(const LieAlgebraSpec& spec);

/// d* = dᵀ and d^{Λ*} = [L, d*], each compared with its Hodge-star formula.
/// On a unimodular algebra a disagreement throws ConstructionMismatch; on a
/// non-unimodular one the star formulas are not adjoints and the flags are
/// only reported.
Adjoints build_adjoints(const LieAlgebraSpec& spec);

/// 𝒟 = d*dd*d + d^{Λ*}d^Λd^{Λ*}d^Λ + d^{Λ*}dd*d^Λ + d*d^Λd^{Λ*}d + 2dd^Λd^{Λ*}d*.
GradedOperator build_D(const LieAlgebraSpec& spec);

/// 𝒟_P = d*dd*d + d^{Λ*}dd*d^Λ + dd^Λd^{Λ*}d*, compressed to the primitive
/// basis: block k is Bᵀ 𝒟_P B for B = basis of PΩ^k (empty above degree n).
std::vector<RationalMatrix> build_DP(const LieAlgebraSpec& spec);

struct CohomologyTable {
  std::string name;
  int n = 0;
  std::vector<long long> b;            // Betti numbers
  std::vector<long long> h_plus;       // dim H^k_{d+d^Λ}
  std::vector<long long> h_times;      // dim H^k_{dd^Λ}
  std::vector<long long> primitive_h;  // dim PH^k_{d+d^Λ}
  bool hard_lefschetz = false;
  bool nilpotent = true;
  bool unimodular = true;

  /// The invariants every table must satisfy; returns a list of violations.
  std::vector<std::string> invariant_violations() const;
};

/// Quotient ranks: ker(d + d^Λ)/im dd^Λ and ker dd^Λ/(im d + im d^Λ).
/// Throws ConstructionMismatch when a required containment fails.
CohomologyTable cohomology_quotient_dims(const SymplecticComplex& c);

/// Harmonic route: ker 𝒟, ker 𝒟_P, ker dd^Λ ∩ ker d* ∩ ker d^{Λ*} and Hodge
/// harmonic de Rham forms. Throws ConstructionMismatch when the result
/// differs from the quotient route in any degree.
CohomologyTable harmonic_kernel_dims(const SymplecticComplex& c);

/// Both routes; throws on any mismatch, returns the quotient table.
CohomologyTable compute_cohomology(const SymplecticComplex& c);

struct IdentityCheck {
  std::string group;
  std::string name;
  bool holds;
  std::size_t residual_nonzeros;  // nonzero entries of lhs - rhs
  bool informational = false;     // reported, never a failure
};

/// Commutator tables of d, d^Λ, dd^Λ and of d*, d^{Λ*}, d*d^{Λ*} with
/// (L, Λ, H), the sl(2) relations, the eight bracket identities behind
/// [L, 𝒟] = [Λ, 𝒟] = 0 and their vanishing sums, all as exact matrices.
std::vector<IdentityCheck> verify_commutators(const SymplecticComplex& c);

struct HardLefschetzResult {
  std::vector<bool> saturated;  // h_plus_k == b_k
  std::vector<bool> lefschetz_iso;  // L^{n-k}: H^k → H^{2n-k} bijective, k ≤ n
  bool by_saturation;
  bool by_isomorphism;
  bool holds;
};

/// Both criteria; throws ConstructionMismatch if they disagree.
HardLefschetzResult hard_lefschetz_test(const SymplecticComplex& c, const CohomologyTable& table);

struct DualDegreeCheck {
  int k;
  long long triple_kernel;      // dim ker dd^Λ ∩ ker d* ∩ ker d^{Λ*} on Ω^k
  long long h_times;
  long long h_plus_dual;        // h_plus_{2n-k}
  bool star_maps_harmonic;      // ⋆ℋ^{2n-k}_{d+d^Λ} lands bijectively in the dd^Λ harmonics
};

std::vector<DualDegreeCheck> dual_table_check(const SymplecticComplex& c, const CohomologyTable& table);

/// Basis of ker 𝒟 in degree k.
RationalMatrix harmonic_basis(const SymplecticComplex& c, int k);

}  // namespace symcoh
