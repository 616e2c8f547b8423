#pragma once

// Witten-deformed operators of the quadratic local model on R^{2n}:
// f = T Σ λ_i x_i² / 2 with the standard symplectic form and Euclidean metric,
// realised on Ψ_I ⊗ dX_J where Ψ_I are orthonormal oscillator states with
// total excitation η_I = Σ I_i ≤ eta_max.
//
// Notation: e_i = dx_i ∧, e_i† = ι_i, d_f* is the adjoint of d_f (written δ_f
// in some sources). D_i = ∂_i + ∂_i f and D_i† = -∂_i + ∂_i f act as
//   λ_i = +1:  D = √(2T) a,     D† = √(2T) a†
//   λ_i = -1:  D = -√(2T) a†,   D† = -√(2T) a
// with a Ψ_m = √m Ψ_{m-1}.
//
// Each D or D† factor moves η by one, so a composite with m ladder factors is
// exact on states with η ≤ eta_max - m ("interior" states). Every identity
// and kernel search here is evaluated on the interior only.
//
// The global gluing analysis (cutoffs, resolvent estimates, curved metrics)
// has no finite model and is not represented. Only the local statements are.

#include "symcoh/exterior.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace symcoh {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct LocalModelConfig {
  int n = 1;
  int n_p = 0;
  double T = 1.0;
  int eta_max = 6;
};

/// Hessian signs of the normal form for Morse index n_p. Throws
/// std::invalid_argument when n_p is outside [0, 2n].
std::vector<int> lambda_signs(int n, int n_p);

class LocalModel {
 public:
  LocalModel(int n, std::vector<int> lambda, double T, int eta_max);
  explicit LocalModel(const LocalModelConfig& cfg);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  double T() const { return T_; }
  int eta_max() const { return eta_max_; }
  const std::vector<int>& lambda() const { return lambda_; }
  std::size_t size() const { return occupations_.size() << dim(); }

  const std::vector<std::vector<int>>& occupations() const { return occupations_; }
  std::size_t occupation_index(const std::vector<int>& occ) const;
  std::size_t state(std::size_t occ_index, Mask form) const { return (occ_index << dim()) | form; }
  int eta(std::size_t s) const { return etas_[s >> dim()]; }
  Mask form(std::size_t s) const { return static_cast<Mask>(s & ((std::size_t{1} << dim()) - 1)); }
  int degree(std::size_t s) const { return std::popcount(form(s)); }

  /// States with η ≤ eta_max - margin, optionally restricted to one degree.
  std::vector<std::size_t> interior(int margin, int degree = -1) const;

  // Building blocks, all on the full truncated space.
  SparseMatrix ladder_D(int i) const;
  SparseMatrix ladder_Ddag(int i) const;
  SparseMatrix wedge_e(int i) const;
  SparseMatrix contract_e(int i) const;

  // Deformed differentials (built once).
  const SparseMatrix& d() const { return d_; }
  const SparseMatrix& d_star() const { return d_star_; }
  const SparseMatrix& dLambda() const { return dLambda_; }
  const SparseMatrix& dLambda_star() const { return dLambda_star_; }

  // Form-index operators.
  const SparseMatrix& L() const { return L_; }
  const SparseMatrix& Lambda() const { return Lambda_; }
  const SparseMatrix& H() const { return H_; }
  const SparseMatrix& C() const { return C_; }
  const SparseMatrix& C_dag() const { return C_dag_; }
  const SparseMatrix& M() const { return M_; }
  /// ⋆ on the form index, identity on the oscillator part.
  const SparseMatrix& star() const { return star_; }

  /// Δ_{d_f} from its closed form: 2Tη + T Σ (1 - λ_i + 2λ_i [i ∈ J]).
  const SparseMatrix& witten_laplacian() const { return laplacian_; }
  /// Δ_{d^Λ_f} from its closed form: 2Tη + T Σ (1 + λ_{Ji} - 2λ_{Ji} [i ∈ J]).
  const SparseMatrix& dLambda_laplacian() const { return dLambda_laplacian_; }

  /// 𝒟_PT X = (d*dd*d + d^Λ*dd*d^Λ + dd^Λd^Λ*d*) X, applied factor by factor.
  SparseMatrix apply_DPT(const SparseMatrix& X) const;
  /// Δ² + d^Λ*dC† + Cd*d^Λ - CC† - dMd*, applied to X.
  SparseMatrix apply_DPT_local_form(const SparseMatrix& X) const;

  /// Orthonormal basis (columns) of the primitive k-form states with
  /// η ≤ eta_max - margin.
  SparseMatrix primitive_states(int k, int margin) const;

  /// Ψ_0 dx_1 ∧ dx_3 ∧ ... ∧ dx_{2n_p-1} as a unit vector.
  Eigen::VectorXd ground_generator(int n_p) const;

 private:
  SparseMatrix form_operator(const std::function<KForm(const KForm&)>& f) const;

  int n_;
  std::vector<int> lambda_;
  double T_;
  int eta_max_;
  std::vector<std::vector<int>> occupations_;
  std::vector<int> etas_;
  std::map<std::vector<int>, std::size_t> occupation_lookup_;
  SparseMatrix d_, d_star_, dLambda_, dLambda_star_;
  SparseMatrix L_, Lambda_, H_, C_, C_dag_, M_, star_;
  SparseMatrix laplacian_, dLambda_laplacian_;
};

/// W_IJ for the normal form of index n_p: 2T(η + n_p - k + 2(R⁰ + R⁺)) when
/// n_p ≤ n (R⁺: slots > 2n_p, R⁰: dx_{2i}, i ≤ n_p) and 2T(η + n_p - k + 2R⁺)
/// when n_p > n (R⁺: dx_{2i}, i ≤ 2n - n_p).
double eigenvalue_W(int n, int n_p, double T, int eta, Mask J);

struct LocalCheck {
  std::string group;
  std::string name;
  double residual;
  double threshold;
  bool passed;
};

/// Ladder relations, squares, transposes, the deformed commutator tables with
/// (L, Λ, H), the closed forms of both Laplacians, the C_f anticommutators,
/// the M_f bracket identities and the two forms of 𝒟_PT. Residuals are
/// relative Frobenius norms over interior columns.
std::vector<LocalCheck> verify_local_identities(const LocalModel& m, double tolerance = 1e-10);

/// Largest relative deviation of diag(d*d + dd*) from W_IJ on states with
/// η ≤ eta_max - 2, plus the largest off-diagonal magnitude.
struct EigenvalueFormulaCheck {
  double max_relative_error;
  double max_offdiagonal;
  std::size_t states;
};
EigenvalueFormulaCheck check_eigenvalue_formula(const LocalModel& m, int n_p);

enum class KernelStatus { ok, inconclusive };

struct KernelResult {
  int n, n_p, k;
  std::size_t dimension;
  KernelStatus status;
  std::vector<double> smallest_singular_values;  // ascending, up to 4
  double threshold;
  double generator_overlap;  // |<kernel vector, generator>| when dimension == 1, else 0
  Eigen::MatrixXd kernel;    // full-space kernel vectors as columns
};

/// Kernel of 𝒟_PT on primitive k-form states with η ≤ eta_max - 4, by
/// Householder QR followed by SVD of R. Singular values below 1e-8 T² count
/// as kernel; any within a factor 10 of that mark the result inconclusive.
KernelResult kernel_dimension(const LocalModel& m, int n_p, int k);

struct SatTerms {
  double laplacian_sq;   // ‖Δ_{d_f} α‖²
  double c_dag_sq;       // ‖C_f† α‖²
  double m_term;         // (d_f* α, M_f d_f* α)
  double combination;    // first - second - third
  double dpt_expectation;  // (α, 𝒟_PT α)
  double dLambda_term;     // (d^Λ_f α, d_f C_f† α)
};

/// Requires α supported on η ≤ eta_max - 4.
SatTerms verify_sat_identity(const LocalModel& m, const Eigen::VectorXd& alpha);

struct ScalingResult {
  int n, n_p;
  std::vector<double> low_T;   // lowest nonzero eigenvalues at T
  std::vector<double> high_T;  // same at 2T
  double max_relative_error;   // max |high / (4 low) - 1|
  bool passed;
};

/// Lowest nonzero eigenvalues of the interior compression of 𝒟_PT at T and 2T.
ScalingResult spectrum_scaling_check(const LocalModelConfig& cfg, std::size_t count = 5, double tolerance = 1e-6);

struct DualityResult {
  int n, n_p;
  bool applicable;  // a generator exists (n_p ≤ n)
  double residual_ddLambda;
  double residual_d_star;
  double residual_dLambda_star;
  double star_star_error;  // ‖⋆⋆g - (-1)^{k(2n-k)} g‖
  int dual_degree;
  bool passed;
};

/// ⋆ of the generator for (n_p, k = n_p) against the dd^Λ-harmonic conditions
/// of the -f model (all λ flipped).
DualityResult hodge_duality_check(const LocalModelConfig& cfg);

struct BigoResult {
  int n, n_p, k;
  std::size_t trials;
  std::vector<Rational> a_values;
  std::size_t violations;        // (trial, a) pairs with LHS > RHS
  double worst_ratio;            // max LHS / RHS over trials with RHS > 0
  std::string first_violation;   // human-readable description, empty if none
};

/// ‖C_f† α‖² against 8T² Σ c_J² (2⌊R⁺(J)/2⌋(1-a)² + (k - R⁺(J))a²) in exact
/// arithmetic, for seeded random primitive α (the oscillator factor and T
/// cancel). Requires n_p < n.
BigoResult verify_bigo_bound(int n, int n_p, int k, std::size_t trials, std::uint64_t seed,
                             const std::vector<Rational>& a_values);

/// The same inequality for one given primitive form.
bool bigo_holds(int n, int n_p, const KForm& alpha, const Rational& a, Rational* lhs = nullptr,
                Rational* rhs = nullptr);

/// C(n, k) - C(n, k-1) as stated for the closed z-chains.
long long zk_formula(int n, int k);
/// Nullity of the unsigned boundary on k-subsets of {1..n}.
long long zk_bruteforce_boundary(int n, int k);
/// Nullity of Λ on the span of z_{i1} ∧ ... ∧ z_{ik}, z_i = dx_{2i-1} ∧ dx_{2i}.
long long zk_bruteforce_lambda(int n, int k);

/// Number of k-monomials using at most one slot from each Darboux pair,
/// counted by enumeration.
long long coisotropic_count(int n, int k);
/// 2^k C(n, k), the closed form of the same count.
long long coisotropic_formula(int n, int k);
/// 2^n C(n, k), the value quoted alongside the basis description.
long long coisotropic_quoted(int n, int k);

}  // namespace symcoh
