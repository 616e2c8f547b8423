#pragma once

// Chevalley–Eilenberg complex of invariant forms on a Lie algebra with a
// constant symplectic form. The complex is built from the structure
// equations d e_k = Σ_{i<j} c^k_ij e_i ∧ e_j and d is extended to all
// degrees as a graded derivation.

#include "symcoh/graded_operator.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace symcoh {

/// Malformed or inconsistent input (bad indices, d² ≠ 0, dω ≠ 0, ...).
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StructureConstant {
  int k;  // target generator, 1-based
  int i;  // i < j, 1-based
  int j;
  Rational c;
};

class LieAlgebraSpec {
 public:
  /// Validates the Jacobi identity (d² = 0 on generators) and dω = 0.
  LieAlgebraSpec(std::string name, int dim, const std::vector<StructureConstant>& structure, SymplecticData omega);

  /// The abelian algebra (torus) with the Darboux form.
  static LieAlgebraSpec abelian(int n);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int n() const { return dim_ / 2; }
  const SymplecticData& symplectic() const { return omega_; }
  /// d e_k, k = 1..dim (index k-1).
  const std::vector<KForm>& differentials() const { return de_; }

  /// d applied to an arbitrary form of the complex.
  KForm d(const KForm& a) const;

  /// Lower central series terminates.
  bool is_nilpotent() const;
  /// tr ad_x = 0 for every x; equivalently d vanishes on (2n-1)-forms.
  bool is_unimodular() const;

 private:
  std::string name_;
  int dim_;
  std::vector<KForm> de_;
  SymplecticData omega_;
};

/// d as a degree +1 graded operator. Throws SpecError if d∘d ≠ 0.
GradedOperator build_d(const LieAlgebraSpec& spec);

/// b_k = dim ker d_k - rank d_{k-1}, k = 0..2n, by exact ranks.
std::vector<long long> betti_numbers(const LieAlgebraSpec& spec);
std::vector<long long> betti_numbers(const GradedOperator& d);

}  // namespace symcoh
