#include "symcoh/witten_local.hpp"

#include <doctest.h>

#include <cmath>

using namespace symcoh;

namespace {

// Δ_{d_f} diagonal entry straight from the closed form 2Tη + T Σ(1 - λ_i + 2λ_i [i ∈ J]).
double laplacian_entry(const std::vector<int>& lambda, double T, int eta, Mask J) {
  double v = 2 * T * eta;
  for (std::size_t i = 0; i < lambda.size(); ++i) v += T * (1 - lambda[i] + 2 * lambda[i] * ((J >> i) & 1U));
  return v;
}

Eigen::VectorXd basis_vector(const LocalModel& m, const std::vector<int>& occ, Mask J) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m.size()));
  v(static_cast<Eigen::Index>(m.state(m.occupation_index(occ), J))) = 1.0;
  return v;
}

Eigen::VectorXd apply(const SparseMatrix& A, const Eigen::VectorXd& v) { return A * v; }

}  // namespace

TEST_CASE("normal-form signs") {
  CHECK(lambda_signs(1, 0) == std::vector<int>{1, 1});
  CHECK(lambda_signs(1, 1) == std::vector<int>{-1, 1});
  CHECK(lambda_signs(1, 2) == std::vector<int>{-1, -1});
  CHECK(lambda_signs(2, 1) == std::vector<int>{-1, 1, 1, 1});
  CHECK(lambda_signs(2, 3) == std::vector<int>{-1, 1, -1, -1});
  CHECK(lambda_signs(2, 4) == std::vector<int>{-1, -1, -1, -1});
  CHECK_THROWS_AS(lambda_signs(2, 5), std::invalid_argument);
  for (int n = 1; n <= 3; ++n)
    for (int p = 0; p <= 2 * n; ++p) {
      int negatives = 0;
      for (int l : lambda_signs(n, p)) negatives += l < 0;
      CHECK(negatives == p);
    }
}

TEST_CASE("d_f on the vacuum") {
  const double T = 1.5;
  const LocalModel m(LocalModelConfig{1, 1, T, 4});
  const Eigen::VectorXd vac = basis_vector(m, {0, 0}, 0);
  const Eigen::VectorXd expected = -std::sqrt(2 * T) * basis_vector(m, {1, 0}, 0b01);
  CHECK((apply(m.d(), vac) - expected).norm() < 1e-14);
  // The generator is annihilated by d_f, d_f*, d^Λ_f and d^Λ*_f.
  const Eigen::VectorXd g = m.ground_generator(1);
  CHECK(apply(m.d(), g).norm() < 1e-14);
  CHECK(apply(m.d_star(), g).norm() < 1e-14);
  CHECK(apply(m.dLambda(), g).norm() < 1e-14);
  CHECK(apply(m.dLambda_star(), g).norm() < 1e-14);
}

TEST_CASE("every local identity holds on interior states") {
  for (int n = 1; n <= 2; ++n)
    for (int p = 0; p <= 2 * n; ++p)
      for (double T : {1.0, 2.0}) {
        const LocalModel m(LocalModelConfig{n, p, T, 6});
        for (const LocalCheck& c : verify_local_identities(m)) {
          CAPTURE(n);
          CAPTURE(p);
          CAPTURE(T);
          CAPTURE(c.group);
          CAPTURE(c.name);
          CHECK(c.passed);
          CHECK(c.residual < 1e-10);
        }
      }
}

TEST_CASE("Witten Laplacian diagonal: closed form and W table") {
  for (int n = 1; n <= 3; ++n)
    for (int p = 0; p <= 2 * n; ++p) {
      const double T = 1.25;
      const LocalModel m(LocalModelConfig{n, p, T, 4});
      const Eigen::VectorXd diag = Eigen::MatrixXd(m.witten_laplacian()).diagonal();
      double worst = 0;
      for (std::size_t s = 0; s < m.size(); ++s) {
        const double direct = laplacian_entry(m.lambda(), T, m.eta(s), m.form(s));
        worst = std::max(worst, std::abs(diag(static_cast<Eigen::Index>(s)) - direct));
        worst = std::max(worst, std::abs(eigenvalue_W(n, p, T, m.eta(s), m.form(s)) - direct));
      }
      CAPTURE(n);
      CAPTURE(p);
      CHECK(worst < 1e-12);
      const EigenvalueFormulaCheck ef = check_eigenvalue_formula(m, p);
      CHECK(ef.max_relative_error < 1e-12);
      CHECK(ef.max_offdiagonal < 1e-12);
    }
  // n = 1, n_p = 0: entries are 2T(η + k).
  const LocalModel flat(LocalModelConfig{1, 0, 1.0, 1});
  CHECK(eigenvalue_W(1, 0, 1.0, 0, 0) == 0.0);
  CHECK(eigenvalue_W(1, 0, 1.0, 0, 0b11) == 4.0);
  CHECK(eigenvalue_W(1, 0, 1.0, 1, 0b01) == 4.0);
  const Eigen::VectorXd diag = Eigen::MatrixXd(flat.witten_laplacian()).diagonal();
  for (std::size_t s = 0; s < flat.size(); ++s)
    CHECK(diag(static_cast<Eigen::Index>(s)) == doctest::Approx(2.0 * (flat.eta(s) + flat.degree(s))));
  // Ground states have eigenvalue zero.
  for (int n = 1; n <= 3; ++n)
    for (int p = 0; p <= n; ++p) {
      Mask J = 0;
      for (int i = 1; i <= p; ++i) J |= Mask{1} << (2 * i - 2);
      CHECK(eigenvalue_W(n, p, 2.0, 0, J) == 0.0);
    }
}

TEST_CASE("correction operators") {
  const double T = 1.0;
  const LocalModel m0(LocalModelConfig{2, 0, T, 2});
  const Eigen::VectorXd vac = basis_vector(m0, {0, 0, 0, 0}, 0);
  const Eigen::VectorXd expected = -4 * T * (basis_vector(m0, {0, 0, 0, 0}, 0b0011) + basis_vector(m0, {0, 0, 0, 0}, 0b1100));
  CHECK((apply(m0.C(), vac) - expected).norm() < 1e-14);
  CHECK(Eigen::MatrixXd(m0.C_dag()).isApprox(Eigen::MatrixXd(m0.C()).transpose()));

  const LocalModel mid(LocalModelConfig{2, 2, T, 2});
  CHECK(mid.C().norm() == 0.0);
  CHECK(mid.M().norm() == 0.0);
  CHECK((Eigen::MatrixXd(mid.witten_laplacian()) - Eigen::MatrixXd(mid.dLambda_laplacian())).norm() == 0.0);

  // n_p < n and no slots in the non-degenerate pairs: M = -4T(n - n_p).
  const LocalModel m1(LocalModelConfig{3, 1, 2.0, 1});
  for (Mask J : {Mask{0}, Mask{0b01}, Mask{0b11}}) {
    const Eigen::VectorXd v = basis_vector(m1, {0, 0, 0, 0, 0, 0}, J);
    CHECK((apply(m1.M(), v) + 4 * 2.0 * 2 * v).norm() < 1e-12);
  }
}

TEST_CASE("kernel of 𝒟_PT for n_p ≤ n") {
  for (int n = 1; n <= 2; ++n)
    for (int p = 0; p <= n; ++p) {
      const LocalModel m(LocalModelConfig{n, p, 1.0, 6});
      for (int k = 0; k <= n; ++k) {
        const KernelResult kr = kernel_dimension(m, p, k);
        CAPTURE(n);
        CAPTURE(p);
        CAPTURE(k);
        CHECK(kr.status == KernelStatus::ok);
        CHECK(kr.dimension == (k == p ? 1u : 0u));
        if (k == p) CHECK(kr.generator_overlap > 1 - 1e-8);
      }
    }
}

TEST_CASE("the generator solves the local identity term by term") {
  for (int n = 1; n <= 2; ++n)
    for (int p = 0; p <= n; ++p) {
      const LocalModel m(LocalModelConfig{n, p, 1.0, 6});
      const SatTerms st = verify_sat_identity(m, m.ground_generator(p));
      CHECK(std::abs(st.laplacian_sq) < 1e-20);
      CHECK(std::abs(st.c_dag_sq) < 1e-20);
      CHECK(std::abs(st.m_term) < 1e-20);
      CHECK(std::abs(st.dpt_expectation) < 1e-20);
    }
}

TEST_CASE("for a local maximum in two dimensions d_f e^f lies in the kernel") {
  // f = -T|x|²/2. α = d_f Ψ_0 is closed, primitive (a 1-form for n = 1), and
  // d_f* α = 4T Ψ_0 is a multiple of e^f, so d^Λ*_f d_f* α = -d_f*(e^f ω) = 0.
  const double T = 1.0;
  const LocalModel m(LocalModelConfig{1, 2, T, 6});
  const Eigen::VectorXd vac = basis_vector(m, {0, 0}, 0);
  const Eigen::VectorXd alpha = apply(m.d(), vac);
  const Eigen::VectorXd expected =
      -std::sqrt(2 * T) * (basis_vector(m, {1, 0}, 0b01) + basis_vector(m, {0, 1}, 0b10));
  CHECK((alpha - expected).norm() < 1e-14);
  CHECK((apply(m.d_star(), alpha) - 4 * T * vac).norm() < 1e-12);
  const SparseMatrix a = alpha.sparseView();
  CHECK(Eigen::MatrixXd(m.apply_DPT(a)).norm() < 1e-12);

  const KernelResult kr = kernel_dimension(m, 2, 1);
  CHECK(kr.dimension == 1);
  REQUIRE(kr.kernel.cols() == 1);
  CHECK(std::abs(kr.kernel.col(0).dot(alpha.normalized())) > 1 - 1e-10);
}

TEST_CASE("C_f† bound: equality case and a violating primitive form") {
  // n = 2, n_p = 0, α = dX{1,2}: LHS = 16T² and the bound at a = 0 is 16T².
  Rational lhs, rhs;
  CHECK(bigo_holds(2, 0, KForm::monomial(4, {1, 2}), Rational(0), &lhs, &rhs));
  CHECK(lhs == 16);
  CHECK(rhs == 16);
  // n = 2, n_p = 1, α = dX{1,2} - dX{3,4} is primitive; the bound fails at a = 1/2.
  const KForm alpha = KForm::monomial(4, {1, 2}) - KForm::monomial(4, {3, 4});
  CHECK(bigo_holds(2, 1, alpha, Rational(0), &lhs, &rhs));
  CHECK(!bigo_holds(2, 1, alpha, Rational(1, 2), &lhs, &rhs));
  CHECK(lhs == 16);
  CHECK(rhs == 8);
  // The generator-type forms satisfy it trivially.
  CHECK(bigo_holds(3, 1, KForm::monomial(6, {1}), Rational(1, 4)));
  // Seeded trials are reproducible.
  const std::vector<Rational> as = {Rational(0), Rational(1, 2)};
  const BigoResult a1 = verify_bigo_bound(2, 1, 2, 50, 42, as);
  const BigoResult a2 = verify_bigo_bound(2, 1, 2, 50, 42, as);
  CHECK(a1.violations == a2.violations);
  CHECK(a1.worst_ratio == a2.worst_ratio);
  CHECK(verify_bigo_bound(2, 0, 1, 100, 1, as).violations == 0);
}

TEST_CASE("closed z-chains and coisotropic monomials") {
  CHECK(zk_formula(3, 1) == 2);
  CHECK(zk_formula(4, 0) == 1);
  CHECK(zk_formula(6, 3) == 5);
  CHECK(zk_bruteforce_boundary(3, 1) == 2);
  CHECK(zk_bruteforce_boundary(6, 3) == 5);
  CHECK(zk_bruteforce_lambda(6, 3) == 5);
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      const long long brute = zk_bruteforce_boundary(n, k);
      CHECK(brute == zk_bruteforce_lambda(n, k));
      CHECK(brute == std::max(0LL, binomial(n, k) - binomial(n, k - 1)));
      if (2 * k <= n + 1) CHECK(zk_formula(n, k) == brute);
    }
  CHECK(zk_formula(2, 2) == -1);
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= n; ++k) {
      CHECK(coisotropic_count(n, k) == (1LL << k) * binomial(n, k));
      CHECK(coisotropic_formula(n, k) == coisotropic_count(n, k));
      CHECK(coisotropic_quoted(n, k) == (1LL << n) * binomial(n, k));
    }
}

TEST_CASE("T² scaling of the low spectrum") {
  for (auto [n, p] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{1, 0}}) {
    const ScalingResult r = spectrum_scaling_check(LocalModelConfig{n, p, 1.0, 6});
    CAPTURE(n);
    CAPTURE(p);
    CHECK(r.passed);
    CHECK(r.max_relative_error < 1e-6);
    CHECK(r.low_T.size() == 5);
  }
}

TEST_CASE("Hodge duality with the reversed function") {
  const DualityResult d1 = hodge_duality_check(LocalModelConfig{1, 1, 1.0, 6});
  CHECK(d1.applicable);
  CHECK(d1.passed);
  CHECK(d1.dual_degree == 1);
  const DualityResult d0 = hodge_duality_check(LocalModelConfig{2, 0, 1.0, 6});
  CHECK(d0.passed);
  CHECK(d0.dual_degree == 4);
  CHECK(d0.star_star_error < 1e-14);
  CHECK(!hodge_duality_check(LocalModelConfig{1, 2, 1.0, 6}).applicable);
}
