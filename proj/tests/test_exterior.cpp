#include "symcoh/exterior.hpp"

#include <doctest.h>

#include <random>

using namespace symcoh;

namespace {

KForm mono(int dim, std::initializer_list<int> slots, long c = 1) { return KForm::monomial(dim, slots, Rational(c)); }

KForm random_form(std::mt19937_64& rng, int dim, int k) {
  KForm a(dim, k);
  for (Mask m : monomials(dim, k)) {
    Rational c(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 3) + 1);
    c.canonicalize();
    a.add(m, c);
  }
  return a;
}

// Λ for the Darboux form written directly as Σ ι_{2i} ι_{2i-1}.
KForm darboux_Lambda(const KForm& a) {
  KForm out(a.dim(), a.degree() - 2);
  for (int i = 1; i <= a.half_dim(); ++i) out += contract(2 * i, contract(2 * i - 1, a));
  return out;
}

}  // namespace

TEST_CASE("wedge signs") {
  CHECK(wedge(mono(2, {1}), mono(2, {2})) == mono(2, {1, 2}));
  CHECK(wedge(mono(2, {2}), mono(2, {1})) == mono(2, {1, 2}, -1));
  CHECK(wedge(mono(2, {1}) + mono(2, {2}), mono(2, {1})) == mono(2, {1, 2}, -1));
  CHECK(wedge(mono(4, {2, 4}), mono(4, {1, 3})) == mono(4, {1, 2, 3, 4}, -1));
  CHECK_THROWS_AS(wedge(mono(2, {1}), mono(4, {1})), std::invalid_argument);
}

TEST_CASE("contraction signs") {
  CHECK(contract(1, mono(2, {1, 2})) == mono(2, {2}));
  CHECK(contract(2, mono(2, {1, 2})) == mono(2, {1}, -1));
  CHECK(contract(3, mono(4, {1, 2})).is_zero());
}

TEST_CASE("Lefschetz operators on the standard form") {
  const SymplecticData s = SymplecticData::darboux(2);
  CHECK(lefschetz_L(s, KForm::constant(4, 1)) == mono(4, {1, 2}) + mono(4, {3, 4}));
  CHECK(lefschetz_L(s, mono(4, {1, 2})) == mono(4, {1, 2, 3, 4}));
  const KForm prim = mono(4, {1, 2}) - mono(4, {3, 4});
  CHECK(lefschetz_L_power(s, prim, 2).is_zero());
  CHECK(lefschetz_Lambda(s, mono(4, {1, 2})) == KForm::constant(4, 1));
  CHECK(lefschetz_Lambda(s, mono(4, {3, 4})) == KForm::constant(4, 1));
  CHECK(lefschetz_Lambda(s, prim).is_zero());
  CHECK(lefschetz_Lambda(s, mono(4, {1, 3})).is_zero());
  CHECK(lefschetz_Lambda(s, s.omega_form()) == KForm::constant(4, 2));
}

TEST_CASE("Λ agrees with an explicit double contraction and with ι_π") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 3; ++n) {
    const SymplecticData s = SymplecticData::darboux(n);
    for (int k = 2; k <= 2 * n; ++k) {
      const KForm a = random_form(rng, 2 * n, k);
      CHECK(lefschetz_Lambda(s, a) == darboux_Lambda(a));
      CHECK(lefschetz_Lambda_poisson(s, a) == darboux_Lambda(a));
    }
  }
}

TEST_CASE("counting operator") {
  CHECK(counting_H(mono(4, {1})) == mono(4, {1}));
  CHECK(counting_H(mono(4, {1, 2, 3})) == mono(4, {1, 2, 3}, -1));
  CHECK(counting_H(mono(6, {1, 2, 3})).is_zero());
}

TEST_CASE("Hodge star") {
  CHECK(hodge_star(mono(2, {1})) == mono(2, {2}));
  CHECK(hodge_star(mono(2, {2})) == mono(2, {1}, -1));
  CHECK(hodge_star(mono(4, {1, 2})) == mono(4, {3, 4}));
  CHECK(hodge_star(hodge_star(mono(4, {1, 3}))) == mono(4, {1, 3}));
  CHECK(hodge_star(KForm::constant(4, 1)) == mono(4, {1, 2, 3, 4}));

  std::mt19937_64 rng(5);
  for (int dim = 2; dim <= 6; dim += 2)
    for (int k = 0; k <= dim; ++k) {
      const KForm a = random_form(rng, dim, k);
      const KForm b = random_form(rng, dim, k);
      const long sign = (k * (dim - k)) % 2 == 0 ? 1 : -1;
      CHECK(hodge_star(hodge_star(a)) == a * Rational(sign));
      CHECK(inner(hodge_star(a), hodge_star(b)) == inner(a, b));
      // a ∧ ⋆b = (a, b) vol
      CHECK(wedge(a, hodge_star(b)) == hodge_star(KForm::constant(dim, inner(a, b))));
    }
}

TEST_CASE("L and Λ are adjoint and satisfy the sl(2) relations") {
  std::mt19937_64 rng(3);
  const SymplecticData example = SymplecticData::from_pairs(2, {{{1, 4}, 1}, {{2, 3}, 1}});
  for (const SymplecticData& s : {SymplecticData::darboux(1), SymplecticData::darboux(2), SymplecticData::darboux(3), example}) {
    const int dim = s.dim();
    for (int k = 0; k <= dim; ++k) {
      const KForm a = random_form(rng, dim, k);
      if (k + 2 <= dim) {
        const KForm b = random_form(rng, dim, k + 2);
        CHECK(inner(lefschetz_L(s, a), b) == inner(a, lefschetz_Lambda(s, b)));
      }
      // [Λ, L] = H, [L, H] = 2L, [Λ, H] = -2Λ with H = n - k.
      CHECK(lefschetz_Lambda(s, lefschetz_L(s, a)) - lefschetz_L(s, lefschetz_Lambda(s, a)) == counting_H(a));
      CHECK(lefschetz_L(s, counting_H(a)) - counting_H(lefschetz_L(s, a)) == lefschetz_L(s, a) * Rational(2));
      CHECK(lefschetz_Lambda(s, counting_H(a)) - counting_H(lefschetz_Lambda(s, a)) ==
            lefschetz_Lambda(s, a) * Rational(-2));
    }
  }
}

TEST_CASE("compatibility gate") {
  CHECK_NOTHROW(SymplecticData::from_pairs(2, {{{1, 4}, 1}, {{2, 3}, 1}}));
  CHECK_NOTHROW(SymplecticData::from_pairs(2, {{{1, 3}, 1}, {{2, 4}, 1}}));
  CHECK_THROWS_AS(SymplecticData::from_pairs(2, {{{1, 2}, 2}, {{3, 4}, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(SymplecticData::from_pairs(2, {{{1, 2}, 1}}), std::invalid_argument);
  RationalMatrix sym(2, 2);
  sym(0, 1) = 1;
  sym(1, 0) = 1;
  CHECK_THROWS_AS(SymplecticData(1, sym), std::invalid_argument);
}

TEST_CASE("primitive and coeffective forms") {
  const SymplecticData s = SymplecticData::darboux(2);
  CHECK(is_primitive(s, mono(4, {1, 2}) - mono(4, {3, 4})));
  CHECK(!is_primitive(s, s.omega_form()));
  CHECK(is_coeffective(s, mono(4, {1, 2, 3, 4})));
  CHECK(is_coeffective(s, mono(4, {1, 3, 4})));
  CHECK(!is_coeffective(s, mono(4, {1})));

  std::mt19937_64 rng(9);
  for (int n = 1; n <= 3; ++n) {
    const SymplecticData sd = SymplecticData::darboux(n);
    for (int k = 0; k <= n; ++k) {
      const RationalMatrix basis = primitive_basis(sd, k);
      for (std::size_t c = 0; c < basis.cols(); ++c) {
        const KForm p = from_column(2 * n, k, basis, c);
        CHECK(lefschetz_Lambda(sd, p).is_zero());
        CHECK(lefschetz_L_power(sd, p, n - k + 1).is_zero());
      }
      const KForm a = random_form(rng, 2 * n, k);
      CHECK(lefschetz_Lambda(sd, a).is_zero() == lefschetz_L_power(sd, a, n - k + 1).is_zero());
    }
  }
}

TEST_CASE("dimension of primitive forms") {
  CHECK(dim_primitive(2, 2) == 5);
  CHECK(dim_primitive(1, 0) == 1);
  CHECK(dim_primitive(3, 3) == 14);
  for (int n = 1; n <= 4; ++n) {
    const SymplecticData s = SymplecticData::darboux(n);
    for (int k = 0; k <= 2 * n; ++k) {
      const auto mons = monomials(2 * n, k);
      const auto targets = k >= 2 ? monomials(2 * n, k - 2) : std::vector<Mask>{};
      RationalMatrix lam(targets.size(), mons.size());
      for (std::size_t c = 0; c < mons.size() && k >= 2; ++c) {
        KForm e(2 * n, k);
        e.add(mons[c], 1);
        const KForm le = darboux_Lambda(e);
        for (std::size_t r = 0; r < targets.size(); ++r) lam(r, c) = le.coefficient(targets[r]);
      }
      const long long brute = static_cast<long long>(mons.size() - rank(lam));
      CHECK(dim_primitive(n, k) == brute);
      if (k <= n) CHECK(brute == binomial(2 * n, k) - binomial(2 * n, k - 2));
    }
  }
}

TEST_CASE("Lefschetz decomposition") {
  const SymplecticData s = SymplecticData::darboux(2);
  const auto parts = primitive_decompose(s, mono(4, {1, 2}));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].r == 0);
  CHECK(parts[0].beta == (mono(4, {1, 2}) - mono(4, {3, 4})) * Rational(1, 2));
  CHECK(parts[1].r == 1);
  CHECK(parts[1].beta == KForm::constant(4, Rational(1, 2)));

  const KForm prim = mono(4, {1, 3});
  const auto single = primitive_decompose(s, prim);
  REQUIRE(single.size() == 1);
  CHECK(single[0].r == 0);
  CHECK(single[0].beta == prim);

  std::mt19937_64 rng(21);
  const SymplecticData example = SymplecticData::from_pairs(2, {{{1, 4}, 1}, {{2, 3}, 1}});
  for (const SymplecticData& sd : {SymplecticData::darboux(3), example})
    for (int k = 0; k <= sd.dim(); ++k) {
      const KForm a = random_form(rng, sd.dim(), k);
      KForm sum(sd.dim(), k);
      for (const auto& part : primitive_decompose(sd, a)) {
        CHECK(lefschetz_Lambda(sd, part.beta).is_zero());
        sum += lefschetz_L_power(sd, part.beta, part.r);
      }
      CHECK(sum == a);
    }
}

TEST_CASE("forms attached to subspaces") {
  const SymplecticData s1 = SymplecticData::darboux(1);
  const KForm isotropic = subspace_form(s1, {{1, 0}});
  CHECK(isotropic == mono(2, {2}));
  CHECK(is_coeffective(s1, isotropic));

  const SymplecticData s2 = SymplecticData::darboux(2);
  const KForm lagrangian = subspace_form(s2, {{1, 0, 0, 0}, {0, 0, 1, 0}});
  CHECK((lagrangian == mono(4, {2, 4}) || lagrangian == mono(4, {2, 4}, -1)));
  CHECK(is_primitive(s2, lagrangian));
  CHECK(is_coeffective(s2, lagrangian));

  const KForm coisotropic = subspace_form(s2, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  CHECK((coisotropic == mono(4, {4}) || coisotropic == mono(4, {4}, -1)));
  CHECK(is_primitive(s2, coisotropic));

  CHECK_THROWS(subspace_form(s2, {{1, 0, 0, 0}, {2, 0, 0, 0}}));
}
