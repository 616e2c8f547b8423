#include "symcoh/lie_algebra.hpp"
#include "symcoh/spec_file.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace symcoh;

namespace {

KForm mono(int dim, std::initializer_list<int> slots, long c = 1) { return KForm::monomial(dim, slots, Rational(c)); }

LieAlgebraSpec example1() {
  return LieAlgebraSpec("example1", 4, {{3, 1, 2, 1}, {4, 1, 3, 1}},
                        SymplecticData::from_pairs(2, {{{1, 4}, 1}, {{2, 3}, 1}}));
}

// Relabels generators by a permutation (1-based images) and rewrites the
// structure constants and ω accordingly.
LieAlgebraSpec permuted(const std::vector<int>& perm, const std::vector<StructureConstant>& structure,
                        const std::vector<std::pair<std::pair<int, int>, Rational>>& omega, int dim) {
  std::vector<StructureConstant> out;
  for (const auto& s : structure) {
    int i = perm[s.i - 1];
    int j = perm[s.j - 1];
    Rational c = s.c;
    if (i > j) {
      std::swap(i, j);
      c = -c;
    }
    out.push_back({perm[s.k - 1], i, j, c});
  }
  std::vector<std::pair<std::pair<int, int>, Rational>> w;
  for (const auto& [ij, c] : omega) w.push_back({{perm[ij.first - 1], perm[ij.second - 1]}, c});
  return LieAlgebraSpec("permuted", dim, out, SymplecticData::from_pairs(dim / 2, w));
}

}  // namespace

TEST_CASE("differential of the four-dimensional example") {
  const LieAlgebraSpec spec = example1();
  CHECK(spec.d(mono(4, {3})) == mono(4, {1, 2}));
  CHECK(spec.d(mono(4, {4})) == mono(4, {1, 3}));
  CHECK(spec.d(mono(4, {1})).is_zero());
  CHECK(spec.d(mono(4, {3, 4})) == mono(4, {1, 2, 4}));
  CHECK(spec.is_nilpotent());
  CHECK(spec.is_unimodular());

  const GradedOperator d = build_d(spec);
  CHECK((d * d).is_zero());
  CHECK(d.block(1).rows() == 6);
  CHECK(d.block(1).cols() == 4);
  CHECK(d.block(2).rows() == 4);
  CHECK(d.block(2).cols() == 6);
}

TEST_CASE("Betti numbers") {
  CHECK(betti_numbers(example1()) == std::vector<long long>{1, 2, 2, 2, 1});
  for (int n = 1; n <= 3; ++n) {
    const auto b = betti_numbers(LieAlgebraSpec::abelian(n));
    for (int k = 0; k <= 2 * n; ++k) CHECK(b[k] == binomial(2 * n, k));
    CHECK(build_d(LieAlgebraSpec::abelian(n)).is_zero());
  }
  const auto b = betti_numbers(example1());
  CHECK(std::accumulate(b.begin(), b.end(), 0LL) == 8);
}

TEST_CASE("Betti numbers do not depend on the labelling of generators") {
  const std::vector<StructureConstant> structure = {{3, 1, 2, 1}, {4, 1, 3, 1}};
  const std::vector<std::pair<std::pair<int, int>, Rational>> omega = {{{1, 4}, 1}, {{2, 3}, 1}};
  std::vector<int> perm = {1, 2, 3, 4};
  const auto reference = betti_numbers(example1());
  int tried = 0;
  do {
    // Only labellings that keep ω compatible with the coordinate metric.
    try {
      CHECK(betti_numbers(permuted(perm, structure, omega, 4)) == reference);
      ++tried;
    } catch (const std::invalid_argument&) {
    } catch (const SpecError&) {
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(tried > 0);
}

TEST_CASE("invalid algebras are rejected") {
  const SymplecticData w = SymplecticData::darboux(2);
  // d e1 = e3 ∧ e4, d e3 = e1 ∧ e2: d² e1 = e1 ∧ e2 ∧ e4 ≠ 0.
  CHECK_THROWS_AS(LieAlgebraSpec("bad", 4, {{3, 1, 2, 1}, {1, 3, 4, 1}}, w), SpecError);
  CHECK_THROWS_AS(LieAlgebraSpec("bad", 4, {{5, 1, 2, 1}}, w), SpecError);
  CHECK_THROWS_AS(LieAlgebraSpec("bad", 4, {{3, 2, 1, 1}}, w), SpecError);
  // Kodaira–Thurston structure with the Darboux-ordered ω: dω ≠ 0.
  CHECK_THROWS_AS(LieAlgebraSpec("bad", 4, {{4, 1, 2, 1}}, w), SpecError);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("spec documents") {
  const SpecFile s = parse_spec(R"({
    "name": "kt",
    "dim": 4,
    "d": [[4, [1, 2], "1/2"]],
    "omega": [[[1, 3], 1], [[2, 4], 1]],
    "torsion": [0, 0, 1, 0, 0]
  })");
  CHECK(s.name == "kt");
  REQUIRE(s.algebra.has_value());
  CHECK(s.algebra->d(mono(4, {4})) == mono(4, {1, 2}) * Rational(1, 2));
  CHECK(!s.morse.has_value());
  REQUIRE(s.torsion.has_value());
  CHECK((*s.torsion)[2] == 1);
  CHECK(s.digest != 0);
  CHECK(parse_spec(R"({"name": "kt", "dim": 2, "omega": [[[1, 2], 1]]})").digest !=
        parse_spec(R"({"name": "kt", "dim": 2, "omega": [[[1, 2], -1]]})").digest);
}

TEST_CASE("spec errors carry line and field") {
  auto message = [](const std::string& text) {
    try {
      parse_spec(text);
    } catch (const SpecError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("{\n  \"dim\": 4,,\n}").find("line 2") != std::string::npos);
  const std::string bad_omega = message("{\n\"dim\": 4,\n\"d\": [],\n\"omega\": [[[1, 2], 2], [[3, 4], 1]]\n}");
  CHECK(bad_omega.find("line 4") != std::string::npos);
  CHECK(bad_omega.find("omega") != std::string::npos);
  CHECK(message("{\"dim\": 3, \"omega\": []}").find("dim") != std::string::npos);
  CHECK(message("{\"dim\": 4, \"d\": [[3, [1], 1]], \"omega\": [[[1, 2], 1], [[3, 4], 1]]}").find("field d") !=
        std::string::npos);
  CHECK(message("{\"dim\": 2, \"omega\": [[[1, 2], 1]], \"morse\": [1, 2]}").find("morse") != std::string::npos);
  CHECK(message("{\"dim\": 2, \"omega\": [[[1, 2], 1]], \"morse\": [1, -2, 1]}").find("morse") !=
        std::string::npos);
  CHECK(message("{\"name\": \"empty\"}").find("field") != std::string::npos);
  CHECK(message("[1, 2]").find("object") != std::string::npos);
  CHECK_THROWS_AS(load_spec("/nonexistent/file.spec"), SpecError);
}

TEST_CASE("corpus files load and satisfy Poincaré duality") {
  for (const char* name : {"example1", "torus2", "torus4", "kodaira-thurston"}) {
    CAPTURE(name);
    const SpecFile s = load_spec(std::string(SYMCOH_CORPUS_DIR) + "/" + name + ".spec");
    REQUIRE(s.algebra.has_value());
    const auto b = betti_numbers(*s.algebra);
    CHECK(b.front() == 1);
    for (std::size_t k = 0; k < b.size(); ++k) CHECK(b[k] == b[b.size() - 1 - k]);
  }
  CHECK(betti_numbers(*load_spec(std::string(SYMCOH_CORPUS_DIR) + "/kodaira-thurston.spec").algebra) ==
        std::vector<long long>{1, 3, 4, 3, 1});
  const SpecFile mt = load_spec(std::string(SYMCOH_CORPUS_DIR) + "/mcmullen-taubes.spec");
  CHECK(!mt.algebra.has_value());
  REQUIRE(mt.example2.has_value());
  CHECK(mt.example2->q == 2);
  CHECK(mt.example2->p == 0);
}
