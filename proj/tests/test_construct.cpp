#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "qf/classify.hpp"
#include "qf/construct.hpp"
#include "qf/error.hpp"

using namespace qf;

namespace {

Permutation pc(const std::string& text, int degree) {
  return Permutation::parse_cycles(text, degree);
}

}  // namespace

TEST_CASE("dihedral quandles") {
  CHECK(dihedral_quandle(4).entries() ==
        std::vector<int>{1, 4, 3, 2, 3, 2, 1, 4, 1, 4, 3, 2, 3, 2, 1, 4});
  CHECK(dihedral_quandle(3).entries() == std::vector<int>{1, 3, 2, 3, 2, 1, 2, 1, 3});
  // 2i - j = j mod 2: the two-element trivial quandle.
  CHECK(dihedral_quandle(2).entries() == std::vector<int>{1, 2, 1, 2});
  CHECK_THROWS_AS(dihedral_quandle(1), error);
}

TEST_CASE("affine quandles over Z_n") {
  auto a52 = affine_quandle_zn(5, 2);
  CHECK(a52.size() == 5);
  CHECK(a52.is_quandle());
  CHECK(is_indecomposable(a52));
  // t = 1 gives a |> b = b.
  auto triv = affine_quandle_zn(6, 1);
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 6; ++j) CHECK(triv.at(i, j) == j);
  // (1-3)a + 3b = 2a + 3b = 2a - b mod 4: same table as the dihedral quandle.
  CHECK(affine_quandle_zn(4, 3) == dihedral_quandle(4));
  CHECK_THROWS_AS(affine_quandle_zn(4, 2), error);
  CHECK_THROWS_AS(affine_quandle_zn(6, 3), error);
  // Indecomposable exactly when 1 - t is a unit too.
  for (int n = 2; n <= 12; ++n)
    for (int t = 1; t < n; ++t) {
      if (std::gcd(t, n) != 1) continue;
      CHECK(is_indecomposable(affine_quandle_zn(n, t)) == (std::gcd(((1 - t) % n + n) % n, n) == 1));
    }
}

TEST_CASE("finite fields") {
  FiniteField f4(2, 2);
  CHECK(f4.order() == 4);
  CHECK(f4.modulus() == std::vector<int>{1, 1, 1});  // x^2 + x + 1
  FiniteField f5(5, 1);
  CHECK(f5.order() == 5);
  CHECK(f5.mul(3, 4) == 2);
  FiniteField f9(3, 2);
  CHECK(f9.modulus() == std::vector<int>{1, 0, 1});  // x^2 + 1
  // Independent irreducibility check: x^2 + 1 has no root mod 3, and the
  // only smaller monic quadratic, x^2, is reducible.
  for (int x = 0; x < 3; ++x) CHECK((x * x + 1) % 3 != 0);

  for (const FiniteField& f : {FiniteField(2, 2), FiniteField(2, 3), FiniteField(3, 2), FiniteField(5, 2)}) {
    int q = f.order();
    for (int a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (int c = 0; c < q; ++c) {
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
          CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
        }
      }
    }
    // Multiplicative group is cyclic: some element has order q - 1.
    int g = f.multiplicative_generator();
    int e = g, count = 1;
    while (e != 1) {
      e = f.mul(e, g);
      ++count;
    }
    CHECK(count == q - 1);
  }
  CHECK_THROWS_AS(FiniteField(4, 1), error);   // composite characteristic
  CHECK_THROWS_AS(FiniteField(2, 17), error);  // exceeds 2^16
}

TEST_CASE("affine quandles over F_q") {
  FiniteField f4(2, 2);
  auto aff = affine_quandle_fq(f4, 2);  // alpha = x, a generator
  auto tetra = conjugation_rack(PermGroup::alternating(4), {pc("(1,2,3)", 4)});
  CHECK(find_isomorphism(aff, tetra).has_value());
  auto triv = affine_quandle_fq(f4, 1);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) CHECK(triv.at(i, j) == j);
  FiniteField f5(5, 1);
  CHECK(canonical_form(affine_quandle_fq(f5, 2)) == canonical_form(affine_quandle_zn(5, 2)));
  CHECK_THROWS_AS(affine_quandle_fq(f4, 0), error);
}

TEST_CASE("conjugation racks") {
  auto s3 = PermGroup::symmetric(3);
  auto r = conjugation_rack(s3, {pc("(1,2)", 3)});
  CHECK(r.size() == 3);
  CHECK(canonical_form(r) == canonical_form(dihedral_quandle(3)));
  auto tetra = conjugation_rack(PermGroup::alternating(4), {pc("(1,2,3)", 4)});
  CHECK(tetra.size() == 4);
  CHECK(tetra.is_quandle());
  auto s5 = PermGroup::symmetric(5);
  auto transpositions = conjugation_rack(s5, {pc("(1,2)", 5)});
  CHECK(transpositions.size() == 10);
  CHECK(is_indecomposable(transpositions));
  CHECK_THROWS_AS(conjugation_rack(PermGroup::alternating(4), {pc("(1,2)", 4)}), error);
  // Deterministic labels: rebuilding gives the identical table.
  CHECK(conjugation_rack(s5, {pc("(1,2)", 5)}) == transpositions);
}

TEST_CASE("homogeneous quandles") {
  auto s3 = PermGroup::symmetric(3);
  PermGroup h(3, {pc("(2,3)", 3)});
  auto q = homogeneous_quandle(s3, h, pc("(2,3)", 3));
  CHECK(q.size() == 3);
  CHECK(canonical_form(q) == canonical_form(dihedral_quandle(3)));
  // z = identity: trivial quandle on the cosets.
  auto triv = homogeneous_quandle(s3, h, Permutation(3));
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) CHECK(triv.at(i, j) == j);
  // z must centralize h.
  CHECK_THROWS_WITH_AS(homogeneous_quandle(s3, h, pc("(1,2,3)", 3)),
                       doctest::Contains("centralize"), error);
  CHECK_THROWS_AS(homogeneous_quandle(PermGroup::alternating(4), PermGroup(4, {pc("(1,2)", 4)}),
                                      Permutation(4)),
                  error);
}

TEST_CASE("homogeneous reconstruction of stored quandles") {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& x : brute_force_indecomposable(n)) {
      auto g = inner_group(x);
      auto h = g.stabilizer(1);
      auto z = translations(x)[0];
      // z is central in the stabilizer of the base point.
      for (const auto& s : h.generators()) CHECK(z * s == s * z);
      auto rebuilt = homogeneous_quandle(g, h, z);
      CHECK(find_isomorphism(rebuilt, x).has_value());
    }
  }
}
