#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qf/classify.hpp"
#include "qf/construct.hpp"
#include "qf/envgroup.hpp"
#include "qf/error.hpp"

using namespace qf;

namespace {

RackTable tetrahedron() {
  return conjugation_rack(PermGroup::alternating(4), {Permutation::parse_cycles("(1,2,3)", 4)});
}

Permutation evaluate_word(const std::vector<int>& word, const std::vector<Permutation>& action,
                          int degree) {
  Permutation result(degree);
  for (int letter : word) {
    const Permutation& g = action[static_cast<size_t>(std::abs(letter) - 1)];
    result = result * (letter > 0 ? g : g.inverse());
  }
  return result;
}

// Abelianization order through the regular representation: |G| / |G'| with
// the derived subgroup as the normal closure of the generator commutators.
std::uint64_t abelianization_order(const CosetTable& ct) {
  int degree = ct.count;
  std::vector<Permutation> gens;
  for (size_t a = 0; a < ct.generator_action.size(); ++a)
    for (size_t b = 0; b < ct.generator_action.size(); ++b) {
      const Permutation &x = ct.generator_action[a], &y = ct.generator_action[b];
      gens.push_back(x.inverse() * y.inverse() * x * y);
    }
  // Normal closure under the group generators.
  PermGroup derived(degree, gens);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Permutation> next = gens;
    for (const auto& g : gens)
      for (const auto& s : ct.generator_action) {
        Permutation c = g.conjugated_by(s);
        if (!derived.contains(c)) {
          next.push_back(c);
          grew = true;
        }
      }
    if (grew) {
      gens = std::move(next);
      derived = PermGroup(degree, gens);
    }
  }
  PermGroup whole(degree, ct.generator_action);
  return whole.order() / derived.order();
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(free_reduce({1, -1}).empty());
  CHECK(free_reduce({1, 2, -2, -1}).empty());
  CHECK(free_reduce({1, 1, -1, -2}) == std::vector<int>{1, -2});
}

TEST_CASE("enveloping presentations") {
  auto point = RackTable::validate_flat(1, {1});
  auto p1 = enveloping_presentation(point, true);
  CHECK(p1.num_generators == 1);
  REQUIRE(p1.relators.size() == 2);  // one conjugation relator (empty), one power relator x^1
  CHECK(p1.relators[0].empty());
  CHECK(p1.relators[1] == std::vector<int>{1});
  CHECK(todd_coxeter(p1).count == 1);

  auto pd3 = enveloping_presentation(dihedral_quandle(3), true);
  CHECK(pd3.num_generators == 3);
  CHECK(pd3.relators.size() == 12);  // 9 conjugation relators + 3 squares
  int squares = 0;
  for (const auto& w : pd3.relators)
    if (w == std::vector<int>{1, 1} || w == std::vector<int>{2, 2} || w == std::vector<int>{3, 3})
      ++squares;
  CHECK(squares == 3);

  auto pt = enveloping_presentation(tetrahedron(), true);
  CHECK(pt.num_generators == 4);
  CHECK(pt.relators.size() == 20);  // 16 conjugation relators + 4 cubes
  int cubes = 0;
  for (const auto& w : pt.relators)
    if (w.size() == 3 && w[0] == w[1] && w[1] == w[2]) ++cubes;
  CHECK(cubes == 4);
}

TEST_CASE("coset enumeration") {
  GroupPresentation p;
  p.num_generators = 1;
  p.relators = {{1, 1}};
  CHECK(todd_coxeter(p).count == 2);

  CHECK(todd_coxeter(enveloping_presentation(dihedral_quandle(3), true)).count == 6);
  CHECK(todd_coxeter(enveloping_presentation(tetrahedron(), true)).count == 24);

  GroupPresentation s3;  // <a,b | a^2, b^2, (ab)^3>
  s3.num_generators = 2;
  s3.relators = {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}};
  CHECK(todd_coxeter(s3).count == 6);

  GroupPresentation free2;
  free2.num_generators = 2;
  CHECK_THROWS_WITH_AS(todd_coxeter(free2, 100), doctest::Contains("exceeded"), error);

  // Coincidence-heavy inputs.
  GroupPresentation collapse;  // <a,b | a, b>
  collapse.num_generators = 2;
  collapse.relators = {{1}, {2}};
  CHECK(todd_coxeter(collapse).count == 1);

  GroupPresentation cyclic_gcd;  // <a | a^12, a^8> = Z_4
  cyclic_gcd.num_generators = 1;
  cyclic_gcd.relators = {std::vector<int>(12, 1), std::vector<int>(8, 1)};
  CHECK(todd_coxeter(cyclic_gcd).count == 4);

  GroupPresentation d12;  // <a,b | a^12, b^2, (ab)^2>, order 24
  d12.num_generators = 2;
  d12.relators = {std::vector<int>(12, 1), {2, 2}, {1, 2, 1, 2}};
  CHECK(todd_coxeter(d12).count == 24);

  GroupPresentation q8;  // <x,y | x^4, x^2 y^-2, y^-1 x y x>
  q8.num_generators = 2;
  q8.relators = {{1, 1, 1, 1}, {1, 1, -2, -2}, {-2, 1, 2, 1}};
  CHECK(todd_coxeter(q8).count == 8);

  GroupPresentation inverse_pair;  // <a,b | ab, ba> is infinite cyclic
  inverse_pair.num_generators = 2;
  inverse_pair.relators = {{1, 2}, {2, 1}};
  CHECK_THROWS_AS(todd_coxeter(inverse_pair, 1000), error);
}

TEST_CASE("finite enveloping orders of reference racks") {
  CHECK(finite_enveloping_order(affine_quandle_zn(5, 2)) == 20);
  auto s4 = PermGroup::symmetric(4);
  CHECK(finite_enveloping_order(conjugation_rack(s4, {Permutation::parse_cycles("(1,2)", 4)})) == 24);
  CHECK(finite_enveloping_order(conjugation_rack(s4, {Permutation::parse_cycles("(1,2,3,4)", 4)})) == 96);
}

TEST_CASE("enveloping order of a non-quandle rack") {
  // i |> j = sigma(j) with sigma = (1,2): the conjugation relators identify
  // the two generators and the power relators square them, so the finite
  // enveloping group is Z_2.
  auto rack = RackTable::validate({{2, 1}, {2, 1}});
  CHECK_FALSE(rack.is_quandle());
  CHECK(finite_enveloping_order(rack) == 2);
}

TEST_CASE("abelian invariants") {
  GroupPresentation z2;
  z2.num_generators = 1;
  z2.relators = {{1, 1}};
  auto a1 = abelian_invariants(z2);
  CHECK(a1.betti == 0);
  REQUIRE(a1.torsion.size() == 1);
  CHECK(a1.torsion[0] == 2);

  auto ad3 = abelian_invariants(enveloping_presentation(dihedral_quandle(3), true));
  CHECK(ad3.betti == 0);
  REQUIRE(ad3.torsion.size() == 1);
  CHECK(ad3.torsion[0] == 2);

  GroupPresentation free2;
  free2.num_generators = 2;
  auto af = abelian_invariants(free2);
  CHECK(af.betti == 2);
  CHECK(af.torsion.empty());
}

TEST_CASE("regular representation satisfies the relators") {
  for (int n = 2; n <= 8; ++n) {
    for (const auto& x : brute_force_indecomposable(n)) {
      auto p = enveloping_presentation(x, true);
      auto ct = todd_coxeter(p);
      for (const auto& w : p.relators)
        CHECK(evaluate_word(w, ct.generator_action, ct.count).is_identity());
    }
  }
}

TEST_CASE("inner group order divides the enveloping order") {
  std::vector<RackTable> racks = {
      dihedral_quandle(3), tetrahedron(), affine_quandle_zn(5, 2), affine_quandle_zn(7, 3),
      conjugation_rack(PermGroup::symmetric(4), {Permutation::parse_cycles("(1,2,3,4)", 4)})};
  for (const auto& x : racks)
    CHECK(finite_enveloping_order(x) % inner_group(x).order() == 0);
}

TEST_CASE("abelian invariants agree with the permutation route") {
  std::vector<RackTable> racks = {dihedral_quandle(3), tetrahedron(), affine_quandle_zn(5, 2),
                                  dihedral_quandle(5)};
  for (const auto& x : racks) {
    auto p = enveloping_presentation(x, true);
    auto ct = todd_coxeter(p);
    auto ab = abelian_invariants(p);
    CHECK(ab.betti == 0);
    Int product = 1;
    for (const Int& d : ab.torsion) product *= d;
    CHECK(product == abelianization_order(ct));
  }
}
