#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "qf/classify.hpp"
#include "qf/construct.hpp"
#include "qf/error.hpp"
#include "qf/rack.hpp"

using namespace qf;

namespace {

RackTable tetrahedron() {
  return conjugation_rack(PermGroup::alternating(4), {Permutation::parse_cycles("(1,2,3)", 4)});
}

// Constant-row rack: i |> j = sigma(j); a rack, a quandle only for sigma = id.
RackTable permutation_rack(const Permutation& sigma) {
  int n = sigma.degree();
  std::vector<int> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= n; ++j) flat[static_cast<size_t>(i) * n + (j - 1)] = sigma(j);
  return RackTable::validate_flat(n, std::move(flat));
}

RackTable trivial_quandle(int n) {
  std::vector<int> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[static_cast<size_t>(i) * n + j] = j + 1;
  return RackTable::validate_flat(n, std::move(flat));
}

bool phi_conjugation_law(const RackTable& x) {
  auto phis = translations(x);
  for (int i = 1; i <= x.size(); ++i)
    for (int j = 1; j <= x.size(); ++j) {
      Permutation lhs = phis[static_cast<size_t>(i - 1)].inverse() *
                        phis[static_cast<size_t>(j - 1)] * phis[static_cast<size_t>(i - 1)];
      if (!(lhs == phis[static_cast<size_t>(x.at(i, j) - 1)])) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("validation accepts known dihedral tables") {
  auto d4 = RackTable::validate({{1, 4, 3, 2}, {3, 2, 1, 4}, {1, 4, 3, 2}, {3, 2, 1, 4}});
  CHECK(d4.is_quandle());
  CHECK(d4 == dihedral_quandle(4));
  auto d3 = RackTable::validate({{1, 3, 2}, {3, 2, 1}, {2, 1, 3}});
  CHECK(d3.is_quandle());
}

TEST_CASE("validation rejects bad tables with a witness") {
  CHECK_THROWS_WITH_AS(RackTable::validate({{1, 1}, {2, 2}}), doctest::Contains("row 1"), error);
  CHECK_THROWS_WITH_AS(RackTable::validate({{2, 1}, {1, 2}}),
                       doctest::Contains("(1,1,1)"), error);
  CHECK_THROWS_AS(RackTable::validate({{1, 2}, {1, 2}, {1, 2}}), error);  // not square
  CHECK_THROWS_AS(RackTable::validate({{0, 1}, {1, 2}}), error);          // out of range
}

TEST_CASE("translations") {
  auto phis = translations(dihedral_quandle(4));
  CHECK(phis[0].cycle_string() == "(2,4)");
  CHECK(phis[1].cycle_string() == "(1,3)");
  CHECK(phis[2].cycle_string() == "(2,4)");
  CHECK(phis[3].cycle_string() == "(1,3)");
  for (const auto& p : translations(trivial_quandle(3))) CHECK(p.is_identity());
  auto d3 = translations(dihedral_quandle(3));
  CHECK(d3[0].cycle_string() == "(2,3)");
  CHECK(d3[1].cycle_string() == "(1,3)");
  CHECK(d3[2].cycle_string() == "(1,2)");
}

TEST_CASE("inner group") {
  auto t = tetrahedron();
  auto inn = inner_group(t);
  CHECK(inn.order() == 12);
  CHECK(inn.is_transitive());
  CHECK(inner_group(dihedral_quandle(3)).order() == 6);
  CHECK(inner_group(trivial_quandle(3)).order() == 1);
}

TEST_CASE("component blocks are closed under every translation") {
  for (const RackTable& x : {dihedral_quandle(4), dihedral_quandle(6), dihedral_quandle(8),
                             trivial_quandle(4)}) {
    auto comp = components(x);
    auto phis = translations(x);
    for (const auto& block : comp.blocks)
      for (const auto& phi : phis)
        for (int p : block)
          CHECK(std::binary_search(block.begin(), block.end(), phi(p)));
  }
}

TEST_CASE("components and indecomposability") {
  auto comp = components(dihedral_quandle(4));
  REQUIRE(comp.blocks.size() == 2);
  CHECK(comp.blocks[0] == std::vector<int>{1, 3});
  CHECK(comp.blocks[1] == std::vector<int>{2, 4});
  CHECK_FALSE(is_indecomposable(dihedral_quandle(4)));
  CHECK(is_indecomposable(dihedral_quandle(5)));
  CHECK(is_indecomposable(tetrahedron()));
  CHECK(components(dihedral_quandle(3)).blocks.size() == 1);
  CHECK(components(trivial_quandle(2)).blocks.size() == 2);
}

TEST_CASE("subrack closure") {
  auto d4 = dihedral_quandle(4);
  CHECK(subrack_closure(d4, {1}) == std::vector<int>{1});
  CHECK(subrack_closure(d4, {1, 2}) == std::vector<int>{1, 2, 3, 4});
  CHECK(subrack_closure(d4, {1, 2, 3, 4}) == std::vector<int>{1, 2, 3, 4});
  CHECK_THROWS_AS(subrack_closure(d4, {}), error);
  // Closures induce valid subracks.
  std::mt19937 rng(11);
  for (const RackTable& x : {dihedral_quandle(6), tetrahedron(), dihedral_quandle(8)}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> seed;
      for (int p = 1; p <= x.size(); ++p)
        if (rng() % 3 == 0) seed.push_back(p);
      if (seed.empty()) seed.push_back(1 + static_cast<int>(rng() % x.size()));
      auto cl = subrack_closure(x, seed);
      CHECK_NOTHROW(induced_subrack(x, cl));
    }
  }
}

TEST_CASE("crossed sets and faithfulness") {
  CHECK(is_crossed_set(dihedral_quandle(4)));
  CHECK(is_crossed_set(tetrahedron()));
  CHECK(is_crossed_set(dihedral_quandle(3)));
  CHECK_FALSE(is_faithful(dihedral_quandle(4)));
  CHECK(is_faithful(dihedral_quandle(3)));
  CHECK_FALSE(is_faithful(trivial_quandle(2)));
}

TEST_CASE("phi conjugation law") {
  CHECK(phi_conjugation_law(dihedral_quandle(3)));
  CHECK(phi_conjugation_law(dihedral_quandle(6)));
  CHECK(phi_conjugation_law(tetrahedron()));
  CHECK(phi_conjugation_law(affine_quandle_zn(9, 2)));
}

TEST_CASE("canonical form is a relabeling invariant") {
  std::mt19937 rng(23);
  for (const RackTable& x : {tetrahedron(), dihedral_quandle(4), dihedral_quandle(6),
                             affine_quandle_zn(7, 3), trivial_quandle(5),
                             permutation_rack(Permutation::parse_cycles("(1,2,3)", 5)),
                             permutation_rack(Permutation::parse_cycles("(1,2)(3,4)", 4))}) {
    auto canon = canonical_form(x);
    CHECK(canonical_form(canon) == canon);
    std::vector<int> imgs(static_cast<size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i) imgs[static_cast<size_t>(i)] = i + 1;
    for (int trial = 0; trial < 20; ++trial) {
      std::shuffle(imgs.begin(), imgs.end(), rng);
      CHECK(canonical_form(relabel(x, Permutation::from_images(imgs))) == canon);
    }
  }
  // All relabelings of the trivial quandle coincide, so it is its own form.
  CHECK(canonical_form(trivial_quandle(4)) == trivial_quandle(4));
}

TEST_CASE("canonical form equals the brute-force minimum over all relabelings") {
  // Defining property, checked exhaustively at small sizes.
  std::vector<RackTable> tables = {dihedral_quandle(3), dihedral_quandle(4), dihedral_quandle(5),
                                   trivial_quandle(4), tetrahedron(), affine_quandle_zn(5, 3),
                                   permutation_rack(Permutation::parse_cycles("(1,2,3)", 4)),
                                   permutation_rack(Permutation::parse_cycles("(1,2)", 5))};
  for (const auto& x : tables) {
    int n = x.size();
    std::vector<int> imgs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) imgs[static_cast<size_t>(i)] = i + 1;
    std::sort(imgs.begin(), imgs.end());
    RackTable best = x;
    do {
      RackTable y = relabel(x, Permutation::from_images(imgs));
      if (y < best) best = y;
    } while (std::next_permutation(imgs.begin(), imgs.end()));
    CHECK(canonical_form(x) == best);
  }
}

TEST_CASE("the two size-6 indecomposable quandles have distinct forms") {
  auto s4 = PermGroup::symmetric(4);
  auto q1 = conjugation_rack(s4, {Permutation::parse_cycles("(1,2)", 4)});
  auto q2 = conjugation_rack(s4, {Permutation::parse_cycles("(1,2,3,4)", 4)});
  REQUIRE(q1.size() == 6);
  REQUIRE(q2.size() == 6);
  CHECK(is_indecomposable(q1));
  CHECK(is_indecomposable(q2));
  CHECK_FALSE(canonical_form(q1) == canonical_form(q2));
  CHECK_FALSE(find_isomorphism(q1, q2).has_value());
}

TEST_CASE("isomorphism search") {
  auto a4 = PermGroup::alternating(4);
  auto t1 = conjugation_rack(a4, {Permutation::parse_cycles("(1,2,3)", 4)});
  auto t2 = conjugation_rack(a4, {Permutation::parse_cycles("(1,3,2)", 4)});
  auto sigma = find_isomorphism(t1, t2);
  REQUIRE(sigma.has_value());
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) CHECK(t2.at((*sigma)(i), (*sigma)(j)) == (*sigma)(t1.at(i, j)));
  auto self = find_isomorphism(t1, t1);
  REQUIRE(self.has_value());
  CHECK_FALSE(find_isomorphism(dihedral_quandle(3), trivial_quandle(3)).has_value());
  CHECK_FALSE(find_isomorphism(dihedral_quandle(3), dihedral_quandle(4)).has_value());
}

TEST_CASE("isomorphism agrees with canonical-form equality") {
  std::vector<RackTable> tables;
  for (int n = 3; n <= 6; ++n) {
    for (const auto& t : brute_force_indecomposable(n)) tables.push_back(t);
    tables.push_back(dihedral_quandle(n));
    tables.push_back(trivial_quandle(n));
  }
  for (int n = 7; n <= 8; ++n) {
    for (const auto& t : brute_force_indecomposable(n)) tables.push_back(t);
    tables.push_back(dihedral_quandle(n));
  }
  tables.push_back(permutation_rack(Permutation::parse_cycles("(1,2,3,4)", 4)));
  tables.push_back(permutation_rack(Permutation::parse_cycles("(1,2)(3,4)", 4)));
  tables.push_back(permutation_rack(Permutation::parse_cycles("(1,2)", 4)));
  for (size_t i = 0; i < tables.size(); ++i)
    for (size_t j = 0; j < tables.size(); ++j) {
      bool iso = find_isomorphism(tables[i], tables[j]).has_value();
      bool canon_equal = tables[i].size() == tables[j].size() &&
                         canonical_form(tables[i]) == canonical_form(tables[j]);
      CHECK(iso == canon_equal);
    }
}

TEST_CASE("rack file format round trip") {
  auto x = dihedral_quandle(5);
  std::ostringstream os;
  write_rack_table(x, os);
  CHECK(os.str() == "5\n1 5 4 3 2\n3 2 1 5 4\n5 4 3 2 1\n2 1 5 4 3\n4 3 2 1 5\n");
  std::istringstream is(os.str());
  CHECK(read_rack_table(is) == x);
  std::istringstream bad("2\n1 1\n2 2\n");
  CHECK_THROWS_AS(read_rack_table(bad), error);
  std::istringstream trailing("1\n1\nextra\n");
  CHECK_THROWS_AS(read_rack_table(trailing), error);
  std::istringstream truncated("3\n1 2 3\n");
  CHECK_THROWS_AS(read_rack_table(truncated), error);
}
