#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qf/classify.hpp"
#include "qf/construct.hpp"
#include "qf/error.hpp"
#include "qf/homology.hpp"

using namespace qf;

namespace {

RackTable tetrahedron() {
  return conjugation_rack(PermGroup::alternating(4), {Permutation::parse_cycles("(1,2,3)", 4)});
}

}  // namespace

TEST_CASE("boundary matrices") {
  auto d3 = dihedral_quandle(3);
  auto b1 = boundary_matrix(d3, 1);
  CHECK(b1.rows() == 1);
  CHECK(b1.cols() == 3);
  for (int c = 0; c < 3; ++c) CHECK(b1.at(0, c) == 0);

  auto b2 = boundary_matrix(d3, 2);
  CHECK(b2.rows() == 3);
  CHECK(b2.cols() == 9);
  // Column (1,2): e_2 - e_3 since 1 |> 2 = 3.
  int col12 = 0 * 3 + 1;
  CHECK(b2.at(0, col12) == 0);
  CHECK(b2.at(1, col12) == 1);
  CHECK(b2.at(2, col12) == -1);
  // Columns (x,x) vanish for quandles.
  for (int x = 0; x < 3; ++x)
    for (int r = 0; r < 3; ++r) CHECK(b2.at(r, x * 3 + x) == 0);
  CHECK_THROWS_AS(boundary_matrix(d3, 0), error);
}

TEST_CASE("smith normal form examples") {
  auto id3 = IntMatrix::identity(3);
  auto s = smith_normal_form(id3);
  CHECK(s.rank == 3);
  CHECK(s.d == id3);

  IntMatrix a(2, 2);
  a.at(0, 0) = 2;
  a.at(0, 1) = 4;
  a.at(1, 0) = 4;
  a.at(1, 1) = 8;
  // Independent check: rank 1 (zero determinant), first factor = gcd of
  // entries = 2.
  CHECK(determinant(a) == 0);
  auto s2 = smith_normal_form(a);
  CHECK(s2.rank == 1);
  CHECK(s2.d.at(0, 0) == 2);
  CHECK(s2.d.at(1, 1) == 0);

  IntMatrix z(3, 2);
  auto s3 = smith_normal_form(z);
  CHECK(s3.rank == 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) CHECK(s3.d.at(i, j) == 0);
}

TEST_CASE("smith normal form properties on random matrices") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 80; ++trial) {
    int m = 1 + static_cast<int>(rng() % 12);
    int k = 1 + static_cast<int>(rng() % 12);
    IntMatrix a(m, k);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < k; ++j) a.at(i, j) = entry(rng);
    auto s = smith_normal_form(a, {.want_u = true, .want_uinv = true, .want_v = true, .want_vinv = true});
    CHECK(*s.u * a * *s.v == s.d);
    CHECK(*s.u * *s.uinv == IntMatrix::identity(m));
    CHECK(*s.v * *s.vinv == IntMatrix::identity(k));
    if (m == k) {
      CHECK(abs(determinant(*s.u)) == 1);
      CHECK(abs(determinant(*s.v)) == 1);
    }
    auto diag = s.diagonal();
    for (size_t i = 0; i + 1 < diag.size(); ++i)
      if (diag[i] != 0) CHECK(diag[i + 1] % diag[i] == 0);
  }
}

TEST_CASE("homology reference values") {
  CHECK(rack_homology(dihedral_quandle(5), 2) == HomologyResult{1, {}});
  auto t = tetrahedron();
  CHECK(rack_homology(t, 2) == (HomologyResult{1, {2}}));
  CHECK(rack_homology(t, 3) == (HomologyResult{1, {2, 2, 4}}));
  CHECK(rack_homology(t, 0) == (HomologyResult{1, {}}));
  CHECK(rack_homology(t, 2).to_string() == "[ 1, [ 2 ] ]");
  CHECK(rack_homology(dihedral_quandle(5), 2).to_string() == "[ 1, [ ] ]");
}

TEST_CASE("homology is a relabeling invariant") {
  std::mt19937 rng(5);
  for (const RackTable& x : {dihedral_quandle(3), tetrahedron(), dihedral_quandle(4)}) {
    auto h = rack_homology(x, 2);
    std::vector<int> imgs(static_cast<size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i) imgs[static_cast<size_t>(i)] = i + 1;
    for (int trial = 0; trial < 5; ++trial) {
      std::shuffle(imgs.begin(), imgs.end(), rng);
      CHECK(rack_homology(relabel(x, Permutation::from_images(imgs)), 2) == h);
    }
  }
}

TEST_CASE("H1 of stored indecomposable quandles is Z") {
  for (int n = 2; n <= 8; ++n)
    for (const auto& x : brute_force_indecomposable(n))
      CHECK(rack_homology(x, 1) == (HomologyResult{1, {}}));
}

TEST_CASE("torsion generators") {
  auto t = tetrahedron();
  auto gens = torsion_generators(t, 2);
  REQUIRE(gens.size() == 1);
  CHECK(gens[0].degree == 2);
  CHECK(gens[0].coeffs.size() == 16);
  IntMatrix low = boundary_matrix(t, 2);
  IntMatrix high = boundary_matrix(t, 3);
  for (const Int& c : low.apply(gens[0].coeffs)) CHECK(c == 0);
  CHECK_FALSE(in_image(high, gens[0].coeffs));
  std::vector<Int> doubled = gens[0].coeffs;
  for (Int& c : doubled) c *= 2;
  CHECK(in_image(high, doubled));

  CHECK(torsion_generators(dihedral_quandle(5), 2).empty());
  auto point = RackTable::validate_flat(1, {1});
  CHECK(rack_homology(point, 2) == (HomologyResult{1, {}}));
  CHECK(torsion_generators(point, 2).empty());
}

TEST_CASE("boundary composition vanishes on non-quandle racks") {
  // Constant-row rack i |> j = sigma(j).
  auto perm_rack = [](const Permutation& sigma) {
    int n = sigma.degree();
    std::vector<int> flat(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 1; j <= n; ++j) flat[static_cast<size_t>(i) * n + (j - 1)] = sigma(j);
    return RackTable::validate_flat(n, std::move(flat));
  };
  for (const RackTable& x : {perm_rack(Permutation::parse_cycles("(1,2,3)", 3)),
                             perm_rack(Permutation::parse_cycles("(1,2)(3,4)", 4))}) {
    CHECK_FALSE(x.is_quandle());
    for (int deg = 1; deg <= 2; ++deg) {
      IntMatrix low = boundary_matrix(x, deg);
      IntMatrix high = boundary_matrix(x, deg + 1);
      CHECK(low * high == IntMatrix(low.rows(), high.cols()));
    }
    auto h = rack_homology(x, 2);
    auto shifted = relabel(x, Permutation::parse_cycles("(1,2)", x.size()));
    CHECK(rack_homology(shifted, 2) == h);
  }
}

TEST_CASE("resource guard") {
  CHECK_THROWS_WITH_AS(rack_homology(tetrahedron(), 13), doctest::Contains("2^24"), error);
}
