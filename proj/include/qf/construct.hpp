#pragma once

#include <string>
#include <vector>

#include "qf/perm.hpp"
#include "qf/perm_group.hpp"
#include "qf/rack.hpp"

namespace qf {

/// F_{p^k}, p^k <= 2^16, with the smallest irreducible monic modulus
/// (polynomials ordered by their base-p integer encoding, constant
/// coefficient least significant). Elements are 0..q-1, read as base-p
/// digit vectors.
class FiniteField {
public:
  FiniteField(int p, int k);

  int characteristic() const { return p_; }
  int degree() const { return k_; }
  int order() const { return q_; }
  /// Modulus coefficients c_0..c_k (c_k == 1).
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const;
  int neg(int a) const;
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const;
  int inv(int a) const;
  int pow(int a, long long e) const;

  /// Some generator of the multiplicative group.
  int multiplicative_generator() const;

  /// "x" when k >= 2, else "1"... element rendered as base-p digit vector
  /// [c0, c1, ...].
  std::string element_string(int a) const;

private:
  int p_, k_, q_;
  std::vector<int> modulus_;
};

/// i |> j = 2i - j (mod n), on labels 1..n for residues 0..n-1.
RackTable dihedral_quandle(int n);

/// a |> b = (1-t)a + tb over Z_n; requires gcd(t, n) = 1.
RackTable affine_quandle_zn(int n, int t);

/// a |> b = (1-alpha)a + alpha*b over F_q; requires alpha != 0.
RackTable affine_quandle_fq(const FiniteField& f, int alpha);

/// Rack on the union of the conjugacy classes of the given elements,
/// x |> y = x y x^-1, labels sorted by image sequence.
RackTable conjugation_rack(const PermGroup& g, const std::vector<Permutation>& elements);

/// Quandle on the left cosets of h in g with section s = conjugation by z;
/// requires h <= g, z in g, and z centralizing h. Cosets are ordered by
/// coset_representatives; products are evaluated left-to-right.
RackTable homogeneous_quandle(const PermGroup& g, const PermGroup& h, const Permutation& z);

}  // namespace qf
