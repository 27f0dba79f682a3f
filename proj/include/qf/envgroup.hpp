#pragma once

#include <cstdint>
#include <vector>

#include "qf/int_matrix.hpp"
#include "qf/perm.hpp"
#include "qf/rack.hpp"

namespace qf {

/// Finitely presented group: m generators, relators as freely reduced words
/// of signed 1-based generator indices (negative = inverse).
struct GroupPresentation {
  int num_generators = 0;
  std::vector<std::vector<int>> relators;
};

std::vector<int> free_reduce(std::vector<int> word);

/// Presentation of the enveloping group of a rack: one generator per
/// element, conjugation relators i j i^-1 (i|>j)^-1 for all pairs; with
/// finite=true also x^ord(phi_x) for every x, which makes the group finite.
GroupPresentation enveloping_presentation(const RackTable& x, bool finite);

/// Closed coset table over the trivial subgroup: cosets 1..count with each
/// generator acting as a permutation (the regular representation).
struct CosetTable {
  int count = 0;
  std::vector<Permutation> generator_action;
};

/// HLT-style coset enumeration with immediate deductions and coincidence
/// handling. Throws an explicit overflow error when more than max_cosets
/// cosets would be defined.
CosetTable todd_coxeter(const GroupPresentation& p, std::size_t max_cosets = 1000000);

std::uint64_t finite_enveloping_order(const RackTable& x, std::size_t max_cosets = 1000000);

/// Abelianization rank and invariant factors, from the Smith normal form of
/// the relator exponent-sum matrix.
struct AbelianInvariants {
  int betti = 0;
  std::vector<Int> torsion;
  bool operator==(const AbelianInvariants& other) const = default;
};

AbelianInvariants abelian_invariants(const GroupPresentation& p);

}  // namespace qf
