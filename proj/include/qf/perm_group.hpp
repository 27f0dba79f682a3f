#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qf/perm.hpp"

namespace qf {

/// Permutation group given by generators, with a stabilizer chain
/// (Schreier-Sims, base points taken in increasing order 1, 2, ...) built
/// lazily and cached.
///
/// Copies share the cached chain. The chain build is confined to one thread;
/// call freeze() before handing a group to concurrent readers (all queries
/// after the build are const and safe to share).
class PermGroup {
public:
  PermGroup(int degree, std::vector<Permutation> generators);

  static PermGroup trivial(int degree);
  static PermGroup symmetric(int degree);
  static PermGroup alternating(int degree);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  /// Product of fundamental orbit lengths; throws if it exceeds 2^64 - 1.
  std::uint64_t order() const;

  bool contains(const Permutation& g) const;

  /// True iff every generator of sub sifts through this group's chain.
  bool contains_group(const PermGroup& sub) const;

  /// Orbit of a point, ascending.
  std::vector<int> orbit(int point) const;

  /// All orbits, each ascending, ordered by smallest element.
  std::vector<std::vector<int>> orbits() const;

  bool is_transitive() const;

  /// Point stabilizer as a generated subgroup (Schreier generators, deduped
  /// and sorted).
  PermGroup stabilizer(int point) const;

  /// Center elements, sorted; always contains the identity.
  std::vector<Permutation> center() const;

  /// Conjugacy class of g under this group, sorted. Throws if g is not a
  /// member.
  std::vector<Permutation> conjugacy_class(const Permutation& g) const;

  /// Left coset representatives for a subgroup: |G|/|H| elements, identity
  /// first, BFS order over the generators. Throws if subgroup is not
  /// contained in this group.
  std::vector<Permutation> coset_representatives(const PermGroup& subgroup) const;

  /// All elements, sorted. Throws when the order exceeds limit.
  std::vector<Permutation> elements(std::size_t limit = 1000000) const;

  /// Forces the stabilizer chain build.
  void freeze() const;

private:
  struct Chain;
  const Chain& chain() const;

  int degree_;
  std::vector<Permutation> gens_;
  mutable std::shared_ptr<Chain> chain_;
};

/// True iff some g in G conjugates h1 onto h2 (as subgroups). Requires
/// h1, h2 <= G; enumerates G with early pruning, so intended for desk-scale
/// groups (throws beyond 10^6 elements).
bool are_conjugate_subgroups(const PermGroup& g, const PermGroup& h1, const PermGroup& h2);

}  // namespace qf
