#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qf/perm.hpp"
#include "qf/perm_group.hpp"

namespace qf {

/// Operation table of a finite rack: entry (i, j) is i |> j, 1-based, with
/// the acting element indexing the row. Instances are validated on
/// construction and immutable afterwards, so they are safe to share.
class RackTable {
public:
  /// Validates the rack axioms (rows bijective, self-distributivity) and
  /// computes the quandle / crossed-set flags. Throws with the offending
  /// row or witness triple.
  static RackTable validate(const std::vector<std::vector<int>>& rows);
  static RackTable validate_flat(int n, std::vector<int> entries);

  int size() const { return n_; }

  /// i |> j (1-based).
  int at(int i, int j) const { return entries_[static_cast<size_t>(i - 1) * n_ + (j - 1)]; }

  bool is_quandle() const { return quandle_; }

  /// Row-major entries, 1-based values.
  const std::vector<int>& entries() const { return entries_; }

  bool operator==(const RackTable& other) const {
    return n_ == other.n_ && entries_ == other.entries_;
  }
  bool operator!=(const RackTable& other) const { return !(*this == other); }
  /// Row-major lexicographic (after size); the total order used for
  /// canonical forms and database indices.
  bool operator<(const RackTable& other) const {
    if (n_ != other.n_) return n_ < other.n_;
    return entries_ < other.entries_;
  }

private:
  RackTable(int n, std::vector<int> entries, bool quandle)
      : n_(n), entries_(std::move(entries)), quandle_(quandle) {}

  int n_;
  std::vector<int> entries_;
  bool quandle_;
};

struct ComponentPartition {
  std::vector<std::vector<int>> blocks;  // disjoint, cover {1..n}, sorted by min element
};

/// Left translations phi_i (row i as a permutation), i = 1..n.
std::vector<Permutation> translations(const RackTable& x);

/// Inner group <phi_1, ..., phi_n>.
PermGroup inner_group(const RackTable& x);

/// Orbits of the inner group.
ComponentPartition components(const RackTable& x);

bool is_indecomposable(const RackTable& x);

/// Smallest superset of seed closed under (a,b) -> a|>b and (a,b) -> phi_a^-1(b);
/// returned ascending. The induced table is a valid subrack.
std::vector<int> subrack_closure(const RackTable& x, const std::vector<int>& seed);

/// i|>j == j implies j|>i == i for all pairs (quandles only).
bool is_crossed_set(const RackTable& x);

/// i -> phi_i injective.
bool is_faithful(const RackTable& x);

/// Table on points {1..|subset|} induced by a closed subset (ascending);
/// throws if the subset is not closed.
RackTable induced_subrack(const RackTable& x, const std::vector<int>& subset);

/// relabel(x, sigma)[sigma(i)][sigma(j)] = sigma(x[i][j]).
RackTable relabel(const RackTable& x, const Permutation& sigma);

/// Minimum of relabel(x, sigma) over all sigma, in row-major lexicographic
/// order; equal for isomorphic tables.
RackTable canonical_form(const RackTable& x);

/// Some sigma with y[sigma(i)][sigma(j)] = sigma(x[i][j]), or nullopt.
/// A size mismatch yields nullopt, not an error.
std::optional<Permutation> find_isomorphism(const RackTable& x, const RackTable& y);

/// Text format: line 1 is n, then n lines of n space-separated integers.
RackTable read_rack_table(std::istream& in);
RackTable read_rack_file(const std::string& path);
void write_rack_table(const RackTable& x, std::ostream& out);

}  // namespace qf
