#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qf/perm_group.hpp"

namespace qf {

/// Transitive groups of one degree, pairwise non-conjugate.
struct GroupDatabase {
  int degree = 0;
  std::vector<PermGroup> groups;
};

/// All transitive subgroups of S_degree up to conjugacy, degree 2..8, by
/// exhaustive generated-subgroup closure search with conjugacy dedup.
/// Deterministic order: ascending group order, then lexicographic generator
/// lists. Results are cached per degree.
const GroupDatabase& builtin_transitive_groups(int degree);

/// Text format: one group per line, `degree; gen1, gen2, ...` with
/// generators in cycle notation; '#' starts a comment line. Every entry is
/// verified transitive of the common degree; conjugacy between entries is
/// trusted.
GroupDatabase load_group_db(std::istream& in);
GroupDatabase load_group_file(const std::string& path);
void save_group_db(const GroupDatabase& db, std::ostream& out);

}  // namespace qf
