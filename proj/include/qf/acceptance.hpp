#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qf {

/// Options for the table-verification suite. Group databases for degrees
/// beyond 8 are optional; checks needing them are reported SKIP when the
/// files are absent. The directory is scanned for files named
/// degree<k>.grp.
struct AcceptanceOptions {
  std::string groups_dir = "data/groups";
  std::vector<std::string> group_files;
  int jobs = 1;
};

/// Runs every acceptance criterion, printing one PASS/FAIL/SKIP line per
/// criterion. Returns 0 when nothing failed.
int run_acceptance(const AcceptanceOptions& opts, std::ostream& out);

}  // namespace qf
