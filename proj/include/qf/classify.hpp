#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qf/group_db.hpp"
#include "qf/rack.hpp"

namespace qf {

/// One indecomposable quandle up to isomorphism: the canonical table plus
/// cached invariants. index is the 1-based position in the ascending
/// row-major order of canonical tables of this size.
struct QuandleRecord {
  int size = 0;
  int index = 0;
  RackTable table;
  std::uint64_t inner_group_order = 0;
  bool crossed_set = false;
  bool faithful = false;
};

/// Classification results by size, in index order.
class QuandleDatabase {
public:
  void insert(int n, std::vector<QuandleRecord> records);
  bool has_size(int n) const { return by_size_.count(n) != 0; }
  const std::vector<QuandleRecord>& records(int n) const;
  std::vector<int> sizes() const;

private:
  std::map<int, std::vector<QuandleRecord>> by_size_;
};

/// Classification over a transitive-group list: for each group G take
/// H = Stab(1); for each non-identity z in Z(H) build the homogeneous
/// quandle (G, H, I_z); keep the indecomposable ones and dedup by canonical
/// form. n = 1 returns the singleton quandle without group input.
/// The result is independent of the job count.
std::vector<QuandleRecord> classify_indecomposable(int n, const GroupDatabase* groups,
                                                   int jobs = 1);

/// Independent oracle: all indecomposable quandles of size n <= 8 up to
/// isomorphism by orderly generation (row-by-row search with translation
/// conjugation forcing, all rows sharing one cycle type, canonical-form
/// filtering). Output sorted canonical tables.
std::vector<RackTable> brute_force_indecomposable(int n);

/// Number of isomorphism classes of indecomposable quandles of size n;
/// built-in groups cover n <= 8, larger sizes need a loaded database.
std::size_t q_count(int n, const GroupDatabase* groups = nullptr, int jobs = 1);

/// The i-th canonical table (1-based).
const RackTable& small_quandle(const QuandleDatabase& db, int n, int index);

/// Persistence: "QDB1" header, per-size sections "[n count]" with tables in
/// the rack text format, and a trailing checksum line.
void db_write(const QuandleDatabase& db, std::ostream& out);
QuandleDatabase db_read(std::istream& in);
void db_write_file(const QuandleDatabase& db, const std::string& path);
QuandleDatabase db_read_file(const std::string& path);

/// Builds records from already-canonical tables (used by db_read and tests).
std::vector<QuandleRecord> make_records(int n, std::vector<RackTable> canonical_tables);

}  // namespace qf
