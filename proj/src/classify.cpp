#include "qf/classify.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "qf/construct.hpp"
#include "qf/error.hpp"
#include "qf/util.hpp"

namespace qf {

void QuandleDatabase::insert(int n, std::vector<QuandleRecord> records) {
  by_size_[n] = std::move(records);
}

const std::vector<QuandleRecord>& QuandleDatabase::records(int n) const {
  auto it = by_size_.find(n);
  if (it == by_size_.end()) throw error("quandle database has no size " + std::to_string(n));
  return it->second;
}

std::vector<int> QuandleDatabase::sizes() const {
  std::vector<int> result;
  for (const auto& [n, recs] : by_size_) {
    (void)recs;
    result.push_back(n);
  }
  return result;
}

std::vector<QuandleRecord> make_records(int n, std::vector<RackTable> tables) {
  std::sort(tables.begin(), tables.end());
  tables.erase(std::unique(tables.begin(), tables.end()), tables.end());
  std::vector<QuandleRecord> records;
  int index = 1;
  for (auto& t : tables) {
    QuandleRecord rec{n, index++, std::move(t), 0, false, false};
    try {
      rec.inner_group_order = inner_group(rec.table).order();
    } catch (const error&) {
      rec.inner_group_order = 0;  // beyond 64 bits
    }
    rec.crossed_set = is_crossed_set(rec.table);
    rec.faithful = is_faithful(rec.table);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<QuandleRecord> classify_indecomposable(int n, const GroupDatabase* groups, int jobs) {
  if (n < 1) throw error("classify: size must be positive");
  if (n == 1) return make_records(1, {RackTable::validate_flat(1, {1})});
  if (!groups) throw error("classify: no group database for size " + std::to_string(n));
  if (groups->degree != n)
    throw error("classify: group database degree " + std::to_string(groups->degree) +
                " does not match size " + std::to_string(n));

  // One task per (group, central element) pair.
  struct Task {
    const PermGroup* g;
    PermGroup h;
    Permutation z;
  };
  std::vector<Task> tasks;
  for (const auto& g : groups->groups) {
    g.freeze();  // chain builds stay on this thread
    PermGroup h = g.stabilizer(1);
    h.freeze();
    for (auto& z : h.center()) {
      if (z.is_identity()) continue;
      tasks.push_back(Task{&g, h, std::move(z)});
    }
  }
  std::vector<std::vector<RackTable>> found(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const Task& task = tasks[i];
    RackTable t = homogeneous_quandle(*task.g, task.h, task.z);
    if (is_indecomposable(t)) found[i].push_back(canonical_form(t));
  });
  std::vector<RackTable> tables;
  for (auto& v : found)
    for (auto& t : v) tables.push_back(std::move(t));
  return make_records(n, std::move(tables));
}

namespace {

/// Orderly search state for one target cycle type. Rows are permutations
/// fixing their own index; whenever rows i and j are known, the row at
/// i |> j is forced to phi_i^-1 phi_j phi_i.
struct BruteSearch {
  int n;
  std::vector<int> type;                       // target cycle type, descending
  std::vector<std::vector<int>> rows;          // rows[i-1], empty = unknown
  std::vector<std::vector<std::vector<int>>> candidates;  // per fixed point
  std::vector<RackTable> out;

  BruteSearch(int size, std::vector<int> t) : n(size), type(std::move(t)) {
    rows.resize(static_cast<size_t>(n));
    candidates.resize(static_cast<size_t>(n) + 1);
  }

  static std::vector<int> conj_row(const std::vector<int>& p, const std::vector<int>& q) {
    // inv(p) * q * p as image vectors (apply inv p, then q, then p).
    int m = static_cast<int>(p.size());
    std::vector<int> result(static_cast<size_t>(m));
    for (int x = 1; x <= m; ++x)
      result[static_cast<size_t>(p[static_cast<size_t>(x - 1)]) - 1] =
          p[static_cast<size_t>(q[static_cast<size_t>(x - 1)]) - 1];
    return result;
  }

  // Sets row k, propagating forced rows; returns false on contradiction.
  // Records every row index it set in trail.
  bool set_row(int k, const std::vector<int>& perm, std::vector<int>& trail) {
    auto& slot = rows[static_cast<size_t>(k - 1)];
    if (!slot.empty()) return slot == perm;
    if (perm[static_cast<size_t>(k - 1)] != k) return false;
    slot = perm;
    trail.push_back(k);
    for (int i = 1; i <= n; ++i) {
      if (rows[static_cast<size_t>(i - 1)].empty() || i == k) continue;
      const auto& ri = rows[static_cast<size_t>(i - 1)];
      const auto& rk = rows[static_cast<size_t>(k - 1)];
      // phi_{i |> k} = phi_i^-1 phi_k phi_i and phi_{k |> i} = phi_k^-1 phi_i phi_k.
      if (!set_row(ri[static_cast<size_t>(k - 1)], conj_row(ri, rk), trail)) return false;
      if (!set_row(rk[static_cast<size_t>(i - 1)], conj_row(rk, ri), trail)) return false;
    }
    return true;
  }

  void undo(std::vector<int>& trail, size_t mark) {
    while (trail.size() > mark) {
      rows[static_cast<size_t>(trail.back() - 1)].clear();
      trail.pop_back();
    }
  }

  void dfs(int depth, std::vector<int>& trail) {
    while (depth <= n && !rows[static_cast<size_t>(depth - 1)].empty()) ++depth;
    if (depth > n) {
      emit();
      return;
    }
    for (const auto& cand : candidates[static_cast<size_t>(depth)]) {
      size_t mark = trail.size();
      if (set_row(depth, cand, trail)) dfs(depth + 1, trail);
      undo(trail, mark);
    }
  }

  void emit() {
    std::vector<int> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
    RackTable t = RackTable::validate_flat(n, std::move(flat));
    if (!t.is_quandle() || !is_indecomposable(t)) return;
    if (canonical_form(t) == t) out.push_back(std::move(t));
  }
};

}  // namespace

std::vector<RackTable> brute_force_indecomposable(int n) {
  if (n < 1) throw error("brute force: size must be positive");
  if (n > 8) throw error("brute force: size " + std::to_string(n) + " exceeds the guard (8)");
  if (n == 1) return {RackTable::validate_flat(1, {1})};

  // All rows of an indecomposable quandle are conjugate, so they share one
  // nontrivial cycle type, and the canonical table's first row is the
  // minimal row of that type.
  std::vector<int> imgs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) imgs[static_cast<size_t>(i)] = i + 1;
  std::map<std::vector<int>, std::vector<std::vector<int>>> rows_by_type;  // type -> rows (all fixpoints)
  do {
    Permutation p = Permutation::from_images(imgs);
    auto type = p.cycle_type();
    if (type.front() == 1) continue;  // identity row: decomposable for n >= 2
    rows_by_type[type].push_back(imgs);
  } while (std::next_permutation(imgs.begin(), imgs.end()));

  std::vector<RackTable> result;
  for (auto& [type, all_rows] : rows_by_type) {
    if (std::find(type.begin(), type.end(), 1) == type.end()) continue;  // quandle rows fix a point
    BruteSearch search(n, type);
    for (int fix = 1; fix <= n; ++fix) {
      auto& list = search.candidates[static_cast<size_t>(fix)];
      for (const auto& row : all_rows)
        if (row[static_cast<size_t>(fix - 1)] == fix) list.push_back(row);
    }
    // Lexicographically minimal first row of this type (fixed points first,
    // then ascending cycle lengths over consecutive points).
    std::vector<int> row1;
    {
      std::vector<int> asc(type.rbegin(), type.rend());
      auto it = std::find(asc.begin(), asc.end(), 1);
      asc.erase(it);  // the fixed point 1
      row1.assign(static_cast<size_t>(n) + 1, 0);
      row1[1] = 1;
      int next = 2;
      for (int len : asc) {
        for (int k = 0; k < len; ++k)
          row1[static_cast<size_t>(next + k)] = k + 1 == len ? next : next + k + 1;
        next += len;
      }
      row1.erase(row1.begin());
    }
    std::vector<int> trail;
    if (search.set_row(1, row1, trail)) search.dfs(2, trail);
    for (auto& t : search.out) result.push_back(std::move(t));
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::size_t q_count(int n, const GroupDatabase* groups, int jobs) {
  if (n == 1) return 1;
  if (!groups && n >= 2 && n <= 8) groups = &builtin_transitive_groups(n);
  return classify_indecomposable(n, groups, jobs).size();
}

const RackTable& small_quandle(const QuandleDatabase& db, int n, int index) {
  const auto& recs = db.records(n);  // throws when the size is absent
  if (index < 1 || index > static_cast<int>(recs.size()))
    throw error("small_quandle: index " + std::to_string(index) + " out of range 1.." +
                std::to_string(recs.size()));
  return recs[static_cast<size_t>(index - 1)].table;
}

void db_write(const QuandleDatabase& db, std::ostream& out) {
  std::ostringstream body;
  body << "QDB1\n";
  for (int n : db.sizes()) {
    const auto& recs = db.records(n);
    body << "[" << n << " " << recs.size() << "]\n";
    for (const auto& rec : recs) write_rack_table(rec.table, body);
  }
  std::string text = body.str();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(text)));
  out << text << "checksum " << buf << "\n";
}

QuandleDatabase db_read(std::istream& in) {
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  size_t mark = all.rfind("checksum ");
  if (mark == std::string::npos) throw error("quandle db: missing checksum line");
  std::string body = all.substr(0, mark);
  std::string sumline = all.substr(mark);
  char expect[32];
  std::snprintf(expect, sizeof expect, "%016llx",
                static_cast<unsigned long long>(fnv1a64(body)));
  std::istringstream sums(sumline);
  std::string word, have;
  sums >> word >> have;
  if (have != expect) throw error("quandle db: checksum failure");

  std::istringstream is(body);
  std::string header;
  if (!std::getline(is, header) || header != "QDB1")
    throw error("quandle db: version mismatch (expected QDB1)");
  QuandleDatabase db;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.front() != '[' || line.back() != ']') throw error("quandle db: bad section header: " + line);
    std::istringstream hs(line.substr(1, line.size() - 2));
    int n = 0, count = -1;
    if (!(hs >> n >> count) || n < 1 || count < 0) throw error("quandle db: bad section header: " + line);
    std::vector<RackTable> tables;
    for (int k = 0; k < count; ++k) {
      int sz = 0;
      if (!(is >> sz) || sz != n) throw error("quandle db: table size mismatch in section " + std::to_string(n));
      std::vector<int> flat;
      flat.reserve(static_cast<size_t>(n) * n);
      for (int e = 0; e < n * n; ++e) {
        int v = 0;
        if (!(is >> v)) throw error("quandle db: truncated table");
        flat.push_back(v);
      }
      RackTable t = RackTable::validate_flat(n, std::move(flat));
      if (!t.is_quandle() || !is_indecomposable(t)) throw error("quandle db: table is not an indecomposable quandle");
      if (!(canonical_form(t) == t)) throw error("quandle db: table is not in canonical form");
      tables.push_back(std::move(t));
      std::getline(is, line);  // consume rest of last row line
    }
    auto records = make_records(n, std::move(tables));
    if (static_cast<int>(records.size()) != count) throw error("quandle db: duplicate tables in section");
    db.insert(n, std::move(records));  // an empty section is valid
  }
  return db;
}

void db_write_file(const QuandleDatabase& db, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot open database file for writing: " + path);
  db_write(db, out);
}

QuandleDatabase db_read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open database file: " + path);
  return db_read(in);
}

}  // namespace qf
