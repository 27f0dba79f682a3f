#include "qf/rack.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "qf/error.hpp"

namespace qf {

namespace {
constexpr int kMaxRackSize = 256;
}

RackTable RackTable::validate(const std::vector<std::vector<int>>& rows) {
  int n = static_cast<int>(rows.size());
  if (n < 1) throw error("rack table must have at least one row");
  std::vector<int> flat;
  flat.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw error("rack table is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return validate_flat(n, std::move(flat));
}

RackTable RackTable::validate_flat(int n, std::vector<int> entries) {
  if (n < 1) throw error("rack table must have at least one row");
  if (n > kMaxRackSize) throw error("rack table too large (limit " + std::to_string(kMaxRackSize) + ")");
  if (entries.size() != static_cast<size_t>(n) * n) throw error("rack table is not square");
  for (int v : entries)
    if (v < 1 || v > n) throw error("rack table entry " + std::to_string(v) + " out of range 1.." + std::to_string(n));
  auto at = [&](int i, int j) { return entries[static_cast<size_t>(i - 1) * n + (j - 1)]; };
  std::vector<char> seen(static_cast<size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 1; j <= n; ++j) {
      int v = at(i, j);
      if (seen[static_cast<size_t>(v)])
        throw error("row " + std::to_string(i) + " is not a bijection");
      seen[static_cast<size_t>(v)] = 1;
    }
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        if (at(i, at(j, k)) != at(at(i, j), at(i, k)))
          throw error("self-distributivity fails at (i,j,k) = (" + std::to_string(i) + "," +
                      std::to_string(j) + "," + std::to_string(k) + ")");
  bool quandle = true;
  for (int i = 1; i <= n; ++i)
    if (at(i, i) != i) {
      quandle = false;
      break;
    }
  return RackTable(n, std::move(entries), quandle);
}

std::vector<Permutation> translations(const RackTable& x) {
  std::vector<Permutation> result;
  result.reserve(static_cast<size_t>(x.size()));
  for (int i = 1; i <= x.size(); ++i) {
    std::vector<int> imgs(static_cast<size_t>(x.size()));
    for (int j = 1; j <= x.size(); ++j) imgs[static_cast<size_t>(j - 1)] = x.at(i, j);
    result.push_back(Permutation::from_images(std::move(imgs)));
  }
  return result;
}

PermGroup inner_group(const RackTable& x) {
  return PermGroup(x.size(), translations(x));
}

ComponentPartition components(const RackTable& x) {
  int n = x.size();
  // Union points with their images under every translation.
  std::vector<int> parent(static_cast<size_t>(n) + 1);
  for (int p = 0; p <= n; ++p) parent[static_cast<size_t>(p)] = p;
  std::function<int(int)> find = [&](int a) {
    while (parent[static_cast<size_t>(a)] != a) {
      parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
      a = parent[static_cast<size_t>(a)];
    }
    return a;
  };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int a = find(j), b = find(x.at(i, j));
      if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(static_cast<size_t>(n) + 1, -1);
  for (int p = 1; p <= n; ++p) {
    int r = find(p);
    if (block_of[static_cast<size_t>(r)] < 0) {
      block_of[static_cast<size_t>(r)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<size_t>(block_of[static_cast<size_t>(r)])].push_back(p);
  }
  return ComponentPartition{std::move(blocks)};
}

bool is_indecomposable(const RackTable& x) {
  return components(x).blocks.size() == 1;
}

std::vector<int> subrack_closure(const RackTable& x, const std::vector<int>& seed) {
  if (seed.empty()) throw error("subrack_closure: seed must be non-empty");
  int n = x.size();
  std::vector<char> in(static_cast<size_t>(n) + 1, 0);
  std::vector<int> members;
  auto add = [&](int p) {
    if (p < 1 || p > n) throw error("subrack_closure: point out of range");
    if (!in[static_cast<size_t>(p)]) {
      in[static_cast<size_t>(p)] = 1;
      members.push_back(p);
    }
  };
  for (int p : seed) add(p);
  auto phi_inv = [&](int a, int b) {
    for (int j = 1; j <= n; ++j)
      if (x.at(a, j) == b) return j;
    throw error("subrack_closure: row lookup failed");
  };
  for (size_t i = 0; i < members.size(); ++i) {
    for (size_t j = 0; j <= i; ++j) {
      int a = members[i], b = members[j];
      add(x.at(a, b));
      add(x.at(b, a));
      add(phi_inv(a, b));
      add(phi_inv(b, a));
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool is_crossed_set(const RackTable& x) {
  for (int i = 1; i <= x.size(); ++i)
    for (int j = 1; j <= x.size(); ++j)
      if (x.at(i, j) == j && x.at(j, i) != i) return false;
  return true;
}

bool is_faithful(const RackTable& x) {
  std::set<std::vector<int>> rows;
  for (int i = 1; i <= x.size(); ++i) {
    std::vector<int> row(static_cast<size_t>(x.size()));
    for (int j = 1; j <= x.size(); ++j) row[static_cast<size_t>(j - 1)] = x.at(i, j);
    if (!rows.insert(std::move(row)).second) return false;
  }
  return true;
}

RackTable induced_subrack(const RackTable& x, const std::vector<int>& subset) {
  std::vector<int> pts = subset;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  int m = static_cast<int>(pts.size());
  std::vector<int> label(static_cast<size_t>(x.size()) + 1, 0);
  for (int k = 0; k < m; ++k) label[static_cast<size_t>(pts[static_cast<size_t>(k)])] = k + 1;
  std::vector<int> flat(static_cast<size_t>(m) * m);
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b) {
      int v = x.at(pts[static_cast<size_t>(a - 1)], pts[static_cast<size_t>(b - 1)]);
      if (label[static_cast<size_t>(v)] == 0)
        throw error("induced_subrack: subset is not closed under the operation");
      flat[static_cast<size_t>(a - 1) * m + (b - 1)] = label[static_cast<size_t>(v)];
    }
  return RackTable::validate_flat(m, std::move(flat));
}

RackTable relabel(const RackTable& x, const Permutation& sigma) {
  if (sigma.degree() != x.size()) throw error("relabel: degree mismatch");
  int n = x.size();
  std::vector<int> flat(static_cast<size_t>(n) * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      flat[static_cast<size_t>(sigma(i) - 1) * n + (sigma(j) - 1)] = sigma(x.at(i, j));
  return RackTable::validate_flat(n, std::move(flat));
}

RackTable read_rack_table(std::istream& in) {
  int n = 0;
  if (!(in >> n)) throw error("rack file: missing size line");
  if (n < 1 || n > kMaxRackSize) throw error("rack file: size out of range");
  std::vector<int> flat;
  flat.reserve(static_cast<size_t>(n) * n);
  for (long long k = 0; k < static_cast<long long>(n) * n; ++k) {
    int v = 0;
    if (!(in >> v)) throw error("rack file: truncated table");
    flat.push_back(v);
  }
  std::string tail;
  if (in >> tail) throw error("rack file: trailing data");
  return RackTable::validate_flat(n, std::move(flat));
}

RackTable read_rack_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open rack file: " + path);
  return read_rack_table(in);
}

void write_rack_table(const RackTable& x, std::ostream& out) {
  out << x.size() << "\n";
  for (int i = 1; i <= x.size(); ++i) {
    for (int j = 1; j <= x.size(); ++j) {
      if (j > 1) out << ' ';
      out << x.at(i, j);
    }
    out << "\n";
  }
}

}  // namespace qf
