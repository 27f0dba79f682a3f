#include "qf/group_db.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "qf/error.hpp"
#include "qf/util.hpp"

namespace qf {

namespace {

// Permutations of up to 8 points packed one image per byte (0-based).
using P8 = std::uint64_t;

P8 pack_identity(int n) {
  P8 p = 0;
  for (int i = 0; i < n; ++i) p |= static_cast<P8>(i) << (8 * i);
  return p;
}

inline int pimg(P8 a, int i) { return static_cast<int>((a >> (8 * i)) & 0xff); }

// a then b.
inline P8 pmul(P8 a, P8 b, int n) {
  P8 r = 0;
  for (int i = 0; i < n; ++i) r |= static_cast<P8>(pimg(b, pimg(a, i))) << (8 * i);
  return r;
}

inline P8 pinv(P8 a, int n) {
  P8 r = 0;
  for (int i = 0; i < n; ++i) r |= static_cast<P8>(i) << (8 * pimg(a, i));
  return r;
}

inline P8 pconj(P8 g, P8 x, int n) { return pmul(pmul(pinv(x, n), g, n), x, n); }

bool p_is_even(P8 a, int n) {
  int trans = 0;
  int seen = 0;
  for (int i = 0; i < n; ++i) {
    if (seen & (1 << i)) continue;
    int len = 0, j = i;
    do {
      seen |= 1 << j;
      ++len;
      j = pimg(a, j);
    } while (j != i);
    trans += len - 1;
  }
  return trans % 2 == 0;
}

long long p_order(P8 a, int n) {
  long long ord = 1;
  int seen = 0;
  for (int i = 0; i < n; ++i) {
    if (seen & (1 << i)) continue;
    long long len = 0;
    int j = i;
    do {
      seen |= 1 << j;
      ++len;
      j = pimg(a, j);
    } while (j != i);
    ord = std::lcm(ord, len);
  }
  return ord;
}

bool is_prime_power(long long v) {
  if (v < 2) return false;
  for (long long p = 2; p * p <= v; ++p) {
    if (v % p) continue;
    while (v % p == 0) v /= p;
    return v == 1;
  }
  return true;  // v is prime
}

// Cycle type packed 4 bits per length, descending.
std::uint32_t p_type_code(P8 a, int n) {
  int lens[8];
  int count = 0;
  int seen = 0;
  for (int i = 0; i < n; ++i) {
    if (seen & (1 << i)) continue;
    int len = 0, j = i;
    do {
      seen |= 1 << j;
      ++len;
      j = pimg(a, j);
    } while (j != i);
    lens[count++] = len;
  }
  std::sort(lens, lens + count, std::greater<int>());
  std::uint32_t code = 0;
  for (int k = 0; k < count; ++k) code = code << 4 | static_cast<std::uint32_t>(lens[k]);
  return code;
}

int factorial(int n) {
  int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

std::uint32_t lehmer_rank(P8 a, int n) {
  std::uint32_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (pimg(a, j) < pimg(a, i)) ++smaller;
    rank = rank * static_cast<std::uint32_t>(n - i) + static_cast<std::uint32_t>(smaller);
  }
  return rank;
}

std::vector<P8> all_perms(int n) {
  std::vector<int> imgs(static_cast<size_t>(n));
  std::iota(imgs.begin(), imgs.end(), 0);
  std::vector<P8> result;
  result.reserve(static_cast<size_t>(factorial(n)));
  do {
    P8 p = 0;
    for (int i = 0; i < n; ++i) p |= static_cast<P8>(imgs[static_cast<size_t>(i)]) << (8 * i);
    result.push_back(p);
  } while (std::next_permutation(imgs.begin(), imgs.end()));
  return result;
}

bool sorted_contains(const std::vector<P8>& v, P8 x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  return it != v.end() && *it == x;
}

// BFS closure of the generated subgroup; nullopt when it grows past cap.
std::optional<std::vector<P8>> closure(const std::vector<P8>& gens, int n, size_t cap) {
  std::vector<P8> elems = {pack_identity(n)};
  std::vector<P8> sorted = elems;
  for (size_t i = 0; i < elems.size(); ++i) {
    for (P8 g : gens) {
      P8 f = pmul(elems[i], g, n);
      auto it = std::lower_bound(sorted.begin(), sorted.end(), f);
      if (it == sorted.end() || *it != f) {
        if (elems.size() >= cap) return std::nullopt;
        sorted.insert(it, f);
        elems.push_back(f);
      }
    }
  }
  return sorted;
}

std::uint32_t orbit_mask_sizes(const std::vector<P8>& gens, int n) {
  // Sorted orbit sizes packed 4 bits each.
  int parent[8];
  std::iota(parent, parent + n, 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (P8 g : gens)
    for (int i = 0; i < n; ++i) {
      int a = find(i), b = find(pimg(g, i));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  int sizes[8] = {0};
  for (int i = 0; i < n; ++i) ++sizes[find(i)];
  int list[8];
  int count = 0;
  for (int i = 0; i < n; ++i)
    if (sizes[i]) list[count++] = sizes[i];
  std::sort(list, list + count, std::greater<int>());
  std::uint32_t code = 0;
  for (int k = 0; k < count; ++k) code = code << 4 | static_cast<std::uint32_t>(list[k]);
  return code;
}

bool p_transitive(const std::vector<P8>& gens, int n) {
  std::uint32_t code = orbit_mask_sizes(gens, n);
  return code == static_cast<std::uint32_t>(n);
}

/// Subgroup-class store with conjugacy classification by invariant key plus
/// transporter scan over a universe of permutations.
struct ClassStore {
  int n;
  const std::vector<P8>& universe;  // scan domain for conjugation (a group containing all classes)

  struct Cls {
    std::vector<P8> elements;  // sorted
    std::vector<P8> gens;
    std::uint64_t key = 0;
    bool transitive = false;
  };
  std::vector<Cls> classes;
  std::map<std::uint64_t, std::vector<int>> by_key;

  ClassStore(int deg, const std::vector<P8>& u) : n(deg), universe(u) {}

  std::uint64_t invariant_key(const Cls& c) const {
    std::vector<std::uint32_t> codes;
    codes.reserve(c.elements.size());
    for (P8 e : c.elements) codes.push_back(p_type_code(e, n));
    std::sort(codes.begin(), codes.end());
    std::uint64_t h = fnv1a64(codes.data(), codes.size() * sizeof(std::uint32_t));
    std::uint64_t extra[2] = {c.elements.size(), orbit_mask_sizes(c.gens, n)};
    return fnv1a64(extra, sizeof(extra), h);
  }

  bool conjugate_to(const Cls& a, const Cls& b) const {
    if (a.elements.size() != b.elements.size()) return false;
    for (P8 x : universe) {
      bool ok = true;
      for (P8 g : a.gens) {
        if (!sorted_contains(b.elements, pconj(g, x, n))) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  }

  // Returns (class index, is_new).
  std::pair<int, bool> classify(std::vector<P8> elements, std::vector<P8> gens) {
    Cls c{std::move(elements), std::move(gens), 0, false};
    c.transitive = p_transitive(c.gens, n);
    c.key = invariant_key(c);
    for (int idx : by_key[c.key])
      if (conjugate_to(c, classes[static_cast<size_t>(idx)])) return {idx, false};
    int idx = static_cast<int>(classes.size());
    by_key[c.key].push_back(idx);
    classes.push_back(std::move(c));
    return {idx, true};
  }
};

/// Upward closure under single prime-power-order element extensions.
/// Candidates per class are pruned to orbit representatives under the
/// normalizer, plus left/right coset marking for small groups; closures
/// larger than (n-1)! collapse to A_n / S_n by parity (no proper subgroup of
/// S_n with index < n exists besides A_n for n >= 5).
void extend_all(ClassStore& store, std::vector<int> worklist, bool transitive_only) {
  int n = store.n;
  const std::vector<P8>& universe = store.universe;
  size_t usize = universe.size();
  size_t cap = n >= 5 ? static_cast<size_t>(factorial(n - 1)) : usize;

  // Rank within the universe: for the full S_n universe the Lehmer rank,
  // otherwise binary search.
  bool full_universe = usize == static_cast<size_t>(factorial(n));
  auto urank = [&](P8 x) -> size_t {
    if (full_universe) return lehmer_rank(x, n);
    return static_cast<size_t>(std::lower_bound(universe.begin(), universe.end(), x) - universe.begin());
  };

  // Lazily created A_n / S_n classes for capped closures.
  int an_idx = -1, sn_idx = -1;
  auto giant_class = [&](bool any_odd) {
    int& slot = any_odd ? sn_idx : an_idx;
    if (slot < 0) {
      std::vector<P8> elems;
      if (any_odd) {
        elems = universe;
        std::sort(elems.begin(), elems.end());
        // S_n generators: a transposition and an n-cycle.
        std::vector<int> imgs(static_cast<size_t>(n));
        std::iota(imgs.begin(), imgs.end(), 0);
        std::swap(imgs[0], imgs[1]);
        P8 t = 0;
        for (int i = 0; i < n; ++i) t |= static_cast<P8>(imgs[static_cast<size_t>(i)]) << (8 * i);
        P8 cyc = 0;
        for (int i = 0; i < n; ++i) cyc |= static_cast<P8>((i + 1) % n) << (8 * i);
        auto [idx, is_new] = store.classify(std::move(elems), {t, cyc});
        (void)is_new;
        slot = idx;
      } else {
        for (P8 e : universe)
          if (p_is_even(e, n)) elems.push_back(e);
        std::sort(elems.begin(), elems.end());
        P8 c3 = 0;  // (1,2,3) zero-based
        for (int i = 0; i < n; ++i) c3 |= static_cast<P8>(i < 3 ? (i + 1) % 3 : i) << (8 * i);
        P8 cyc = 0;
        if (n % 2 == 1) {
          for (int i = 0; i < n; ++i) cyc |= static_cast<P8>((i + 1) % n) << (8 * i);
        } else {
          cyc = static_cast<P8>(0);
          for (int i = 0; i < n; ++i) {
            int img = i == 0 ? 0 : (i == n - 1 ? 1 : i + 1);
            cyc |= static_cast<P8>(img) << (8 * i);
          }
        }
        auto [idx, is_new] = store.classify(std::move(elems), {c3, cyc});
        (void)is_new;
        slot = idx;
      }
    }
    return slot;
  };

  std::vector<char> skip(usize);
  for (size_t w = 0; w < worklist.size(); ++w) {
    int hidx = worklist[w];
    // Copy what we need; the classes vector reallocates as it grows.
    std::vector<P8> hgens = store.classes[static_cast<size_t>(hidx)].gens;
    std::vector<P8> helems = store.classes[static_cast<size_t>(hidx)].elements;

    std::vector<P8> normalizer;
    for (P8 x : universe) {
      bool ok = true;
      for (P8 g : hgens) {
        if (!sorted_contains(helems, pconj(g, x, n))) {
          ok = false;
          break;
        }
      }
      if (ok) normalizer.push_back(x);
    }

    std::fill(skip.begin(), skip.end(), 0);
    bool mark_cosets = helems.size() <= 128;
    bool any_h_odd = false;
    for (P8 g : hgens) any_h_odd = any_h_odd || !p_is_even(g, n);

    for (size_t r = 0; r < usize; ++r) {
      if (skip[r]) continue;
      P8 g = universe[r];
      if (sorted_contains(helems, g)) continue;
      if (!is_prime_power(p_order(g, n))) continue;
      for (P8 x : normalizer) skip[urank(pconj(g, x, n))] = 1;
      if (mark_cosets)
        for (P8 h : helems) {
          skip[urank(pmul(h, g, n))] = 1;
          skip[urank(pmul(g, h, n))] = 1;
        }

      std::vector<P8> kgens = hgens;
      kgens.push_back(g);
      auto closed = closure(kgens, n, cap);
      int kidx;
      bool is_new;
      if (!closed) {
        kidx = giant_class(any_h_odd || !p_is_even(g, n));
        is_new = false;  // giant_class registers and, if new, we still never extend past S_n
        if (store.classes[static_cast<size_t>(kidx)].elements.size() == usize) continue;  // S_n: nothing above
      } else {
        std::tie(kidx, is_new) = store.classify(std::move(*closed), std::move(kgens));
      }
      if (is_new && (!transitive_only || store.classes[static_cast<size_t>(kidx)].transitive))
        worklist.push_back(kidx);
    }
  }
}

// All subgroups of the fixed Sylow 2-subgroup of S_8, up to conjugacy in it,
// that act transitively; these seed the degree-8 search (a transitive group
// of 2-power degree has a transitive Sylow 2-subgroup).
std::vector<std::vector<P8>> transitive_two_subgroups_degree8() {
  const int n = 8;
  auto parse = [&](std::initializer_list<std::pair<int, int>> swaps) {
    std::vector<int> imgs(8);
    std::iota(imgs.begin(), imgs.end(), 0);
    for (auto [a, b] : swaps) std::swap(imgs[static_cast<size_t>(a)], imgs[static_cast<size_t>(b)]);
    P8 p = 0;
    for (int i = 0; i < 8; ++i) p |= static_cast<P8>(imgs[static_cast<size_t>(i)]) << (8 * i);
    return p;
  };
  std::vector<P8> wgens = {
      parse({{0, 1}}),
      parse({{2, 3}}),
      parse({{0, 2}, {1, 3}}),
      parse({{4, 5}}),
      parse({{6, 7}}),
      parse({{4, 6}, {5, 7}}),
      parse({{0, 4}, {1, 5}, {2, 6}, {3, 7}}),
  };
  auto w = closure(wgens, n, 1 << 20);
  if (!w || w->size() != 128) throw error("internal: Sylow 2-subgroup of S_8 has wrong order");

  ClassStore store(n, *w);
  auto [triv, is_new] = store.classify({pack_identity(n)}, {});
  (void)is_new;
  extend_all(store, {triv}, false);

  std::vector<std::vector<P8>> result;
  for (const auto& cls : store.classes)
    if (cls.transitive) result.push_back(cls.gens);
  return result;
}

GroupDatabase build_builtin(int degree) {
  if (degree < 2 || degree > 8)
    throw error("builtin_transitive_groups: degree must be in 2..8 (use an external group database)");
  int n = degree;
  std::vector<P8> universe = all_perms(n);
  ClassStore store(n, universe);

  if (n <= 7) {
    // Full subgroup lattice, filtered to the transitive classes at the end.
    auto [triv, is_new] = store.classify({pack_identity(n)}, {});
    (void)is_new;
    extend_all(store, {triv}, false);
  } else {
    std::vector<int> seeds;
    for (auto& gens : transitive_two_subgroups_degree8()) {
      auto closed = closure(gens, n, 1 << 20);
      auto [idx, fresh] = store.classify(std::move(*closed), std::move(gens));
      if (fresh) seeds.push_back(idx);
    }
    extend_all(store, std::move(seeds), true);
  }

  // Reduce generator lists greedily, deterministically.
  struct Entry {
    std::uint64_t order;
    std::vector<std::vector<int>> gen_images;
  };
  std::vector<Entry> entries;
  for (const auto& cls : store.classes) {
    if (!cls.transitive) continue;
    std::vector<P8> gens = cls.gens;
    std::sort(gens.begin(), gens.end(),
              [&](P8 a, P8 b) { return lehmer_rank(a, n) < lehmer_rank(b, n); });
    size_t target = cls.elements.size();
    for (size_t i = 0; i < gens.size() && gens.size() > 1;) {
      std::vector<P8> rest;
      for (size_t j = 0; j < gens.size(); ++j)
        if (j != i) rest.push_back(gens[j]);
      auto closed = closure(rest, n, target + 1);
      if (closed && closed->size() == target)
        gens = std::move(rest);
      else
        ++i;
    }
    Entry e;
    e.order = cls.elements.size();
    for (P8 g : gens) {
      std::vector<int> imgs(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) imgs[static_cast<size_t>(i)] = pimg(g, i) + 1;
      e.gen_images.push_back(std::move(imgs));
    }
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.gen_images < b.gen_images;
  });

  GroupDatabase db;
  db.degree = n;
  for (auto& e : entries) {
    std::vector<Permutation> gens;
    for (auto& imgs : e.gen_images) gens.push_back(Permutation::from_images(std::move(imgs)));
    db.groups.emplace_back(n, std::move(gens));
    db.groups.back().freeze();
  }
  return db;
}

}  // namespace

const GroupDatabase& builtin_transitive_groups(int degree) {
  static std::mutex mu;
  static std::map<int, GroupDatabase> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, build_builtin(degree)).first;
  return it->second;
}

GroupDatabase load_group_db(std::istream& in) {
  GroupDatabase db;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed;
    for (char ch : line)
      if (ch != '\r') trimmed += ch;
    size_t first = trimmed.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (trimmed[first] == '#') continue;
    auto where = "group db line " + std::to_string(lineno);
    size_t semi = trimmed.find(';');
    if (semi == std::string::npos) throw error(where + ": missing ';'");
    int degree = 0;
    try {
      degree = std::stoi(trimmed.substr(0, semi));
    } catch (...) {
      throw error(where + ": bad degree");
    }
    if (degree < 1 || degree > 64) throw error(where + ": degree out of range");
    if (db.degree == 0) db.degree = degree;
    if (degree != db.degree) throw error(where + ": degree mismatch (expected " + std::to_string(db.degree) + ")");

    std::vector<Permutation> gens;
    std::string rest = trimmed.substr(semi + 1);
    std::string token;
    int depth = 0;
    auto flush = [&] {
      size_t a = token.find_first_not_of(" \t");
      if (a == std::string::npos) {
        token.clear();
        return;
      }
      gens.push_back(Permutation::parse_cycles(token, degree));
      token.clear();
    };
    for (char ch : rest) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == ',' && depth == 0) {
        flush();
        continue;
      }
      token += ch;
    }
    flush();
    if (gens.empty()) throw error(where + ": no generators");
    PermGroup g(degree, std::move(gens));
    if (!g.is_transitive()) throw error(where + ": group is not transitive");
    db.groups.push_back(std::move(g));
  }
  if (db.groups.empty()) throw error("group db: no groups found");
  return db;
}

GroupDatabase load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open group db file: " + path);
  return load_group_db(in);
}

void save_group_db(const GroupDatabase& db, std::ostream& out) {
  for (const auto& g : db.groups) {
    out << db.degree << "; ";
    const auto& gens = g.generators();
    for (size_t i = 0; i < gens.size(); ++i) {
      if (i) out << ", ";
      out << gens[i].cycle_string();
    }
    out << "\n";
  }
}

}  // namespace qf
