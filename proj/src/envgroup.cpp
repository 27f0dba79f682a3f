#include "qf/envgroup.hpp"

#include <algorithm>
#include <deque>

#include "qf/error.hpp"

namespace qf {

std::vector<int> free_reduce(std::vector<int> word) {
  std::vector<int> out;
  for (int letter : word) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

GroupPresentation enveloping_presentation(const RackTable& x, bool finite) {
  GroupPresentation p;
  p.num_generators = x.size();
  for (int i = 1; i <= x.size(); ++i)
    for (int j = 1; j <= x.size(); ++j)
      p.relators.push_back(free_reduce({i, j, -i, -x.at(i, j)}));
  if (finite) {
    auto phis = translations(x);
    for (int i = 1; i <= x.size(); ++i) {
      long long ord = phis[static_cast<size_t>(i - 1)].order();
      p.relators.push_back(std::vector<int>(static_cast<size_t>(ord), i));
    }
  }
  return p;
}

namespace {

/// Coset enumeration working state. Cosets are 0-based; entry -1 means
/// undefined; column 2g is generator g+1, column 2g+1 its inverse.
struct Enumerator {
  int ncols;
  std::size_t max_cosets;
  std::vector<std::vector<int>> tab;
  std::vector<int> parent;  // union-find; parent[c] == c for live cosets
  std::deque<std::pair<int, int>> pending;
  std::size_t live = 1;

  Enumerator(int ngens, std::size_t max) : ncols(2 * ngens), max_cosets(max) {
    tab.emplace_back(ncols, -1);
    parent.push_back(0);
  }

  int rep(int c) {
    while (parent[static_cast<size_t>(c)] != c) {
      parent[static_cast<size_t>(c)] = parent[static_cast<size_t>(parent[static_cast<size_t>(c)])];
      c = parent[static_cast<size_t>(c)];
    }
    return c;
  }

  int define(int c, int col) {
    if (tab.size() >= max_cosets)
      throw error("todd_coxeter: coset bound " + std::to_string(max_cosets) + " exceeded");
    int d = static_cast<int>(tab.size());
    tab.emplace_back(ncols, -1);
    parent.push_back(d);
    ++live;
    tab[static_cast<size_t>(c)][static_cast<size_t>(col)] = d;
    tab[static_cast<size_t>(d)][static_cast<size_t>(col ^ 1)] = c;
    return d;
  }

  void merge(int a, int b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[static_cast<size_t>(b)] = a;
    --live;
    pending.emplace_back(a, b);
  }

  // Connects x --col--> y among live representatives, merging on conflict.
  void set_edge(int x, int col, int y) {
    x = rep(x);
    y = rep(y);
    int w = tab[static_cast<size_t>(x)][static_cast<size_t>(col)];
    if (w != -1 && rep(w) != y) {
      merge(w, y);
      return;
    }
    int u = tab[static_cast<size_t>(y)][static_cast<size_t>(col ^ 1)];
    if (u != -1 && rep(u) != x) {
      merge(u, x);
      return;
    }
    tab[static_cast<size_t>(x)][static_cast<size_t>(col)] = y;
    tab[static_cast<size_t>(y)][static_cast<size_t>(col ^ 1)] = x;
  }

  // Moves the dead cosets' edges onto their representatives and normalizes
  // stale pointers, merging further cosets as conflicts surface.
  void process_coincidences() {
    while (!pending.empty()) {
      auto [a, b] = pending.front();
      pending.pop_front();
      (void)a;
      for (int col = 0; col < ncols; ++col) {
        int e = tab[static_cast<size_t>(b)][static_cast<size_t>(col)];
        if (e == -1) continue;
        tab[static_cast<size_t>(b)][static_cast<size_t>(col)] = -1;
        if (tab[static_cast<size_t>(e)][static_cast<size_t>(col ^ 1)] == b)
          tab[static_cast<size_t>(e)][static_cast<size_t>(col ^ 1)] = -1;
        set_edge(rep(b), col, rep(e));
      }
    }
  }

  static int col_of(int letter) {
    return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
  }

  void scan_and_fill(int a, const std::vector<int>& word) {
    if (word.empty()) return;
    int len = static_cast<int>(word.size());
    a = rep(a);
    int f = a, i = 0;
    while (i < len) {
      int nf = tab[static_cast<size_t>(f)][static_cast<size_t>(col_of(word[static_cast<size_t>(i)]))];
      if (nf == -1) break;
      f = rep(nf);
      ++i;
    }
    if (i == len) {
      if (f != a) merge(f, a);
      return;
    }
    int b = a, j = len - 1;
    while (j > i) {
      int nb = tab[static_cast<size_t>(b)][static_cast<size_t>(col_of(word[static_cast<size_t>(j)]) ^ 1)];
      if (nb == -1) break;
      b = rep(nb);
      --j;
    }
    // Fill the open stretch f --w[i..j]--> b, defining fresh cosets for the
    // interior and closing with a deduction.
    for (int pos = i; pos < j; ++pos)
      f = define(f, col_of(word[static_cast<size_t>(pos)]));
    set_edge(f, col_of(word[static_cast<size_t>(j)]), b);
  }
};

}  // namespace

CosetTable todd_coxeter(const GroupPresentation& p, std::size_t max_cosets) {
  if (p.num_generators < 0) throw error("todd_coxeter: bad presentation");
  for (const auto& w : p.relators)
    for (int letter : w)
      if (letter == 0 || std::abs(letter) > p.num_generators)
        throw error("todd_coxeter: relator letter out of range");

  Enumerator e(p.num_generators, max_cosets);
  if (p.num_generators == 0) return CosetTable{1, {}};
  for (std::size_t a = 0; a < e.tab.size(); ++a) {
    if (e.rep(static_cast<int>(a)) != static_cast<int>(a)) continue;
    for (const auto& w : p.relators) {
      e.scan_and_fill(static_cast<int>(a), w);
      e.process_coincidences();
      if (e.rep(static_cast<int>(a)) != static_cast<int>(a)) break;
    }
    if (e.rep(static_cast<int>(a)) != static_cast<int>(a)) continue;
    for (int col = 0; col < e.ncols; ++col)
      if (e.tab[a][static_cast<size_t>(col)] == -1) e.define(static_cast<int>(a), col);
  }

  // Standardize: breadth-first renumbering from the representative of the
  // start coset, columns in order.
  int start = e.rep(0);
  std::vector<int> number(e.tab.size(), 0);  // 1-based new ids
  std::vector<int> order;
  number[static_cast<size_t>(start)] = 1;
  order.push_back(start);
  for (std::size_t k = 0; k < order.size(); ++k) {
    int c = order[k];
    for (int col = 0; col < e.ncols; ++col) {
      int d = e.tab[static_cast<size_t>(c)][static_cast<size_t>(col)];
      if (d == -1) throw error("todd_coxeter: table failed to close");
      d = e.rep(d);
      if (!number[static_cast<size_t>(d)]) {
        number[static_cast<size_t>(d)] = static_cast<int>(order.size()) + 1;
        order.push_back(d);
      }
    }
  }
  int count = static_cast<int>(order.size());
  CosetTable result;
  result.count = count;
  for (int g = 0; g < p.num_generators; ++g) {
    std::vector<int> imgs(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
      int d = e.rep(e.tab[static_cast<size_t>(order[static_cast<size_t>(k)])][static_cast<size_t>(2 * g)]);
      imgs[static_cast<size_t>(k)] = number[static_cast<size_t>(d)];
    }
    result.generator_action.push_back(Permutation::from_images(std::move(imgs)));
  }
  return result;
}

std::uint64_t finite_enveloping_order(const RackTable& x, std::size_t max_cosets) {
  return static_cast<std::uint64_t>(todd_coxeter(enveloping_presentation(x, true), max_cosets).count);
}

AbelianInvariants abelian_invariants(const GroupPresentation& p) {
  int m = p.num_generators;
  int r = static_cast<int>(p.relators.size());
  IntMatrix e(m, std::max(r, 1));
  for (int c = 0; c < r; ++c)
    for (int letter : p.relators[static_cast<size_t>(c)])
      e.at(std::abs(letter) - 1, c) += letter > 0 ? 1 : -1;
  auto snf = smith_normal_form(e);
  AbelianInvariants result;
  result.betti = m - snf.rank;
  result.torsion = snf.torsion();
  return result;
}

}  // namespace qf
