#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "qf/error.hpp"
#include "qf/rack.hpp"
#include "qf/util.hpp"

namespace qf {

namespace {

std::uint64_t hash_ints(const std::vector<std::uint64_t>& v, std::uint64_t seed) {
  return fnv1a64(v.data(), v.size() * sizeof(std::uint64_t), seed);
}

/// Per-element invariant labels, stable under relabeling: iterated
/// refinement of (cycle type of phi_i, idempotence, component size) by the
/// neighborhood profile. Equal labels for elements that correspond under an
/// isomorphism.
std::vector<std::uint64_t> invariant_labels(const RackTable& x) {
  int n = x.size();
  auto phis = translations(x);
  auto comps = components(x);
  std::vector<std::uint64_t> comp_size(static_cast<size_t>(n) + 1, 0);
  for (const auto& block : comps.blocks)
    for (int p : block) comp_size[static_cast<size_t>(p)] = block.size();

  std::vector<std::uint64_t> label(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> data;
    for (int len : phis[static_cast<size_t>(i - 1)].cycle_type())
      data.push_back(static_cast<std::uint64_t>(len));
    data.push_back(x.at(i, i) == i ? 1u : 2u);
    data.push_back(comp_size[static_cast<size_t>(i)]);
    label[static_cast<size_t>(i)] = hash_ints(data, 0x9e3779b97f4a7c15ull);
  }
  for (int round = 0; round < 4; ++round) {
    std::vector<std::uint64_t> next(static_cast<size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
      std::vector<std::uint64_t> data;
      data.reserve(static_cast<size_t>(n) * 3 + 1);
      std::vector<std::uint64_t> profile;
      for (int j = 1; j <= n; ++j) {
        std::vector<std::uint64_t> triple = {label[static_cast<size_t>(j)],
                                             label[static_cast<size_t>(x.at(i, j))],
                                             label[static_cast<size_t>(x.at(j, i))]};
        profile.push_back(hash_ints(triple, 0xff51afd7ed558ccdull));
      }
      std::sort(profile.begin(), profile.end());
      data.push_back(label[static_cast<size_t>(i)]);
      data.insert(data.end(), profile.begin(), profile.end());
      next[static_cast<size_t>(i)] = hash_ints(data, 0xc4ceb9fe1a85ec53ull);
    }
    if (next == label) break;
    label = std::move(next);
  }
  label.erase(label.begin());  // drop unused slot 0; label[i-1] is element i
  return label;
}

/// Lexicographically smallest image vector of a permutation fixing point 1
/// with the given cycle type (lengths including fixed points, any order).
/// Fixed points first, then cycles by ascending length on consecutive points.
std::vector<int> min_row_for_type(int n, std::vector<int> type) {
  std::sort(type.begin(), type.end());
  // Remove one length-1 part for the fixed point 1.
  auto it = std::find(type.begin(), type.end(), 1);
  if (it == type.end()) throw error("min_row_for_type: type has no fixed point");
  type.erase(it);
  std::vector<int> row(static_cast<size_t>(n) + 1, 0);
  row[1] = 1;
  int next = 2;
  for (int len : type) {
    for (int k = 0; k < len; ++k)
      row[static_cast<size_t>(next + k)] = k + 1 == len ? next : next + k + 1;
    next += len;
  }
  row.erase(row.begin());
  return row;
}

struct CanonSearch {
  const RackTable& x;
  int n;
  std::vector<std::vector<int>> row;  // row[i-1][j-1] = x.at(i,j)
  std::vector<std::uint64_t> labels;
  std::vector<int> label_order;  // element -> rank of its invariant class

  std::vector<int> pi;     // new label -> original element (1-based, slot 0 unused)
  std::vector<int> sigma;  // original element -> new label, 0 = unassigned
  std::vector<int> best;   // incumbent flat table
  std::vector<int> sigma_best;
  std::vector<std::vector<int>> autos;  // automorphism image arrays (1-based)
  std::set<std::vector<int>> autos_seen;

  explicit CanonSearch(const RackTable& table) : x(table), n(table.size()) {
    row.resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
      row[static_cast<size_t>(i - 1)].resize(static_cast<size_t>(n));
      for (int j = 1; j <= n; ++j) row[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = x.at(i, j);
    }
    labels = invariant_labels(x);
    std::vector<std::uint64_t> sorted_labels = labels;
    std::sort(sorted_labels.begin(), sorted_labels.end());
    sorted_labels.erase(std::unique(sorted_labels.begin(), sorted_labels.end()), sorted_labels.end());
    label_order.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      label_order[static_cast<size_t>(i)] = static_cast<int>(
          std::lower_bound(sorted_labels.begin(), sorted_labels.end(), labels[static_cast<size_t>(i)]) -
          sorted_labels.begin());
    pi.assign(static_cast<size_t>(n) + 1, 0);
    sigma.assign(static_cast<size_t>(n) + 1, 0);
    best = x.entries();  // identity relabeling as the initial incumbent
    sigma_best.resize(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) sigma_best[static_cast<size_t>(i)] = i;
  }

  enum class Cmp { kWorse, kOpen, kBetter };

  // Row-major comparison of the determined prefix against the incumbent.
  Cmp compare(int depth) const {
    for (int a = 1; a <= depth; ++a) {
      const auto& ra = row[static_cast<size_t>(pi[static_cast<size_t>(a)] - 1)];
      for (int b = 1; b <= n; ++b) {
        if (b > depth) return Cmp::kOpen;
        int v = sigma[static_cast<size_t>(ra[static_cast<size_t>(pi[static_cast<size_t>(b)] - 1)])];
        if (v == 0) return Cmp::kOpen;
        int bv = best[static_cast<size_t>(a - 1) * n + (b - 1)];
        if (v != bv) return v < bv ? Cmp::kBetter : Cmp::kWorse;
      }
    }
    return Cmp::kOpen;
  }

  void at_leaf() {
    std::vector<int> flat(static_cast<size_t>(n) * n);
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b)
        flat[static_cast<size_t>(a - 1) * n + (b - 1)] =
            sigma[static_cast<size_t>(row[static_cast<size_t>(pi[static_cast<size_t>(a)] - 1)]
                                         [static_cast<size_t>(pi[static_cast<size_t>(b)] - 1)])];
    if (flat < best) {
      best = std::move(flat);
      sigma_best = sigma;
      return;
    }
    if (flat == best) {
      // sigma_best^-1 after sigma is an automorphism of x.
      std::vector<int> inv(static_cast<size_t>(n) + 1);
      for (int i = 1; i <= n; ++i) inv[static_cast<size_t>(sigma_best[static_cast<size_t>(i)])] = i;
      std::vector<int> a(static_cast<size_t>(n));
      for (int i = 1; i <= n; ++i)
        a[static_cast<size_t>(i - 1)] = inv[static_cast<size_t>(sigma[static_cast<size_t>(i)])];
      if (autos.size() < 200 && autos_seen.insert(a).second) autos.push_back(std::move(a));
    }
  }

  void dfs(int depth) {
    if (depth == n) {
      at_leaf();
      return;
    }
    int next_label = depth + 1;
    // Candidate order: smallest realized value for the first open cell of
    // row 1 first, then invariant class, then index.
    std::vector<std::pair<long long, int>> cands;
    for (int c = 1; c <= n; ++c) {
      if (sigma[static_cast<size_t>(c)] != 0) continue;
      long long key;
      if (depth == 0) {
        key = 0;
      } else {
        int v = row[static_cast<size_t>(pi[1] - 1)][static_cast<size_t>(c - 1)];
        int sv = sigma[static_cast<size_t>(v)];
        key = sv == 0 ? (1 << 20) : sv;
      }
      key = key * 1024 + label_order[static_cast<size_t>(c - 1)];
      cands.emplace_back(key * 1024 + c, c);
    }
    std::sort(cands.begin(), cands.end());
    std::vector<char> tried(static_cast<size_t>(n) + 1, 0);
    for (auto [key, c] : cands) {
      (void)key;
      bool skip = false;
      for (const auto& a : autos) {
        bool fixes_prefix = true;
        for (int k = 1; k <= depth; ++k)
          if (a[static_cast<size_t>(pi[static_cast<size_t>(k)] - 1)] != pi[static_cast<size_t>(k)]) {
            fixes_prefix = false;
            break;
          }
        if (fixes_prefix && tried[static_cast<size_t>(a[static_cast<size_t>(c - 1)])]) {
          skip = true;
          break;
        }
      }
      tried[static_cast<size_t>(c)] = 1;
      if (skip) continue;
      if (depth == 0) {
        // Final row 1 is a conjugate of phi_c, so its minimum over
        // relabelings depends only on the cycle type.
        auto phi_type = Permutation::from_images(row[static_cast<size_t>(c - 1)]).cycle_type();
        if (x.at(c, c) == c) {
          std::vector<int> lower = min_row_for_type(n, phi_type);
          std::vector<int> best_row1(best.begin(), best.begin() + n);
          if (lower > best_row1) continue;
        }
      }
      pi[static_cast<size_t>(next_label)] = c;
      sigma[static_cast<size_t>(c)] = next_label;
      if (compare(next_label) != Cmp::kWorse) dfs(next_label);
      pi[static_cast<size_t>(next_label)] = 0;
      sigma[static_cast<size_t>(c)] = 0;
    }
  }

  RackTable run() {
    dfs(0);
    return RackTable::validate_flat(n, best);
  }
};

}  // namespace

RackTable canonical_form(const RackTable& x) {
  if (x.size() == 1) return x;
  return CanonSearch(x).run();
}

std::optional<Permutation> find_isomorphism(const RackTable& x, const RackTable& y) {
  if (x.size() != y.size()) return std::nullopt;
  int n = x.size();
  if (n == 1) return Permutation(1);
  auto lx = invariant_labels(x);
  auto ly = invariant_labels(y);
  {
    auto sx = lx, sy = ly;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    if (sx != sy) return std::nullopt;
  }
  // Process x's elements rarest invariant class first.
  std::map<std::uint64_t, int> class_size;
  for (auto l : lx) ++class_size[l];
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i + 1;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int ca = class_size[lx[static_cast<size_t>(a - 1)]];
    int cb = class_size[lx[static_cast<size_t>(b - 1)]];
    if (ca != cb) return ca < cb;
    return a < b;
  });

  std::vector<int> fwd(static_cast<size_t>(n) + 1, 0), bwd(static_cast<size_t>(n) + 1, 0);
  std::vector<int> trail;

  // Assigns f(i) = v and propagates f(a|>b) = f(a)|>f(b) over known pairs.
  auto assign = [&](auto&& self, int i, int v) -> bool {
    if (fwd[static_cast<size_t>(i)] != 0) return fwd[static_cast<size_t>(i)] == v;
    if (bwd[static_cast<size_t>(v)] != 0) return false;
    if (lx[static_cast<size_t>(i - 1)] != ly[static_cast<size_t>(v - 1)]) return false;
    fwd[static_cast<size_t>(i)] = v;
    bwd[static_cast<size_t>(v)] = i;
    trail.push_back(i);
    for (int j = 1; j <= n; ++j) {
      if (fwd[static_cast<size_t>(j)] == 0) continue;
      int fj = fwd[static_cast<size_t>(j)];
      if (!self(self, x.at(i, j), y.at(v, fj))) return false;
      if (!self(self, x.at(j, i), y.at(fj, v))) return false;
    }
    return true;
  };

  auto undo_to = [&](size_t mark) {
    while (trail.size() > mark) {
      int i = trail.back();
      trail.pop_back();
      bwd[static_cast<size_t>(fwd[static_cast<size_t>(i)])] = 0;
      fwd[static_cast<size_t>(i)] = 0;
    }
  };

  std::function<bool(size_t)> dfs = [&](size_t pos) -> bool {
    while (pos < order.size() && fwd[static_cast<size_t>(order[pos])] != 0) ++pos;
    if (pos == order.size()) return true;
    int i = order[pos];
    for (int v = 1; v <= n; ++v) {
      if (bwd[static_cast<size_t>(v)] != 0) continue;
      if (lx[static_cast<size_t>(i - 1)] != ly[static_cast<size_t>(v - 1)]) continue;
      size_t mark = trail.size();
      if (assign(assign, i, v) && dfs(pos + 1)) return true;
      undo_to(mark);
    }
    return false;
  };

  if (!dfs(0)) return std::nullopt;
  std::vector<int> imgs(fwd.begin() + 1, fwd.end());
  Permutation sigma = Permutation::from_images(std::move(imgs));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (y.at(sigma(i), sigma(j)) != sigma(x.at(i, j)))
        throw error("find_isomorphism: internal verification failed");
  return sigma;
}

}  // namespace qf
