#include "qf/perm_group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "qf/error.hpp"

namespace qf {

namespace {

constexpr std::uint64_t kNoOrder = ~0ull;

/// Clamped product of orbit sizes; kNoOrder signals 64-bit overflow.
std::uint64_t mul_clamped(std::uint64_t a, std::uint64_t b) {
  if (a == kNoOrder) return kNoOrder;
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (p >= static_cast<unsigned __int128>(kNoOrder)) return kNoOrder;
  return static_cast<std::uint64_t>(p);
}

}  // namespace

struct PermGroup::Chain {
  int degree = 0;
  std::vector<Permutation> strong;
  std::set<std::vector<int>> strong_seen;

  struct Level {
    int base_point = 0;
    std::vector<int> orbit;                          // discovery order
    std::unordered_map<int, Permutation> transversal;  // point -> u, base^u = point
    std::vector<int> gen_idx;
  };
  std::vector<Level> levels;

  explicit Chain(int deg) : degree(deg) {
    levels.reserve(static_cast<size_t>(std::max(0, deg - 1)));
    for (int b = 1; b < deg; ++b) {
      Level lvl;
      lvl.base_point = b;
      lvl.orbit = {b};
      lvl.transversal.emplace(b, Permutation(deg));
      levels.push_back(std::move(lvl));
    }
  }

  void recompute_orbit(size_t l) {
    Level& lvl = levels[l];
    lvl.orbit.clear();
    lvl.transversal.clear();
    lvl.orbit.push_back(lvl.base_point);
    lvl.transversal.emplace(lvl.base_point, Permutation(degree));
    for (size_t i = 0; i < lvl.orbit.size(); ++i) {
      int p = lvl.orbit[i];
      const Permutation& up = lvl.transversal.at(p);
      for (int gi : lvl.gen_idx) {
        const Permutation& s = strong[static_cast<size_t>(gi)];
        int q = s(p);
        if (!lvl.transversal.count(q)) {
          lvl.transversal.emplace(q, up * s);
          lvl.orbit.push_back(q);
        }
      }
    }
  }

  // Adds a strong generator and refreshes the orbits it can enlarge.
  // Returns false when redundant.
  bool add_strong(const Permutation& g) {
    if (g.is_identity()) return false;
    if (!strong_seen.insert(g.images()).second) return false;
    int idx = static_cast<int>(strong.size());
    strong.push_back(g);
    for (size_t l = 0; l < levels.size(); ++l) {
      levels[l].gen_idx.push_back(idx);
      recompute_orbit(l);
      if (g(levels[l].base_point) != levels[l].base_point) break;
    }
    return true;
  }

  // Sifts g through levels starting at from; returns the residual and the
  // level index it stopped at (levels.size() when fully sifted).
  std::pair<Permutation, size_t> sift(Permutation g, size_t from) const {
    for (size_t l = from; l < levels.size(); ++l) {
      int p = g(levels[l].base_point);
      if (p == levels[l].base_point) continue;
      auto it = levels[l].transversal.find(p);
      if (it == levels[l].transversal.end()) return {std::move(g), l};
      g = g * it->second.inverse();
    }
    return {std::move(g), levels.size()};
  }

  bool is_member(const Permutation& g) const {
    auto [residual, lvl] = sift(g, 0);
    return lvl == levels.size() && residual.is_identity();
  }

  std::uint64_t order_clamped() const {
    std::uint64_t result = 1;
    for (const auto& lvl : levels) result = mul_clamped(result, lvl.orbit.size());
    return result;
  }

  void build(const std::vector<Permutation>& gens) {
    for (const auto& g : gens) add_strong(g);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t l = 0; l < levels.size() && !dirty; ++l) {
        // Snapshot: orbit/gen lists may grow when a residual is added.
        std::vector<int> orbit = levels[l].orbit;
        std::vector<int> gen_idx = levels[l].gen_idx;
        for (int p : orbit) {
          if (dirty) break;
          Permutation up = levels[l].transversal.at(p);
          for (int gi : gen_idx) {
            const Permutation& s = strong[static_cast<size_t>(gi)];
            int q = s(p);
            Permutation schreier = up * s * levels[l].transversal.at(q).inverse();
            auto [residual, at] = sift(std::move(schreier), l + 1);
            (void)at;
            if (!residual.is_identity()) {
              add_strong(residual);
              dirty = true;
              break;
            }
          }
        }
      }
    }
  }
};

PermGroup::PermGroup(int degree, std::vector<Permutation> generators)
    : degree_(degree), gens_(std::move(generators)) {
  if (degree < 1) throw error("group degree must be positive");
  for (const auto& g : gens_)
    if (g.degree() != degree) throw error("generator degree mismatch");
}

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {}); }

PermGroup PermGroup::symmetric(int degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) {
    gens.push_back(Permutation::parse_cycles("(1,2)", degree));
    if (degree >= 3) {
      std::vector<int> imgs(static_cast<size_t>(degree));
      for (int p = 1; p <= degree; ++p) imgs[static_cast<size_t>(p - 1)] = p % degree + 1;
      gens.push_back(Permutation::from_images(imgs));
    }
  }
  return PermGroup(degree, std::move(gens));
}

PermGroup PermGroup::alternating(int degree) {
  std::vector<Permutation> gens;
  if (degree >= 3) {
    gens.push_back(Permutation::parse_cycles("(1,2,3)", degree));
    if (degree >= 4) {
      std::vector<int> imgs(static_cast<size_t>(degree));
      if (degree % 2 == 1) {
        for (int p = 1; p <= degree; ++p) imgs[static_cast<size_t>(p - 1)] = p % degree + 1;
      } else {
        imgs[0] = 1;
        for (int p = 2; p <= degree; ++p) imgs[static_cast<size_t>(p - 1)] = p == degree ? 2 : p + 1;
      }
      gens.push_back(Permutation::from_images(imgs));
    }
  }
  return PermGroup(degree, std::move(gens));
}

const PermGroup::Chain& PermGroup::chain() const {
  if (!chain_) {
    auto built = std::make_shared<Chain>(degree_);
    built->build(gens_);
    chain_ = std::move(built);
  }
  return *chain_;
}

void PermGroup::freeze() const { chain(); }

std::uint64_t PermGroup::order() const {
  std::uint64_t o = chain().order_clamped();
  if (o == kNoOrder) throw error("group order exceeds 64 bits");
  return o;
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) throw error("membership test: degree mismatch");
  return chain().is_member(g);
}

bool PermGroup::contains_group(const PermGroup& sub) const {
  for (const auto& g : sub.generators())
    if (!contains(g)) return false;
  return true;
}

std::vector<int> PermGroup::orbit(int point) const {
  if (point < 1 || point > degree_) throw error("orbit: point out of range");
  std::vector<int> result = {point};
  std::vector<char> seen(static_cast<size_t>(degree_) + 1, 0);
  seen[static_cast<size_t>(point)] = 1;
  for (size_t i = 0; i < result.size(); ++i) {
    for (const auto& g : gens_) {
      int q = g(result[i]);
      if (!seen[static_cast<size_t>(q)]) {
        seen[static_cast<size_t>(q)] = 1;
        result.push_back(q);
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<std::vector<int>> result;
  std::vector<char> seen(static_cast<size_t>(degree_) + 1, 0);
  for (int p = 1; p <= degree_; ++p) {
    if (seen[static_cast<size_t>(p)]) continue;
    auto orb = orbit(p);
    for (int q : orb) seen[static_cast<size_t>(q)] = 1;
    result.push_back(std::move(orb));
  }
  return result;
}

bool PermGroup::is_transitive() const {
  return static_cast<int>(orbit(1).size()) == degree_;
}

PermGroup PermGroup::stabilizer(int point) const {
  if (point < 1 || point > degree_) throw error("stabilizer: point out of range");
  // Orbit with transversal, then Schreier generators.
  std::vector<int> orb = {point};
  std::unordered_map<int, Permutation> transversal;
  transversal.emplace(point, Permutation(degree_));
  for (size_t i = 0; i < orb.size(); ++i) {
    int p = orb[i];
    const Permutation up = transversal.at(p);
    for (const auto& s : gens_) {
      int q = s(p);
      if (!transversal.count(q)) {
        transversal.emplace(q, up * s);
        orb.push_back(q);
      }
    }
  }
  std::set<std::vector<int>> seen;
  std::vector<Permutation> sgens;
  for (int p : orb) {
    const Permutation& up = transversal.at(p);
    for (const auto& s : gens_) {
      Permutation schreier = up * s * transversal.at(s(p)).inverse();
      if (schreier.is_identity()) continue;
      if (seen.insert(schreier.images()).second) sgens.push_back(std::move(schreier));
    }
  }
  std::sort(sgens.begin(), sgens.end());
  return PermGroup(degree_, std::move(sgens));
}

std::vector<Permutation> PermGroup::elements(std::size_t limit) const {
  if (chain().order_clamped() == kNoOrder || order() > limit)
    throw error("element enumeration: group order exceeds limit " + std::to_string(limit));
  std::set<std::vector<int>> seen;
  std::vector<Permutation> result;
  result.push_back(Permutation(degree_));
  seen.insert(result[0].images());
  for (size_t i = 0; i < result.size(); ++i) {
    for (const auto& g : gens_) {
      Permutation f = result[i] * g;
      if (seen.insert(f.images()).second) result.push_back(std::move(f));
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<Permutation> PermGroup::center() const {
  auto commutes_with_gens = [&](const Permutation& z) {
    for (const auto& s : gens_)
      if (!(z * s == s * z)) return false;
    return true;
  };
  std::uint64_t oc = chain().order_clamped();
  if (oc != kNoOrder && oc <= 10000) {
    std::vector<Permutation> result;
    for (auto& e : elements(10000))
      if (commutes_with_gens(e)) result.push_back(std::move(e));
    return result;  // elements() is sorted
  }

  // A central element preserves every orbit and is determined by the images
  // of the orbit representatives: z(rep^u) = z(rep)^u along the transversal.
  struct OrbitData {
    std::vector<int> points;  // discovery order
    std::unordered_map<int, Permutation> transversal;
    std::vector<std::vector<int>> valid_maps;  // point -> image, including identity map
  };
  std::vector<OrbitData> orbs;
  std::vector<char> seen(static_cast<size_t>(degree_) + 1, 0);
  std::uint64_t combinations = 1;
  for (int p = 1; p <= degree_; ++p) {
    if (seen[static_cast<size_t>(p)]) continue;
    OrbitData od;
    od.points = {p};
    od.transversal.emplace(p, Permutation(degree_));
    for (size_t i = 0; i < od.points.size(); ++i) {
      int a = od.points[i];
      const Permutation ua = od.transversal.at(a);
      for (const auto& s : gens_) {
        int q = s(a);
        if (!od.transversal.count(q)) {
          od.transversal.emplace(q, ua * s);
          od.points.push_back(q);
        }
      }
    }
    for (int q : od.points) seen[static_cast<size_t>(q)] = 1;

    for (int target : od.points) {
      std::unordered_map<int, int> m;
      for (int a : od.points) m[a] = od.transversal.at(a)(target);
      bool consistent = true;
      for (int a : od.points) {
        for (const auto& s : gens_) {
          if (m.at(s(a)) != s(m.at(a))) {
            consistent = false;
            break;
          }
        }
        if (!consistent) break;
      }
      if (consistent) {
        std::vector<int> flat;
        flat.reserve(od.points.size());
        for (int a : od.points) flat.push_back(m.at(a));
        od.valid_maps.push_back(std::move(flat));
      }
    }
    combinations = mul_clamped(combinations, od.valid_maps.size());
    orbs.push_back(std::move(od));
  }
  if (combinations == kNoOrder || combinations > 200000)
    throw error("center: candidate space too large");

  std::vector<Permutation> result;
  std::vector<size_t> choice(orbs.size(), 0);
  for (;;) {
    std::vector<int> imgs(static_cast<size_t>(degree_));
    for (size_t oi = 0; oi < orbs.size(); ++oi) {
      const auto& od = orbs[oi];
      const auto& m = od.valid_maps[choice[oi]];
      for (size_t k = 0; k < od.points.size(); ++k)
        imgs[static_cast<size_t>(od.points[k]) - 1] = m[k];
    }
    Permutation z = Permutation::from_images(std::move(imgs));
    if (contains(z)) result.push_back(std::move(z));
    // odometer
    size_t oi = 0;
    while (oi < orbs.size()) {
      if (++choice[oi] < orbs[oi].valid_maps.size()) break;
      choice[oi] = 0;
      ++oi;
    }
    if (oi == orbs.size()) break;
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<Permutation> PermGroup::conjugacy_class(const Permutation& g) const {
  if (!contains(g)) throw error("conjugacy_class: element is not a member of the group");
  std::set<std::vector<int>> seen;
  std::vector<Permutation> result = {g};
  seen.insert(g.images());
  for (size_t i = 0; i < result.size(); ++i) {
    for (const auto& s : gens_) {
      Permutation c = result[i].conjugated_by(s);
      if (seen.insert(c.images()).second) {
        if (result.size() >= 1000000) throw error("conjugacy class too large");
        result.push_back(std::move(c));
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<Permutation> PermGroup::coset_representatives(const PermGroup& subgroup) const {
  if (subgroup.degree() != degree_) throw error("coset_representatives: degree mismatch");
  if (!contains_group(subgroup))
    throw error("coset_representatives: subgroup is not contained in the group");
  std::vector<Permutation> reps = {Permutation(degree_)};
  for (size_t i = 0; i < reps.size(); ++i) {
    for (const auto& s : gens_) {
      // Left multiplication: s * (rH) = (s*r)H is well-defined on left cosets.
      Permutation c = s * reps[i];
      bool known = false;
      for (const auto& r : reps) {
        if (subgroup.contains(r.inverse() * c)) {
          known = true;
          break;
        }
      }
      if (!known) {
        if (reps.size() >= 100000) throw error("coset_representatives: index too large");
        reps.push_back(std::move(c));
      }
    }
  }
  return reps;
}

bool are_conjugate_subgroups(const PermGroup& g, const PermGroup& h1, const PermGroup& h2) {
  if (h1.degree() != g.degree() || h2.degree() != g.degree())
    throw error("are_conjugate_subgroups: degree mismatch");
  if (!g.contains_group(h1) || !g.contains_group(h2))
    throw error("are_conjugate_subgroups: subgroup is not contained in the group");
  if (h1.order() != h2.order()) return false;
  auto orbit_sizes = [](const PermGroup& h) {
    std::vector<size_t> sizes;
    for (const auto& o : h.orbits()) sizes.push_back(o.size());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  };
  if (orbit_sizes(h1) != orbit_sizes(h2)) return false;
  for (const auto& x : g.elements(1000000)) {
    bool ok = true;
    for (const auto& s : h1.generators()) {
      if (!h2.contains(s.conjugated_by(x))) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace qf
