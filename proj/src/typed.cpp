#include "qf/typed.hpp"

#include <algorithm>

namespace qf {

std::optional<TypeDWitness> is_type_d(const RackTable& x) {
  int n = x.size();
  for (int r = 1; r <= n; ++r)
    for (int s = 1; s <= n; ++s) {
      if (r == s) continue;
      if (x.at(r, x.at(s, x.at(r, s))) == s) continue;
      std::vector<int> closure = subrack_closure(x, {r, s});
      RackTable sub = induced_subrack(x, closure);
      auto comps = components(sub);
      if (comps.blocks.size() < 2) continue;
      // Positions of r and s within the (sorted) closure.
      auto pos = [&](int p) {
        return static_cast<int>(std::lower_bound(closure.begin(), closure.end(), p) -
                                closure.begin()) + 1;
      };
      int pr = pos(r), ps = pos(s);
      const std::vector<int>* block_r = nullptr;
      const std::vector<int>* block_s = nullptr;
      for (const auto& block : comps.blocks) {
        if (std::binary_search(block.begin(), block.end(), pr)) block_r = &block;
        if (std::binary_search(block.begin(), block.end(), ps)) block_s = &block;
      }
      if (block_r == block_s) continue;
      auto to_original = [&](const std::vector<int>& block) {
        std::vector<int> out;
        for (int p : block) out.push_back(closure[static_cast<size_t>(p - 1)]);
        return out;
      };
      TypeDWitness w;
      w.r = r;
      w.s = s;
      w.subrack = closure;
      w.component_of_r = to_original(*block_r);
      w.component_of_s = to_original(*block_s);
      return w;
    }
  return std::nullopt;
}

std::size_t type_d_census(const std::vector<QuandleRecord>& records) {
  std::size_t count = 0;
  for (const auto& rec : records)
    if (is_type_d(rec.table)) ++count;
  return count;
}

}  // namespace qf
