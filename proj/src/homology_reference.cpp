#include "lk/errors.hpp"
#include "lk/generators.hpp"
#include "lk/homology.hpp"

#include <algorithm>
#include <set>

namespace lk {

namespace {

using Bits = std::vector<std::uint64_t>;

int dense_rank(std::vector<Bits> rows) {
  int rank = 0;
  const std::size_t words = rows.empty() ? 0 : rows[0].size();
  for (std::size_t w = 0; w < words; ++w) {
    for (int b = 0; b < 64; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << b;
      auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](const Bits& r) { return r[w] & bit; });
      if (pivot == rows.end()) continue;
      std::iter_swap(rows.begin() + rank, pivot);
      for (auto it = rows.begin() + rank + 1; it != rows.end(); ++it)
        if ((*it)[w] & bit)
          for (std::size_t x = w; x < words; ++x) (*it)[x] ^= rows[static_cast<std::size_t>(rank)][x];
      ++rank;
    }
  }
  return rank;
}

struct Block {
  std::vector<Generator> gens;
  std::vector<Rational> alphas;
};

// Rank of the boundary from `source` (restricted to alpha <= level) into `target`.
int restricted_rank(const Lattice& lattice, const Block& source, const Block& target, const Rational& level, int ucap) {
  std::vector<Bits> cols;
  const std::size_t words = (target.gens.size() + 63) / 64;
  for (std::size_t i = 0; i < source.gens.size(); ++i) {
    if (source.alphas[i] > level) continue;
    Bits col(words, 0);
    for (const auto& t : lattice.boundary(source.gens[i]).terms()) {
      if (t.u >= ucap) continue;
      auto it = std::lower_bound(target.gens.begin(), target.gens.end(), t);
      if (it == target.gens.end() || *it != t) throw Error("reference: boundary term outside the truncated complex");
      const auto r = static_cast<std::size_t>(it - target.gens.begin());
      col[r / 64] ^= std::uint64_t{1} << (r % 64);
    }
    cols.push_back(std::move(col));
  }
  return dense_rank(std::move(cols));
}

}  // namespace

Profiles compute_profiles_reference(const Lattice& lattice, int margin, int ucap) {
  if (margin < 0) throw Error("margin must be nonnegative");
  if (ucap < 1) throw Error("U cap must be at least 1");
  const Box box = make_box(lattice, margin);
  std::map<ProfileKey, Block> blocks;
  for (const auto& g0 : enumerate_generators(lattice, margin)) {
    if (!cube_in_box(lattice, box, g0.k, g0.e)) continue;
    const CharVector rep = lattice.spinc_class(g0.k);
    for (int j = 0; j < ucap; ++j) {
      const Generator g{g0.k, g0.e, j};
      blocks[{rep, lattice.maslov(g)}].gens.push_back(g);
    }
  }
  for (auto& [key, block] : blocks) {
    std::sort(block.gens.begin(), block.gens.end());
    for (const auto& g : block.gens) block.alphas.push_back(lattice.alpha(g));
  }

  static const Block kEmpty;
  Profiles out;
  for (const auto& [key, block] : blocks) {
    auto find = [&](const Rational& d) -> const Block& {
      auto it = blocks.find({key.first, d});
      return it == blocks.end() ? kEmpty : it->second;
    };
    const Block& below = find(key.second - 1);
    const Block& above = find(key.second + 1);
    std::set<Rational> levels(block.alphas.begin(), block.alphas.end());
    levels.insert(above.alphas.begin(), above.alphas.end());
    std::vector<ProfileStep> steps;
    int last = 0;
    for (const auto& a : levels) {
      const int chains = static_cast<int>(std::count_if(block.alphas.begin(), block.alphas.end(), [&](const Rational& x) { return x <= a; }));
      const int dim = chains - restricted_rank(lattice, block, below, a, ucap) - restricted_rank(lattice, above, block, a, ucap);
      if (dim != last) steps.push_back({a, dim});
      last = dim;
    }
    if (!steps.empty()) out.emplace(key, std::move(steps));
  }
  return out;
}

}  // namespace lk
