#include "lk/random_forest.hpp"

#include "lk/errors.hpp"
#include "lk/intersection_form.hpp"

#include <random>
#include <vector>

namespace lk {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

using Edges = std::vector<std::pair<int, int>>;

Edges random_tree(int k, std::mt19937_64& rng) {
  Edges edges;
  if (k < 2) return edges;
  if (k == 2) return {{0, 1}};
  std::uniform_int_distribution<int> label(0, k - 1);
  std::vector<int> code(static_cast<std::size_t>(k - 2));
  for (auto& c : code) c = label(rng);
  std::vector<int> degree(static_cast<std::size_t>(k), 1);
  for (int c : code) ++degree[static_cast<std::size_t>(c)];
  for (int c : code) {
    int leaf = 0;
    while (degree[static_cast<std::size_t>(leaf)] != 1) ++leaf;
    edges.emplace_back(leaf, c);
    --degree[static_cast<std::size_t>(leaf)];
    --degree[static_cast<std::size_t>(c)];
  }
  int a = -1;
  for (int i = 0; i < k; ++i) {
    if (degree[static_cast<std::size_t>(i)] != 1) continue;
    if (a < 0) {
      a = i;
    } else {
      edges.emplace_back(a, i);
      break;
    }
  }
  return edges;
}

}  // namespace

Forest random_forest(const RandomForestSpec& spec) {
  if (spec.max_framed < 0) throw Error("max_framed must be nonnegative");
  if (spec.framing_hi > -1 || spec.framing_lo > spec.framing_hi) throw Error("framing range must lie in (-inf, -1]");
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> framing(spec.framing_lo, spec.framing_hi);
  for (int attempt = 0; attempt < spec.max_tries; ++attempt) {
    const int n = spec.max_framed == 0 ? 0 : std::uniform_int_distribution<int>(1, spec.max_framed)(rng);
    int k0 = n;  // framed vertices sharing a component with v0
    if (n >= 1 && std::bernoulli_distribution(0.5)(rng)) k0 = std::uniform_int_distribution<int>(0, n - 1)(rng);

    // Component of v0 uses labels 0..k0, the other k0+1..n.
    Edges edges = random_tree(k0 + 1, rng);
    for (auto [a, b] : random_tree(n - k0, rng)) edges.emplace_back(a + k0 + 1, b + k0 + 1);

    std::vector<int> degree(static_cast<std::size_t>(n + 1), 0);
    for (auto [a, b] : edges) ++degree[static_cast<std::size_t>(a)], ++degree[static_cast<std::size_t>(b)];
    std::vector<int> choices;
    for (int i = 0; i <= k0; ++i)
      if (spec.v0_attachment == V0Attachment::random || k0 == 0 || degree[static_cast<std::size_t>(i)] == 1) choices.push_back(i);
    const int v0_label = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];

    Forest forest;
    std::vector<std::size_t> index(static_cast<std::size_t>(n + 1));
    index[static_cast<std::size_t>(v0_label)] = forest.add_vertex("v0", std::nullopt);
    int next_id = 1;
    for (int i = 0; i <= n; ++i) {
      if (i == v0_label) continue;
      index[static_cast<std::size_t>(i)] = forest.add_vertex("v" + std::to_string(next_id++), framing(rng));
    }
    for (auto [a, b] : edges) forest.add_edge(index[static_cast<std::size_t>(a)], index[static_cast<std::size_t>(b)]);
    if (is_negative_definite(forest)) return forest;
  }
  throw Error("random_forest: rejection budget exhausted");
}

}  // namespace lk
