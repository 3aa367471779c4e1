#include "lk/intersection_form.hpp"

#include <algorithm>
#include <functional>

namespace lk {

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

std::string encode_rooted(const Forest& forest, const Adjacency& adj, std::size_t root) {
  std::function<std::string(std::size_t, std::size_t)> rec = [&](std::size_t x, std::size_t parent) {
    std::vector<std::string> children;
    for (auto y : adj[x])
      if (y != parent) children.push_back(rec(y, x));
    std::sort(children.begin(), children.end());
    const auto& v = forest.vertex(x);
    std::string out = "(" + (v.framing ? std::to_string(*v.framing) : std::string("*"));
    for (const auto& c : children) out += c;
    return out + ")";
  };
  return rec(root, root);
}

// Centers of a tree: repeatedly strip leaves.
std::vector<std::size_t> centers(const Adjacency& adj, const std::vector<std::size_t>& component) {
  if (component.size() <= 2) return component;
  std::vector<std::size_t> degree(adj.size(), 0);
  std::vector<std::size_t> layer;
  for (auto x : component) {
    degree[x] = adj[x].size();
    if (degree[x] <= 1) layer.push_back(x);
  }
  std::size_t remaining = component.size();
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<std::size_t> next;
    for (auto x : layer)
      for (auto y : adj[x])
        if (--degree[y] == 1) next.push_back(y);
    layer = std::move(next);
  }
  return layer;
}

}  // namespace

std::string canonical_form(const Forest& forest) {
  forest.validate_structure();
  const auto n = forest.size();
  Adjacency adj(n);
  for (const auto& [a, b] : forest.edges()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    components.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(components.size() - 1);
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      components.back().push_back(x);
      for (auto y : adj[x])
        if (comp[y] < 0) {
          comp[y] = comp[s];
          stack.push_back(y);
        }
    }
  }
  const auto v0 = forest.v0();
  std::string head = encode_rooted(forest, adj, v0);
  std::vector<std::string> rest;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (static_cast<int>(c) == comp[v0]) continue;
    std::string best;
    for (auto center : centers(adj, components[c])) {
      auto code = encode_rooted(forest, adj, center);
      if (best.empty() || code < best) best = std::move(code);
    }
    rest.push_back(std::move(best));
  }
  std::sort(rest.begin(), rest.end());
  for (const auto& r : rest) head += "|" + r;
  return head;
}

}  // namespace lk
