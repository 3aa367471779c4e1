#include "lk/forest.hpp"

#include "lk/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace lk {

std::size_t Forest::add_vertex(std::string id, std::optional<int> framing) {
  if (id.empty()) throw StructureError("empty vertex id");
  if (find(id)) throw StructureError("duplicate vertex id '" + id + "'");
  vertices_.push_back({std::move(id), framing});
  return vertices_.size() - 1;
}

void Forest::add_edge(std::string_view a, std::string_view b) { add_edge(index_of(a), index_of(b)); }

void Forest::add_edge(std::size_t a, std::size_t b) {
  if (a >= size() || b >= size()) throw StructureError("edge endpoint out of range");
  edges_.emplace_back(std::min(a, b), std::max(a, b));
}

std::optional<std::size_t> Forest::find(std::string_view id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].id == id) return i;
  return std::nullopt;
}

std::size_t Forest::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error("unknown vertex '" + std::string(id) + "'");
}

bool Forest::has_edge(std::size_t a, std::size_t b) const {
  const Edge e{std::min(a, b), std::max(a, b)};
  return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

std::vector<std::size_t> Forest::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (const auto& [a, b] : edges_) {
    if (a == i && b != i) out.push_back(b);
    if (b == i && a != i) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Forest::degree(std::size_t i) const { return neighbors(i).size(); }

std::size_t Forest::v0() const {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertices_[i].unframed()) continue;
    if (found) throw StructureError("more than one unframed vertex");
    found = i;
  }
  if (!found) throw StructureError("no unframed vertex");
  return *found;
}

std::vector<std::size_t> Forest::framed_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (!vertices_[i].unframed()) out.push_back(i);
  return out;
}

std::size_t Forest::framed_count() const {
  return static_cast<std::size_t>(
      std::count_if(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return !v.unframed(); }));
}

void Forest::validate_structure() const {
  (void)v0();
  std::vector<std::size_t> parent(size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::set<Edge> seen;
  for (const auto& e : edges_) {
    const auto& [a, b] = e;
    if (a == b) throw StructureError("loop at vertex '" + vertices_[a].id + "'");
    if (!seen.insert(e).second)
      throw StructureError("multiple edges between '" + vertices_[a].id + "' and '" + vertices_[b].id + "'");
    const auto ra = root(a), rb = root(b);
    if (ra == rb)
      throw StructureError("cycle through edge '" + vertices_[a].id + "'-'" + vertices_[b].id + "'");
    parent[ra] = rb;
  }
}

bool Forest::structurally_valid() const noexcept {
  try {
    validate_structure();
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string Forest::fresh_id(std::string_view prefix) const {
  for (std::size_t k = 1;; ++k) {
    std::string candidate = std::string(prefix) + std::to_string(k);
    if (!find(candidate)) return candidate;
  }
}

void Forest::set_framing(std::size_t i, int framing) {
  if (vertices_.at(i).unframed()) throw Error("cannot frame the unframed vertex");
  vertices_[i].framing = framing;
}

void Forest::remove_edge(std::size_t a, std::size_t b) {
  const Edge e{std::min(a, b), std::max(a, b)};
  auto it = std::find(edges_.begin(), edges_.end(), e);
  if (it == edges_.end()) throw Error("no such edge");
  edges_.erase(it);
}

void Forest::remove_vertex(std::size_t i) {
  if (i >= size()) throw Error("vertex index out of range");
  std::erase_if(edges_, [i](const Edge& e) { return e.first == i || e.second == i; });
  for (auto& [a, b] : edges_) {
    if (a > i) --a;
    if (b > i) --b;
  }
  vertices_.erase(vertices_.begin() + static_cast<std::ptrdiff_t>(i));
}

bool operator==(const Forest& x, const Forest& y) {
  auto summary = [](const Forest& f) {
    std::set<std::pair<std::string, std::optional<int>>> verts;
    std::multiset<std::pair<std::string, std::string>> edges;
    for (const auto& v : f.vertices_) verts.emplace(v.id, v.framing);
    for (const auto& [a, b] : f.edges_) {
      auto s = f.vertices_[a].id, t = f.vertices_[b].id;
      if (t < s) std::swap(s, t);
      edges.emplace(s, t);
    }
    return std::make_pair(verts, edges);
  };
  return summary(x) == summary(y);
}

}  // namespace lk
