#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lk {

struct Vertex {
  std::string id;
  std::optional<int> framing;  // empty for the distinguished vertex v0

  bool unframed() const noexcept { return !framing.has_value(); }
};

// A framed forest with one distinguished unframed vertex. Vertex order is
// insertion order and is significant: lattice coordinates follow it, and
// blow-ups append their new vertex at the end.
class Forest {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  std::size_t add_vertex(std::string id, std::optional<int> framing);
  void add_edge(std::string_view a, std::string_view b);
  void add_edge(std::size_t a, std::size_t b);

  std::size_t size() const noexcept { return vertices_.size(); }
  const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<std::size_t> find(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;  // throws Error

  bool has_edge(std::size_t a, std::size_t b) const;
  std::vector<std::size_t> neighbors(std::size_t i) const;
  std::size_t degree(std::size_t i) const;

  // Index of the unframed vertex; throws StructureError unless exactly one.
  std::size_t v0() const;
  std::vector<std::size_t> framed_vertices() const;
  std::size_t framed_count() const;

  // Throws StructureError on loops, multi-edges, cycles, or an unframed
  // count other than one.
  void validate_structure() const;
  bool structurally_valid() const noexcept;

  // Smallest "<prefix><k>" (k >= 1) not already used as an id.
  std::string fresh_id(std::string_view prefix) const;

  void set_framing(std::size_t i, int framing);
  void remove_edge(std::size_t a, std::size_t b);
  void remove_vertex(std::size_t i);

  // Same ids, framings and edge set; insertion order is ignored.
  friend bool operator==(const Forest& a, const Forest& b);

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

}  // namespace lk
