#include "lk/calculus.hpp"

#include "lk/errors.hpp"
#include "lk/intersection_form.hpp"

#include <algorithm>

namespace lk {

std::string to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::generic_up: return "generic_up";
    case MoveKind::vertex_up: return "vertex_up";
    case MoveKind::edge_up: return "edge_up";
    case MoveKind::down: return "down";
  }
  return "?";
}

namespace {

void require_class(const Forest& forest) {
  forest.validate_structure();
  require_negative_definite(forest);
}

void require_result_in_class(const Forest& forest) {
  if (!is_negative_definite(forest)) throw MoveError("move leaves class: result is not negative definite");
}

}  // namespace

MoveResult blow_up_generic(const Forest& forest) {
  require_class(forest);
  MoveResult out{forest, {MoveKind::generic_up, {}, forest.fresh_id("x")}};
  out.forest.add_vertex(out.record.new_id, -1);
  require_result_in_class(out.forest);
  return out;
}

MoveResult blow_up_vertex(const Forest& forest, std::string_view v) {
  require_class(forest);
  const auto iv = forest.index_of(v);
  if (forest.vertex(iv).unframed())
    throw MoveError("vertex blow-up at the unframed vertex is not a defined move");
  MoveResult out{forest, {MoveKind::vertex_up, {std::string(v)}, forest.fresh_id("x")}};
  out.forest.set_framing(iv, *forest.vertex(iv).framing - 1);
  const auto w = out.forest.add_vertex(out.record.new_id, -1);
  out.forest.add_edge(iv, w);
  require_result_in_class(out.forest);
  return out;
}

MoveResult blow_up_edge(const Forest& forest, std::string_view a, std::string_view b) {
  require_class(forest);
  const auto ia = forest.index_of(a), ib = forest.index_of(b);
  if (!forest.has_edge(ia, ib))
    throw MoveError("no edge between '" + std::string(a) + "' and '" + std::string(b) + "'");
  MoveResult out{forest, {MoveKind::edge_up, {std::string(a), std::string(b)}, forest.fresh_id("x")}};
  out.forest.remove_edge(ia, ib);
  for (auto i : {ia, ib})
    if (auto m = forest.vertex(i).framing) out.forest.set_framing(i, *m - 1);
  const auto e = out.forest.add_vertex(out.record.new_id, -1);
  out.forest.add_edge(ia, e);
  out.forest.add_edge(e, ib);
  require_result_in_class(out.forest);
  return out;
}

bool can_blow_down(const Forest& forest, std::size_t w) {
  const auto& v = forest.vertex(w);
  return v.framing && *v.framing == -1 && forest.degree(w) <= 2;
}

std::vector<std::string> blow_down_candidates(const Forest& forest) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < forest.size(); ++i)
    if (can_blow_down(forest, i)) out.push_back(forest.vertex(i).id);
  std::sort(out.begin(), out.end());
  return out;
}

MoveResult blow_down(const Forest& forest, std::string_view w) {
  forest.validate_structure();
  const auto iw = forest.index_of(w);
  if (forest.vertex(iw).unframed()) throw MoveError("the unframed vertex cannot be blown down");
  if (*forest.vertex(iw).framing != -1) throw MoveError("blow-down needs framing -1 at '" + std::string(w) + "'");
  const auto nbrs = forest.neighbors(iw);
  if (nbrs.size() > 2) throw MoveError("blow-down needs degree <= 2 at '" + std::string(w) + "'");

  MoveResult out{forest, {MoveKind::down, {std::string(w)}, {}}};
  for (auto u : nbrs)
    if (auto m = forest.vertex(u).framing) out.forest.set_framing(u, *m + 1);
  if (nbrs.size() == 2) {
    if (forest.has_edge(nbrs[0], nbrs[1])) throw MoveError("blow-down would create a multi-edge");
    out.forest.add_edge(nbrs[0], nbrs[1]);
  }
  out.forest.remove_vertex(iw);
  out.forest.validate_structure();
  require_result_in_class(out.forest);
  return out;
}

Forest reduce(const Forest& forest) {
  Forest current = forest;
  for (auto c = blow_down_candidates(current); !c.empty(); c = blow_down_candidates(current))
    current = blow_down(current, c.front()).forest;
  return current;
}

Forest reduce_random(const Forest& forest, std::mt19937_64& rng) {
  Forest current = forest;
  for (auto c = blow_down_candidates(current); !c.empty(); c = blow_down_candidates(current)) {
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    current = blow_down(current, c[pick(rng)]).forest;
  }
  return current;
}

bool is_reduced(const Forest& forest) { return blow_down_candidates(forest).empty(); }

bool equivalent(const Forest& a, const Forest& b) {
  return canonical_form(reduce(a)) == canonical_form(reduce(b));
}

}  // namespace lk
