#pragma once

#include "lk/forest.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace lk {

enum class MoveKind { generic_up, vertex_up, edge_up, down };

std::string to_string(MoveKind kind);

struct MoveRecord {
  MoveKind kind = MoveKind::generic_up;
  std::vector<std::string> site;  // {} generic, {v} vertex/down, {a, b} edge
  std::string new_id;             // the created (-1)-vertex for blow-ups
};

struct MoveResult {
  Forest forest;
  MoveRecord record;
};

// Blow-ups take a validated (negative definite) forest, append the new
// (-1)-vertex after all existing vertices, and check the result is still
// negative definite.
MoveResult blow_up_generic(const Forest& forest);
MoveResult blow_up_vertex(const Forest& forest, std::string_view v);
MoveResult blow_up_edge(const Forest& forest, std::string_view a, std::string_view b);

// Framed, framing -1, degree <= 2.
bool can_blow_down(const Forest& forest, std::size_t w);
std::vector<std::string> blow_down_candidates(const Forest& forest);  // sorted ids
MoveResult blow_down(const Forest& forest, std::string_view w);

// Blows down the smallest eligible id until none is left.
Forest reduce(const Forest& forest);
// Same, but each step picks a uniformly random eligible vertex.
Forest reduce_random(const Forest& forest, std::mt19937_64& rng);
bool is_reduced(const Forest& forest);

bool equivalent(const Forest& a, const Forest& b);

}  // namespace lk
