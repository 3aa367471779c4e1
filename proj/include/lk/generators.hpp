#pragma once

#include "lk/lattice.hpp"

#include <functional>
#include <vector>

namespace lk {

// framing(v) - 2B <= K(v) <= -framing(v) + 2B on every framed vertex.
struct Box {
  CharVector lo, hi;
  int margin = 0;

  bool contains(const CharVector& k) const;
  std::size_t volume() const;  // number of characteristic vectors
};

Box make_box(const Lattice& lattice, int margin);

// Every characteristic vector of the box in lexicographic order.
void for_each_char_vector(const Box& box, const std::function<void(const CharVector&)>& fn);
std::vector<CharVector> char_vectors(const Box& box);

// All (K, E, 0) with K in the box, E any subset; K-major lexicographic order.
std::vector<Generator> enumerate_generators(const Lattice& lattice, int margin);

// True iff every vertex K + 2 sum_{v in S} v* (S a subset of E) of the cube
// of [K,E] lies in the box, so that the boundary of [K,E] stays inside.
bool cube_in_box(const Lattice& lattice, const Box& box, const CharVector& k, VertexMask e);

}  // namespace lk
