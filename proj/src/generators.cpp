#include "lk/generators.hpp"

#include "lk/errors.hpp"

#include <algorithm>

namespace lk {

bool Box::contains(const CharVector& k) const {
  for (int i = 0; i < k.n; ++i)
    if (k[i] < lo[i] || k[i] > hi[i]) return false;
  return true;
}

std::size_t Box::volume() const {
  std::size_t total = 1;
  for (int i = 0; i < lo.n; ++i) total *= static_cast<std::size_t>((hi[i] - lo[i]) / 2 + 1);
  return total;
}

Box make_box(const Lattice& lattice, int margin) {
  if (margin < 0) throw Error("margin must be nonnegative");
  Box box{CharVector(lattice.rank()), CharVector(lattice.rank()), margin};
  for (int i = 0; i < lattice.rank(); ++i) {
    box.lo[i] = lattice.framing(i) - 2 * margin;
    box.hi[i] = -lattice.framing(i) + 2 * margin;
  }
  return box;
}

void for_each_char_vector(const Box& box, const std::function<void(const CharVector&)>& fn) {
  const int n = box.lo.n;
  CharVector cur = box.lo;
  while (true) {
    fn(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] + 2 > box.hi[i]) cur[i] = box.lo[i], --i;
    if (i < 0) return;
    cur[i] += 2;
  }
}

std::vector<CharVector> char_vectors(const Box& box) {
  std::vector<CharVector> out;
  out.reserve(box.volume());
  for_each_char_vector(box, [&](const CharVector& k) { out.push_back(k); });
  return out;
}

std::vector<Generator> enumerate_generators(const Lattice& lattice, int margin) {
  const Box box = make_box(lattice, margin);
  const VertexMask subsets = VertexMask{1} << lattice.rank();
  std::vector<Generator> out;
  out.reserve(box.volume() * subsets);
  for_each_char_vector(box, [&](const CharVector& k) {
    for (VertexMask e = 0; e < subsets; ++e) out.push_back({k, e, 0});
  });
  return out;
}

bool cube_in_box(const Lattice& lattice, const Box& box, const CharVector& k, VertexMask e) {
  for (int u = 0; u < lattice.rank(); ++u) {
    int lo = k[u], hi = k[u];
    for (int v = 0; v < lattice.rank(); ++v) {
      if (!(e >> v & 1u)) continue;
      const int step = 2 * lattice.entry(v, u);
      lo += std::min(0, step);
      hi += std::max(0, step);
    }
    if (lo < box.lo[u] || hi > box.hi[u]) return false;
  }
  return true;
}

}  // namespace lk
