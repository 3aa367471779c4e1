#pragma once

#include "lk/forest.hpp"
#include "lk/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace lk {

// Framed intersection matrix. Row i belongs to forest vertex framed[i].
struct IntersectionForm {
  int order = 0;
  std::vector<std::size_t> framed;
  std::vector<std::int64_t> entries;  // row-major, order x order
  std::vector<int> v0_row;            // adjacency of v0 to each framed vertex

  std::int64_t at(int i, int j) const { return entries[static_cast<std::size_t>(i * order + j)]; }
};

IntersectionForm build_intersection_form(const Forest& forest);

// Leading principal minors alternate in sign, starting negative. Computed
// with fraction-free elimination in arbitrary precision.
bool is_negative_definite(const IntersectionForm& form);
bool is_negative_definite(const Forest& forest);

// Throws DefinitenessError when the framed form is not negative definite.
void require_negative_definite(const Forest& forest);

std::int64_t pairing(const IntersectionForm& form, std::span<const std::int64_t> x,
                     std::span<const std::int64_t> y);

// Exact inverse data: inverse = adjugate / det, both in 64-bit integers.
// Throws Error for singular forms or entries that overflow.
struct FormInverse {
  std::int64_t det = 1;
  std::vector<std::int64_t> adjugate;  // row-major
};
FormInverse invert(const IntersectionForm& form);

// Exact rational class Sigma = v0 + sum a_j v_j orthogonal to every framed
// vertex.
struct SigmaClass {
  std::vector<Rational> coeffs;
  Rational pairing_with_v0;  // sum a_j (v0 . v_j), which also equals Sigma^2 - v0^2
};
SigmaClass sigma_class(const IntersectionForm& form);
SigmaClass sigma_class(const Forest& forest);

std::string canonical_form(const Forest& forest);

}  // namespace lk
