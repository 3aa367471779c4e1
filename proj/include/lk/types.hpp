#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace lk {

using Rational = boost::rational<std::int64_t>;

// Subsets of framed vertices, bit i = framed vertex i.
using VertexMask = std::uint32_t;

// Lattice computations are exponential in the number of framed vertices;
// the calculus itself has no such limit.
inline constexpr int kMaxFramed = 16;

std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.denominator() == 1; }

}  // namespace lk
