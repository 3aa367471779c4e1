#pragma once

#include "lk/forest.hpp"
#include "lk/intersection_form.hpp"
#include "lk/memo.hpp"
#include "lk/types.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace lk {

// Values on framed vertices, indexed like the intersection form. Unused
// slots stay zero so that the defaulted ordering is lexicographic.
struct CharVector {
  std::array<std::int32_t, kMaxFramed> v{};
  std::uint8_t n = 0;

  CharVector() = default;
  explicit CharVector(int size) : n(static_cast<std::uint8_t>(size)) {}
  CharVector(std::initializer_list<int> values);

  int size() const noexcept { return n; }
  std::int32_t& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  std::int32_t operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

  auto operator<=>(const CharVector&) const = default;
};

// U^u [k, e]
struct Generator {
  CharVector k;
  VertexMask e = 0;
  int u = 0;

  auto operator<=>(const Generator&) const = default;
};

struct CharVectorHash {
  std::size_t operator()(const CharVector& k) const noexcept;
};
struct GeneratorHash {
  std::size_t operator()(const Generator& g) const noexcept;
};

std::string to_string(const CharVector& k);
std::string to_string(const Generator& g);

// Finite F2-linear combination of generators, kept sorted and free of
// duplicates.
class Chain {
 public:
  Chain() = default;
  explicit Chain(Generator g) { terms_.push_back(std::move(g)); }

  // Sorts and cancels pairs.
  static Chain from_terms(std::vector<Generator> terms);

  const std::vector<Generator>& terms() const& noexcept { return terms_; }
  std::vector<Generator> terms() && noexcept { return std::move(terms_); }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool contains(const Generator& g) const;

  Chain& operator+=(const Chain& other);
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }

  // Multiplies by U^du.
  Chain shifted(int du) const;

  bool operator==(const Chain&) const = default;

 private:
  std::vector<Generator> terms_;
};

std::string to_string(const Chain& c);

// Applies a generator-level linear map to every term and sums mod 2.
template <class F>
Chain apply_linear(const Chain& c, F&& f) {
  std::vector<Generator> out;
  for (const auto& g : c.terms()) {
    Chain image = f(g);
    out.insert(out.end(), image.terms().begin(), image.terms().end());
  }
  return Chain::from_terms(std::move(out));
}

// Minima of f over subsets of E: g = min over all, without[v] = g[K,E-v],
// with[v] = min over I containing v (the B_v of the differential).
struct SubsetMinima {
  int g = 0;
  std::array<int, kMaxFramed> without{};
  std::array<int, kMaxFramed> with{};
};

// Key of the coset K + 2 Im(M): adj(M) K reduced mod 2|det|.
struct SpincKey {
  std::array<std::int64_t, kMaxFramed> r{};
  auto operator<=>(const SpincKey&) const = default;
};
struct SpincKeyHash {
  std::size_t operator()(const SpincKey& k) const noexcept;
};

// The knot lattice complex of a validated forest. Copies share one g memo.
class Lattice {
 public:
  explicit Lattice(const Forest& forest);

  const Forest& forest() const noexcept { return forest_; }
  const IntersectionForm& form() const noexcept { return form_; }
  int rank() const noexcept { return n_; }
  int framing(int v) const { return static_cast<int>(form_.at(v, v)); }
  int entry(int u, int v) const { return static_cast<int>(form_.at(u, v)); }
  int v0_adjacency(int v) const { return form_.v0_row[static_cast<std::size_t>(v)]; }
  int index_of(std::string_view id) const;  // framed coordinate of a vertex id
  std::int64_t det() const noexcept { return inverse_.det; }
  const SigmaClass& sigma() const noexcept { return sigma_; }

  bool is_characteristic(const CharVector& k) const;
  void require_characteristic(const CharVector& k) const;  // throws Error

  int f_val(const CharVector& k, VertexMask subset) const;
  int g_val(const CharVector& k, VertexMask e) const;   // memoized
  int g_scan(const CharVector& k, VertexMask e) const;  // direct subset scan
  SubsetMinima minima(const CharVector& k, VertexMask e) const;

  // K + 2t v*; the v0 variant uses the adjacency row of v0.
  CharVector shift(const CharVector& k, int v, int t = 1) const;
  CharVector shift_v0(const CharVector& k, int t = 1) const;

  Chain boundary(const Generator& x) const;
  Chain boundary(const Chain& c) const;
  // b_v through g[K+2v*, E-v] + (K(v) + v.v)/2 - g[K,E].
  int b_exponent_alternative(const CharVector& k, VertexMask e, int v) const;

  Rational char_square(const CharVector& k) const;
  Rational maslov(const Generator& x) const;
  Rational alpha(const Generator& x) const;
  // alpha without the g terms and without -u: (sum a_j (K_j + v0.v_j)) / 2.
  Rational alpha_linear_part(const CharVector& k) const;

  SpincKey spinc_key(const CharVector& k) const;
  // Lexicographically least vector of the coset inside the margin-0 box.
  CharVector spinc_class(const CharVector& k) const;

 private:
  struct GKey {
    CharVector k;
    VertexMask e;
    bool operator==(const GKey&) const = default;
  };
  struct GKeyHash {
    std::size_t operator()(const GKey& k) const noexcept;
  };
  struct Shared;

  Forest forest_;
  IntersectionForm form_;
  FormInverse inverse_;
  SigmaClass sigma_;
  int n_ = 0;
  std::vector<std::int64_t> alpha_num_;  // a_j * alpha_den_
  std::int64_t alpha_den_ = 1;
  std::shared_ptr<Shared> shared_;
};

}  // namespace lk
