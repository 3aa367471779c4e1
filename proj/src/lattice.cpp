#include "lk/lattice.hpp"

#include "lk/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace lk {

namespace {

inline std::size_t mix(std::size_t h, std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  x ^= x >> 31;
  x *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (x ^ (x >> 27));
}

Rational make_rational(__int128 num, __int128 den) {
  if (den < 0) num = -num, den = -den;
  __int128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) num /= a, den /= a;
  constexpr auto lo = std::numeric_limits<std::int64_t>::min(), hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) throw Error("lattice rational overflows 64 bits");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

CharVector::CharVector(std::initializer_list<int> values) : n(static_cast<std::uint8_t>(values.size())) {
  if (values.size() > kMaxFramed) throw Error("too many coordinates");
  std::copy(values.begin(), values.end(), v.begin());
}

std::size_t CharVectorHash::operator()(const CharVector& k) const noexcept {
  std::size_t h = k.n;
  for (int i = 0; i < k.n; ++i) h = mix(h, static_cast<std::uint32_t>(k[i]));
  return h;
}

std::size_t GeneratorHash::operator()(const Generator& g) const noexcept {
  return mix(mix(CharVectorHash{}(g.k), g.e), static_cast<std::uint32_t>(g.u));
}

std::size_t SpincKeyHash::operator()(const SpincKey& k) const noexcept {
  std::size_t h = 0;
  for (auto r : k.r) h = mix(h, static_cast<std::uint64_t>(r));
  return h;
}

std::string to_string(const CharVector& k) {
  std::string s = "(";
  for (int i = 0; i < k.n; ++i) {
    if (i) s += ",";
    s += std::to_string(k[i]);
  }
  return s + ")";
}

std::string to_string(const Generator& g) {
  std::string s;
  if (g.u) s = "U^" + std::to_string(g.u);
  s += "[" + to_string(g.k) + ",{";
  bool first = true;
  for (int i = 0; i < kMaxFramed; ++i) {
    if (!(g.e >> i & 1u)) continue;
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}]";
}

std::string to_string(const Chain& c) {
  if (c.empty()) return "0";
  std::string s;
  for (const auto& g : c.terms()) {
    if (!s.empty()) s += " + ";
    s += to_string(g);
  }
  return s;
}

Chain Chain::from_terms(std::vector<Generator> terms) {
  std::sort(terms.begin(), terms.end());
  Chain out;
  out.terms_.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2 == 1) out.terms_.push_back(terms[i]);
    i = j;
  }
  return out;
}

bool Chain::contains(const Generator& g) const { return std::binary_search(terms_.begin(), terms_.end(), g); }

Chain& Chain::operator+=(const Chain& other) {
  std::vector<Generator> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(), other.terms_.end(),
                                std::back_inserter(merged));
  terms_ = std::move(merged);
  return *this;
}

Chain Chain::shifted(int du) const {
  Chain out = *this;
  for (auto& g : out.terms_) g.u += du;
  return out;
}

struct Lattice::Shared {
  ShardedMemo<GKey, int, GKeyHash> g_memo;
  std::once_flag spinc_once;
  std::unordered_map<SpincKey, CharVector, SpincKeyHash> spinc_reps;
};

std::size_t Lattice::GKeyHash::operator()(const GKey& k) const noexcept { return mix(CharVectorHash{}(k.k), k.e); }

Lattice::Lattice(const Forest& forest) : forest_(forest), shared_(std::make_shared<Shared>()) {
  form_ = build_intersection_form(forest_);
  if (!is_negative_definite(form_)) throw DefinitenessError("intersection form is not negative definite");
  n_ = form_.order;
  if (n_ > kMaxFramed) throw Error("lattice complex supports at most 16 framed vertices");
  inverse_ = invert(form_);
  sigma_ = sigma_class(form_);
  alpha_den_ = inverse_.det;
  alpha_num_.assign(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      alpha_num_[static_cast<std::size_t>(i)] -= inverse_.adjugate[static_cast<std::size_t>(i * n_ + j)] * form_.v0_row[static_cast<std::size_t>(j)];
}

int Lattice::index_of(std::string_view id) const {
  const auto idx = forest_.index_of(id);
  for (int i = 0; i < n_; ++i)
    if (form_.framed[static_cast<std::size_t>(i)] == idx) return i;
  throw Error("vertex '" + std::string(id) + "' is not framed");
}

bool Lattice::is_characteristic(const CharVector& k) const {
  if (k.n != n_) return false;
  for (int i = 0; i < n_; ++i)
    if (((k[i] - framing(i)) % 2) != 0) return false;
  return true;
}

void Lattice::require_characteristic(const CharVector& k) const {
  if (!is_characteristic(k)) throw Error("not a characteristic vector: " + to_string(k));
}

int Lattice::f_val(const CharVector& k, VertexMask subset) const {
  int twice = 0;
  for (int i = 0; i < n_; ++i) {
    if (!(subset >> i & 1u)) continue;
    twice += k[i];
    for (int j = 0; j < n_; ++j)
      if (subset >> j & 1u) twice += entry(i, j);
  }
  if (twice % 2 != 0) throw Error("f is not integral; K is not characteristic");
  return twice / 2;
}

SubsetMinima Lattice::minima(const CharVector& k, VertexMask e) const {
  SubsetMinima m;
  int bits[kMaxFramed];
  int nb = 0;
  for (int i = 0; i < n_; ++i)
    if (e >> i & 1u) bits[nb++] = i;
  constexpr int kInf = std::numeric_limits<int>::max();
  m.with.fill(kInf);
  m.without.fill(0);
  for (int t = 0; t < nb; ++t) m.without[static_cast<std::size_t>(bits[t])] = 0;  // the empty set

  // Gray-code walk over subsets of E, tracking 2f and row sums of the subset.
  std::array<int, kMaxFramed> rowsum{};
  VertexMask subset = 0;
  int twice = 0;
  m.g = 0;
  const std::uint32_t count = 1u << nb;
  for (std::uint32_t step = 1; step < count; ++step) {
    const int v = bits[std::countr_zero(step)];
    const VertexMask bit = VertexMask{1} << v;
    const int vv = framing(v);
    if (subset & bit) {
      subset &= ~bit;
      twice -= k[v] + vv + 2 * (rowsum[static_cast<std::size_t>(v)] - vv);
      for (int u = 0; u < n_; ++u) rowsum[static_cast<std::size_t>(u)] -= entry(u, v);
    } else {
      twice += k[v] + vv + 2 * rowsum[static_cast<std::size_t>(v)];
      subset |= bit;
      for (int u = 0; u < n_; ++u) rowsum[static_cast<std::size_t>(u)] += entry(u, v);
    }
    if (twice % 2 != 0) throw Error("f is not integral; K is not characteristic");
    const int f = twice / 2;
    m.g = std::min(m.g, f);
    for (int t = 0; t < nb; ++t) {
      const auto w = static_cast<std::size_t>(bits[t]);
      if (subset >> w & 1u)
        m.with[w] = std::min(m.with[w], f);
      else
        m.without[w] = std::min(m.without[w], f);
    }
  }
  return m;
}

int Lattice::g_scan(const CharVector& k, VertexMask e) const {
  int best = 0;
  for (VertexMask sub = e;; sub = (sub - 1) & e) {
    best = std::min(best, f_val(k, sub));
    if (sub == 0) break;
  }
  return best;
}

int Lattice::g_val(const CharVector& k, VertexMask e) const {
  if (e == 0) return 0;
  GKey key{CharVector(n_), e};
  for (int i = 0; i < n_; ++i)
    if (e >> i & 1u) key.k[i] = k[i];
  return shared_->g_memo.get_or_compute(key, [&] { return minima(k, e).g; });
}

CharVector Lattice::shift(const CharVector& k, int v, int t) const {
  CharVector out = k;
  for (int u = 0; u < n_; ++u) out[u] += 2 * t * entry(v, u);
  return out;
}

CharVector Lattice::shift_v0(const CharVector& k, int t) const {
  CharVector out = k;
  for (int u = 0; u < n_; ++u) out[u] += 2 * t * v0_adjacency(u);
  return out;
}

Chain Lattice::boundary(const Generator& x) const {
  if (x.e == 0) return {};
  const SubsetMinima m = minima(x.k, x.e);
  std::vector<Generator> out;
  out.reserve(2 * static_cast<std::size_t>(std::popcount(x.e)));
  for (int v = 0; v < n_; ++v) {
    if (!(x.e >> v & 1u)) continue;
    const VertexMask rest = x.e & ~(VertexMask{1} << v);
    const int a = m.without[static_cast<std::size_t>(v)] - m.g;
    const int b = m.with[static_cast<std::size_t>(v)] - m.g;
    out.push_back({x.k, rest, x.u + a});
    out.push_back({shift(x.k, v), rest, x.u + b});
  }
  return Chain::from_terms(std::move(out));
}

Chain Lattice::boundary(const Chain& c) const {
  return apply_linear(c, [&](const Generator& g) { return boundary(g); });
}

int Lattice::b_exponent_alternative(const CharVector& k, VertexMask e, int v) const {
  const VertexMask rest = e & ~(VertexMask{1} << v);
  return g_scan(shift(k, v), rest) + (k[v] + framing(v)) / 2 - g_scan(k, e);
}

Rational Lattice::char_square(const CharVector& k) const {
  __int128 num = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      num += static_cast<__int128>(k[i]) * inverse_.adjugate[static_cast<std::size_t>(i * n_ + j)] * k[j];
  return make_rational(num, inverse_.det);
}

Rational Lattice::maslov(const Generator& x) const {
  const Rational square = char_square(x.k);
  const int integral = -2 * x.u + 2 * g_val(x.k, x.e) + std::popcount(x.e);
  return Rational(integral) + (square + n_) / 4;
}

Rational Lattice::alpha_linear_part(const CharVector& k) const {
  __int128 num = 0;
  for (int j = 0; j < n_; ++j)
    num += static_cast<__int128>(alpha_num_[static_cast<std::size_t>(j)]) * (k[j] + v0_adjacency(j));
  return make_rational(num, static_cast<__int128>(2) * alpha_den_);
}

Rational Lattice::alpha(const Generator& x) const {
  const int integral = -x.u + g_val(x.k, x.e) - g_val(shift_v0(x.k), x.e);
  return Rational(integral) + alpha_linear_part(x.k);
}

SpincKey Lattice::spinc_key(const CharVector& k) const {
  SpincKey key;
  const std::int64_t mod = 2 * (inverse_.det < 0 ? -inverse_.det : inverse_.det);
  for (int i = 0; i < n_; ++i) {
    __int128 s = 0;
    for (int j = 0; j < n_; ++j) s += static_cast<__int128>(inverse_.adjugate[static_cast<std::size_t>(i * n_ + j)]) * k[j];
    auto r = static_cast<std::int64_t>(s % mod);
    if (r < 0) r += mod;
    key.r[static_cast<std::size_t>(i)] = r;
  }
  return key;
}

CharVector Lattice::spinc_class(const CharVector& k) const {
  require_characteristic(k);
  std::call_once(shared_->spinc_once, [&] {
    double volume = 1;
    for (int i = 0; i < n_; ++i) volume *= 1 - framing(i);
    if (volume > 2e7) throw Error("margin-0 box too large for spin^c representatives");
    CharVector cur(n_);
    for (int i = 0; i < n_; ++i) cur[i] = framing(i);
    // Odometer in lexicographic order, so the first hit per key is least.
    while (true) {
      shared_->spinc_reps.try_emplace(spinc_key(cur), cur);
      int i = n_ - 1;
      while (i >= 0 && cur[i] + 2 > -framing(i)) cur[i] = framing(i), --i;
      if (i < 0) break;
      cur[i] += 2;
    }
  });
  auto it = shared_->spinc_reps.find(spinc_key(k));
  if (it == shared_->spinc_reps.end()) throw Error("no spin^c representative in the margin-0 box for " + to_string(k));
  return it->second;
}

}  // namespace lk
