#include "lk/homology.hpp"

#include "lk/errors.hpp"
#include "lk/generators.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <unordered_map>

namespace lk {

namespace {

constexpr std::size_t kMaxGenerators = 40'000'000;

struct Term {
  std::uint64_t cell;
  int exponent;
};

struct Cells {
  int n = 0;
  int ucap = 0;
  std::vector<CharVector> ks;
  std::vector<std::uint8_t> included;
  std::vector<std::size_t> offset;  // into terms
  std::vector<Term> terms;
  std::vector<Rational> gr0, alpha0;
  std::vector<int> spinc_of_k;
  std::vector<CharVector> spinc_reps;
};

// Runs body(i) for i in [0, count) in parallel, rethrowing the first error.
template <class F>
void parallel_for(std::int64_t count, F&& body) {
  std::exception_ptr error;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

Cells build_cells(const Lattice& lattice, int margin, int ucap) {
  if (margin < 0) throw Error("margin must be nonnegative");
  if (ucap < 1) throw Error("U cap must be at least 1");
  Cells c;
  c.n = lattice.rank();
  c.ucap = ucap;
  const Box box = make_box(lattice, margin);
  const std::size_t subsets = std::size_t{1} << c.n;
  if (box.volume() * subsets * static_cast<std::size_t>(ucap) > kMaxGenerators)
    throw Error("truncated complex too large; lower the margin or U cap");
  c.ks = char_vectors(box);
  const std::size_t cells = c.ks.size() * subsets;

  std::vector<std::int64_t> stride(static_cast<std::size_t>(c.n), 1);
  for (int i = c.n - 2; i >= 0; --i)
    stride[static_cast<std::size_t>(i)] =
        stride[static_cast<std::size_t>(i + 1)] * ((box.hi[i + 1] - box.lo[i + 1]) / 2 + 1);
  std::vector<std::int64_t> delta(static_cast<std::size_t>(c.n), 0);
  for (int v = 0; v < c.n; ++v)
    for (int u = 0; u < c.n; ++u) delta[static_cast<std::size_t>(v)] += lattice.entry(v, u) * stride[static_cast<std::size_t>(u)];

  c.included.assign(cells, 0);
  parallel_for(static_cast<std::int64_t>(c.ks.size()), [&](std::int64_t kidx) {
    for (std::size_t e = 0; e < subsets; ++e)
      c.included[static_cast<std::size_t>(kidx) * subsets + e] =
          cube_in_box(lattice, box, c.ks[static_cast<std::size_t>(kidx)], static_cast<VertexMask>(e));
  });

  c.offset.assign(cells + 1, 0);
  for (std::size_t cell = 0; cell < cells; ++cell)
    c.offset[cell + 1] = c.offset[cell] + (c.included[cell] ? 2 * std::popcount(cell % subsets) : 0);
  c.terms.resize(c.offset[cells]);
  c.gr0.assign(cells, Rational(0));
  c.alpha0.assign(cells, Rational(0));

  std::map<CharVector, int> rep_index;
  c.spinc_of_k.resize(c.ks.size());
  for (std::size_t kidx = 0; kidx < c.ks.size(); ++kidx) {
    const CharVector rep = lattice.spinc_class(c.ks[kidx]);
    auto [it, fresh] = rep_index.try_emplace(rep, static_cast<int>(c.spinc_reps.size()));
    if (fresh) c.spinc_reps.push_back(rep);
    c.spinc_of_k[kidx] = it->second;
  }

  parallel_for(static_cast<std::int64_t>(c.ks.size()), [&](std::int64_t kidx_signed) {
    const auto kidx = static_cast<std::size_t>(kidx_signed);
    const CharVector& k = c.ks[kidx];
    const Rational base = (lattice.char_square(k) + c.n) / 4;
    const Rational linear = lattice.alpha_linear_part(k);
    const CharVector k0 = lattice.shift_v0(k);
    for (std::size_t e = 0; e < subsets; ++e) {
      const std::size_t cell = kidx * subsets + e;
      if (!c.included[cell]) continue;
      const auto mask = static_cast<VertexMask>(e);
      const SubsetMinima m = lattice.minima(k, mask);
      c.gr0[cell] = Rational(2 * m.g + std::popcount(mask)) + base;
      c.alpha0[cell] = Rational(m.g - lattice.minima(k0, mask).g) + linear;
      std::size_t t = c.offset[cell];
      for (int v = 0; v < c.n; ++v) {
        if (!(mask >> v & 1u)) continue;
        const std::size_t rest = e & ~(std::size_t{1} << v);
        const std::size_t shifted_k = static_cast<std::size_t>(static_cast<std::int64_t>(kidx) + delta[static_cast<std::size_t>(v)]);
        c.terms[t++] = {kidx * subsets + rest, m.without[static_cast<std::size_t>(v)] - m.g};
        c.terms[t++] = {shifted_k * subsets + rest, m.with[static_cast<std::size_t>(v)] - m.g};
      }
    }
  });
  return c;
}

struct GroupKey {
  int spinc;
  Rational grading;
  bool operator<(const GroupKey& o) const { return spinc != o.spinc ? spinc < o.spinc : grading < o.grading; }
};

// For one grading block: alpha of each column and whether it reduced to zero.
using Reduced = std::vector<std::pair<Rational, bool>>;

std::vector<ProfileStep> merge_steps(const Reduced& cycles_side, const Reduced& boundary_side) {
  // Events: a zero column in degree d adds a cycle; a nonzero column in
  // degree d+1 kills one.
  std::vector<std::pair<Rational, int>> events;
  for (const auto& [a, zero] : cycles_side)
    if (zero) events.emplace_back(a, +1);
  for (const auto& [a, zero] : boundary_side)
    if (!zero) events.emplace_back(a, -1);
  std::sort(events.begin(), events.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<ProfileStep> steps;
  int dim = 0, last = 0;
  for (std::size_t i = 0; i < events.size();) {
    std::size_t j = i;
    while (j < events.size() && events[j].first == events[i].first) dim += events[j++].second;
    if (dim != last) steps.push_back({events[i].first, dim});
    last = dim;
    i = j;
  }
  return steps;
}

}  // namespace

Profiles compute_profiles(const Lattice& lattice, int margin, int ucap) {
  const Cells c = build_cells(lattice, margin, ucap);
  const std::size_t subsets = std::size_t{1} << c.n;
  const auto N = static_cast<std::uint64_t>(ucap);

  std::map<GroupKey, int> group_index;
  std::vector<std::vector<std::uint64_t>> members;
  for (std::size_t cell = 0; cell < c.included.size(); ++cell) {
    if (!c.included[cell]) continue;
    const int s = c.spinc_of_k[cell / subsets];
    for (std::uint64_t j = 0; j < N; ++j) {
      GroupKey key{s, c.gr0[cell] - Rational(2 * static_cast<std::int64_t>(j))};
      auto [it, fresh] = group_index.try_emplace(key, static_cast<int>(members.size()));
      if (fresh) members.emplace_back();
      members[static_cast<std::size_t>(it->second)].push_back(cell * N + j);
    }
  }
  std::vector<GroupKey> keys(members.size());
  for (const auto& [key, idx] : group_index) keys[static_cast<std::size_t>(idx)] = key;

  auto alpha_of = [&](std::uint64_t id) { return c.alpha0[id / N] - Rational(static_cast<std::int64_t>(id % N)); };

  std::vector<Reduced> reduced(members.size());
  parallel_for(static_cast<std::int64_t>(members.size()), [&](std::int64_t gi) {
    auto& cols = members[static_cast<std::size_t>(gi)];
    std::vector<std::pair<Rational, std::uint64_t>> order;
    order.reserve(cols.size());
    for (auto id : cols) order.emplace_back(alpha_of(id), id);
    std::sort(order.begin(), order.end());

    std::unordered_map<std::uint64_t, std::size_t> low;
    std::vector<std::vector<std::uint64_t>> stored;
    Reduced out;
    out.reserve(order.size());
    std::vector<std::uint64_t> col, scratch;
    for (const auto& [a, id] : order) {
      const std::uint64_t cell = id / N, j = id % N;
      col.clear();
      for (std::size_t t = c.offset[cell]; t < c.offset[cell + 1]; ++t) {
        const std::uint64_t jj = j + static_cast<std::uint64_t>(c.terms[t].exponent);
        if (jj >= N) continue;
        const std::uint64_t row = c.terms[t].cell * N + jj;
        if (alpha_of(row) > a) throw Error("differential increases the filtration");
        col.push_back(row);
      }
      std::sort(col.begin(), col.end());
      while (!col.empty()) {
        auto it = low.find(col.back());
        if (it == low.end()) break;
        const auto& other = stored[it->second];
        scratch.clear();
        std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(scratch));
        col.swap(scratch);
      }
      if (!col.empty()) {
        low.emplace(col.back(), stored.size());
        stored.push_back(col);
      }
      out.emplace_back(a, col.empty());
    }
    reduced[static_cast<std::size_t>(gi)] = std::move(out);
  });

  Profiles profiles;
  static const Reduced kEmpty;
  for (std::size_t gi = 0; gi < keys.size(); ++gi) {
    const auto up = group_index.find(GroupKey{keys[gi].spinc, keys[gi].grading + 1});
    const Reduced& above = up == group_index.end() ? kEmpty : reduced[static_cast<std::size_t>(up->second)];
    auto steps = merge_steps(reduced[gi], above);
    if (!steps.empty())
      profiles.emplace(ProfileKey{c.spinc_reps[static_cast<std::size_t>(keys[gi].spinc)], keys[gi].grading}, std::move(steps));
  }
  return profiles;
}

int total_dim(const std::vector<ProfileStep>& steps) { return steps.empty() ? 0 : steps.back().dim; }

int dim_at(const std::vector<ProfileStep>& steps, const Rational& level) {
  int dim = 0;
  for (const auto& s : steps) {
    if (s.level > level) break;
    dim = s.dim;
  }
  return dim;
}

std::optional<Rational> truncation_floor(const Lattice& lattice, int margin) {
  const int n = lattice.rank();
  if (n == 0) return std::nullopt;
  // gr(K,E) <= |E| + (n + K_I^2)/4 for every cube vertex K_I, and a vertex
  // with K_I(v) = c has K_I^2 <= c^2 / m_v.
  Rational worst(std::numeric_limits<std::int64_t>::min() / 4);
  for (int v = 0; v < n; ++v) {
    const std::int64_t m = lattice.framing(v), c = -m + 2 * margin + 2;
    worst = std::max(worst, Rational(c * c, m));
  }
  return Rational(n) + (Rational(n) + worst) / 4;
}

std::pair<HomologyTable, FiltrationTable> homology_and_profile(const Lattice& lattice, int margin, int ucap) {
  const Profiles here = compute_profiles(lattice, margin, ucap);
  const Profiles next = compute_profiles(lattice, margin + 1, ucap + 1);
  std::set<ProfileKey> keys;
  for (const auto& [k, _] : here) keys.insert(k);
  for (const auto& [k, _] : next) keys.insert(k);

  static const std::vector<ProfileStep> kNone;
  const auto floor = truncation_floor(lattice, margin);
  HomologyTable hom{margin, ucap, floor, {}};
  FiltrationTable filt{margin, ucap, floor, {}};
  for (const auto& key : keys) {
    auto a = here.find(key), b = next.find(key);
    const auto& sa = a == here.end() ? kNone : a->second;
    const auto& sb = b == next.end() ? kNone : b->second;
    if (sa.empty()) {
      // Present only at the larger truncation: an unstable zero.
      hom.entries.push_back({key.first, key.second, 0, false});
      filt.entries.push_back({key.first, key.second, {}, false});
      continue;
    }
    const bool above = !floor || key.second > *floor;
    hom.entries.push_back({key.first, key.second, total_dim(sa), above && total_dim(sa) == total_dim(sb)});
    filt.entries.push_back({key.first, key.second, sa, above && sa == sb});
  }
  auto order = [](const auto& x, const auto& y) {
    return x.spinc != y.spinc ? x.spinc < y.spinc : x.grading > y.grading;
  };
  std::sort(hom.entries.begin(), hom.entries.end(), order);
  std::sort(filt.entries.begin(), filt.entries.end(), order);
  return {std::move(hom), std::move(filt)};
}

HomologyTable truncated_homology(const Lattice& lattice, int margin, int ucap) {
  return homology_and_profile(lattice, margin, ucap).first;
}

FiltrationTable filtration_profile(const Lattice& lattice, int margin, int ucap) {
  return homology_and_profile(lattice, margin, ucap).second;
}

}  // namespace lk
