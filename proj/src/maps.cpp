#include "lk/maps.hpp"

#include "lk/errors.hpp"

#include <bit>

namespace lk {

namespace {

struct CellKey {
  CharVector k;
  VertexMask e;
  bool operator==(const CellKey&) const = default;
};
struct CellKeyHash {
  std::size_t operator()(const CellKey& c) const noexcept { return CharVectorHash{}(c.k) * 31 + c.e; }
};

BlowupKind kind_of(const Forest& base, const MoveRecord& record) {
  switch (record.kind) {
    case MoveKind::generic_up: return BlowupKind::generic;
    case MoveKind::vertex_up: return BlowupKind::vertex;
    case MoveKind::edge_up: {
      const auto v0 = base.v0();
      for (const auto& id : record.site)
        if (base.index_of(id) == v0) return BlowupKind::v0_edge;
      return BlowupKind::edge;
    }
    case MoveKind::down: break;
  }
  throw Error("a blow-down does not define a blow-up context");
}

}  // namespace

std::string to_string(BlowupKind kind) {
  switch (kind) {
    case BlowupKind::generic: return "generic";
    case BlowupKind::vertex: return "vertex";
    case BlowupKind::edge: return "edge";
    case BlowupKind::v0_edge: return "v0_edge";
  }
  return "?";
}

struct BlowupContext::Memo {
  ShardedMemo<CellKey, Chain, CellKeyHash> c0;
  ShardedMemo<CellKey, Chain, CellKeyHash> stab;
};

BlowupContext::BlowupContext(const Forest& base, const MoveResult& move, MapOptions options)
    : kind_(kind_of(base, move.record)),
      record_(move.record),
      options_(options),
      base_(base),
      blown_(move.forest),
      memo_(std::make_shared<Memo>()) {
  e_ = blown_.index_of(record_.new_id);
  if (e_ != base_.rank() || blown_.rank() != base_.rank() + 1)
    throw Error("blow-up context: the new vertex must be the last framed coordinate");
  for (int i = 0; i < base_.rank(); ++i)
    if (base_.form().framed[static_cast<std::size_t>(i)] != blown_.form().framed[static_cast<std::size_t>(i)])
      throw Error("blow-up context: framed coordinates do not line up");
}

BlowupContext BlowupContext::generic(const Forest& base, MapOptions options) {
  return BlowupContext(base, blow_up_generic(base), options);
}
BlowupContext BlowupContext::vertex(const Forest& base, std::string_view v, MapOptions options) {
  return BlowupContext(base, blow_up_vertex(base, v), options);
}
BlowupContext BlowupContext::edge(const Forest& base, std::string_view v, std::string_view w, MapOptions options) {
  return BlowupContext(base, blow_up_edge(base, v, w), options);
}

void BlowupContext::require_homotopy() const {
  if (!has_homotopy()) throw Error("chain homotopies exist only for framed vertex and edge blow-ups");
}

CharVector BlowupContext::push_forward(const CharVector& k) const {
  CharVector out(base_.rank());
  for (int u = 0; u < base_.rank(); ++u) out[u] = k[u] + blown_.entry(u, e_) * k[e_];
  return out;
}

CharVector BlowupContext::lift(const CharVector& k, int l) const {
  CharVector out(blown_.rank());
  for (int u = 0; u < base_.rank(); ++u) out[u] = k[u] - blown_.entry(u, e_) * l;
  out[e_] = l;
  return out;
}

GeneratorType BlowupContext::generator_type(const CharVector& k, VertexMask e) const {
  if (e >> e_ & 1u) throw Error("generator type is defined only when the new vertex is not in E");
  GeneratorType out;
  out.i0 = (k[e_] + 1) / 2;
  const CharVector l = blown_.shift(k, e_, out.i0);
  const SubsetMinima m = blown_.minima(l, e | (VertexMask{1} << e_));
  const int a = m.without[static_cast<std::size_t>(e_)] - m.g;
  const int b = m.with[static_cast<std::size_t>(e_)] - m.g;
  const bool type_a = options_.tie_break == TieBreak::prefer_type_a ? a == 0 : b > 0;
  out.tag = type_a ? GeneratorTag::type_a : GeneratorTag::type_b;
  return out;
}

Chain BlowupContext::h0(const Generator& x) const {
  require_homotopy();
  if (x.e >> e_ & 1u) return {};
  const bool type_a = generator_type(x.k, x.e).tag == GeneratorTag::type_a;
  const int ke = x.k[e_];
  const VertexMask grown = x.e | (VertexMask{1} << e_);
  int t = 0;
  if (options_.convention == TConvention::narrow) {
    t = type_a ? -1 : 1;
    if (ke == t - 2) return {};
  } else {
    t = type_a ? 1 : -1;
    if (t - 2 <= ke && ke < t) return {};
  }
  if (ke >= t) return Chain(Generator{x.k, grown, x.u});
  return Chain(Generator{blown_.shift(x.k, e_, -1), grown, x.u});
}

Chain BlowupContext::h0(const Chain& c) const {
  return apply_linear(c, [&](const Generator& g) { return h0(g); });
}

Chain BlowupContext::c0(const Generator& x) const {
  require_homotopy();
  const Chain base = memo_->c0.get_or_compute(CellKey{x.k, x.e}, [&] {
    const Generator g{x.k, x.e, 0};
    Chain out(g);
    out += blown_.boundary(h0(g));
    out += h0(blown_.boundary(g));
    return out;
  });
  return x.u ? base.shifted(x.u) : base;
}

Chain BlowupContext::c0(const Chain& c) const {
  return apply_linear(c, [&](const Generator& g) { return c0(g); });
}

int BlowupContext::stabilization_depth(const Chain& c) const {
  Chain cur = c;
  for (int it = 0; it <= options_.max_iter; ++it) {
    Chain next = c0(cur);
    if (next == cur) return it;
    cur = std::move(next);
  }
  throw StabilizationCapError(to_string(c), options_.max_iter);
}

Chain BlowupContext::c_stab(const Generator& x) const {
  require_homotopy();
  const Chain base = memo_->stab.get_or_compute(CellKey{x.k, x.e}, [&] {
    Chain cur(Generator{x.k, x.e, 0});
    for (int it = 0; it <= options_.max_iter; ++it) {
      Chain next = c0(cur);
      if (next == cur) return cur;
      cur = std::move(next);
    }
    throw StabilizationCapError(to_string(Generator{x.k, x.e, 0}), options_.max_iter);
  });
  return x.u ? base.shifted(x.u) : base;
}

Chain BlowupContext::c_stab(const Chain& c) const {
  return apply_linear(c, [&](const Generator& g) { return c_stab(g); });
}

Chain BlowupContext::h_stab(const Chain& c, int depth) const {
  Chain total, cur = c;
  for (int k = 0; k < depth; ++k) {
    total += h0(cur);
    cur = c0(cur);
  }
  return total;
}

Chain BlowupContext::h_stab(const Generator& x) const {
  const Chain single(x);
  const int depth = std::max(stabilization_depth(single), stabilization_depth(blown_.boundary(x)));
  return h_stab(single, depth);
}

std::optional<int> BlowupContext::down_exponent(const Generator& x) const {
  if (x.e >> e_ & 1u) return std::nullopt;
  const int l = x.k[e_];
  const int divisor = options_.divisor == SDivisor::eight ? 8 : 2;
  const int square = l * l - 1;
  if (square % divisor != 0) throw Error("down exponent is not integral");
  return square / divisor + base_.g_val(push_forward(x.k), x.e) - blown_.g_val(x.k, x.e);
}

Chain BlowupContext::down(const Generator& x) const {
  const auto s = down_exponent(x);
  if (!s) return {};
  return Chain(Generator{push_forward(x.k), x.e, x.u + *s});
}

Chain BlowupContext::down(const Chain& c) const {
  return apply_linear(c, [&](const Generator& g) { return down(g); });
}

int BlowupContext::chosen_lift(const Generator& x) const {
  if (options_.lift == TLift::literal || kind_ == BlowupKind::generic) return -1;
  for (int l : {-1, -3, 1, -5, 3}) {
    const auto s = down_exponent(Generator{lift(x.k, l), x.e, 0});
    if (s && *s == 0) return l;
  }
  return -1;
}

Generator BlowupContext::up_lift(const Generator& x) const { return {lift(x.k, chosen_lift(x)), x.e, x.u}; }

Chain BlowupContext::up(const Generator& x) const {
  const Generator lifted = up_lift(x);
  if (!has_homotopy()) return Chain(lifted);
  return c_stab(lifted);
}

Chain BlowupContext::up(const Chain& c) const {
  return apply_linear(c, [&](const Generator& g) { return up(g); });
}

namespace {

void require_kind(const BlowupContext& ctx, BlowupKind kind, const char* name) {
  if (ctx.kind() != kind) throw Error(std::string(name) + " needs a " + to_string(kind) + " blow-up context");
}

}  // namespace

Chain p_map(const BlowupContext& ctx, const Generator& x) {
  require_kind(ctx, BlowupKind::vertex, "P");
  return ctx.down(x);
}
Chain r_map(const BlowupContext& ctx, const Generator& x) {
  require_kind(ctx, BlowupKind::vertex, "R");
  return ctx.up(x);
}
Chain s_map(const BlowupContext& ctx, const Generator& x) {
  require_kind(ctx, BlowupKind::edge, "S");
  return ctx.down(x);
}
Chain t_map(const BlowupContext& ctx, const Generator& x) {
  require_kind(ctx, BlowupKind::edge, "T");
  return ctx.up(x);
}

Chain generic_blowup_map(const BlowupContext& ctx, const Generator& x) {
  require_kind(ctx, BlowupKind::generic, "generic blow-up map");
  return ctx.up(x);
}
Chain generic_blowdown_map(const BlowupContext& ctx, const Generator& x) {
  require_kind(ctx, BlowupKind::generic, "generic blow-down map");
  return ctx.down(x);
}

}  // namespace lk
