#pragma once

#include "lk/calculus.hpp"
#include "lk/lattice.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lk {

enum class BlowupKind { generic, vertex, edge, v0_edge };

// Which threshold T goes with which generator type in the H0 case split.
//   narrow: T = -1 for type a, T = 1 for type b; zero only at K(e) = T - 2.
//   wide:   T = 1 for type a, T = -1 for type b; zero for T - 2 <= K(e) < T.
enum class TConvention { narrow, wide };

// Resolution of generators with a_e = b_e = 0 at the normalized point.
//   prefer_type_b: type a iff b_e > 0.
//   prefer_type_a: type a iff a_e = 0.
enum class TieBreak { prefer_type_b, prefer_type_a };

// The value of K(e) used when lifting a base generator.
//   zero_exponent: first l in (-1, -3, 1, -5, 3) whose down exponent is 0.
//   literal: always -1.
enum class TLift { zero_exponent, literal };

// Divisor of (l^2 - 1) in the down exponent.
enum class SDivisor { eight, two };

struct MapOptions {
  TConvention convention = TConvention::narrow;
  TieBreak tie_break = TieBreak::prefer_type_b;
  TLift lift = TLift::zero_exponent;
  SDivisor divisor = SDivisor::eight;
  int max_iter = 64;
};

enum class GeneratorTag { type_a, type_b };

struct GeneratorType {
  GeneratorTag tag = GeneratorTag::type_a;
  int i0 = 0;
};

// A base forest together with one blow-up of it. The new (-1)-vertex is the
// last framed coordinate of the blown lattice; all other coordinates agree.
class BlowupContext {
 public:
  BlowupContext(const Forest& base, const MoveResult& move, MapOptions options = {});

  static BlowupContext generic(const Forest& base, MapOptions options = {});
  static BlowupContext vertex(const Forest& base, std::string_view v, MapOptions options = {});
  static BlowupContext edge(const Forest& base, std::string_view v, std::string_view w, MapOptions options = {});

  BlowupKind kind() const noexcept { return kind_; }
  const Lattice& base() const noexcept { return base_; }
  const Lattice& blown() const noexcept { return blown_; }
  const MoveRecord& record() const noexcept { return record_; }
  const MapOptions& options() const noexcept { return options_; }
  int new_vertex() const noexcept { return e_; }
  bool has_homotopy() const noexcept { return kind_ == BlowupKind::vertex || kind_ == BlowupKind::edge; }

  // Blown K to base K: K(u) + (u.e) K(e).
  CharVector push_forward(const CharVector& k) const;
  // Base K to blown K with K(e) = l: K(u) - (u.e) l.
  CharVector lift(const CharVector& k, int l) const;

  GeneratorType generator_type(const CharVector& k, VertexMask e) const;
  Chain h0(const Generator& x) const;
  Chain h0(const Chain& c) const;
  Chain c0(const Generator& x) const;
  Chain c0(const Chain& c) const;
  Chain c_stab(const Generator& x) const;
  Chain c_stab(const Chain& c) const;
  // Number of c0 applications after which the orbit of c is fixed.
  int stabilization_depth(const Chain& c) const;
  // sum_{k < depth} H0 c0^k
  Chain h_stab(const Chain& c, int depth) const;
  // The homotopy with c_stab = Id + d h + h d at x: depth covers x and dx.
  Chain h_stab(const Generator& x) const;

  // Exponent s of the down map, or nothing when e is in E.
  std::optional<int> down_exponent(const Generator& x) const;
  Chain down(const Generator& x) const;  // P (vertex), S (edge)
  Chain down(const Chain& c) const;
  int chosen_lift(const Generator& x) const;
  Generator up_lift(const Generator& x) const;  // before stabilization
  Chain up(const Generator& x) const;           // R (vertex), T (edge)
  Chain up(const Chain& c) const;

 private:
  void require_homotopy() const;

  struct Memo;
  BlowupKind kind_;
  MoveRecord record_;
  MapOptions options_;
  Lattice base_, blown_;
  int e_ = 0;
  std::shared_ptr<Memo> memo_;
};

Chain p_map(const BlowupContext& ctx, const Generator& x);
Chain r_map(const BlowupContext& ctx, const Generator& x);
Chain s_map(const BlowupContext& ctx, const Generator& x);
Chain t_map(const BlowupContext& ctx, const Generator& x);

// [K,E] -> [(K,-1),E] for the isolated new vertex, and its inverse
// U^{(l^2-1)/8}[K,E] on generators with e not in E.
Chain generic_blowup_map(const BlowupContext& ctx, const Generator& x);
Chain generic_blowdown_map(const BlowupContext& ctx, const Generator& x);

std::string to_string(BlowupKind kind);

}  // namespace lk
