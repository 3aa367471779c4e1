#include "lk/calculus.hpp"
#include "lk/errors.hpp"
#include "lk/forest_io.hpp"
#include "lk/generators.hpp"
#include "lk/homology.hpp"
#include "lk/maps.hpp"
#include "lk/random_forest.hpp"
#include "lk/verify.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace lk {

bool CheckTally::ok() const {
  switch (mode) {
    case CheckMode::required: return failed == 0;
    case CheckMode::expected_failure: return failed > 0;
    case CheckMode::informational: return true;
  }
  return false;
}

bool SuiteReport::skip_ratio_ok() const { return skipped <= checked; }

bool SuiteReport::passed() const {
  if (!skip_ratio_ok()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckTally& c) { return c.ok(); });
}

const CheckTally* SuiteReport::find(const std::string& check) const {
  for (const auto& c : checks)
    if (c.name == check) return &c;
  return nullptr;
}

void apply_thread_limit() {
  if (const char* env = std::getenv("LATTICE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

namespace {

struct CheckSpec {
  std::string name;
  CheckMode mode;
};

struct Detail {
  std::string generator, expected, got;
};

constexpr CheckMode kReq = CheckMode::required;
constexpr CheckMode kExp = CheckMode::expected_failure;
constexpr CheckMode kInfo = CheckMode::informational;

// Check 0 of every suite: the instance ran to completion.
constexpr int kCompleted = 0;

class Recorder {
 public:
  Recorder(const std::vector<CheckSpec>& specs, std::uint64_t instance, std::uint64_t seed, std::size_t cap)
      : specs_(specs), instance_(instance), seed_(seed), cap_(cap), checked_(specs.size(), 0), failed_(specs.size(), 0) {}

  void set_forest(const Forest& f) { forest_ = emit_forest(f); }
  void set_context(std::string c) { context_ = std::move(c); }

  template <class Describe>
  bool check(int id, bool ok, Describe&& describe) {
    const auto i = static_cast<std::size_t>(id);
    ++checked_[i];
    if (ok) return true;
    ++failed_[i];
    auto& sink = specs_[i].mode == CheckMode::required ? failures : witnesses;
    if (sink.size() < cap_) {
      Detail d = describe();
      sink.push_back({specs_[i].name, instance_, seed_, forest_, context_, std::move(d.generator), std::move(d.expected), std::move(d.got)});
    }
    return false;
  }
  bool check(int id, bool ok) {
    return check(id, ok, [] { return Detail{}; });
  }

  void count(std::uint64_t n = 1) { generators += n; }
  void skip(std::uint64_t n = 1) { skipped += n; }

  const std::vector<CheckSpec>& specs_;
  std::uint64_t instance_, seed_;
  std::size_t cap_;
  std::string forest_, context_;
  std::vector<std::uint64_t> checked_, failed_;
  std::vector<Failure> failures, witnesses;
  std::uint64_t generators = 0, skipped = 0;
};

using Body = std::function<void(Recorder&, std::uint64_t seed, int max_framed)>;

struct SuiteDef {
  std::vector<CheckSpec> checks;
  int max_framed;
  Body body;
  std::vector<std::string> notes;
};

SuiteReport run_instances(const std::string& name, const SuiteDef& def, const SuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int max_framed = options.max_framed > 0 ? options.max_framed : def.max_framed;
  std::vector<std::unique_ptr<Recorder>> recs(static_cast<std::size_t>(std::max(options.instances, 0)));
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < options.instances; ++i) {
    const std::uint64_t seed = derive_seed(options.seed, static_cast<std::uint64_t>(i));
    auto rec = std::make_unique<Recorder>(def.checks, static_cast<std::uint64_t>(i), seed, options.failure_cap);
    bool done = false;
    std::string error;
    try {
      def.body(*rec, seed, max_framed);
      done = true;
    } catch (const std::exception& e) {
      error = e.what();
    }
    rec->check(kCompleted, done, [&] { return Detail{"", "completed", error}; });
    recs[static_cast<std::size_t>(i)] = std::move(rec);
  }

  SuiteReport report;
  report.suite = name;
  report.seed = options.seed;
  report.instances = options.instances;
  report.margin = options.margin;
  for (const auto& spec : def.checks) report.checks.push_back({spec.name, spec.mode, 0, 0});
  for (const auto& rec : recs) {
    report.checked += rec->generators;
    report.skipped += rec->skipped;
    for (std::size_t c = 0; c < def.checks.size(); ++c) {
      report.checks[c].checked += rec->checked_[c];
      report.checks[c].failed += rec->failed_[c];
    }
    for (auto& f : rec->failures)
      if (report.failures.size() < options.failure_cap) report.failures.push_back(std::move(f));
    for (auto& f : rec->witnesses)
      if (report.witnesses.size() < options.failure_cap) report.witnesses.push_back(std::move(f));
  }
  report.notes = def.notes;
  if (!report.skip_ratio_ok()) report.notes.push_back("more than half of the work was skipped; increase the margin");
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

RandomForestSpec forest_spec(std::uint64_t seed, int max_framed) {
  RandomForestSpec spec;
  spec.seed = seed;
  spec.max_framed = max_framed;
  return spec;
}

bool has_framed_edge(const Forest& f) {
  for (const auto& [a, b] : f.edges())
    if (!f.vertex(a).unframed() && !f.vertex(b).unframed()) return true;
  return false;
}

// Deterministic stream of draws until the predicate holds.
template <class Pred>
Forest draw_until(std::uint64_t seed, int max_framed, Pred&& pred) {
  for (std::uint64_t attempt = 0; attempt < 10000; ++attempt) {
    Forest f = random_forest(forest_spec(derive_seed(seed, attempt), max_framed));
    if (pred(f)) return f;
  }
  throw Error("no suitable random forest in 10000 draws");
}

std::pair<std::string, std::string> random_framed_edge(const Forest& f, std::mt19937_64& rng) {
  std::vector<Forest::Edge> edges;
  for (const auto& e : f.edges())
    if (!f.vertex(e.first).unframed() && !f.vertex(e.second).unframed()) edges.push_back(e);
  const auto& e = edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
  return {f.vertex(e.first).id, f.vertex(e.second).id};
}

std::string random_framed_vertex(const Forest& f, std::mt19937_64& rng) {
  const auto framed = f.framed_vertices();
  return f.vertex(framed[std::uniform_int_distribution<std::size_t>(0, framed.size() - 1)(rng)]).id;
}

std::string site_string(const BlowupContext& ctx) {
  std::string s = to_string(ctx.kind()) + " blow-up";
  for (const auto& id : ctx.record().site) s += " " + id;
  return s;
}

std::string chain_grades(const Lattice& lat, const Chain& c, bool alpha) {
  std::string s;
  for (const auto& t : c.terms()) {
    if (!s.empty()) s += ", ";
    s += to_string(t) + " @ " + to_string(alpha ? lat.alpha(t) : lat.maslov(t));
  }
  return s.empty() ? "0" : s;
}

bool all_terms(const Chain& c, const std::function<bool(const Generator&)>& pred) {
  return std::all_of(c.terms().begin(), c.terms().end(), pred);
}

// ---------------------------------------------------------------- lattice

SuiteDef d_squared_suite(int margin) {
  enum { completed, d_squared, b_cross, g_oracle };
  return {{{"instance_completed", kReq}, {"d_squared_zero", kReq}, {"b_exponent_crosscheck", kReq}, {"g_memo_matches_scan", kReq}},
          4,
          [margin](Recorder& rec, std::uint64_t seed, int max_framed) {
            const Forest f = random_forest(forest_spec(seed, max_framed));
            rec.set_forest(f);
            const Lattice lat(f);
            for (const auto& x : enumerate_generators(lat, margin)) {
              rec.count();
              const Chain dd = lat.boundary(lat.boundary(x));
              rec.check(d_squared, dd.empty(), [&] { return Detail{to_string(x), "0", to_string(dd)}; });
              const SubsetMinima m = lat.minima(x.k, x.e);
              for (int v = 0; v < lat.rank(); ++v) {
                if (!(x.e >> v & 1u)) continue;
                const int b = m.with[static_cast<std::size_t>(v)] - m.g;
                const int alt = lat.b_exponent_alternative(x.k, x.e, v);
                rec.check(b_cross, b == alt, [&] { return Detail{to_string(x) + " v=" + std::to_string(v), std::to_string(alt), std::to_string(b)}; });
              }
              const int gm = lat.g_val(x.k, x.e), gs = lat.g_scan(x.k, x.e);
              rec.check(g_oracle, gm == gs, [&] { return Detail{to_string(x), std::to_string(gs), std::to_string(gm)}; });
            }
          },
          {"boundary squares are evaluated symbolically without truncation; skipped is always 0"}};
}

SuiteDef grading_drop_suite(int margin) {
  enum { completed, drop, nonneg, u_action, integral_class, quarter };
  return {{{"instance_completed", kReq},
           {"boundary_lowers_grading_by_one", kReq},
           {"boundary_exponents_nonnegative", kReq},
           {"u_lowers_grading_by_two", kReq},
           {"grading_differences_integral_in_class", kReq},
           {"grading_denominator_divides_4", kInfo}},
          4,
          [margin](Recorder& rec, std::uint64_t seed, int max_framed) {
            const Forest f = random_forest(forest_spec(seed, max_framed));
            rec.set_forest(f);
            const Lattice lat(f);
            for (const auto& x : enumerate_generators(lat, margin)) {
              rec.count();
              const Rational gr = lat.maslov(x);
              const Chain d = lat.boundary(x);
              for (const auto& t : d.terms()) {
                rec.check(drop, lat.maslov(t) == gr - 1, [&] { return Detail{to_string(x) + " -> " + to_string(t), to_string(gr - 1), to_string(lat.maslov(t))}; });
                rec.check(nonneg, t.u >= x.u, [&] { return Detail{to_string(x) + " -> " + to_string(t), ">= " + std::to_string(x.u), std::to_string(t.u)}; });
              }
              const Generator ux{x.k, x.e, x.u + 1};
              rec.check(u_action, lat.maslov(ux) == gr - 2);
              const Rational base = lat.maslov(Generator{lat.spinc_class(x.k), 0, 0});
              rec.check(integral_class, is_integer(gr - base), [&] { return Detail{to_string(x), "integer", to_string(gr - base)}; });
              rec.check(quarter, 4 % gr.denominator() == 0, [&] { return Detail{to_string(x), "denominator | 4", to_string(gr)}; });
            }
          },
          {"gradings are exact rationals; K^2 has denominator dividing det, so only differences within a spin^c class are integral"}};
}

SuiteDef filtered_differential_suite(int margin) {
  enum { completed, filtered, u_action, integral_class, half };
  return {{{"instance_completed", kReq},
           {"boundary_does_not_raise_alpha", kReq},
           {"u_lowers_alpha_by_one", kReq},
           {"alpha_differences_integral_in_class", kReq},
           {"alpha_denominator_divides_2", kInfo}},
          4,
          [margin](Recorder& rec, std::uint64_t seed, int max_framed) {
            const Forest f = random_forest(forest_spec(seed, max_framed));
            rec.set_forest(f);
            const Lattice lat(f);
            for (const auto& x : enumerate_generators(lat, margin)) {
              rec.count();
              const Rational a = lat.alpha(x);
              for (const auto& t : lat.boundary(x).terms())
                rec.check(filtered, lat.alpha(t) <= a, [&] { return Detail{to_string(x) + " -> " + to_string(t), "<= " + to_string(a), to_string(lat.alpha(t))}; });
              rec.check(u_action, lat.alpha(Generator{x.k, x.e, x.u + 1}) == a - 1);
              const Rational base = lat.alpha(Generator{lat.spinc_class(x.k), 0, 0});
              rec.check(integral_class, is_integer(a - base), [&] { return Detail{to_string(x), "integer", to_string(a - base)}; });
              rec.check(half, 2 % a.denominator() == 0, [&] { return Detail{to_string(x), "denominator | 2", to_string(a)}; });
            }
          },
          {}};
}

// ---------------------------------------------------------------- maps

enum FamilyCheck {
  f_completed,
  f_stabilizes,
  f_up_chain,
  f_up_grading,
  f_up_filtered,
  f_up_lift_alpha,
  f_down_up_id,
  f_down_chain,
  f_down_grading,
  f_down_filtered,
  f_down_exponent,
  f_h0_grading,
  f_h0_filtered,
  f_c_vanishes,
  f_up_down_c,
  f_homotopy,
  f_c_filtered,
  f_h_filtered,
  f_c_normal_form,
  f_be_zero,
  f_probe_a,
  f_probe_b,
};

std::vector<CheckSpec> family_checks(bool edge) {
  const std::string up = edge ? "T" : "R", down = edge ? "S" : "P";
  return {{"instance_completed", kReq},
          {"c_stabilizes_within_cap", kReq},
          {up + "_chain_map", kReq},
          {up + "_preserves_grading", kReq},
          {up + "_filtered", kReq},
          {up + "_lift_alpha_equal", edge ? kInfo : kReq},
          {down + "_after_" + up + "_is_identity", kReq},
          {down + "_chain_map", kReq},
          {down + "_preserves_grading", kReq},
          {down + "_filtered", kReq},
          {down + "_exponent_nonnegative", kReq},
          {"h0_raises_grading_by_one", kReq},
          {"h0_filtered", kReq},
          {"c_vanishes_when_new_vertex_in_E", kReq},
          {up + "_after_" + down + "_is_c", kReq},
          {"c_equals_id_plus_dh_plus_hd", kReq},
          {"c_filtered", kReq},
          {"h_filtered", kReq},
          {"c_normal_form_identity", kReq},
          {"b_e_zero_when_K_e_at_most_minus_3", edge ? kReq : kInfo},
          {edge ? "literal_lift_identity" : "wide_convention_consistent", kInfo},
          {"literal_tie_break_h0_filtered", kInfo}};
}

// The wide-convention probe mostly runs into the cap; keep it cheap.
constexpr int kProbeIterations = 16;
constexpr int kProbeGenerators = 256;

void family_instance(Recorder& rec, const BlowupContext& ctx, int margin, bool edge) {
  const Lattice& base = ctx.base();
  const Lattice& blown = ctx.blown();
  const int e = ctx.new_vertex();
  const VertexMask ebit = VertexMask{1} << e;

  MapOptions probe_a = ctx.options(), probe_b = ctx.options();
  if (edge) {
    probe_a.lift = TLift::literal;
  } else {
    probe_a.convention = TConvention::wide;
    probe_a.max_iter = kProbeIterations;
  }
  probe_b.tie_break = TieBreak::prefer_type_a;
  const Forest& base_forest = base.forest();
  MoveResult move{blown.forest(), ctx.record()};
  const BlowupContext ctx_a(base_forest, move, probe_a), ctx_b(base_forest, move, probe_b);

  for (const auto& x : enumerate_generators(base, margin)) {
    rec.count();
    Chain up;
    try {
      up = ctx.up(x);
    } catch (const StabilizationCapError& err) {
      rec.check(f_stabilizes, false, [&] { return Detail{to_string(x), "fixpoint", err.what()}; });
      continue;
    }
    rec.check(f_stabilizes, true);
    const Rational gr = base.maslov(x), a = base.alpha(x);
    const Chain lhs = blown.boundary(up), rhs = ctx.up(base.boundary(x));
    rec.check(f_up_chain, lhs == rhs, [&] { return Detail{to_string(x), to_string(rhs), to_string(lhs)}; });
    rec.check(f_up_grading, all_terms(up, [&](const Generator& t) { return blown.maslov(t) == gr; }),
              [&] { return Detail{to_string(x), to_string(gr), chain_grades(blown, up, false)}; });
    rec.check(f_up_filtered, all_terms(up, [&](const Generator& t) { return blown.alpha(t) <= a; }),
              [&] { return Detail{to_string(x), "<= " + to_string(a), chain_grades(blown, up, true)}; });
    const Generator lifted = ctx.up_lift(x);
    rec.check(f_up_lift_alpha, blown.alpha(lifted) == a, [&] { return Detail{to_string(x) + " -> " + to_string(lifted), to_string(a), to_string(blown.alpha(lifted))}; });
    const Chain back = ctx.down(up);
    rec.check(f_down_up_id, back == Chain(x), [&] { return Detail{to_string(x), to_string(x), to_string(back)}; });
    if (edge) {
      try {
        const Chain lit = ctx_a.down(ctx_a.up(x));
        rec.check(f_probe_a, lit == Chain(x), [&] { return Detail{to_string(x), to_string(x), to_string(lit)}; });
      } catch (const StabilizationCapError& err) {
        rec.check(f_probe_a, false, [&] { return Detail{to_string(x), "fixpoint", err.what()}; });
      }
    }
  }

  int probed = 0;
  for (const auto& x : enumerate_generators(blown, margin)) {
    rec.count();
    const bool e_in = x.e & ebit;
    const Rational gr = blown.maslov(x), a = blown.alpha(x);
    const Chain dx = blown.boundary(x);

    const Chain down = ctx.down(x);
    const Chain lhs = base.boundary(down), rhs = ctx.down(dx);
    rec.check(f_down_chain, lhs == rhs, [&] { return Detail{to_string(x), to_string(rhs), to_string(lhs)}; });
    if (!e_in) {
      const int s = *ctx.down_exponent(x);
      rec.check(f_down_exponent, s >= 0, [&] { return Detail{to_string(x), ">= 0", std::to_string(s)}; });
      const Generator& t = down.terms().front();
      rec.check(f_down_grading, base.maslov(t) == gr, [&] { return Detail{to_string(x) + " -> " + to_string(t), to_string(gr), to_string(base.maslov(t))}; });
      rec.check(f_down_filtered, base.alpha(t) <= a, [&] { return Detail{to_string(x) + " -> " + to_string(t), "<= " + to_string(a), to_string(base.alpha(t))}; });
    }

    const Chain h = ctx.h0(x);
    rec.check(f_h0_grading, all_terms(h, [&](const Generator& t) { return blown.maslov(t) == gr + 1; }),
              [&] { return Detail{to_string(x), to_string(gr + 1), chain_grades(blown, h, false)}; });
    rec.check(f_h0_filtered, all_terms(h, [&](const Generator& t) { return blown.alpha(t) <= a; }),
              [&] { return Detail{to_string(x), "<= " + to_string(a), chain_grades(blown, h, true)}; });

    if (edge && !e_in && x.k[e] <= -3) {
      const SubsetMinima m = blown.minima(x.k, x.e | ebit);
      const int big_a = m.without[static_cast<std::size_t>(e)], big_b = m.with[static_cast<std::size_t>(e)];
      rec.check(f_be_zero, big_b <= big_a, [&] { return Detail{to_string(x), "B_e <= A_e = " + std::to_string(big_a), std::to_string(big_b)}; });
    }

    Chain c;
    int depth = 0;
    try {
      c = ctx.c_stab(x);
      depth = std::max(ctx.stabilization_depth(Chain(x)), ctx.stabilization_depth(dx));
    } catch (const StabilizationCapError& err) {
      rec.check(f_stabilizes, false, [&] { return Detail{to_string(x), "fixpoint", err.what()}; });
      continue;
    }
    rec.check(f_stabilizes, true);
    if (e_in) rec.check(f_c_vanishes, c.empty(), [&] { return Detail{to_string(x), "0", to_string(c)}; });
    const Chain rp = ctx.up(down);
    rec.check(f_up_down_c, rp == c, [&] { return Detail{to_string(x), to_string(c), to_string(rp)}; });
    const Chain hx = ctx.h_stab(Chain(x), depth);
    const Chain homotopy = Chain(x) + blown.boundary(hx) + ctx.h_stab(dx, depth);
    rec.check(f_homotopy, homotopy == c, [&] { return Detail{to_string(x), to_string(c), to_string(homotopy)}; });
    rec.check(f_c_filtered, all_terms(c, [&](const Generator& t) { return blown.alpha(t) <= a; }),
              [&] { return Detail{to_string(x), "<= " + to_string(a), chain_grades(blown, c, true)}; });
    rec.check(f_h_filtered, all_terms(hx, [&](const Generator& t) { return blown.alpha(t) <= a; }),
              [&] { return Detail{to_string(x), "<= " + to_string(a), chain_grades(blown, hx, true)}; });
    if (!e_in) {
      const Generator normal = ctx.up_lift(down.terms().front());
      const Chain cn = ctx.c_stab(normal);
      rec.check(f_c_normal_form, cn == c, [&] { return Detail{to_string(x) + " ~ " + to_string(normal), to_string(c), to_string(cn)}; });
    }

    if (!edge && probed++ < kProbeGenerators) {
      bool ok = true;
      std::string got;
      try {
        const Chain c2 = ctx_a.c_stab(x);
        ok = (!e_in || c2.empty()) && ctx_a.up(ctx_a.down(x)) == c2;
        got = to_string(c2);
      } catch (const StabilizationCapError& err) {
        ok = false;
        got = err.what();
      }
      rec.check(f_probe_a, ok, [&] { return Detail{to_string(x), "consistent identities", got}; });
    }
    const Chain hb = ctx_b.h0(x);
    rec.check(f_probe_b, all_terms(hb, [&](const Generator& t) { return blown.alpha(t) <= a; }),
              [&] { return Detail{to_string(x), "<= " + to_string(a), chain_grades(blown, hb, true)}; });
  }
}

SuiteDef family_suite(bool edge, int margin) {
  std::vector<std::string> notes = {
      "H0 thresholds: T = -1 for type a and T = 1 for type b, zero only at K(e) = T - 2, in both families",
      "generator type at the normalized point K + 2 i0 e*: type a iff b_e > 0",
      "down exponent s = (l^2 - 1)/8 + g_base - g_blown; identities are compared symbolically, so no generator is skipped"};
  if (edge) notes.push_back("T lifts to the first K(e) in (-1, -3, 1, -5, 3) with down exponent 0");
  return {family_checks(edge), 4,
          [edge, margin](Recorder& rec, std::uint64_t seed, int max_framed) {
            std::mt19937_64 rng(seed ^ 0x5bd1e995u);
            const Forest f = edge ? draw_until(seed, max_framed, has_framed_edge)
                                  : random_forest(forest_spec(seed, max_framed));
            rec.set_forest(f);
            if (edge) {
              const auto [v, w] = random_framed_edge(f, rng);
              const auto ctx = BlowupContext::edge(f, v, w);
              rec.set_context(site_string(ctx));
              family_instance(rec, ctx, margin, true);
            } else {
              const auto ctx = BlowupContext::vertex(f, random_framed_vertex(f, rng));
              rec.set_context(site_string(ctx));
              family_instance(rec, ctx, margin, false);
            }
          },
          notes};
}

SuiteDef be_zero_suite(int margin) {
  enum { completed, lemma };
  return {{{"instance_completed", kReq}, {"b_e_zero_when_K_e_at_most_minus_3", kReq}},
          4,
          [margin](Recorder& rec, std::uint64_t seed, int max_framed) {
            std::mt19937_64 rng(seed ^ 0x5bd1e995u);
            const Forest f = draw_until(seed, max_framed, has_framed_edge);
            rec.set_forest(f);
            const auto [v, w] = random_framed_edge(f, rng);
            const auto ctx = BlowupContext::edge(f, v, w);
            rec.set_context(site_string(ctx));
            const Lattice& blown = ctx.blown();
            const int e = ctx.new_vertex();
            for (const auto& x : enumerate_generators(blown, margin)) {
              rec.count();
              if ((x.e >> e & 1u) || x.k[e] > -3) continue;
              const SubsetMinima m = blown.minima(x.k, x.e | (VertexMask{1} << e));
              const int big_a = m.without[static_cast<std::size_t>(e)], big_b = m.with[static_cast<std::size_t>(e)];
              rec.check(lemma, big_b <= big_a, [&] { return Detail{to_string(x), "B_e <= A_e = " + std::to_string(big_a), std::to_string(big_b)}; });
            }
          },
          {}};
}

SuiteDef square_identity_suite(int margin) {
  enum { completed, eq_edge, eq_vertex, eq_generic };
  return {{{"instance_completed", kReq}, {"square_identity_edge", kReq}, {"square_identity_vertex", kReq}, {"square_identity_generic", kReq}},
          4,
          [margin](Recorder& rec, std::uint64_t seed, int max_framed) {
            std::mt19937_64 rng(seed ^ 0x5bd1e995u);
            const Forest f = draw_until(seed, max_framed, has_framed_edge);
            rec.set_forest(f);
            const auto [v, w] = random_framed_edge(f, rng);
            const BlowupContext ctxs[] = {BlowupContext::edge(f, v, w), BlowupContext::vertex(f, random_framed_vertex(f, rng)),
                                          BlowupContext::generic(f)};
            const int ids[] = {eq_edge, eq_vertex, eq_generic};
            for (int c = 0; c < 3; ++c) {
              const auto& ctx = ctxs[c];
              const Box box = make_box(ctx.blown(), margin);
              for (int sample = 0; sample < 100; ++sample) {
                rec.count();
                CharVector k(ctx.blown().rank());
                for (int i = 0; i < k.size(); ++i) {
                  const int steps = (box.hi[i] - box.lo[i]) / 2;
                  k[i] = box.lo[i] + 2 * std::uniform_int_distribution<int>(0, steps)(rng);
                }
                const int l = k[ctx.new_vertex()];
                const Rational lhs = ctx.blown().char_square(k);
                const Rational rhs = ctx.base().char_square(ctx.push_forward(k)) - l * l;
                rec.check(ids[c], lhs == rhs, [&] { return Detail{to_string(k) + " (" + site_string(ctx) + ")", to_string(rhs), to_string(lhs)}; });
              }
            }
          },
          {"K^2 on the blown lattice equals (pushed K)^2 on the base minus K(e)^2"}};
}

SuiteDef s_divisor_suite(int margin) {
  enum { completed, eight, two_unit, two_large };
  return {{{"instance_completed", kReq},
           {"divisor_8_preserves_grading", kReq},
           {"divisor_2_preserves_grading_at_unit_l", kReq},
           {"divisor_2_preserves_grading_at_large_l", kExp}},
          4,
          [margin](Recorder& rec, std::uint64_t seed, int max_framed) {
            std::mt19937_64 rng(seed ^ 0x5bd1e995u);
            const Forest f = draw_until(seed, max_framed, has_framed_edge);
            rec.set_forest(f);
            const auto [v, w] = random_framed_edge(f, rng);
            MapOptions two;
            two.divisor = SDivisor::two;
            const auto ctx8 = BlowupContext::edge(f, v, w);
            const auto ctx2 = BlowupContext::edge(f, v, w, two);
            rec.set_context(site_string(ctx8));
            const int e = ctx8.new_vertex();
            for (const auto& x : enumerate_generators(ctx8.blown(), margin)) {
              rec.count();
              if (x.e >> e & 1u) continue;
              const Rational gr = ctx8.blown().maslov(x);
              const Generator t8 = ctx8.down(x).terms().front(), t2 = ctx2.down(x).terms().front();
              const Rational g8 = ctx8.base().maslov(t8), g2 = ctx2.base().maslov(t2);
              const int l = x.k[e];
              rec.check(eight, g8 == gr, [&] { return Detail{to_string(x), to_string(gr), to_string(g8)}; });
              rec.check(std::abs(l) >= 3 ? two_large : two_unit, g2 == gr,
                        [&] { return Detail{to_string(x) + " l=" + std::to_string(l), to_string(gr), to_string(g2)}; });
            }
          },
          {"S exponent uses (l^2 - 1)/8; the alternative (l^2 - 1)/2 is kept only to demonstrate that it breaks grading"}};
}

// ---------------------------------------------------------------- calculus

SuiteDef confluence_suite() {
  enum { completed, blowup_ok, inverse, confluent, idempotent, definite, reduced, equivalent_check };
  return {{{"instance_completed", kReq},
           {"blowup_stays_negative_definite", kReq},
           {"blowdown_inverts_blowup", kReq},
           {"reduction_orders_agree", kReq},
           {"reduce_idempotent", kReq},
           {"blowdown_preserves_definiteness", kReq},
           {"reduced_form_is_reduced", kReq},
           {"blowup_is_equivalent", kReq}},
          6,
          [](Recorder& rec, std::uint64_t seed, int max_framed) {
            std::mt19937_64 rng(seed ^ 0x5bd1e995u);
            const Forest base = random_forest(forest_spec(seed, max_framed));
            Forest cur = base;
            const int moves = std::uniform_int_distribution<int>(1, 3)(rng);
            for (int m = 0; m < moves; ++m) {
              const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
              MoveResult r;
              try {
                if (kind == 1 && cur.framed_count() > 0) {
                  r = blow_up_vertex(cur, random_framed_vertex(cur, rng));
                } else if (kind == 2 && !cur.edges().empty()) {
                  const auto& e = cur.edges()[std::uniform_int_distribution<std::size_t>(0, cur.edges().size() - 1)(rng)];
                  r = blow_up_edge(cur, cur.vertex(e.first).id, cur.vertex(e.second).id);
                } else {
                  r = blow_up_generic(cur);
                }
              } catch (const MoveError& err) {
                rec.check(blowup_ok, false, [&] { return Detail{emit_forest(cur), "negative definite", err.what()}; });
                return;
              }
              rec.check(blowup_ok, true);
              const Forest undone = blow_down(r.forest, r.record.new_id).forest;
              rec.check(inverse, canonical_form(undone) == canonical_form(cur),
                        [&] { return Detail{to_string(r.record.kind) + " " + r.record.new_id, canonical_form(cur), canonical_form(undone)}; });
              cur = r.forest;
            }
            rec.set_forest(cur);
            rec.count();
            const Forest reference = reduce(cur);
            const std::string ref = canonical_form(reference);
            rec.check(idempotent, canonical_form(reduce(reference)) == ref);
            rec.check(reduced, is_reduced(reference));
            rec.check(equivalent_check, equivalent(base, cur));
            for (int order = 0; order < 10; ++order) {
              Forest f = cur;
              bool ok = true;
              for (auto c = blow_down_candidates(f); !c.empty(); c = blow_down_candidates(f)) {
                const auto& w = c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)];
                try {
                  f = blow_down(f, w).forest;
                } catch (const MoveError&) {
                  ok = false;
                  break;
                }
                ok = ok && is_negative_definite(f);
              }
              rec.check(definite, ok);
              rec.check(confluent, canonical_form(f) == ref, [&] { return Detail{"order " + std::to_string(order), ref, canonical_form(f)}; });
            }
          },
          {}};
}

// ---------------------------------------------------------------- fingerprints

SuiteDef fingerprint_suite(int margin, int ucap) {
  enum { completed, hom_generic, prof_generic, hom_vertex, prof_vertex, hom_edge, prof_edge };
  return {{{"instance_completed", kReq},
           {"homology_generic", kReq},
           {"profile_generic", kReq},
           {"homology_vertex", kReq},
           {"profile_vertex", kReq},
           {"homology_edge", kReq},
           {"profile_edge", kReq}},
          3,
          [margin, ucap](Recorder& rec, std::uint64_t seed, int max_framed) {
            std::mt19937_64 rng(seed ^ 0x5bd1e995u);
            const Forest f = draw_until(seed, max_framed, [](const Forest& g) { return !g.edges().empty(); });
            rec.set_forest(f);
            const auto& edge = f.edges()[std::uniform_int_distribution<std::size_t>(0, f.edges().size() - 1)(rng)];
            const BlowupContext ctxs[] = {BlowupContext::generic(f), BlowupContext::vertex(f, random_framed_vertex(f, rng)),
                                          BlowupContext(f, blow_up_edge(f, f.vertex(edge.first).id, f.vertex(edge.second).id))};
            const auto [base_hom, base_prof] = homology_and_profile(ctxs[0].base(), margin, ucap);
            for (int c = 0; c < 3; ++c) {
              const auto& ctx = ctxs[c];
              rec.set_context(site_string(ctx));
              const auto [hom, prof] = homology_and_profile(ctx.blown(), margin, ucap);
              // Key blown entries by the base spin^c class they push forward to.
              std::map<ProfileKey, const ProfileEntry*> mine, theirs;
              std::map<ProfileKey, const HomologyEntry*> mine_h, theirs_h;
              for (const auto& p : base_prof.entries) mine[{p.spinc, p.grading}] = &p;
              for (const auto& h : base_hom.entries) mine_h[{h.spinc, h.grading}] = &h;
              for (const auto& p : prof.entries) theirs[{ctx.base().spinc_class(ctx.push_forward(p.spinc)), p.grading}] = &p;
              for (const auto& h : hom.entries) theirs_h[{ctx.base().spinc_class(ctx.push_forward(h.spinc)), h.grading}] = &h;
              std::set<ProfileKey> keys;
              for (const auto& [k, _] : mine) keys.insert(k);
              for (const auto& [k, _] : theirs) keys.insert(k);
              static const std::vector<ProfileStep> kNone;
              auto above = [&](const Rational& g) {
                return (!base_prof.floor || g > *base_prof.floor) && (!prof.floor || g > *prof.floor);
              };
              for (const auto& key : keys) {
                if (!above(key.second)) continue;
                auto a = mine.find(key), b = theirs.find(key);
                const bool sa = a == mine.end() || a->second->stable, sb = b == theirs.end() || b->second->stable;
                if (!sa || !sb) {
                  rec.skip();
                  continue;
                }
                rec.count();
                const auto& steps_a = a == mine.end() ? kNone : a->second->steps;
                const auto& steps_b = b == theirs.end() ? kNone : b->second->steps;
                auto describe = [&](const std::vector<ProfileStep>& s) {
                  std::string out;
                  for (const auto& st : s) out += "(" + to_string(st.level) + ":" + std::to_string(st.dim) + ")";
                  return out.empty() ? std::string("0") : out;
                };
                const std::string where = to_string(key.first) + " grading " + to_string(key.second);
                auto ha = mine_h.find(key), hb = theirs_h.find(key);
                const int da = ha == mine_h.end() ? 0 : ha->second->dim, db = hb == theirs_h.end() ? 0 : hb->second->dim;
                rec.check(1 + 2 * c, da == db, [&] { return Detail{where, std::to_string(da), std::to_string(db)}; });
                rec.check(2 + 2 * c, steps_a == steps_b, [&] { return Detail{where, describe(steps_a), describe(steps_b)}; });
              }
            }
          },
          {"only entries above both truncation floors are enumerated; those that change at (margin + 1, ucap + 1) count as skipped",
           "blown spin^c classes are matched to base classes by pushing K forward along the new vertex"}};
}

SuiteDef make_suite(const std::string& name, const SuiteOptions& o) {
  if (name == "d_squared") return d_squared_suite(o.margin);
  if (name == "grading_drop") return grading_drop_suite(o.margin);
  if (name == "filtered_differential") return filtered_differential_suite(o.margin);
  if (name == "vertex_family") return family_suite(false, o.margin);
  if (name == "edge_family") return family_suite(true, o.margin);
  if (name == "reduction_confluence") return confluence_suite();
  if (name == "fingerprint_invariance") return fingerprint_suite(o.margin, o.ucap);
  if (name == "eq6_oracle") return square_identity_suite(o.margin);
  if (name == "lemma31") return be_zero_suite(o.margin);
  if (name == "s_divisor") return s_divisor_suite(o.margin);
  throw Error("unknown suite '" + name + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"d_squared",           "grading_drop",           "filtered_differential",
                                                 "vertex_family",       "edge_family",            "reduction_confluence",
                                                 "fingerprint_invariance", "eq6_oracle",          "lemma31",
                                                 "s_divisor"};
  return names;
}

int default_max_framed(const std::string& suite) { return make_suite(suite, SuiteOptions{}).max_framed; }

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  if (options.margin < 0) throw Error("margin must be nonnegative");
  if (options.instances < 0) throw Error("instance count must be nonnegative");
  return run_instances(name, make_suite(name, options), options);
}

}  // namespace lk
