#include "lk/calculus.hpp"
#include "lk/forest_io.hpp"
#include "lk/homology.hpp"
#include "lk/intersection_form.hpp"
#include "lk/lattice.hpp"
#include "lk/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace lk;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string seconds(double s) {
  std::ostringstream out;
  out.precision(1);
  out << std::fixed << s << " s";
  return out.str();
}

// Required checks that failed, or an empty string.
std::string failed_checks(const SuiteReport& r) {
  std::string out;
  for (const auto& c : r.checks)
    if (!c.ok()) out += (out.empty() ? "" : ",") + c.name + "(" + std::to_string(c.failed) + ")";
  if (!r.skip_ratio_ok()) out += (out.empty() ? "" : ",") + std::string("skip_ratio");
  return out;
}

SuiteReport suite(const std::string& name, int instances, int margin, int ucap = 3) {
  SuiteOptions o;
  o.instances = instances;
  o.margin = margin;
  o.ucap = ucap;
  return run_suite(name, o);
}

Outcome within(Outcome o, double elapsed, double limit) {
  if (elapsed > limit) {
    o.pass = false;
    o.detail += "; over the " + seconds(limit) + " budget";
  }
  return o;
}

Outcome summarize(const std::vector<SuiteReport>& reports, double limit) {
  Outcome o{true, ""};
  double elapsed = 0;
  for (const auto& r : reports) {
    elapsed += r.elapsed_seconds;
    const auto bad = failed_checks(r);
    if (!bad.empty()) o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + r.suite + " " + std::to_string(r.checked) + " checked, " +
                std::to_string(r.skipped) + " skipped" + (bad.empty() ? "" : ", failed " + bad);
  }
  o.detail += "; " + seconds(elapsed);
  return within(o, elapsed, limit);
}

Outcome suites_pass(const std::vector<std::string>& names, int instances, int margin, double limit) {
  std::vector<SuiteReport> reports;
  for (const auto& name : names) reports.push_back(suite(name, instances, margin));
  return summarize(reports, limit);
}

Outcome foundations() {
  return suites_pass({"d_squared", "grading_drop", "filtered_differential"}, 200, 2, 60);
}

Outcome vertex_family() { return suites_pass({"vertex_family"}, 100, 1, 300); }

Outcome edge_family() { return suites_pass({"edge_family", "lemma31"}, 100, 1, 600); }

Outcome divisor() {
  const auto r = suite("s_divisor", 100, 1);
  const auto* eight = r.find("divisor_8_preserves_grading");
  const auto* two = r.find("divisor_2_preserves_grading_at_large_l");
  Outcome o;
  o.pass = eight && two && eight->checked > 0 && eight->failed == 0 && two->failed > 0;
  o.detail = "/8: " + std::to_string(eight ? eight->failed : 0) + " of " + std::to_string(eight ? eight->checked : 0) +
             " failed; /2 at |l| >= 3: " + std::to_string(two ? two->failed : 0) + " of " +
             std::to_string(two ? two->checked : 0) + " failed";
  if (!r.witnesses.empty()) {
    const auto& w = r.witnesses.front();
    o.detail += " (e.g. " + w.generator + ": expected " + w.expected + ", got " + w.got + ")";
  }
  return o;
}

Outcome confluence() { return suites_pass({"reduction_confluence"}, 500, 1, 30); }

Outcome fingerprint() {
  const auto r = suite("fingerprint_invariance", 30, 2);
  auto o = summarize({r}, 600);
  for (const char* kind : {"homology_generic", "homology_vertex", "homology_edge"}) {
    const auto* c = r.find(kind);
    if (!c || c->checked == 0) {
      o.pass = false;
      o.detail += "; nothing compared for " + std::string(kind);
    }
  }
  return o;
}

const HomologyEntry* at(const HomologyTable& t, const Rational& g) {
  for (const auto& e : t.entries)
    if (e.grading == g) return &e;
  return nullptr;
}

const ProfileEntry* at(const FiltrationTable& t, const Rational& g) {
  for (const auto& e : t.entries)
    if (e.grading == g) return &e;
  return nullptr;
}

Outcome worked_example() {
  const Forest s3 = parse_forest("vertex v0 unframed\nvertex v -1\nedge v0 v\n");
  const auto [hom, prof] = homology_and_profile(Lattice(s3), 2, 3);
  Outcome o{true, ""};
  Rational top(-1000);
  for (const auto& e : hom.entries)
    if (e.dim > 0 && e.grading > top) top = e.grading;
  const auto* h = at(hom, Rational(0));
  const auto* p = at(prof, Rational(0));
  const bool head = top == Rational(0) && h && h->dim == 1 && h->stable;
  const bool jump = p && p->stable && p->steps.size() == 1 && p->steps[0].level == Rational(0) && p->steps[0].dim == 1;
  o.pass = head && jump;
  o.detail = std::string("top grading ") + to_string(top) + (head ? " dim 1" : " WRONG") + ", filtration jump " +
             (jump ? "at alpha 0" : "WRONG");
  const std::pair<std::string, Forest> blown[] = {{"generic", blow_up_generic(s3).forest},
                                                 {"vertex", blow_up_vertex(s3, "v").forest},
                                                 {"edge", blow_up_edge(s3, "v0", "v").forest}};
  for (const auto& [kind, f] : blown) {
    const auto [bh, bp] = homology_and_profile(Lattice(f), 2, 3);
    int compared = 0;
    bool same = true;
    for (const auto& e : hom.entries) {
      const auto* other = at(bh, e.grading);
      const bool stable_here = e.stable && (!bh.floor || e.grading > *bh.floor) && (!other || other->stable);
      if (!stable_here) continue;
      ++compared;
      const auto* pe = at(prof, e.grading);
      const auto* po = at(bp, e.grading);
      same = same && (other ? other->dim : 0) == e.dim &&
             (po ? po->steps : std::vector<ProfileStep>{}) == pe->steps;
    }
    if (!same || compared == 0) o.pass = false;
    o.detail += "; " + kind + " blow-up " + std::to_string(compared) + " stable entries " + (same ? "equal" : "DIFFER");
  }
  return o;
}

bool negative_by_scan(const IntersectionForm& form) {
  const int n = form.order;
  std::vector<std::int64_t> x(static_cast<std::size_t>(n), -3);
  while (true) {
    bool zero = true;
    for (auto c : x) zero = zero && c == 0;
    if (!zero && pairing(form, x, x) >= 0) return false;
    int i = 0;
    while (i < n && x[static_cast<std::size_t>(i)] == 3) x[static_cast<std::size_t>(i++)] = -3;
    if (i == n) return true;
    ++x[static_cast<std::size_t>(i)];
  }
}

Outcome oracles() {
  Outcome o{true, ""};
  std::mt19937_64 rng(8);

  std::uint64_t g_checked = 0, g_bad = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Forest f;
    f.add_vertex("v0", std::nullopt);
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int i = 1; i <= n; ++i) {
      f.add_vertex("v" + std::to_string(i), std::uniform_int_distribution<int>(-5, -2)(rng));
      f.add_edge(static_cast<std::size_t>(std::uniform_int_distribution<int>(0, i - 1)(rng)), static_cast<std::size_t>(i));
    }
    const Lattice lat(f);
    for (int k = 0; k < 50; ++k) {
      CharVector kv(n);
      for (int i = 0; i < n; ++i) kv[i] = lat.framing(i) + 2 * std::uniform_int_distribution<int>(-3, 6)(rng);
      const auto e = static_cast<VertexMask>(std::uniform_int_distribution<std::uint32_t>(0, (1u << n) - 1)(rng));
      ++g_checked;
      if (lat.g_val(kv, e) != lat.g_scan(kv, e)) ++g_bad;
    }
  }

  const auto sq = suite("eq6_oracle", 100, 1);
  const auto sq_bad = failed_checks(sq);

  std::uint64_t nd_checked = 0, nd_bad = 0, nd_indefinite = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Forest f;
    f.add_vertex("v0", std::nullopt);
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int i = 1; i <= n; ++i) {
      f.add_vertex("v" + std::to_string(i), std::uniform_int_distribution<int>(-5, -1)(rng));
      const int parent = std::uniform_int_distribution<int>(-1, i - 1)(rng);
      if (parent >= 0) f.add_edge(static_cast<std::size_t>(parent), static_cast<std::size_t>(i));
    }
    const auto form = build_intersection_form(f);
    const bool expected = negative_by_scan(form);
    ++nd_checked;
    if (!expected) ++nd_indefinite;
    if (is_negative_definite(form) != expected) ++nd_bad;
  }

  o.pass = g_bad == 0 && sq_bad.empty() && sq.checked > 0 && nd_bad == 0 && nd_indefinite > 0;
  o.detail = "g memo vs scan " + std::to_string(g_bad) + "/" + std::to_string(g_checked) + " mismatches; square identity " +
             (sq_bad.empty() ? "0 failures over " + std::to_string(sq.checked) + " checks" : "failed " + sq_bad) +
             "; definiteness vs vector scan " + std::to_string(nd_bad) + "/" + std::to_string(nd_checked) +
             " mismatches (" + std::to_string(nd_indefinite) + " indefinite)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run one criterion (1-8); default all")->check(CLI::Range(0, 8));
  CLI11_PARSE(app, argc, argv);
  apply_thread_limit();

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"foundations", foundations},       {"vertex family", vertex_family},   {"edge family", edge_family},
      {"exponent divisor", divisor},      {"reduction confluence", confluence}, {"invariance fingerprint", fingerprint},
      {"worked example", worked_example}, {"oracles", oracles}};

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << i + 1 << " " << criteria[i].first << ": " << (o.pass ? "PASS" : "FAIL") << " ("
              << o.detail << "; wall " << seconds(elapsed) << ")" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
