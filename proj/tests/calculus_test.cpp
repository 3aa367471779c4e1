#include "lk/calculus.hpp"
#include "lk/errors.hpp"
#include "lk/intersection_form.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

namespace lk {
namespace {

using testing::doc;

int framing_of(const Forest& f, std::string_view id) { return *f.vertex(f.index_of(id)).framing; }
bool adjacent(const Forest& f, std::string_view a, std::string_view b) { return f.has_edge(f.index_of(a), f.index_of(b)); }

const char* kV0V2 = "vertex v0 unframed\nvertex v -2\nedge v0 v\n";

TEST(Generic, AddsIsolatedMinusOne) {
  const Forest f = doc(kV0V2);
  const auto r = blow_up_generic(f);
  EXPECT_EQ(r.forest.size(), 3u);
  EXPECT_EQ(framing_of(r.forest, r.record.new_id), -1);
  EXPECT_EQ(r.forest.degree(r.forest.index_of(r.record.new_id)), 0u);
  EXPECT_EQ(r.record.kind, MoveKind::generic_up);
}

TEST(Generic, OnBareV0) {
  const auto r = blow_up_generic(doc("vertex v0 unframed\n"));
  EXPECT_EQ(r.forest.framed_count(), 1u);
}

TEST(Generic, TwiceGivesDistinctIds) {
  const auto once = blow_up_generic(doc(kV0V2));
  const auto twice = blow_up_generic(once.forest);
  EXPECT_NE(once.record.new_id, twice.record.new_id);
  EXPECT_EQ(twice.forest.framed_count(), 3u);
}

TEST(Vertex, FramingRule) {
  const auto r = blow_up_vertex(doc(kV0V2), "v");
  EXPECT_EQ(framing_of(r.forest, "v"), -3);
  EXPECT_EQ(framing_of(r.forest, r.record.new_id), -1);
  EXPECT_TRUE(adjacent(r.forest, "v", r.record.new_id));
  EXPECT_TRUE(adjacent(r.forest, "v0", "v"));
}

TEST(Vertex, IsolatedVertex) {
  const auto r = blow_up_vertex(doc("vertex v0 unframed\nvertex u -1\n"), "u");
  EXPECT_EQ(framing_of(r.forest, "u"), -2);
  EXPECT_TRUE(adjacent(r.forest, "u", r.record.new_id));
}

TEST(Vertex, Twice) {
  const auto once = blow_up_vertex(doc(kV0V2), "v");
  const auto twice = blow_up_vertex(once.forest, "v");
  EXPECT_EQ(framing_of(twice.forest, "v"), -4);
  EXPECT_EQ(twice.forest.degree(twice.forest.index_of("v")), 3u);
  EXPECT_EQ(framing_of(twice.forest, once.record.new_id), -1);
  EXPECT_EQ(framing_of(twice.forest, twice.record.new_id), -1);
}

TEST(Vertex, V0Rejected) { EXPECT_THROW(blow_up_vertex(doc(kV0V2), "v0"), MoveError); }

TEST(Edge, FramedEdge) {
  const auto r = blow_up_edge(doc("vertex v0 unframed\nvertex v -2\nvertex w -3\nedge v0 v\nedge v w\n"), "v", "w");
  const auto& e = r.record.new_id;
  EXPECT_EQ(framing_of(r.forest, "v"), -3);
  EXPECT_EQ(framing_of(r.forest, "w"), -4);
  EXPECT_EQ(framing_of(r.forest, e), -1);
  EXPECT_TRUE(adjacent(r.forest, "v", e));
  EXPECT_TRUE(adjacent(r.forest, e, "w"));
  EXPECT_FALSE(adjacent(r.forest, "v", "w"));
}

TEST(Edge, V0Edge) {
  const auto r = blow_up_edge(doc(kV0V2), "v0", "v");
  EXPECT_EQ(framing_of(r.forest, "v"), -3);
  EXPECT_TRUE(r.forest.vertex(r.forest.index_of("v0")).unframed());
  EXPECT_TRUE(adjacent(r.forest, "v0", r.record.new_id));
  EXPECT_TRUE(adjacent(r.forest, r.record.new_id, "v"));
}

TEST(Edge, V0EdgeOnMinusOne) {
  const auto r = blow_up_edge(doc("vertex v0 unframed\nvertex v -1\nedge v0 v\n"), "v0", "v");
  EXPECT_EQ(framing_of(r.forest, "v"), -2);
  EXPECT_TRUE(is_negative_definite(r.forest));
}

TEST(Edge, MissingEdgeRejected) {
  EXPECT_THROW(blow_up_edge(doc("vertex v0 unframed\nvertex v -2\nvertex w -3\nedge v0 v\n"), "v", "w"), MoveError);
}

TEST(Down, InvertsVertexBlowup) {
  const Forest f = doc("vertex v0 unframed\nvertex v -3\nvertex w -1\nedge v0 v\nedge v w\n");
  EXPECT_EQ(blow_down(f, "w").forest, doc(kV0V2));
}

TEST(Down, InvertsV0EdgeBlowup) {
  const Forest f = doc("vertex v0 unframed\nvertex e -1\nvertex v -3\nedge v0 e\nedge e v\n");
  EXPECT_EQ(blow_down(f, "e").forest, doc(kV0V2));
}

TEST(Down, V0Rejected) { EXPECT_THROW(blow_down(doc(kV0V2), "v0"), MoveError); }

TEST(Down, NeedsMinusOneAndDegreeAtMostTwo) {
  EXPECT_THROW(blow_down(doc(kV0V2), "v"), MoveError);
  const Forest star = doc("vertex v0 unframed\nvertex c -1\nvertex a -3\nvertex b -3\nvertex d -3\n"
                          "edge c a\nedge c b\nedge c d\n");
  EXPECT_FALSE(can_blow_down(star, star.index_of("c")));
  EXPECT_THROW(blow_down(star, "c"), MoveError);
}

TEST(Reduce, SingleBlowDown) {
  EXPECT_EQ(reduce(doc("vertex v0 unframed\nvertex v -3\nvertex w -1\nedge v0 v\nedge v w\n")), doc(kV0V2));
}

TEST(Reduce, ReducedIsFixpoint) {
  const Forest f = doc(kV0V2);
  EXPECT_TRUE(is_reduced(f));
  EXPECT_EQ(reduce(f), f);
}

TEST(Reduce, ChainCollapsesToV0) {
  const Forest f = doc("vertex v0 unframed\nvertex a -2\nvertex e -1\nvertex u -1\nedge v0 a\nedge a e\n");
  EXPECT_EQ(reduce(f), doc("vertex v0 unframed\n"));
}

TEST(Equivalent, Examples) {
  const Forest f = doc(kV0V2);
  EXPECT_TRUE(equivalent(f, blow_up_vertex(f, "v").forest));
  EXPECT_FALSE(equivalent(f, doc("vertex v0 unframed\nvertex v -3\nedge v0 v\n")));
  const Forest a = blow_up_edge(blow_up_generic(f).forest, "v0", "v").forest;
  const Forest b = blow_up_vertex(blow_up_vertex(f, "v").forest, "v").forest;
  EXPECT_TRUE(equivalent(a, b));
}

MoveResult random_blowup(const Forest& f, std::mt19937_64& rng) {
  const auto framed = f.framed_vertices();
  const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
  if (kind == 1 && !framed.empty())
    return blow_up_vertex(f, f.vertex(framed[std::uniform_int_distribution<std::size_t>(0, framed.size() - 1)(rng)]).id);
  if (kind == 2 && !f.edges().empty()) {
    const auto [a, b] = f.edges()[std::uniform_int_distribution<std::size_t>(0, f.edges().size() - 1)(rng)];
    return blow_up_edge(f, f.vertex(a).id, f.vertex(b).id);
  }
  return blow_up_generic(f);
}

TEST(Properties, BlowDownInvertsEveryBlowUp) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const Forest f = testing::random_instance(rng(), 5);
    const auto up = random_blowup(f, rng);
    EXPECT_TRUE(is_negative_definite(up.forest));
    EXPECT_EQ(canonical_form(blow_down(up.forest, up.record.new_id).forest), canonical_form(f));
  }
}

TEST(Properties, ReductionOrdersAgree) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    Forest f = testing::random_instance(rng(), 4);
    for (int k = std::uniform_int_distribution<int>(1, 3)(rng); k > 0; --k) f = random_blowup(f, rng).forest;
    const std::string expected = canonical_form(reduce(f));
    for (int order = 0; order < 10; ++order) {
      const Forest r = reduce_random(f, rng);
      EXPECT_TRUE(is_reduced(r));
      EXPECT_EQ(canonical_form(r), expected) << "trial " << trial << " order " << order;
    }
  }
}

TEST(Properties, ReduceIdempotentAndDefinite) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    Forest f = testing::random_instance(rng(), 6);
    for (int k = std::uniform_int_distribution<int>(0, 3)(rng); k > 0; --k) f = random_blowup(f, rng).forest;
    const Forest r = reduce(f);
    EXPECT_EQ(reduce(r), r);
    EXPECT_TRUE(is_negative_definite(r));
    for (const auto& id : blow_down_candidates(f)) EXPECT_TRUE(is_negative_definite(blow_down(f, id).forest));
  }
}

}  // namespace
}  // namespace lk
