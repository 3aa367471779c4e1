#include "lk/errors.hpp"
#include "lk/forest_io.hpp"
#include "lk/intersection_form.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

namespace lk {
namespace {

TEST(Parse, Transcription) {
  const Forest f = parse_forest("vertex a -2\nvertex k unframed\nedge k a\n");
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.vertex(f.v0()).id, "k");
  EXPECT_EQ(*f.vertex(f.index_of("a")).framing, -2);
  EXPECT_TRUE(f.has_edge(0, 1));
}

TEST(Parse, CommentsAndBlankLines) {
  const Forest f = parse_forest("# header\n\nvertex v0 unframed   # the knot\n  vertex v -1\nedge v0 v\n");
  EXPECT_EQ(f.framed_count(), 1u);
}

TEST(Parse, TwoUnframedIsSemantic) {
  EXPECT_THROW(parse_forest("vertex a unframed\nvertex b unframed\n"), StructureError);
  try {
    parse_forest("vertex a unframed\nvertex b unframed\n");
  } catch (const ParseError&) {
    FAIL() << "semantic errors must not be syntax errors";
  } catch (const StructureError&) {
  }
}

TEST(Parse, CycleIsSemantic) {
  EXPECT_THROW(parse_forest("vertex v0 unframed\nvertex a -2\nvertex b -2\nedge v0 a\nedge a b\nedge b v0\n"),
               StructureError);
}

TEST(Parse, SyntaxErrorsCarryLineNumbers) {
  struct Case {
    const char* text;
    int line;
  };
  const Case cases[] = {{"vertex v0 unframed\nvertex a minus\n", 2},
                        {"vertex v0 unframed\nnode a -2\n", 2},
                        {"vertex v0\n", 1},
                        {"vertex v0 unframed\nvertex a -2\nvertex a -3\n", 3},
                        {"vertex v0 unframed\n\n\nedge v0 zz\n", 4}};
  for (const auto& c : cases) {
    try {
      parse_forest(c.text);
      FAIL() << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text;
    }
  }
}

TEST(Emit, Normalizes) {
  const Forest f = parse_forest("vertex z -3\nvertex k unframed\nvertex a -2\nedge z a\nedge k a\n");
  EXPECT_EQ(emit_forest(f), "vertex a -2\nvertex k unframed\nvertex z -3\nedge a k\nedge a z\n");
}

TEST(Emit, RoundTripProperties) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    const Forest f = testing::permuted(testing::random_instance(rng(), 7), rng);
    const std::string once = emit_forest(f);
    const Forest back = parse_forest(once);
    EXPECT_EQ(back, f);
    EXPECT_EQ(emit_forest(back), once);
    EXPECT_EQ(canonical_form(back), canonical_form(f));
  }
}

}  // namespace
}  // namespace lk
