#include <gtest/gtest.h>

#include <random>

#include "knotbound/alexander.hpp"
#include "knotbound/pd_code.hpp"
#include "oracles.hpp"

using namespace knotbound;

namespace {

const char* kFigureEight = "X 8 5 1 6\nX 4 1 5 2\nX 2 8 3 7\nX 6 4 7 3\n";
const char* kTrefoil = "X 6 3 1 4\nX 4 1 5 2\nX 2 5 3 6\n";

}  // namespace

TEST(PDCode, EmptyDiagramIsTheUnknot) {
  const PDCode pd = parse_pd("# nothing here\n");
  EXPECT_TRUE(pd.is_trivial_diagram());
  EXPECT_EQ(pd.crossing_count(), 0u);
}

TEST(PDCode, FigureEightCounts) {
  const PDCode pd = parse_pd(kFigureEight);
  EXPECT_EQ(pd.crossing_count(), 4u);
  EXPECT_EQ(pd.edges().size(), 8u);
  // the traversal visits every edge once and closes up
  EXPECT_EQ(pd.traversal().size(), 8u);
  EXPECT_EQ(pd.writhe(), 0);
}

TEST(PDCode, TrefoilIsChiral) {
  const PDCode pd = parse_pd(kTrefoil);
  EXPECT_EQ(std::abs(pd.writhe()), 3);
}

TEST(PDCode, EdgeHeadsAndTailsChain) {
  const PDCode pd = parse_pd(kFigureEight);
  for (int e : pd.edges()) {
    const auto& ends = pd.ends(e);
    EXPECT_EQ(pd.crossings()[ends.tail.crossing].slots[ends.tail.slot], e);
    EXPECT_EQ(pd.crossings()[ends.head.crossing].slots[ends.head.slot], e);
    EXPECT_FALSE(ends.tail == ends.head);
  }
}

TEST(PDCode, TripleLabelIsRejected) {
  EXPECT_THROW(parse_pd("X 1 1 2 1\nX 2 3 3 4\n"), ValidationError);
  try {
    parse_pd("X 1 2 3 4\nX 1 5 6 7\nX 1 8 9 10\n");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(PDCode, SyntaxErrorsCarryPositions) {
  try {
    parse_pd("X 1 2 3 4\nX 4 3 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_pd("X 1 2 3 x\n"), ParseError);
  EXPECT_THROW(parse_pd("X 1 2 3 -4\n"), ParseError);
  EXPECT_THROW(parse_pd("Y 1 2 3 4\n"), ParseError);
}

TEST(PDCode, DanglingLabelIsRejected) {
  EXPECT_THROW(parse_pd("X 1 2 3 4\n"), ValidationError);
}

TEST(PDCode, TraversalHintIsChecked) {
  EXPECT_NO_THROW(parse_pd(std::string(kTrefoil) + "O 1 2 3 4 5 6\n"));
  EXPECT_THROW(parse_pd(std::string(kTrefoil) + "O 1 2 3 4 5 9\n"), ValidationError);
}

TEST(PDCode, TextRoundTrip) {
  const PDCode pd = parse_pd(kFigureEight);
  EXPECT_EQ(parse_pd(pd.to_text()), pd);
}

TEST(PDCode, BraidClosuresParse) {
  // property: every closed braid with one component gives a traceable code
  std::mt19937 rng(7);
  int checked = 0;
  while (checked < 50) {
    const int k = 2 + static_cast<int>(rng() % 3);
    std::vector<int> word;
    const int len = 3 + static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i) {
      const int g = 1 + static_cast<int>(rng() % (k - 1));
      word.push_back(rng() % 2 ? g : -g);
    }
    if (!oracle::closure_is_knot(k, word)) continue;
    const PDCode pd = oracle::braid_closure_pd(k, word);
    EXPECT_EQ(pd.crossing_count(), word.size());
    EXPECT_EQ(pd.traversal().size(), 2 * word.size());
    ++checked;
  }
}
