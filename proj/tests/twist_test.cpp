#include <gtest/gtest.h>

#include "knotbound/alexander.hpp"
#include "knotbound/twist.hpp"

using namespace knotbound;

namespace {

const char* kFigureEight = "X 8 5 1 6\nX 4 1 5 2\nX 2 8 3 7\nX 6 4 7 3\n";
const char* kTrefoil = "X 6 3 1 4\nX 4 1 5 2\nX 2 5 3 6\n";

IntLaurentPoly poly(std::initializer_list<std::pair<int, long>> terms) {
  IntLaurentPoly p;
  for (auto [e, c] : terms) p.add_term(e, BigInt(c));
  return p;
}

// Reference polynomials of the twisted knots; the knot types were
// identified independently (hyperbolic census lookup of the resulting PD
// codes) and the values frozen here.
const IntLaurentPoly kFiveTwo = poly({{-1, 2}, {0, -3}, {1, 2}});
const IntLaurentPoly kSixOne = poly({{-1, -2}, {0, 5}, {1, -2}});

bool is_planar(const PDCode& pd) { return faces(pd).size() == pd.crossing_count() + 2; }

TwistSite planar_site(const PDCode& pd, std::size_t k, int sign = +1) {
  auto s = planar_twist_site(pd, k, sign);
  if (!s) throw std::runtime_error("no planar site");
  return *s;
}

}  // namespace

TEST(Twist, TwoStrandsAddTwoCrossings) {
  const PDCode pd = parse_pd(kTrefoil);
  // any two edges with opposite directions form a valid site
  const TwistSite site{{1, 4}, {StrandDirection::Up, StrandDirection::Down}, +1};
  const PDCode out = insert_full_twist(pd, site);
  EXPECT_EQ(out.crossing_count(), pd.crossing_count() + 2);
}

TEST(Twist, SixStrandsAddThirtyCrossings) {
  // the bare trefoil has no six-edge planar site; grow it first
  const PDCode grown = insert_full_twist(parse_pd(kTrefoil), planar_site(parse_pd(kTrefoil), 2));
  EXPECT_FALSE(planar_twist_site(parse_pd(kTrefoil), 6).has_value());
  const TwistSite site = planar_site(grown, 6);
  const PDCode out = insert_full_twist(grown, site);
  EXPECT_EQ(out.crossing_count(), grown.crossing_count() + 30);
  EXPECT_EQ(out.crossing_count(), 35u);
  EXPECT_TRUE(is_planar(out));
  const auto p = alexander_polynomial(out);
  EXPECT_TRUE(p.is_palindromic());
  EXPECT_EQ(p.evaluate_at_one(), 1);
}

TEST(Twist, OrientationImbalanceIsRejected) {
  const PDCode pd = parse_pd(kFigureEight);
  const TwistSite site{{1, 2, 3, 4},
                       {StrandDirection::Up, StrandDirection::Up, StrandDirection::Up,
                        StrandDirection::Down},
                       +1};
  try {
    insert_full_twist(pd, site);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("imbalance"), std::string::npos);
  }
}

TEST(Twist, MalformedSitesAreRejected) {
  const PDCode pd = parse_pd(kFigureEight);
  using D = StrandDirection;
  EXPECT_THROW(insert_full_twist(pd, {{1, 2, 3}, {D::Up, D::Down, D::Up}, 1}), ValidationError);
  EXPECT_THROW(insert_full_twist(pd, {{1, 1}, {D::Up, D::Down}, 1}), ValidationError);
  EXPECT_THROW(insert_full_twist(pd, {{1, 99}, {D::Up, D::Down}, 1}), ValidationError);
  EXPECT_THROW(insert_full_twist(pd, {{1, 2}, {D::Up, D::Down}, 2}), ValidationError);
  EXPECT_THROW(insert_full_twist(pd, {{1, 2}, {D::Up}, 1}), ValidationError);
}

TEST(Twist, PlanarSitesStayPlanar) {
  for (const char* text : {kTrefoil, kFigureEight}) {
    const PDCode pd = parse_pd(text);
    ASSERT_TRUE(is_planar(pd));
    for (std::size_t k : {2u, 4u}) {
      for (int sign : {+1, -1}) {
        const PDCode out = insert_full_twist(pd, planar_site(pd, k, sign));
        EXPECT_TRUE(is_planar(out)) << text << " k=" << k << " sign=" << sign;
        EXPECT_EQ(out.crossing_count(), pd.crossing_count() + k * (k - 1));
      }
    }
  }
}

TEST(Twist, TrefoilRightHandedTwistGivesFiveTwo) {
  const PDCode pd = parse_pd(kTrefoil);
  EXPECT_EQ(alexander_polynomial(insert_full_twist(pd, planar_site(pd, 2))), kFiveTwo);
  EXPECT_EQ(alexander_polynomial(insert_full_twist(pd, planar_site(pd, 4))), kFiveTwo);
}

TEST(Twist, TrefoilLeftHandedTwistUnknots) {
  const PDCode pd = parse_pd(kTrefoil);
  EXPECT_EQ(alexander_polynomial(insert_full_twist(pd, planar_site(pd, 2, -1))), poly({{0, 1}}));
}

TEST(Twist, FigureEightTwistGivesSixOne) {
  const PDCode pd = parse_pd(kFigureEight);
  EXPECT_EQ(alexander_polynomial(insert_full_twist(pd, planar_site(pd, 2))), kSixOne);
  EXPECT_EQ(alexander_polynomial(insert_full_twist(pd, planar_site(pd, 4))), kSixOne);
}

TEST(Twist, TwistThenUntwistRestoresThePolynomial) {
  for (const char* text : {kTrefoil, kFigureEight}) {
    const PDCode pd = parse_pd(text);
    for (std::size_t k : {2u, 4u}) {
      TwistSite site = planar_site(pd, k);
      const PDCode once = insert_full_twist(pd, site);
      site.sign = -site.sign;
      const PDCode back = insert_full_twist(once, site);
      EXPECT_EQ(back.crossing_count(), pd.crossing_count() + 2 * k * (k - 1));
      EXPECT_TRUE(is_planar(back));
      EXPECT_EQ(alexander_polynomial(back), alexander_polynomial(pd)) << text << " k=" << k;
    }
  }
}

TEST(Twist, InputIsNotModified) {
  const PDCode pd = parse_pd(kFigureEight);
  const PDCode copy = pd;
  (void)insert_full_twist(pd, planar_site(pd, 2));
  EXPECT_EQ(pd, copy);
}

TEST(Twist, FacesOfTheFigureEight) {
  const auto fs = faces(parse_pd(kFigureEight));
  ASSERT_EQ(fs.size(), 6u);
  std::size_t sides = 0;
  for (const auto& f : fs) sides += f.size();
  EXPECT_EQ(sides, 16u);  // every edge borders two faces
}
