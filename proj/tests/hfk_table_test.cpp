#include <gtest/gtest.h>

#include "knotbound/hfk_table.hpp"
#include "knotbound/session.hpp"

using namespace knotbound;

namespace {

IntLaurentPoly poly(std::initializer_list<std::pair<int, long>> terms) {
  IntLaurentPoly p;
  for (auto [e, c] : terms) p.add_term(e, BigInt(c));
  return p;
}

HfkTable bundled(int l) {
  return parse_hfk(read_file(std::string(KNOTBOUND_DATA_DIR) + "/mm" + std::to_string(l) + ".hfk"));
}

}  // namespace

TEST(HfkTable, EulerCharacteristicOfMM1) {
  EXPECT_EQ(euler_characteristic(bundled(1)), poly({{-1, -1}, {0, 3}, {1, -1}}));
}

TEST(HfkTable, EulerCharacteristicOfMM2) {
  // by column: A=+-2 cancel, A=+-1 give 2 - 4, A=0 gives 6 - 3 + 2
  EXPECT_EQ(euler_characteristic(bundled(2)), poly({{-1, -2}, {0, 5}, {1, -2}}));
}

TEST(HfkTable, EulerCharacteristicOfUnknot) {
  EXPECT_EQ(euler_characteristic(HfkTable({{{0, 0}, 1}})), poly({{0, 1}}));
}

TEST(HfkTable, SymmetryOfBundledTables) {
  for (int l = 1; l <= 6; ++l) EXPECT_TRUE(check_symmetry(bundled(l)).pass) << l;
  const HfkTable mm2 = bundled(2);
  EXPECT_EQ(mm2.dim(-4, -2), 1);
  EXPECT_EQ(mm2.dim(0, 2), 1);
}

TEST(HfkTable, AsymmetricCellIsReported) {
  const auto r = check_symmetry(HfkTable({{{0, 0}, 1}, {{1, 1}, 1}}));
  EXPECT_FALSE(r.pass);
  ASSERT_EQ(r.mismatches.size(), 1u);
  EXPECT_EQ(r.mismatches[0].cell, (Bigrading{1, 1}));
  EXPECT_EQ(r.mismatches[0].partner, (Bigrading{-1, -1}));
  EXPECT_EQ(r.mismatches[0].partner_dim, 0);
}

TEST(HfkTable, BundledTablesVerify) {
  for (int l = 1; l <= 6; ++l) {
    HfkTable tab = bundled(l);
    EXPECT_EQ(tab.name(), "MM" + std::to_string(l));
    const auto r = verify_table(tab);
    EXPECT_TRUE(r.verified()) << l;
    EXPECT_TRUE(tab.is_verified());
    EXPECT_EQ(r.euler.evaluate_at_one(), 1);
  }
}

TEST(HfkTable, EvenTotalFailsParity) {
  HfkTable tab({{{0, 0}, 2}});
  const auto r = verify_table(tab);
  EXPECT_FALSE(r.parity_ok);
  EXPECT_FALSE(tab.is_verified());
  EXPECT_FALSE(r.failures().empty());
}

TEST(HfkTable, AsymmetricTableFailsVerification) {
  HfkTable tab({{{0, 0}, 2}, {{1, 1}, 1}});
  const auto r = verify_table(tab);
  EXPECT_TRUE(r.parity_ok);
  EXPECT_FALSE(r.symmetry_ok);
  EXPECT_FALSE(tab.is_verified());
}

TEST(HfkTable, EditingClearsVerification) {
  HfkTable tab = bundled(1);
  verify_table(tab);
  ASSERT_TRUE(tab.is_verified());
  tab.set(5, 5, 1);
  EXPECT_FALSE(tab.is_verified());
}

TEST(HfkTable, CsvAndJsonRoundTrip) {
  const HfkTable tab = bundled(3);
  EXPECT_EQ(parse_hfk(to_hfk_csv(tab)), tab);
  EXPECT_EQ(parse_hfk(to_json(tab).dump()), tab);
  EXPECT_EQ(parse_hfk(to_hfk_csv(tab)).name(), "MM3");
}

TEST(HfkTable, MalformedInput) {
  EXPECT_THROW(parse_hfk("mu,A,dim\n0,0,1\n"), ParseError);
  EXPECT_THROW(parse_hfk("A,mu,dim\n0,0\n"), ParseError);
  EXPECT_THROW(parse_hfk("A,mu,dim\n0,0,0\n"), ParseError);
  EXPECT_THROW(parse_hfk("A,mu,dim\n0,0,1\n0,0,1\n"), ParseError);
  EXPECT_THROW(parse_hfk("{\"cells\": [ {\"A\": 0}]}"), ParseError);
  EXPECT_THROW(parse_hfk("{nope"), ParseError);
  EXPECT_THROW(parse_hfk(""), ParseError);
}
