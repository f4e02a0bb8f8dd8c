#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "seqlatin/seqlatin.hpp"
#include "support.hpp"

using namespace seqlatin;

namespace {

AnyGroup fixture(const std::string& name) {
  return io::group_from_json(io::read_json_file(std::string(SEQLATIN_FIXTURES) + "/" + name + ".json"));
}

template <class G>
LatinSquare cayley(const G& g, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  LatinSquare sq;
  sq.n = g.order();
  sq.row_order = rows;
  sq.col_order = cols;
  sq.grid.resize(sq.n * sq.n);
  for (std::size_t i = 0; i < sq.n; ++i)
    for (std::size_t j = 0; j < sq.n; ++j) sq.at(i, j) = g.mul_index(rows[i], cols[j]);
  return sq;
}

std::vector<std::size_t> iota_n(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST(IsDirectedTerrace, Examples) {
  AbelianGroup z6(AbelianSpec{6});
  auto chk = check_directed_terrace(z6, {0, 5, 1, 4, 2, 3});
  EXPECT_TRUE(chk.ok);
  EXPECT_EQ(chk.quotients, (std::vector<std::size_t>{5, 2, 3, 4, 1}));
  EXPECT_FALSE(is_directed_terrace(AbelianGroup(AbelianSpec{5}), {0, 1, 2, 3, 4}));
  EXPECT_TRUE(is_directed_terrace(AbelianGroup(AbelianSpec{2}), {0, 1}));
  EXPECT_FALSE(is_directed_terrace(z6, {0, 5, 1, 4, 2}));
  EXPECT_FALSE(is_directed_terrace(z6, {0, 5, 1, 4, 2, 2}));
  EXPECT_FALSE(is_directed_terrace(z6, {0, 5, 1, 4, 2, 9}));
}

TEST(WaleckiTerrace, Examples) {
  EXPECT_EQ(walecki_terrace(2), (std::vector<Int>{0, 1}));
  EXPECT_EQ(walecki_terrace(6), (std::vector<Int>{0, 5, 1, 4, 2, 3}));
  EXPECT_EQ(walecki_terrace(8), (std::vector<Int>{0, 7, 1, 6, 2, 5, 3, 4}));
  try {
    walecki_terrace(7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OddOrder);
  }
}

TEST(WaleckiTerrace, VerifiesUpTo512) {
  for (Int n = 2; n <= 512; n += 2) {
    auto w = walecki_terrace(n);
    ASSERT_TRUE(is_directed_terrace(AbelianGroup(AbelianSpec{n}), std::vector<std::size_t>(w.begin(), w.end())));
  }
}

TEST(TerraceToSquare, Examples) {
  AbelianGroup z4(AbelianSpec{4});
  auto sq = terrace_to_complete_square(z4, {0, 3, 1, 2});
  EXPECT_EQ(sq.n, 4u);
  EXPECT_TRUE(completeness_report(sq).is_complete);
  auto s2 = terrace_to_complete_square(AbelianGroup(AbelianSpec{2}), {0, 1});
  EXPECT_EQ(s2.grid, (std::vector<std::size_t>{0, 1, 1, 0}));
  auto c = *sequence_order(21).certificate;
  auto s21 = terrace_to_complete_square(group_of(c), c.terrace);
  EXPECT_EQ(s21.n, 21u);
  EXPECT_TRUE(completeness_report(s21).is_complete);
  try {
    terrace_to_complete_square(z4, {0, 1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotATerrace);
  }
}

TEST(CompletenessReport, Examples) {
  AbelianGroup z3(AbelianSpec{3});
  auto nat = cayley(z3, iota_n(3), iota_n(3));
  auto r = completeness_report(nat);
  EXPECT_TRUE(r.is_latin);
  EXPECT_FALSE(r.is_row_complete);
  EXPECT_FALSE(r.is_complete);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->property, "row");
  EXPECT_EQ(nat.at(r.witness->r1, r.witness->c1), r.witness->x);
  EXPECT_EQ(nat.at(r.witness->r2, r.witness->c2), r.witness->x);
  LatinSquare one;
  one.n = 1;
  one.grid = {0};
  auto r1 = completeness_report(one);
  EXPECT_TRUE(r1.is_latin && r1.is_row_complete && r1.is_column_complete && r1.is_complete);
  auto broken = nat;
  broken.at(0, 0) = broken.at(0, 1);
  auto rb = completeness_report(broken);
  EXPECT_FALSE(rb.is_latin);
  EXPECT_EQ(rb.witness->property, "latin");
}

TEST(CompletenessReport, EveryCellMutationDetected) {
  for (Int n : {2, 4, 6, 8, 21, 27}) {
    auto c = *sequence_order(n).certificate;
    auto sq = terrace_to_complete_square(group_of(c), c.terrace);
    for (std::size_t i = 0; i < sq.grid.size(); ++i) {
      auto orig = sq.grid[i];
      for (std::size_t s = 0; s < sq.n; ++s) {
        if (s == orig) continue;
        sq.grid[i] = s;
        ASSERT_FALSE(completeness_report(sq).is_complete);
      }
      sq.grid[i] = orig;
    }
  }
}

// Row completeness depends only on the column order and column completeness
// only on the row order; check both directions over every ordering.
TEST(GordonEquivalence, AllOrderingsUpToOrder8) {
  std::vector<std::pair<std::string, AnyGroup>> groups;
  for (Int n = 1; n <= 8; ++n) groups.push_back({"Z_" + std::to_string(n), AnyGroup(AbelianSpec{n})});
  groups.push_back({"Z_2^2", AnyGroup(AbelianSpec{2, 2})});
  groups.push_back({"Z_2 x Z_4", AnyGroup(AbelianSpec{2, 4})});
  groups.push_back({"Z_2^3", AnyGroup(AbelianSpec{2, 2, 2})});
  for (const char* f : {"s3", "d8", "q8"}) groups.push_back({f, fixture(f)});
  for (const auto& [name, g] : groups) {
    const auto n = g.order();
    auto fixed = iota_n(n);
    auto perm = iota_n(n);
    std::size_t complete_rows = 0;
    do {
      auto by_cols = completeness_report(cayley(g, fixed, perm));
      ASSERT_EQ(by_cols.is_row_complete, is_directed_terrace(g, perm)) << name;
      std::vector<std::size_t> inv;
      for (auto x : perm) inv.push_back(g.inv_index(x));
      auto by_rows = completeness_report(cayley(g, perm, fixed));
      ASSERT_EQ(by_rows.is_column_complete, is_directed_terrace(g, inv)) << name;
      if (by_cols.is_row_complete) {
        ++complete_rows;
        auto full = completeness_report(cayley(g, inv, perm));
        ASSERT_TRUE(full.is_complete) << name;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    bool sequenceable = complete_rows > 0;
    // abelian: exactly one involution, i.e. the even cyclic groups here
    bool cyclic = name.rfind("Z_", 0) == 0 && name.find_first_of("^ ") == std::string::npos;
    bool expect = n == 1 || (n % 2 == 0 && cyclic);
    EXPECT_EQ(sequenceable, expect) << name;
  }
}

TEST(Csv, RoundTrip) {
  auto c = *sequence_order(21).certificate;
  auto sq = terrace_to_complete_square(group_of(c), c.terrace);
  std::istringstream in(to_csv(sq));
  auto back = read_csv(in);
  EXPECT_EQ(back.n, 21u);
  EXPECT_TRUE(completeness_report(back).is_complete);
  for (std::size_t i = 0; i < sq.grid.size(); ++i) EXPECT_EQ(back.label(back.grid[i]), sq.label(sq.grid[i]));
}

TEST(Csv, QuotingAndErrors) {
  std::istringstream in("\"a,b\",c\nc,\"a,b\"\n");
  auto sq = read_csv(in);
  EXPECT_EQ(sq.n, 2u);
  EXPECT_EQ(sq.label(sq.at(0, 0)), "a,b");
  EXPECT_TRUE(completeness_report(sq).is_complete);
  EXPECT_EQ(to_csv(sq), "\"a,b\",c\nc,\"a,b\"\n");
  std::istringstream bad("1,2\n2\n");
  EXPECT_THROW(read_csv(bad), Error);
  std::istringstream open("\"1,2\n");
  EXPECT_THROW(read_csv(open), Error);
}
