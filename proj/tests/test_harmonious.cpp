#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "seqlatin/seqlatin.hpp"
#include "support.hpp"

using namespace seqlatin;

namespace {

std::vector<AbElem> cyc(std::initializer_list<Int> v) {
  std::vector<AbElem> out;
  for (Int x : v) out.push_back(AbElem{x});
  return out;
}

std::vector<AbElem> pairs(std::initializer_list<std::pair<Int, Int>> v) {
  std::vector<AbElem> out;
  for (auto [a, b] : v) out.push_back(AbElem{a, b});
  return out;
}

void expect_matched(const MatchedPair& mp) {
  const auto& G = mp.hash.group;
  EXPECT_TRUE(check_hash(G, mp.hash.entries));
  EXPECT_TRUE(check_harm(G, mp.harm.entries));
  EXPECT_EQ(mp.hash.entries.front(), mp.harm.entries.front());
  EXPECT_EQ(mp.hash.entries.back(), mp.harm.entries.back());
  EXPECT_TRUE(is_matched(mp));
}

}  // namespace

TEST(CheckHash, Examples) {
  EXPECT_TRUE(check_hash(AbelianSpec{9}, cyc({4, 2, 8, 6, 5, 7, 1, 3})));
  EXPECT_FALSE(check_hash(AbelianSpec{3}, cyc({1, 2})));
  EXPECT_FALSE(check_hash(AbelianSpec{3}, cyc({2, 1})));
  EXPECT_TRUE(check_harm(AbelianSpec{3}, cyc({0, 1, 2})));
  EXPECT_FALSE(check_hash(AbelianSpec{9}, cyc({4, 2, 8, 6, 5, 7, 3, 1})));
  EXPECT_FALSE(check_hash(AbelianSpec{9}, cyc({0, 2, 8, 6, 5, 7, 1, 3})));
}

TEST(BghjBase, PrintedSequences) {
  auto z9 = bghj_base(AbelianSpec{9});
  EXPECT_EQ(z9.hash.entries, cyc({4, 2, 8, 6, 5, 7, 1, 3}));
  EXPECT_EQ(z9.harm.entries, cyc({4, 5, 6, 7, 8, 0, 1, 2, 3}));
  auto z7 = bghj_base(AbelianSpec{7});
  EXPECT_EQ(z7.hash.entries, cyc({3, 1, 5, 4, 6, 2}));
  EXPECT_EQ(z7.harm.entries, cyc({3, 4, 5, 6, 0, 1, 2}));
  auto z33 = bghj_base(AbelianSpec{3, 3});
  EXPECT_EQ(z33.hash.entries, pairs({{1, 1}, {2, 0}, {2, 1}, {0, 2}, {2, 2}, {1, 0}, {1, 2}, {0, 1}}));
  EXPECT_EQ(z33.harm.entries, pairs({{1, 1}, {2, 1}, {0, 2}, {1, 2}, {2, 2}, {0, 0}, {1, 0}, {2, 0}, {0, 1}}));
}

TEST(BghjBase, AllOddCyclicOrders) {
  for (Int m = 5; m <= 199; m += 2) expect_matched(bghj_base(AbelianSpec{m}));
  expect_matched(bghj_base(AbelianSpec{3, 3}));
  EXPECT_THROW(bghj_base(AbelianSpec{3}), Error);
  EXPECT_THROW(bghj_base(AbelianSpec{8}), Error);
}

TEST(BghjBase, OneAndMinusTwoAdjacent) {
  for (Int m = 5; m <= 199; m += 2) {
    const auto& h = bghj_base(AbelianSpec{m}).hash.entries;
    bool adj = find_adjacent(h, AbElem{1}, AbElem{m - 2}) || find_adjacent(h, AbElem{m - 2}, AbElem{1});
    EXPECT_TRUE(adj) << m;
  }
}

TEST(BghjProduct, Examples) {
  auto z15 = bghj_product(bghj_base(AbelianSpec{5}), harmonious_cyclic(3));
  EXPECT_EQ(z15.hash.group, (AbelianSpec{5, 3}));
  expect_matched(z15);
  auto z27 = bghj_product(bghj_base(AbelianSpec{3, 3}), harmonious_cyclic(3));
  EXPECT_EQ(z27.hash.group, (AbelianSpec{3, 3, 3}));
  expect_matched(z27);
  auto base = bghj_base(AbelianSpec{7});
  auto same = bghj_product(base, harmonious_cyclic(1));
  EXPECT_EQ(same.hash.entries, base.hash.entries);
  EXPECT_THROW(bghj_product(base, Harmonious{AbelianSpec{3}, cyc({1, 2, 0})}), Error);
}

TEST(HashFor, Examples) {
  for (const auto& g : {AbelianSpec{21}, AbelianSpec{15}, AbelianSpec{5, 5}, AbelianSpec{3, 3, 3},
                        AbelianSpec{3, 3, 5}, AbelianSpec{45}, AbelianSpec{5, 5, 7}, AbelianSpec{25, 3}}) {
    auto h = hash_for(g);
    EXPECT_EQ(h.group, g);
    EXPECT_EQ(static_cast<Int>(h.entries.size()), g.order() - 1);
    EXPECT_TRUE(check_hash(g, h.entries)) << g.order();
    expect_matched(matched_for(g));
  }
  EXPECT_EQ(hash_for(AbelianSpec{9}).entries, bghj_base(AbelianSpec{9}).hash.entries);
  EXPECT_THROW(hash_for(AbelianSpec{3}), Error);
}

TEST(TransformHash, Examples) {
  auto z7 = bghj_base(AbelianSpec{7}).hash;
  auto s = transform_hash(z7, {HashTransform::Kind::Scale, 2, std::nullopt});
  EXPECT_TRUE(check_hash(s.group, s.entries));
  EXPECT_EQ(transform_hash(z7, {HashTransform::Kind::Rotate, 0, std::nullopt}).entries, z7.entries);
  auto z9 = bghj_base(AbelianSpec{9}).hash;
  auto r = transform_hash(z9, {HashTransform::Kind::Reverse, 0, std::nullopt});
  EXPECT_TRUE(check_hash(r.group, r.entries));
}

TEST(TransformHash, PreservesValidity) {
  for (const auto& g : {AbelianSpec{5}, AbelianSpec{9}, AbelianSpec{21}, AbelianSpec{5, 5}, AbelianSpec{3, 3, 3}}) {
    auto h = hash_for(g);
    for (Int j = -3; j <= 3; ++j) EXPECT_TRUE(check_hash(g, rotate_hash(h, j).entries));
    EXPECT_TRUE(check_hash(g, reverse_hash(h).entries));
    EXPECT_TRUE(check_hash(g, scale_hash(h, 2).entries));
  }
  AbelianSpec A{5, 5};
  Automorphism m(A, {MatrixBlock{0, ModMatrix({{0, 4}, {1, 4}}, 5)}});
  EXPECT_TRUE(check_hash(A, scale_hash(hash_for(A), m).entries));
}

TEST(MatchedFromBase, PairAdjacencyInProducts) {
  // (-2, 0, ...) and (1, 0, ...) stay adjacent after folding in more factors.
  for (const auto& g : {AbelianSpec{5, 5}, AbelianSpec{5, 5, 7}, AbelianSpec{7, 7, 5}, AbelianSpec{5, 5, 5}}) {
    auto h = matched_from_base(g, 0).hash.entries;
    std::vector<Int> a(g.rank(), 0), b(g.rank(), 0);
    a[0] = g.factor(0) - 2;
    b[0] = 1;
    AbElem x(a), y(b);
    EXPECT_TRUE(find_adjacent(h, x, y) || find_adjacent(h, y, x)) << g.order();
  }
}
