#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "seqlatin/seqlatin.hpp"
#include "support.hpp"

using namespace seqlatin;

namespace {

void expect_verified(const SequencingCertificate& c, std::size_t order) {
  EXPECT_EQ(certificate_order(c), order);
  auto chk = verify_certificate(c);
  EXPECT_TRUE(chk.ok) << chk.reason;
  // second opinion from the generic checker on the group object
  EXPECT_TRUE(is_directed_terrace(group_of(c), c.terrace));
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidArgument;
}

}  // namespace

TEST(SequenceCyclic, Examples) {
  expect_verified(sequence_cyclic(3, 7), 21);
  expect_verified(sequence_cyclic(3, 9), 27);
  expect_verified(sequence_cyclic(5, 11), 55);
  auto c = sequence_cyclic(3, 7);
  EXPECT_EQ(c.provenance.pipeline, "cyclic");
  EXPECT_EQ(c.provenance.unit, 2);
}

TEST(SequenceCyclic, Preconditions) {
  EXPECT_EQ(code_of([] { sequence_cyclic(3, 5); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { sequence_cyclic(4, 7); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { sequence_cyclic(3, 8); }), Errc::InvalidArgument);
}

TEST(BuildNondiagAut, Examples) {
  auto na = build_nondiag_aut(5, 2, 3);
  EXPECT_EQ(na.companion.rows(), (std::vector<std::vector<Int>>{{0, 4}, {1, 4}}));
  EXPECT_EQ(na.alpha.order(), 3);
  EXPECT_EQ(na.alpha_prime.order(), 3);
  EXPECT_EQ(code_of([] { build_nondiag_aut(7, 2, 3); }), Errc::Diagonalisable);
  EXPECT_EQ(code_of([] { build_nondiag_aut(5, 1, 3); }), Errc::InvalidArgument);
  auto k3 = build_nondiag_aut(5, 3, 3);
  EXPECT_EQ(k3.d, 2);
  EXPECT_EQ(k3.matrix(2, 2), 1);
  EXPECT_EQ(k3.matrix(0, 2), 0);
  EXPECT_EQ(k3.alpha.order(), 3);
}

TEST(BuildNondiagAut, BasisChangeSendsE1ToE2) {
  for (auto [p, k, q] : {std::tuple<Int, int, Int>{5, 2, 3}, {5, 3, 3}, {2 + 9, 2, 3}, {7, 3, 19}, {13, 2, 17}}) {
    if (nt::mult_order(p % q, q) > k) continue;
    auto na = build_nondiag_aut(p, k, q);
    auto pw = na.conjugated.pow(na.lambda - 1);
    std::vector<Int> e1(static_cast<std::size_t>(k), 0), e2 = e1;
    e1[0] = 1;
    e2[1] = 1;
    EXPECT_EQ(pw.apply(e1), e2) << p << " " << k << " " << q;
    EXPECT_EQ(na.conjugated.pow(q), ModMatrix::identity(static_cast<std::size_t>(k), p));
    EXPECT_NE(na.conjugated, ModMatrix::identity(static_cast<std::size_t>(k), p));
  }
}

TEST(PairTransport, Examples) {
  AbelianSpec A{5, 5};
  auto t = pair_transport(A, AbElem{1, 0}, AbElem{0, 1}, AbElem{2, 0}, AbElem{0, 2});
  for (const auto& x : enumerate(A)) EXPECT_EQ(t.apply(x), A.scale(x, 2));
  auto id = pair_transport(A, AbElem{1, 2}, AbElem{0, 1}, AbElem{1, 2}, AbElem{0, 1});
  for (const auto& x : enumerate(A)) EXPECT_EQ(id.apply(x), x);
  EXPECT_EQ(code_of([&] { pair_transport(A, AbElem{1, 2}, AbElem{2, 4}, AbElem{1, 0}, AbElem{0, 1}); }),
            Errc::NotIndependent);
  AbelianSpec B{5, 5, 7};
  auto u = pair_transport(B, AbElem{1, 0, 0}, AbElem{0, 1, 0}, AbElem{3, 4, 0}, AbElem{1, 1, 0});
  EXPECT_EQ(u.apply(AbElem{1, 0, 0}), (AbElem{3, 4, 0}));
  EXPECT_EQ(u.apply(AbElem{0, 1, 0}), (AbElem{1, 1, 0}));
  EXPECT_EQ(u.apply(AbElem{0, 0, 3}), (AbElem{0, 0, 3}));
  EXPECT_EQ(code_of([&] { pair_transport(B, AbElem{1, 0, 0}, AbElem{0, 0, 1}, AbElem{1, 0, 0}, AbElem{0, 1, 0}); }),
            Errc::OrderMismatch);
}

TEST(SequenceNon3, Examples) {
  expect_verified(sequence_non3(5, 2, 3, AbelianSpec{1}), 75);
  expect_verified(sequence_non3(5, 2, 3, AbelianSpec{7}), 525);
  expect_verified(sequence_non3(11, 2, 3, AbelianSpec{1}), 363);
  expect_verified(sequence_non3(5, 4, 3, AbelianSpec{1}), 1875);
  EXPECT_THROW(sequence_non3(5, 3, 3, AbelianSpec{1}), Error);
  EXPECT_THROW(sequence_non3(3, 2, 13, AbelianSpec{1}), Error);
  EXPECT_THROW(sequence_non3(5, 2, 3, AbelianSpec{9}), Error);
  EXPECT_THROW(sequence_non3(5, 2, 3, AbelianSpec{5}), Error);
}

TEST(SequenceSquareBlock, Examples) {
  auto g1 = sequence_theorem3(5, 3, AbelianSpec{1}, false);
  expect_verified(g1, 225);
  auto g2 = sequence_theorem3(5, 3, AbelianSpec{1}, true);
  expect_verified(g2, 675);
  expect_verified(sequence_theorem3(11, 3, AbelianSpec{1}, false), 1089);
  EXPECT_THROW(sequence_theorem3(3, 2, AbelianSpec{1}, false), Error);
  EXPECT_THROW(sequence_theorem3(3, 13, AbelianSpec{1}, false), Error);
}

TEST(SequenceOrder, Examples) {
  auto r21 = sequence_order(21);
  EXPECT_EQ(r21.outcome, OrderOutcome::Certificate);
  ASSERT_TRUE(r21.certificate);
  EXPECT_EQ(r21.certificate->provenance.pipeline, "cyclic");
  EXPECT_EQ(sequence_order(15).outcome, OrderOutcome::NoGroupBasedCLS);
  EXPECT_FALSE(sequence_order(15).certificate);
  auto r6 = sequence_order(6);
  ASSERT_TRUE(r6.certificate);
  EXPECT_EQ(r6.certificate->provenance.pipeline, "walecki");
  EXPECT_EQ(r6.certificate->terrace, (std::vector<std::size_t>{0, 5, 1, 4, 2, 3}));
  auto r1 = sequence_order(1);
  EXPECT_EQ(r1.outcome, OrderOutcome::TrivialOrder);
  ASSERT_TRUE(r1.certificate);
  EXPECT_TRUE(verify_certificate(*r1.certificate).ok);
  EXPECT_EQ(code_of([] { sequence_order(0); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { sequence_order(5001); }), Errc::DeskScaleExceeded);
}

TEST(SequenceOrder, EveryOddOrderUpTo1000) {
  for (Int n = 3; n <= 1000; n += 2) {
    auto r = sequence_order(n);
    bool exists = nt::classify_order(n).verdict == nt::Verdict::OddNonabelianExists;
    ASSERT_EQ(r.certificate.has_value(), exists) << n;
    ASSERT_EQ(r.outcome == OrderOutcome::NoGroupBasedCLS, !exists) << n;
    if (exists) ASSERT_TRUE(verify_certificate(*r.certificate).ok) << n;
  }
}

// Template layout: g_1, then (q-1)(m-1) h entries with first coordinates
// lambda^{q-i}, then q-1 middle entries (x, 0), then the remaining g's.
TEST(SequenceOrder, TemplateLayoutOfCertificates) {
  int checked = 0;
  for (Int n = 21; n <= 1000; n += 2) {
    auto r = sequence_order(n);
    if (!r.certificate) continue;
    const auto& sd = std::get<SdSpec>(r.certificate->group);
    const Int q = sd.s();
    const auto m = static_cast<std::size_t>(sd.base().order());
    std::vector<SdElem> t;
    for (auto i : r.certificate->terrace) t.push_back(sd.element_at(i));
    std::map<Int, std::size_t> hrow;
    const std::size_t h_end = 1 + static_cast<std::size_t>(q - 1) * (m - 1);
    EXPECT_EQ(t[0].u, 0);
    for (std::size_t i = 1; i < h_end; ++i) {
      ASSERT_NE(t[i].u, 0) << n;
      ++hrow[t[i].u];
    }
    ASSERT_EQ(hrow.size(), static_cast<std::size_t>(q - 1));
    for (auto [x, c] : hrow) EXPECT_EQ(c, m - 1) << n << " row " << x;
    std::set<Int> mid;
    for (std::size_t i = h_end; i < h_end + static_cast<std::size_t>(q - 1); ++i) {
      EXPECT_TRUE(sd.base().is_zero(t[i].v));
      mid.insert(t[i].u);
    }
    EXPECT_EQ(mid.size(), static_cast<std::size_t>(q - 1));
    EXPECT_EQ(mid.count(0), 0u);
    for (std::size_t i = h_end + static_cast<std::size_t>(q - 1); i < t.size(); ++i) EXPECT_EQ(t[i].u, 0);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(SequenceOrder, DeterministicAndSeedIndependentOutputValid) {
  for (Int n : {75, 225, 363, 525, 675, 875}) {
    auto a = sequence_order(n, 0), b = sequence_order(n, 0);
    ASSERT_TRUE(a.certificate && b.certificate);
    EXPECT_EQ(a.certificate->terrace, b.certificate->terrace);
    EXPECT_EQ(io::to_json(*a.certificate).dump(), io::to_json(*b.certificate).dump());
    auto c = sequence_order(n, 99);
    EXPECT_TRUE(verify_certificate(*c.certificate).ok);
  }
}

TEST(Certificates, SingleEntryMutationBreaksTerrace) {
  for (Int n : {21, 27, 55, 75, 225}) {
    auto c = *sequence_order(n).certificate;
    auto g = group_of(c);
    for (std::size_t i = 0; i < c.terrace.size(); ++i) {
      auto t = c.terrace;
      t[i] = t[(i + 1) % t.size()];
      ASSERT_FALSE(is_directed_terrace(g, t));
    }
    for (std::size_t i = 0; i + 1 < c.terrace.size(); ++i) {
      auto t = c.terrace;
      std::swap(t[i], t[i + 1]);
      ASSERT_FALSE(is_directed_terrace(g, t)) << n << " swap at " << i;
    }
  }
}
