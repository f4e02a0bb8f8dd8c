#include <gtest/gtest.h>

#include <functional>

#include "seqlatin/seqlatin.hpp"
#include "support.hpp"

using namespace seqlatin;
using io::json;

namespace {

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

TEST(GroupJson, RoundTrips) {
  AbelianSpec A{5, 5, 7};
  SdSpec sd(3, A, Automorphism(A, {MatrixBlock{0, ModMatrix({{0, 4}, {1, 4}}, 5)}, ScalarBlock{2, 2}}));
  for (const AnyGroup& g : {AnyGroup(AbelianSpec{3, 9}), AnyGroup(sd)}) {
    auto j = io::group_to_json(g);
    auto back = io::group_from_json(json::parse(j.dump()));
    EXPECT_EQ(io::group_to_json(back), j);
    ASSERT_EQ(back.order(), g.order());
    for (std::size_t a = 0; a < g.order(); a += 7)
      for (std::size_t b = 0; b < g.order(); b += 5) EXPECT_EQ(back.mul_index(a, b), g.mul_index(a, b));
  }
  for (const char* f : {"s3", "d8", "q8"}) {
    auto g = io::group_from_json(io::read_json_file(std::string(SEQLATIN_FIXTURES) + "/" + f + ".json"));
    EXPECT_EQ(g.order(), std::string(f) == "s3" ? 6u : 8u);
    auto back = io::group_from_json(io::group_to_json(g));
    EXPECT_EQ(io::group_to_json(back), io::group_to_json(g));
  }
}

TEST(GroupJson, Errors) {
  EXPECT_EQ(code_of([] { io::group_from_json(json::parse(R"({"cyclic": 3})")); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::group_from_json(json::parse(R"({"abelian": "x"})")); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::read_json_file("/nonexistent/file.json"); }), Errc::ParseError);
  EXPECT_THROW(io::group_from_json(json::parse(R"({"table": {"mul": [[0, 1], [1, 1]]}})")), Error);
}

TEST(CertificateJson, RoundTripsAndVerifies) {
  for (Int n : {1, 6, 21, 75, 225}) {
    auto c = *sequence_order(n).certificate;
    auto j = io::to_json(c);
    EXPECT_EQ(j["schema"], "1");
    EXPECT_EQ(j["order"], n);
    auto loaded = io::certificate_from_json(json::parse(j.dump()));
    EXPECT_EQ(loaded.terrace, c.terrace);
    EXPECT_EQ(loaded.sequencing, c.sequencing);
    EXPECT_TRUE(io::verify_loaded(loaded).ok);
    EXPECT_EQ(loaded.provenance["pipeline"], c.provenance.pipeline);
  }
}

TEST(CertificateJson, TamperingIsCaught) {
  auto c = *sequence_order(21).certificate;
  auto j = io::to_json(c);
  auto swapped = j;
  std::swap(swapped["terrace"][3], swapped["terrace"][4]);
  EXPECT_FALSE(io::verify_loaded(io::certificate_from_json(swapped)).ok);
  auto seq = j;
  std::swap(seq["sequencing"][0], seq["sequencing"][1]);
  auto r = io::verify_loaded(io::certificate_from_json(seq));
  EXPECT_FALSE(r.ok);
  auto schema = j;
  schema["schema"] = "2";
  EXPECT_EQ(code_of([&] { io::certificate_from_json(schema); }), Errc::ParseError);
  auto outside = j;
  outside["terrace"][0] = json::array({5, json::array({0})});
  EXPECT_EQ(code_of([&] { io::certificate_from_json(outside); }), Errc::ParseError);
}

TEST(CertificateJson, TableGroupsUseNames) {
  auto g = io::group_from_json(io::read_json_file(std::string(SEQLATIN_FIXTURES) + "/q8.json"));
  auto a = io::arrangement_json(g, {0, 1, 2});
  EXPECT_TRUE(a[0].is_string());
  EXPECT_EQ(io::arrangement_from_json(g, a), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(code_of([&] { io::arrangement_from_json(g, json::array({2, 1})); }), Errc::ParseError);
  EXPECT_EQ(code_of([&] { io::arrangement_from_json(g, json::array({"z"})); }), Errc::ParseError);
}

TEST(ClassificationJson, Shape) {
  auto j = io::to_json(nt::classify_order(21), 21);
  EXPECT_EQ(j["verdict"], "OddNonabelianExists");
  EXPECT_EQ(j["witness"]["pipeline"], "cyclic");
  EXPECT_EQ(j["witness"]["q"], 3);
  EXPECT_EQ(j["witness"]["m"], 7);
  auto k = io::to_json(nt::classify_order(15), 15);
  EXPECT_EQ(k["verdict"], "OddOnlyAbelian");
  EXPECT_FALSE(k.contains("witness"));
  auto t = io::to_json(nt::classify_order(225), 225);
  EXPECT_EQ(t["witness"]["nine"], false);
}

TEST(SquareJson, Shape) {
  auto c = *sequence_order(6).certificate;
  auto sq = terrace_to_complete_square(group_of(c), c.terrace);
  auto j = io::to_json(sq, completeness_report(sq));
  EXPECT_EQ(j["n"], 6);
  EXPECT_EQ(j["square"].size(), 6u);
  EXPECT_EQ(j["report"]["is_complete"], true);
  EXPECT_EQ(j["col_order"][1], "5");
}
