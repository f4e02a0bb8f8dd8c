// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "seqlatin/seqlatin.hpp"

#ifndef SEQLATIN_FIXTURES
#define SEQLATIN_FIXTURES "tests/fixtures"
#endif

using namespace seqlatin;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string note;

  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

// Plain trial division, no shared code with the classifier.
bool brute_force_exists(Int n) {
  std::vector<std::pair<Int, int>> f;
  Int r = n;
  for (Int d = 2; d * d <= r; ++d) {
    int e = 0;
    while (r % d == 0) {
      r /= d;
      ++e;
    }
    if (e) f.push_back({d, e});
  }
  if (r > 1) f.push_back({r, 1});
  for (auto [p, e] : f) {
    if (e >= 3) return true;
    Int pk = 1;
    for (int j = 1; j <= e; ++j) {
      pk *= p;
      for (auto [q, eq] : f)
        if (q != p && pk % q == 1) return true;
    }
  }
  return false;
}

std::string expected_verdict(Int n) {
  if (n == 1) return "Trivial";
  if (n % 2 == 0) return "Even";
  return brute_force_exists(n) ? "OddNonabelianExists" : "OddOnlyAbelian";
}

template <class G>
bool square_ok(const G& g, const std::vector<std::size_t>& terrace) {
  auto sq = terrace_to_complete_square(g, terrace);
  auto rep = completeness_report(sq);
  return rep.is_latin && rep.is_row_complete && rep.is_column_complete && rep.is_complete;
}

Outcome spectrum() {
  Outcome o;
  for (Int n = 1; n <= 1000; ++n) {
    auto got = std::string(nt::verdict_name(nt::classify_order(n).verdict));
    if (got != expected_verdict(n)) o.fail("n=" + std::to_string(n) + " classify=" + got);
  }
  const std::map<Int, std::string> spots = {{1, "Trivial"},
                                            {2, "Even"},
                                            {9, "OddOnlyAbelian"},
                                            {15, "OddOnlyAbelian"},
                                            {21, "OddNonabelianExists"},
                                            {27, "OddNonabelianExists"},
                                            {33, "OddOnlyAbelian"},
                                            {63, "OddNonabelianExists"},
                                            {75, "OddNonabelianExists"}};
  for (const auto& [n, v] : spots) {
    if (expected_verdict(n) != v) o.fail("brute force disagrees with spot value at n=" + std::to_string(n));
    if (std::string(nt::verdict_name(nt::classify_order(n).verdict)) != v)
      o.fail("spot value wrong at n=" + std::to_string(n));
  }
  if (o.ok) o.note = "n <= 1000 and 9 spot values agree";
  return o;
}

Outcome cyclic() {
  Outcome o;
  int count = 0;
  bool named[5] = {};
  for (Int q : {3, 5, 7})
    for (Int m = 3; m <= 199; m += 2) {
      if (!nt::find_unit_of_order(m, q)) continue;
      ++count;
      try {
        auto cert = sequence_cyclic(q, m);
        auto g = group_of(cert);
        if (!is_directed_terrace(g, cert.terrace)) o.fail("terrace rejected at q=" + std::to_string(q) + " m=" + std::to_string(m));
        else if (!square_ok(g, cert.terrace)) o.fail("square incomplete at q=" + std::to_string(q) + " m=" + std::to_string(m));
      } catch (const Error& e) {
        o.fail("q=" + std::to_string(q) + " m=" + std::to_string(m) + ": " + e.what());
      }
      int i = 0;
      for (auto [qq, mm] : {std::pair<Int, Int>{3, 7}, {3, 9}, {3, 13}, {5, 11}, {7, 29}}) {
        if (qq == q && mm == m) named[i] = true;
        ++i;
      }
    }
  for (bool b : named)
    if (!b) o.fail("a named (q, m) case was not covered");
  if (o.ok) o.note = std::to_string(count) + " (q, m) cases";
  return o;
}

Outcome timed_cert(const std::function<SequencingCertificate()>& make, std::size_t order, double bound) {
  Outcome o;
  auto t0 = Clock::now();
  try {
    auto cert = make();
    double dt = seconds_since(t0);
    if (certificate_order(cert) != order) o.fail("order " + std::to_string(certificate_order(cert)));
    if (!verify_certificate(cert).ok) o.fail("certificate does not verify");
    if (dt >= bound) o.fail("took " + std::to_string(dt) + " s");
    if (o.ok) o.note = std::to_string(order) + " in " + std::to_string(dt) + " s";
  } catch (const Error& e) {
    o.fail(e.what());
  }
  return o;
}

Outcome combine(std::vector<Outcome> parts) {
  Outcome o;
  std::string notes;
  for (auto& p : parts) {
    if (!p.ok) o.fail(p.note);
    notes += (notes.empty() ? "" : "; ") + p.note;
  }
  if (o.ok) o.note = notes;
  return o;
}

Outcome non3() {
  return combine({timed_cert([] { return sequence_non3(5, 2, 3, AbelianSpec{1}); }, 75, 10),
                  timed_cert([] { return sequence_non3(5, 2, 3, AbelianSpec{7}); }, 525, 10)});
}

Outcome three() {
  return combine({timed_cert([] { return sequence_theorem3(5, 3, AbelianSpec{1}, false); }, 225, 60),
                  timed_cert([] { return sequence_theorem3(5, 3, AbelianSpec{1}, true); }, 675, 60)});
}

Outcome gordon() {
  Outcome o;
  for (Int n : {2, 4, 6, 8, 21, 27, 55, 75}) {
    auto r = sequence_order(n);
    if (!r.certificate) {
      o.fail("no certificate at n=" + std::to_string(n));
      continue;
    }
    auto sq = terrace_to_complete_square(group_of(*r.certificate), r.certificate->terrace);
    auto rep = completeness_report(sq);
    if (!(rep.is_latin && rep.is_row_complete && rep.is_column_complete)) {
      o.fail("square incomplete at n=" + std::to_string(n));
      continue;
    }
    // every cell, every replacement symbol for small n; one replacement above that
    for (std::size_t c = 0; c < sq.n * sq.n; ++c) {
      const auto orig = sq.grid[c];
      const std::size_t tries = sq.n <= 8 ? sq.n - 1 : 1;
      for (std::size_t t = 1; t <= tries; ++t) {
        sq.grid[c] = (orig + t) % sq.n;
        auto m = completeness_report(sq);
        if (m.is_latin && m.is_row_complete && m.is_column_complete)
          o.fail("mutation survived at n=" + std::to_string(n));
      }
      sq.grid[c] = orig;
    }
  }
  if (o.ok) o.note = "8 orders, all single-cell mutations detected";
  return o;
}

Outcome nonexistence() {
  Outcome o;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto t0 = Clock::now();
  auto none = [&](const AnyGroup& g, const std::string& name) {
    auto r = exhaustive_sequencings(g, 0, jobs);
    if (!r.terraces.empty() || !r.exhausted) o.fail(name + " has " + std::to_string(r.terraces.size()));
  };
  for (Int n : {3, 5, 7, 9}) none(AnyGroup(AbelianSpec{n}), "Z_" + std::to_string(n));
  for (const char* f : {"s3", "d8", "q8"})
    none(io::group_from_json(io::read_json_file(std::string(SEQLATIN_FIXTURES) + "/" + f + ".json")), f);
  for (Int n : {2, 4, 6, 8, 10}) {
    auto r = exhaustive_sequencings(AnyGroup(AbelianSpec{n}), 1, jobs);
    if (r.terraces.empty()) o.fail("Z_" + std::to_string(n) + " has none");
  }
  double dt = seconds_since(t0);
  if (dt >= 60) o.fail("took " + std::to_string(dt) + " s");
  if (o.ok) o.note = "12 groups in " + std::to_string(dt) + " s";
  return o;
}

Outcome bghj() {
  Outcome o;
  for (Int m = 5; m <= 99; m += 2)
    if (!is_matched(bghj_base(AbelianSpec{m}))) o.fail("bghj_base Z_" + std::to_string(m));
  if (!is_matched(bghj_base(AbelianSpec{3, 3}))) o.fail("bghj_base Z_3^2");
  for (const auto& g : {AbelianSpec{15}, AbelianSpec{21}, AbelianSpec{5, 5}, AbelianSpec{3, 3, 3}, AbelianSpec{3, 3, 5}}) {
    auto h = hash_for(g);
    if (!(h.group == g) || !check_hash(g, h.entries)) o.fail("hash_for " + std::to_string(g.order()));
  }
  for (Int m = 5; m <= 199; m += 2) {
    auto h = bghj_base(AbelianSpec{m}).hash.entries;
    AbElem one{1}, minus2{m - 2};
    if (!find_adjacent(h, one, minus2) && !find_adjacent(h, minus2, one))
      o.fail("1 and -2 not adjacent in Z_" + std::to_string(m));
  }
  if (o.ok) o.note = "48 cyclic bases, Z_3^2, 5 products, 98 adjacency checks";
  return o;
}

Outcome graceful() {
  Outcome o;
  for (Int k = 1; k <= 8; ++k) {
    std::vector<char> first(static_cast<std::size_t>(k) + 1, 0);
    for (const auto& p : enumerate_graceful(k)) first[static_cast<std::size_t>(p.values[0])] = 1;
    for (Int x = 1; x <= k; ++x)
      if (!first[static_cast<std::size_t>(x)]) o.fail("no graceful permutation of " + std::to_string(k) + " starts with " + std::to_string(x));
  }
  double worst = 0;
  for (Int k = 1; k <= 20; ++k)
    for (Int x = 1; x <= k; ++x) {
      auto t0 = Clock::now();
      try {
        auto g = graceful_with_first(k, x);
        if (!is_graceful(g.values) || g.values.front() != x) o.fail("bad permutation at k=" + std::to_string(k));
      } catch (const Error& e) {
        o.fail(e.what());
      }
      double dt = seconds_since(t0);
      worst = std::max(worst, dt);
      if (dt >= 1) o.fail("k=" + std::to_string(k) + " x=" + std::to_string(x) + " took " + std::to_string(dt) + " s");
    }
  if (o.ok) o.note = "k <= 8 enumerated; 210 (k, x) pairs, slowest " + std::to_string(worst) + " s";
  return o;
}

Outcome fgm() {
  Outcome o;
  auto base = standardize(walecki_r_terrace(7));
  auto t = fgm_extend(base, 5);
  auto chk = check_r_terrace(t.group, t.entries);
  if (t.entries.size() != 34) o.fail(std::to_string(t.entries.size()) + " entries");
  if (!chk.is_r) o.fail("not an R-terrace: " + chk.reason);
  auto stars = star_indices(t.group, t.entries);
  if (stars.empty() || stars.front() != 1 || !t.is_standard()) o.fail("not standard");
  for (Int p : {5, 7}) {
    auto w = walecki_r_terrace(3 * p);
    auto s = star_indices(w.group, w.entries);
    if (std::find(s.begin(), s.end(), static_cast<std::size_t>(2 * p)) == s.end())
      o.fail("Walecki Z_" + std::to_string(3 * p) + " has no star at " + std::to_string(2 * p));
  }
  if (o.ok) o.note = "Z_7 x Z_5: 34 entries, star at 1; stars at 2p for p = 5, 7";
  return o;
}

Outcome walecki() {
  Outcome o;
  auto t0 = Clock::now();
  for (Int n = 2; n <= 512; n += 2) {
    AbelianGroup g(AbelianSpec{n});
    std::vector<std::size_t> idx;
    for (Int x : walecki_terrace(n)) idx.push_back(static_cast<std::size_t>(x));
    if (!is_directed_terrace(g, idx)) o.fail("terrace fails at n=" + std::to_string(n));
    else if (n <= 256 && !square_ok(g, idx)) o.fail("square fails at n=" + std::to_string(n));
  }
  double dt = seconds_since(t0);
  if (dt >= 5) o.fail("took " + std::to_string(dt) + " s");
  if (o.ok) o.note = "256 terraces, 128 squares in " + std::to_string(dt) + " s";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"spectrum agreement", spectrum},
      {"cyclic pipeline", [] {
         auto t0 = Clock::now();
         auto o = cyclic();
         double dt = seconds_since(t0);
         if (dt >= 30) o.fail("took " + std::to_string(dt) + " s");
         else if (o.ok) o.note += " in " + std::to_string(dt) + " s";
         return o;
       }},
      {"Z_5^2 pipeline, orders 75 and 525", non3},
      {"Z_5^2 x Z_3 / Z_9 pipeline, orders 225 and 675", three},
      {"Gordon round-trip and mutation", gordon},
      {"nonexistence oracle", nonexistence},
      {"BGHJ sequences", bghj},
      {"graceful coverage", graceful},
      {"FGM product and Walecki stars", fgm},
      {"Walecki scaling", walecki},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %zu %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.note.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
