#ifndef SEQLATIN_DIRECTED_TEMPLATE_HPP
#define SEQLATIN_DIRECTED_TEMPLATE_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "seqlatin/error.hpp"
#include "seqlatin/group.hpp"
#include "seqlatin/harmonious.hpp"
#include "seqlatin/numtheory.hpp"
#include "seqlatin/rotational.hpp"

namespace seqlatin {

// Parameters of the block template for a directed terrace of Z_q x|_a A.
// hss[i-1][j-1] holds h_{ij}; t is 1-based.
struct TemplateInputs {
  SdSpec sd;
  Int lambda = 0;
  std::vector<AbElem> gs;
  std::vector<std::vector<AbElem>> hss;
  std::size_t t = 1;
};

struct ChecklistReport {
  static constexpr std::array<char, 7> names{'a', 'b', 'c', 'd', 'e', 'f', 'g'};
  std::array<bool, 7> pass{};
  std::vector<std::string> notes;  // one line per failing family

  bool all_pass() const {
    for (bool b : pass)
      if (!b) return false;
    return true;
  }
  bool family(char c) const { return pass[static_cast<std::size_t>(c - 'a')]; }
  std::string failing() const {
    std::string s;
    for (std::size_t i = 0; i < pass.size(); ++i)
      if (!pass[i]) s += names[i];
    return s;
  }
};

namespace detail {

inline void check_shapes(const TemplateInputs& in) {
  const Int q = in.sd.s();
  const auto m = static_cast<std::size_t>(in.sd.base().order());
  require(q >= 3 && nt::is_prime(q), Errc::InvalidArgument, "q must be an odd prime");
  require(in.gs.size() == m, Errc::DimensionMismatch, "need m values g_i");
  require(in.hss.size() + 1 == static_cast<std::size_t>(q), Errc::DimensionMismatch, "need q-1 rows of h values");
  for (const auto& row : in.hss)
    require(row.size() + 1 == m, Errc::DimensionMismatch, "each h row needs m-1 values");
  require(in.t >= 1 && in.t <= m, Errc::InvalidArgument, "split index t must lie in 1..m");
  for (const auto& g : in.gs) in.sd.base().check(g);
  for (const auto& row : in.hss)
    for (const auto& h : row) in.sd.base().check(h);
}

inline bool covers_nonzero(const AbelianSpec& A, const std::vector<AbElem>& xs) {
  if (static_cast<Int>(xs.size()) + 1 != A.order()) return false;
  std::vector<char> seen(static_cast<std::size_t>(A.order()), 0);
  for (const auto& x : xs) {
    auto i = A.index_of(x);
    if (i == 0 || seen[i]) return false;
    seen[i] = 1;
  }
  return true;
}

}  // namespace detail

// (lambda^i / (lambda-1)^(i-1), 0) for i = 1..q-1.
inline std::vector<SdElem> middle_segment(Int q, Int lambda, const AbelianSpec& A) {
  require(q >= 3 && lambda > 1 && lambda < q, Errc::InvalidArgument, "lambda must lie in 2..q-1");
  const Int ratio = nt::mulmod(lambda, nt::invmod(lambda - 1, q), q);
  std::vector<SdElem> out;
  Int x = lambda;
  for (Int i = 1; i < q; ++i) {
    out.push_back({x, A.zero()});
    x = nt::mulmod(x, ratio, q);
  }
  return out;
}

inline std::vector<SdElem> middle_segment(Int q, Int lambda) {
  return middle_segment(q, lambda, AbelianSpec::cyclic(1));
}

inline std::vector<SdElem> assemble(const TemplateInputs& in) {
  detail::check_shapes(in);
  const Int q = in.sd.s();
  const Int lam = in.lambda;
  const auto m = in.gs.size();
  std::vector<SdElem> out;
  out.reserve(static_cast<std::size_t>(q) * m);
  for (std::size_t i = 0; i < in.t; ++i) out.push_back({0, in.gs[i]});
  for (std::size_t j = 0; j + 1 < m; ++j)
    for (Int i = 1; i < q; ++i)
      out.push_back({nt::powmod(lam, static_cast<std::uint64_t>(q - i), q), in.hss[static_cast<std::size_t>(i - 1)][j]});
  for (auto& e : middle_segment(q, lam, in.sd.base())) out.push_back(e);
  for (std::size_t i = in.t; i < m; ++i) out.push_back({0, in.gs[i]});
  return out;
}

// Evaluates the requirement families directly from the raw inputs.
inline ChecklistReport checklist(const TemplateInputs& in) {
  detail::check_shapes(in);
  const auto& A = in.sd.base();
  const auto& al = in.sd.alpha();
  const Int q = in.sd.s();
  const Int lam = in.lambda;
  const auto m = in.gs.size();
  const auto& h = in.hss;
  const std::size_t t = in.t;
  auto lp = [&](Int e) { return nt::powmod(lam, static_cast<std::uint64_t>(nt::mod(e, q - 1)), q); };
  ChecklistReport r;
  auto set = [&](char c, bool ok, const std::string& why) {
    r.pass[static_cast<std::size_t>(c - 'a')] = ok;
    if (!ok) r.notes.push_back(std::string(1, c) + ": " + why);
  };

  set('a', A.is_zero(A.sub(h[0][0], al.apply(in.gs[t - 1], 1))), "h_11 - alpha(g_t) is not 0");

  {
    std::vector<char> seen(static_cast<std::size_t>(A.order()), 0);
    bool ok = true;
    for (const auto& g : in.gs) {
      auto i = A.index_of(g);
      if (seen[i]) ok = false;
      seen[i] = 1;
    }
    set('b', ok, "g values repeat an element");
  }

  {
    std::string bad;
    for (std::size_t i = 0; i < h.size(); ++i)
      if (!detail::covers_nonzero(A, h[i])) bad += " " + std::to_string(i + 1);
    set('c', bad.empty(), "h rows not covering A\\{0}:" + bad);
  }

  {
    std::vector<AbElem> d;
    for (std::size_t i = 1; i < t; ++i) d.push_back(A.sub(in.gs[i], in.gs[i - 1]));
    d.push_back(A.neg(h.back()[m - 2]));
    for (std::size_t i = t + 1; i < m; ++i) d.push_back(A.sub(in.gs[i], in.gs[i - 1]));
    set('d', detail::covers_nonzero(A, d), "g differences with -h_{q-1,m-1} do not cover A\\{0}");
  }

  {
    std::string bad;
    for (Int i = 2; i < q; ++i) {
      // Exponent is the first-coordinate step lambda^{q-i} - lambda^{q-i+1}.
      Int e = nt::mod(lp(q - i) - lp(q - i + 1), q);
      std::vector<AbElem> d;
      const auto& cur = h[static_cast<std::size_t>(i - 1)];
      const auto& prev = h[static_cast<std::size_t>(i - 2)];
      for (std::size_t j = 0; j + 1 < m; ++j) d.push_back(A.sub(cur[j], al.apply(prev[j], e)));
      if (!detail::covers_nonzero(A, d)) bad += " " + std::to_string(i);
    }
    set('e', bad.empty(), "cross-row differences fail for rows:" + bad);
  }

  {
    Int e = nt::mod(1 - lam, q);
    std::vector<AbElem> d;
    for (std::size_t j = 0; j + 2 < m; ++j) d.push_back(A.sub(h[0][j + 1], al.apply(h.back()[j], e)));
    d.push_back(t < m ? in.gs[t] : A.zero());
    set('f', t < m && detail::covers_nonzero(A, d), "closing family does not cover A\\{0}");
  }

  {
    // Row first coordinates lambda^{q-i}, the middle segment and its
    // differences.
    std::vector<char> rows(static_cast<std::size_t>(q), 0), mid(static_cast<std::size_t>(q), 0),
        diff(static_cast<std::size_t>(q), 0);
    bool ok = true;
    for (Int i = 1; i < q && ok; ++i) {
      auto x = static_cast<std::size_t>(lp(q - i));
      if (x == 0 || rows[x]) ok = false;
      rows[x] = 1;
    }
    auto ms = middle_segment(q, lam, A);
    for (std::size_t i = 0; i < ms.size() && ok; ++i) {
      auto x = static_cast<std::size_t>(ms[i].u);
      if (x == 0 || mid[x]) ok = false;
      mid[x] = 1;
      if (i == 0) continue;
      auto d = static_cast<std::size_t>(nt::mod(ms[i].u - ms[i - 1].u, q));
      if (d == 0 || d == 1 || diff[d]) ok = false;
      diff[d] = 1;
    }
    set('g', ok, "lambda does not make the first coordinates work");
  }
  return r;
}

// Builds the template values from an R-terrace a and a #-harmonious
// sequence c of A.
inline TemplateInputs theorem4_assign(const RTerrace& a, const HashHarmonious& c, const SdSpec& sd, Int lambda) {
  const auto& A = sd.base();
  const auto& al = sd.alpha();
  const Int q = sd.s();
  require(a.group == A && c.group == A, Errc::DimensionMismatch, "sequences must live in the base group");
  require(al.order() == q, Errc::InvalidArgument, "alpha must have order q");
  require(check_r_terrace(A, a.entries).is_r, Errc::InvalidArgument, "a is not a directed R-terrace");
  require(check_hash(A, c.entries), Errc::InvalidArgument, "c is not #-harmonious");
  const auto m1 = a.entries.size();
  const auto& c1 = c.entries.front();
  const auto& cl = c.entries.back();
  const AbElem g1 = al.apply(c1, q - 1);
  require(a.entries.front() == A.sub(A.add(c1, cl), g1), Errc::ConditionsViolated,
          "condition 1 violated: a_1 != c_1 + c_{m-1} - alpha^{q-1}(c_1)");
  require(a.entries.back() == A.sub(a.entries.front(), al.apply(cl, lambda - 1)), Errc::ConditionsViolated,
          "condition 2 violated: a_{m-1} != a_1 - alpha^{lambda-1}(c_{m-1})");
  TemplateInputs in{sd, lambda, {}, {}, 1};
  in.gs.push_back(g1);
  for (const auto& x : a.entries) in.gs.push_back(A.add(x, g1));
  for (Int i = 1; i < q; ++i) {
    std::vector<AbElem> row;
    row.reserve(m1);
    for (const auto& x : c.entries) row.push_back(i % 2 == 1 ? x : A.neg(al.apply(x, lambda - 1)));
    in.hss.push_back(std::move(row));
  }
  return in;
}

}  // namespace seqlatin

#endif  // SEQLATIN_DIRECTED_TEMPLATE_HPP
