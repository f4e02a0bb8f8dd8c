#ifndef SEQLATIN_HARMONIOUS_HPP
#define SEQLATIN_HARMONIOUS_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "seqlatin/error.hpp"
#include "seqlatin/group.hpp"

namespace seqlatin {

// The m-1 non-identity elements in a cyclic order whose consecutive sums
// c_i + c_{i+1} are again the non-identity elements.
struct HashHarmonious {
  AbelianSpec group;
  std::vector<AbElem> entries;
};

// All m elements in a cyclic order whose consecutive sums are all distinct.
struct Harmonious {
  AbelianSpec group;
  std::vector<AbElem> entries;
};

// Harmonious and #-harmonious sequences with the same first and last entries.
struct MatchedPair {
  HashHarmonious hash;
  Harmonious harm;
};

namespace detail {

inline bool cyclic_sums_distinct(const AbelianSpec& g, const std::vector<AbElem>& a, bool allow_zero) {
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto s = g.index_of(g.add(a[i], a[(i + 1) % a.size()]));
    if ((!allow_zero && s == 0) || seen[s]) return false;
    seen[s] = 1;
  }
  return true;
}

inline bool distinct_elements(const AbelianSpec& g, const std::vector<AbElem>& a, bool allow_zero) {
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  for (const auto& x : a) {
    if (!g.contains(x)) return false;
    auto i = g.index_of(x);
    if ((!allow_zero && i == 0) || seen[i]) return false;
    seen[i] = 1;
  }
  return true;
}

}  // namespace detail

inline bool check_hash(const AbelianSpec& g, const std::vector<AbElem>& a) {
  if (static_cast<Int>(a.size()) + 1 != g.order() || a.empty()) return false;
  return detail::distinct_elements(g, a, false) && detail::cyclic_sums_distinct(g, a, false);
}

inline bool check_harm(const AbelianSpec& g, const std::vector<AbElem>& a) {
  if (static_cast<Int>(a.size()) != g.order()) return false;
  return detail::distinct_elements(g, a, true) && detail::cyclic_sums_distinct(g, a, true);
}

inline bool is_matched(const MatchedPair& mp) {
  return mp.hash.group == mp.harm.group && check_hash(mp.hash.group, mp.hash.entries) &&
         check_harm(mp.harm.group, mp.harm.entries) && mp.hash.entries.front() == mp.harm.entries.front() &&
         mp.hash.entries.back() == mp.harm.entries.back();
}

namespace detail {

inline std::vector<AbElem> cyclic_elems(const std::vector<Int>& v) {
  std::vector<AbElem> out;
  for (Int x : v) out.push_back(AbElem{x});
  return out;
}

// a, a+step, ..., b inclusive (step may be negative).
inline void run(std::vector<Int>& out, Int a, Int b, Int step) {
  if (step > 0)
    for (Int x = a; x <= b; x += step) out.push_back(x);
  else
    for (Int x = a; x >= b; x += step) out.push_back(x);
}

}  // namespace detail

// The base sequences for Z_r (odd r >= 5) and Z_3 x Z_3.
inline MatchedPair bghj_base(const AbelianSpec& g) {
  MatchedPair mp{{g, {}}, {g, {}}};
  if (g.rank() == 2 && g.factor(0) == 3 && g.factor(1) == 3) {
    mp.hash.entries = {{1, 1}, {2, 0}, {2, 1}, {0, 2}, {2, 2}, {1, 0}, {1, 2}, {0, 1}};
    mp.harm.entries = {{1, 1}, {2, 1}, {0, 2}, {1, 2}, {2, 2}, {0, 0}, {1, 0}, {2, 0}, {0, 1}};
  } else {
    require(g.is_cyclic() && g.order() >= 5 && g.order() % 2 == 1, Errc::InvalidArgument,
            "base sequences exist for odd cyclic orders >= 5 and for Z_3 x Z_3");
    const Int r = g.order();
    std::vector<Int> h, c;
    if (r % 4 == 1) {
      const Int l = (r - 1) / 4;
      detail::run(h, 2 * l, 2, -2);
      detail::run(h, 4 * l, 2 * l + 2, -2);
      detail::run(h, 2 * l + 1, 4 * l - 1, 2);
      detail::run(h, 1, 2 * l - 1, 2);
      detail::run(c, 2 * l, 4 * l, 1);
      detail::run(c, 0, 2 * l - 1, 1);
    } else {
      const Int l = (r - 3) / 4;
      detail::run(h, 2 * l + 1, 1, -2);
      detail::run(h, 4 * l + 1, 2 * l + 3, -2);
      detail::run(h, 2 * l + 2, 4 * l + 2, 2);
      detail::run(h, 2, 2 * l, 2);
      detail::run(c, 2 * l + 1, 4 * l + 2, 1);
      detail::run(c, 0, 2 * l, 1);
    }
    mp.hash.entries = detail::cyclic_elems(h);
    mp.harm.entries = detail::cyclic_elems(c);
  }
  require(is_matched(mp), Errc::ConstructionFailed, "base sequences failed verification");
  return mp;
}

// (0, 1, ..., r-1) for Z_r, r odd.
inline Harmonious harmonious_cyclic(Int r) {
  require(r >= 1 && r % 2 == 1, Errc::InvalidArgument, "r must be odd");
  Harmonious h{AbelianSpec::cyclic(r), {}};
  for (Int i = 0; i < r; ++i) h.entries.push_back(AbElem{i});
  return h;
}

// Block concatenation over C x D; d must start with the identity.
inline MatchedPair bghj_product(const MatchedPair& cd, const Harmonious& d) {
  if (d.group.order() == 1) return cd;
  require(d.group.order() % 2 == 1 && cd.hash.group.order() % 2 == 1, Errc::InvalidArgument,
          "product construction needs odd orders");
  require(!d.entries.empty() && d.group.is_zero(d.entries.front()), Errc::InvalidArgument,
          "harmonious sequence for D must start with the identity");
  const auto& C = cd.hash.group;
  AbelianSpec G = product(C, d.group);
  std::vector<AbElem> hash, harm;
  for (const auto& c : cd.hash.entries) hash.push_back(concat(c, d.entries[0]));
  for (const auto& c : cd.harm.entries) harm.push_back(concat(c, d.entries[0]));
  for (std::size_t j = 1; j < d.entries.size(); ++j)
    for (const auto& c : cd.harm.entries) {
      hash.push_back(concat(c, d.entries[j]));
      harm.push_back(concat(c, d.entries[j]));
    }
  // Rotate both so they share endpoints; least rotation pair wins.
  const std::size_t H = hash.size(), M = harm.size();
  for (std::size_t i = 0; i < H; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      if (!(hash[i] == harm[j]) || !(hash[(i + H - 1) % H] == harm[(j + M - 1) % M])) continue;
      MatchedPair mp{{G, {}}, {G, {}}};
      for (std::size_t t = 0; t < H; ++t) mp.hash.entries.push_back(hash[(i + t) % H]);
      for (std::size_t t = 0; t < M; ++t) mp.harm.entries.push_back(harm[(j + t) % M]);
      require(is_matched(mp), Errc::ConstructionFailed, "product sequences failed verification");
      return mp;
    }
  fail(Errc::ConstructionFailed, "product sequences admit no matched rotation");
}

// Folds the product construction starting from the factor at b0 (which must
// be cyclic of order > 3, or the first of two adjacent factors 3, 3).
// The result lives in the input presentation.
inline MatchedPair matched_from_base(const AbelianSpec& g, std::size_t b0) {
  require(g.order() % 2 == 1, Errc::InvalidArgument, "group order must be odd");
  require(b0 < g.rank(), Errc::InvalidArgument, "base factor out of range");
  std::vector<Int> rest;
  MatchedPair mp;
  std::vector<Int> order;
  if (g.factor(b0) > 3) {
    mp = bghj_base(AbelianSpec::cyclic(g.factor(b0)));
    order.push_back(g.factor(b0));
    for (std::size_t i = 0; i < g.rank(); ++i)
      if (i != b0) rest.push_back(g.factor(i));
  } else {
    require(g.factor(b0) == 3 && b0 + 1 < g.rank() && g.factor(b0 + 1) == 3, Errc::UnsupportedDecomposition,
            "base factor must be cyclic of order > 3 or start a Z_3 x Z_3 pair");
    mp = bghj_base(AbelianSpec{3, 3});
    order = {3, 3};
    for (std::size_t i = 0; i < g.rank(); ++i)
      if (i != b0 && i != b0 + 1) rest.push_back(g.factor(i));
  }
  for (Int r : rest) mp = bghj_product(mp, harmonious_cyclic(r));
  if (mp.hash.group == g) return mp;
  AbelianIso iso(mp.hash.group, g);
  MatchedPair out{{g, {}}, {g, {}}};
  for (const auto& x : mp.hash.entries) out.hash.entries.push_back(iso(x));
  for (const auto& x : mp.harm.entries) out.harm.entries.push_back(iso(x));
  require(is_matched(out), Errc::ConstructionFailed, "transported sequences failed verification");
  return out;
}

// Base factor choice: the largest factor of order > 3, otherwise a pair of
// Z_3 factors (reordered to sit side by side).
inline MatchedPair matched_for(const AbelianSpec& g) {
  require(g.order() % 2 == 1 && g.order() >= 5, Errc::InvalidArgument,
          "#-harmonious sequences need odd order >= 5");
  std::size_t best = 0;
  for (std::size_t i = 1; i < g.rank(); ++i)
    if (g.factor(i) > g.factor(best)) best = i;
  if (g.factor(best) > 3) return matched_from_base(g, best);
  // Every factor is 3 and there are at least two of them.
  require(g.rank() >= 2, Errc::UnsupportedDecomposition, "Z_3 has no #-harmonious sequence");
  return matched_from_base(g, 0);
}

inline HashHarmonious hash_for(const AbelianSpec& g) { return matched_for(g).hash; }

inline HashHarmonious scale_hash(const HashHarmonious& h, const Automorphism& a) {
  HashHarmonious r{h.group, {}};
  for (const auto& x : h.entries) r.entries.push_back(a.apply(x));
  return r;
}

inline HashHarmonious scale_hash(const HashHarmonious& h, Int unit) {
  return scale_hash(h, Automorphism::scalar(h.group, unit));
}

inline HashHarmonious rotate_hash(const HashHarmonious& h, Int j) {
  HashHarmonious r{h.group, {}};
  auto n = static_cast<Int>(h.entries.size());
  for (Int i = 0; i < n; ++i) r.entries.push_back(h.entries[static_cast<std::size_t>(nt::mod(i + j, n))]);
  return r;
}

inline HashHarmonious reverse_hash(const HashHarmonious& h) {
  HashHarmonious r = h;
  std::reverse(r.entries.begin(), r.entries.end());
  return r;
}

struct HashTransform {
  enum class Kind { Scale, Rotate, Reverse } kind = Kind::Rotate;
  Int value = 0;
  std::optional<Automorphism> aut;
};

inline HashHarmonious transform_hash(const HashHarmonious& h, const HashTransform& op) {
  switch (op.kind) {
    case HashTransform::Kind::Scale: return op.aut ? scale_hash(h, *op.aut) : scale_hash(h, op.value);
    case HashTransform::Kind::Rotate: return rotate_hash(h, op.value);
    case HashTransform::Kind::Reverse: return reverse_hash(h);
  }
  return h;
}

// Positions i (0-based) with entries[i] = x and entries[i+1] = y cyclically.
inline std::optional<std::size_t> find_adjacent(const std::vector<AbElem>& a, const AbElem& x, const AbElem& y) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] == x && a[(i + 1) % a.size()] == y) return i;
  return std::nullopt;
}

}  // namespace seqlatin

#endif  // SEQLATIN_HARMONIOUS_HPP
