#ifndef SEQLATIN_ROTATIONAL_HPP
#define SEQLATIN_ROTATIONAL_HPP

#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "seqlatin/error.hpp"
#include "seqlatin/group.hpp"
#include "seqlatin/limits.hpp"
#include "seqlatin/search.hpp"

namespace seqlatin {

// Directed R-terrace over an abelian group: the m-1 non-identity elements in
// a cyclic order whose cyclic differences a_{i+1} - a_i are again the
// non-identity elements.  Positions are 1-based as a_1..a_{m-1}.
struct RTerrace {
  AbelianSpec group;
  std::vector<AbElem> entries;
  std::optional<std::size_t> star_index;  // 1-based; a_i = a_{i-1} + a_{i+1}

  std::size_t size() const { return entries.size(); }
  const AbElem& at(std::size_t i) const { return entries[i - 1]; }  // 1-based
  bool is_standard() const { return star_index == std::size_t{1}; }
};

struct RCheck {
  bool is_r = false;
  std::vector<std::size_t> star_indices;  // 1-based
  std::string reason;
};

inline std::vector<std::size_t> star_indices(const AbelianSpec& g, const std::vector<AbElem>& a) {
  std::vector<std::size_t> out;
  std::size_t n = a.size();
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] == g.add(a[(i + n - 1) % n], a[(i + 1) % n])) out.push_back(i + 1);
  return out;
}

inline RCheck check_r_terrace(const AbelianSpec& g, const std::vector<AbElem>& a) {
  RCheck res;
  auto m = static_cast<std::size_t>(g.order());
  if (a.size() + 1 != m || m < 2) {
    res.reason = "expected " + std::to_string(m - 1) + " entries";
    return res;
  }
  std::vector<char> seen(m, 0), diff(m, 0);
  for (const auto& x : a) {
    if (!g.contains(x)) {
      res.reason = "entry " + to_string(x) + " is not a reduced element";
      return res;
    }
    auto i = g.index_of(x);
    if (i == 0 || seen[i]) {
      res.reason = "entry " + to_string(x) + " is zero or repeated";
      return res;
    }
    seen[i] = 1;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto d = g.index_of(g.sub(a[(i + 1) % a.size()], a[i]));
    if (d == 0 || diff[d]) {
      res.reason = "difference at position " + std::to_string(i + 1) + " is zero or repeated";
      return res;
    }
    diff[d] = 1;
  }
  res.is_r = true;
  res.star_indices = star_indices(g, a);
  return res;
}

// Validates and wraps; the star index is the first one found, if any.
inline RTerrace make_r_terrace(AbelianSpec g, std::vector<AbElem> entries) {
  auto chk = check_r_terrace(g, entries);
  require(chk.is_r, Errc::NotATerrace, "not a directed R-terrace: " + chk.reason);
  RTerrace t{std::move(g), std::move(entries), std::nullopt};
  if (!chk.star_indices.empty()) t.star_index = chk.star_indices.front();
  return t;
}

inline RTerrace make_r_terrace_cyclic(Int m, const std::vector<Int>& values) {
  std::vector<AbElem> e;
  for (Int v : values) e.push_back(AbElem{nt::mod(v, m)});
  return make_r_terrace(AbelianSpec::cyclic(m), std::move(e));
}

// Left rotation by j: the new a_1 is the old a_{1+j}.
inline RTerrace rotate(const RTerrace& t, Int j) {
  auto n = static_cast<Int>(t.size());
  j = nt::mod(j, n);
  RTerrace r{t.group, {}, std::nullopt};
  for (Int i = 0; i < n; ++i) r.entries.push_back(t.entries[static_cast<std::size_t>((i + j) % n)]);
  if (t.star_index) r.star_index = static_cast<std::size_t>(nt::mod(static_cast<Int>(*t.star_index) - 1 - j, n) + 1);
  return r;
}

inline RTerrace reverse(const RTerrace& t) {
  RTerrace r = t;
  std::reverse(r.entries.begin(), r.entries.end());
  if (t.star_index) r.star_index = t.size() + 1 - *t.star_index;
  return r;
}

inline RTerrace negate(const RTerrace& t) {
  RTerrace r = t;
  for (auto& x : r.entries) x = t.group.neg(x);
  return r;
}

inline RTerrace apply_aut(const RTerrace& t, const Automorphism& psi) {
  require(psi.spec() == t.group, Errc::DimensionMismatch, "automorphism acts on a different group");
  RTerrace r = t;
  for (auto& x : r.entries) x = psi.apply(x);
  return r;
}

struct RTransform {
  enum class Kind { Reverse, Negate, Rotate, Aut } kind = Kind::Rotate;
  Int shift = 0;
  std::optional<Automorphism> aut;

  static RTransform reverse() { return {Kind::Reverse, 0, std::nullopt}; }
  static RTransform negate() { return {Kind::Negate, 0, std::nullopt}; }
  static RTransform rotate(Int j) { return {Kind::Rotate, j, std::nullopt}; }
  static RTransform by(const Automorphism& a) { return {Kind::Aut, 0, a}; }
};

inline RTerrace transform(const RTerrace& t, const RTransform& op) {
  switch (op.kind) {
    case RTransform::Kind::Reverse: return reverse(t);
    case RTransform::Kind::Negate: return negate(t);
    case RTransform::Kind::Rotate: return rotate(t, op.shift);
    case RTransform::Kind::Aut: return apply_aut(t, *op.aut);
  }
  return t;
}

// Rotates so that a star sits at position 1.  Uses the recorded star when
// there is one; otherwise keeps position 1 if it already qualifies.
inline RTerrace standardize(const RTerrace& t) {
  auto stars = star_indices(t.group, t.entries);
  require(!stars.empty(), Errc::NoStarIndex, "R-terrace has no index equal to the sum of its neighbours");
  std::size_t s = stars.front();
  if (t.star_index && std::find(stars.begin(), stars.end(), *t.star_index) != stars.end())
    s = *t.star_index;
  else if (stars.front() == 1)
    s = 1;
  RTerrace r = t;
  r.star_index = s;
  r = rotate(r, static_cast<Int>(s) - 1);
  r.star_index = 1;
  return r;
}

// ---------------------------------------------------------------------------
// Product construction A -> A x Z_w (w = 2k+1, 3 does not divide w).

namespace detail {

// Chooses second coordinates position by position; the printed value is
// tried first and fixed positions admit nothing else.
class FgmProblem {
 public:
  FgmProblem(const AbelianSpec& g, const std::vector<AbElem>& first, const std::vector<Int>& preferred,
             const std::vector<char>& is_free, Int w)
      : g_(g), first_(first), pref_(preferred), free_(is_free), w_(w), L_(first.size()),
        used_e_(static_cast<std::size_t>(g.order()), 0), used_d_(used_e_), cur_(L_) {}

  std::size_t length() const { return L_; }
  std::size_t domain() const { return static_cast<std::size_t>(w_); }

  void candidates(std::size_t pos, std::vector<std::size_t>& out) const {
    out.push_back(static_cast<std::size_t>(pref_[pos]));
    if (!free_[pos]) return;
    for (Int v = 0; v < w_; ++v)
      if (v != pref_[pos]) out.push_back(static_cast<std::size_t>(v));
  }

  bool can_place(std::size_t pos, std::size_t v) {
    auto e = elem(pos, v);
    if (e == 0 || used_e_[e]) return false;
    std::size_t d = 0;
    if (pos > 0) {
      d = g_.index_of(g_.sub(cur_[pos], cur_[pos - 1]));
      if (d == 0 || used_d_[d]) return false;
    }
    if (pos + 1 == L_) {
      auto d2 = g_.index_of(g_.sub(cur_[0], cur_[pos]));
      if (d2 == 0 || d2 == d || used_d_[d2]) return false;
      if (!(cur_[0] == g_.add(cur_[pos], cur_[1]))) return false;
    }
    return true;
  }

  void place(std::size_t pos, std::size_t v) {
    used_e_[elem(pos, v)] = 1;
    if (pos > 0) used_d_[g_.index_of(g_.sub(cur_[pos], cur_[pos - 1]))] = 1;
    if (pos + 1 == L_) used_d_[g_.index_of(g_.sub(cur_[0], cur_[pos]))] = 1;
  }

  void unplace(std::size_t pos, std::size_t v) {
    cur_[pos] = concat(first_[pos], AbElem{static_cast<Int>(v)});
    used_e_[g_.index_of(cur_[pos])] = 0;
    if (pos > 0) used_d_[g_.index_of(g_.sub(cur_[pos], cur_[pos - 1]))] = 0;
    if (pos + 1 == L_) used_d_[g_.index_of(g_.sub(cur_[0], cur_[pos]))] = 0;
  }

  bool accept_complete() const { return true; }

 private:
  std::size_t elem(std::size_t pos, std::size_t v) {
    cur_[pos] = concat(first_[pos], AbElem{static_cast<Int>(v)});
    return g_.index_of(cur_[pos]);
  }

  const AbelianSpec& g_;
  const std::vector<AbElem>& first_;
  const std::vector<Int>& pref_;
  const std::vector<char>& free_;
  Int w_;
  std::size_t L_;
  std::vector<char> used_e_, used_d_;
  std::vector<AbElem> cur_;
};

}  // namespace detail

inline RTerrace fgm_extend(const RTerrace& base, Int w) {
  require(base.group.order() % 2 == 1, Errc::InvalidArgument, "base group must have odd order");
  require(w >= 3 && w % 2 == 1 && w % 3 != 0, Errc::InvalidArgument,
          "w must be odd, at least 3 and prime to 3, got " + std::to_string(w));
  auto chk = check_r_terrace(base.group, base.entries);
  require(chk.is_r, Errc::NotATerrace, "base is not an R-terrace: " + chk.reason);
  require(!chk.star_indices.empty() && chk.star_indices.front() == 1, Errc::NoStarIndex,
          "base R*-terrace must be standard");

  const AbelianSpec& A = base.group;
  const auto m = static_cast<std::size_t>(A.order());
  const Int k = (w - 1) / 2;
  AbelianSpec G = product(A, AbelianSpec::cyclic(w));
  const std::size_t L = static_cast<std::size_t>(G.order()) - 1;

  // First coordinates.
  std::vector<AbElem> first;
  for (const auto& x : base.entries) first.push_back(x);
  for (Int c = 0; c < k; ++c) {
    first.push_back(base.entries[0]);
    for (const auto& x : base.entries) first.push_back(x);
  }
  for (Int c = 0; c < k; ++c) {
    first.push_back(A.zero());
    first.push_back(A.zero());
    for (std::size_t i = 1; i < base.entries.size(); ++i) first.push_back(base.entries[i]);
  }

  // Second coordinates: m-2 zeros, 2k rows of (m-1)/2 pairs (x, -x) and a
  // free entry, then a final zero.
  std::vector<Int> second(L, 0);
  std::vector<std::size_t> slot_pos;
  std::vector<Int> preferred;
  std::size_t pos = m - 2;
  for (Int j = 1; j <= 2 * k; ++j) {
    Int x = nt::mod(-j, w);
    for (std::size_t t = 0; t < (m - 1) / 2; ++t) {
      second[pos++] = x;
      second[pos++] = nt::mod(-x, w);
    }
    slot_pos.push_back(pos);
    preferred.push_back(nt::mod(2 * j, w));
    second[pos++] = preferred.back();
  }
  require(pos == L - 1 && first.size() == L, Errc::ConstructionFailed, "internal FGM layout mismatch");

  std::vector<AbElem> seq(L);
  for (std::size_t i = 0; i < L; ++i) seq[i] = concat(first[i], AbElem{second[i]});

  // Stage one varies only the last entry of each row; stage two (needed when
  // the base has order 3) frees every second coordinate.  Both keep the first
  // coordinates and demand the star at position 1.
  std::vector<char> free_slot(L, 0);
  for (auto p : slot_pos) free_slot[p] = 1;
  for (int stage = 0; stage < 2; ++stage) {
    std::vector<char> is_free = free_slot;
    if (stage == 1) std::fill(is_free.begin(), is_free.end(), 1);
    detail::FgmProblem prob(G, first, second, is_free, w);
    SearchOptions so;
    so.shuffle = false;
    so.node_budget = 50'000'000;
    so.max_restarts = 1;
    auto r = constrained_search(prob, so);
    if (!r.found()) continue;
    std::vector<AbElem> seq(L);
    for (std::size_t i = 0; i < L; ++i) seq[i] = concat(first[i], AbElem{static_cast<Int>(r.values[i])});
    auto t = make_r_terrace(G, std::move(seq));
    t.star_index = 1;
    return standardize(t);
  }
  fail(Errc::ConstructionFailed, "no admissible second coordinates for the FGM rows");
}

// Folds fgm_extend over the cyclic factors of B.
inline RTerrace fgm_extend_many(const RTerrace& base, const AbelianSpec& B) {
  if (B.order() == 1) return base;
  require(B.order() % 2 == 1 && B.order() % 3 != 0, Errc::InvalidArgument,
          "extension group must have odd order prime to 3");
  RTerrace cur = base;
  for (Int f : B.factors()) cur = fgm_extend(cur, f);
  return cur;
}

// ---------------------------------------------------------------------------
// Constrained search for R-terraces.

struct OrderConstraint {
  Int position = 1;  // 1-based; non-positive values count from the end (0 = last)
  Int order = 1;
};

struct RSearchConstraints {
  std::optional<AbElem> first;
  std::optional<AbElem> last;
  std::optional<AbElem> wrap_difference;  // a_1 - a_{m-1}
  bool star = false;                      // standard: a_1 = a_{m-1} + a_2
  std::vector<OrderConstraint> element_orders;
  bool independent_endpoints = false;
};

struct RSearchOptions {
  std::uint64_t seed = 0;
  std::uint64_t node_budget = 0;  // first restart; 0 = derived from the group order
  double budget_growth = 1.2;
  double timeout_ms = 60000;
  int portfolio = 1;              // concurrent seeds; the lowest successful seed wins
};

namespace detail {

class RTerraceProblem {
 public:
  RTerraceProblem(const AbelianSpec& g, const RSearchConstraints& c) : g_(g), c_(c) {
    m_ = static_cast<std::size_t>(g.order());
    L_ = m_ - 1;
    add_.resize(m_ * m_);
    sub_.resize(m_ * m_);
    for (std::size_t a = 0; a < m_; ++a) {
      auto x = g.element_at(a);
      for (std::size_t b = 0; b < m_; ++b) {
        auto y = g.element_at(b);
        add_[a * m_ + b] = g.index_of(g.add(x, y));
        sub_[a * m_ + b] = g.index_of(g.sub(x, y));
      }
    }
    ord_.resize(m_);
    for (std::size_t a = 0; a < m_; ++a) ord_[a] = g.element_order(g.element_at(a));
    pos_order_.assign(L_, 0);
    for (const auto& oc : c.element_orders) {
      Int p = oc.position > 0 ? oc.position - 1 : static_cast<Int>(L_) - 1 + oc.position;
      require(p >= 0 && p < static_cast<Int>(L_), Errc::InvalidArgument, "order constraint position out of range");
      require(pos_order_[static_cast<std::size_t>(p)] == 0 || pos_order_[static_cast<std::size_t>(p)] == oc.order,
              Errc::InvalidArgument, "conflicting order constraints");
      pos_order_[static_cast<std::size_t>(p)] = oc.order;
    }
    if (c.first) first_ = idx(*c.first);
    if (c.last) last_ = idx(*c.last);
    if (c.wrap_difference) wrap_ = idx(*c.wrap_difference);
    used_e_.assign(m_, 0);
    used_d_.assign(m_, 0);
    vals_.assign(L_, 0);
    early_ = L_ >= 4;
  }

  std::size_t length() const { return L_; }
  std::size_t domain() const { return m_; }

  void candidates(std::size_t pos, std::vector<std::size_t>& out) const {
    if (pos == 0 && first_) {
      out.push_back(*first_);
      return;
    }
    if (pos == L_ - 1 && reserved_) {
      out.push_back(*reserved_);
      return;
    }
    for (std::size_t v = 1; v < m_; ++v) out.push_back(v);
  }

  bool can_place(std::size_t pos, std::size_t v) {
    if (v == 0) return false;
    bool is_last = pos == L_ - 1;
    if (is_last && reserved_) {
      if (v != *reserved_) return false;
    } else if (used_e_[v]) {
      return false;
    }
    if (pos_order_[pos] && ord_[v] != pos_order_[pos]) return false;
    if (pos == 0 && first_ && v != *first_) return false;
    if (is_last && last_ && v != *last_) return false;
    std::size_t d = 0;
    if (pos > 0) {
      d = sub(v, vals_[pos - 1]);
      if (used_d_[d]) return false;
    }
    if (is_last) {
      std::size_t wd = sub(vals_[0], v);
      if (!wrap_reserved_ && (used_d_[wd] || wd == d)) return false;
      if (wrap_ && wd != *wrap_) return false;
      if (c_.independent_endpoints && !indep(vals_[0], v)) return false;
    }
    if (!early_) return true;
    // Early determination of the last entry.
    if (pos == 0 && !reserved_) {
      if (wrap_) return reservable(sub(v, *wrap_), v, 0);
      if (last_) return reservable(*last_, v, 0);
    }
    if (pos == 0 && reserved_) return reservable_wrap(v, *reserved_, 0);
    if (pos == 1 && c_.star) {
      std::size_t want = sub(vals_[0], v);
      if (reserved_) return want == *reserved_;
      return reservable(want, vals_[0], d) && want != v;
    }
    return true;
  }

  void place(std::size_t pos, std::size_t v) {
    vals_[pos] = v;
    bool is_last = pos == L_ - 1;
    if (!(is_last && reserved_)) used_e_[v] = 1;
    if (pos > 0) used_d_[sub(v, vals_[pos - 1])] = 1;
    if (is_last && !wrap_reserved_) used_d_[sub(vals_[0], v)] = 1;
    if (!early_) return;
    if (pos == 0 && !reserved_ && (wrap_ || last_)) {
      reserve(wrap_ ? sub(v, *wrap_) : *last_, pos);
      reserve_wrap(v, pos);
    } else if (pos == 0 && reserved_) {
      reserve_wrap(v, pos);
    } else if (pos == 1 && c_.star && !reserved_) {
      reserve(sub(vals_[0], v), pos);
      reserve_wrap(vals_[0], pos);
    }
  }

  void unplace(std::size_t pos, std::size_t v) {
    bool is_last = pos == L_ - 1;
    if (is_last && !wrap_reserved_) used_d_[sub(vals_[0], v)] = 0;
    if (pos > 0) used_d_[sub(v, vals_[pos - 1])] = 0;
    if (!(is_last && reserved_)) used_e_[v] = 0;
    if (wrap_reserved_ && wrap_at_ == pos) {
      used_d_[*wrap_reserved_] = 0;
      wrap_reserved_.reset();
    }
    if (reserved_ && reserved_at_ == pos) {
      used_e_[*reserved_] = 0;
      reserved_.reset();
    }
  }

  bool accept_complete() const {
    std::vector<AbElem> a;
    for (auto v : vals_) a.push_back(g_.element_at(v));
    auto chk = check_r_terrace(g_, a);
    if (!chk.is_r) return false;
    if (c_.star && (chk.star_indices.empty() || chk.star_indices.front() != 1)) return false;
    if (first_ && vals_.front() != *first_) return false;
    if (last_ && vals_.back() != *last_) return false;
    if (wrap_ && sub(vals_.front(), vals_.back()) != *wrap_) return false;
    for (std::size_t p = 0; p < L_; ++p)
      if (pos_order_[p] && ord_[vals_[p]] != pos_order_[p]) return false;
    if (c_.independent_endpoints && !indep(vals_.front(), vals_.back())) return false;
    return true;
  }

  std::vector<AbElem> solution(const std::vector<std::size_t>& v) const {
    std::vector<AbElem> a;
    for (auto x : v) a.push_back(g_.element_at(x));
    return a;
  }

 private:
  std::size_t idx(const AbElem& x) const {
    g_.check(x);
    return g_.index_of(x);
  }
  std::size_t sub(std::size_t a, std::size_t b) const { return sub_[a * m_ + b]; }

  bool indep(std::size_t a, std::size_t b) const {
    return independent(g_, g_.element_at(a), g_.element_at(b));
  }

  // Can `last` be pinned now that a_1 = first (and the latest difference d)?
  bool reservable(std::size_t last, std::size_t first, std::size_t d) const {
    if (last == 0 || last == first || used_e_[last]) return false;
    if (last_ && last != *last_) return false;
    if (pos_order_[L_ - 1] && ord_[last] != pos_order_[L_ - 1]) return false;
    if (c_.independent_endpoints && !indep(first, last)) return false;
    std::size_t wd = sub(first, last);
    if (used_d_[wd] || wd == d) return false;
    if (wrap_ && wd != *wrap_) return false;
    return true;
  }
  bool reservable_wrap(std::size_t first, std::size_t last, std::size_t d) const {
    if (first == last) return false;
    if (c_.independent_endpoints && !indep(first, last)) return false;
    std::size_t wd = sub(first, last);
    return !used_d_[wd] && wd != d && (!wrap_ || wd == *wrap_);
  }
  void reserve(std::size_t last, std::size_t pos) {
    reserved_ = last;
    reserved_at_ = pos;
    used_e_[last] = 1;
  }
  void reserve_wrap(std::size_t first, std::size_t pos) {
    std::size_t wd = sub(first, *reserved_);
    wrap_reserved_ = wd;
    wrap_at_ = pos;
    used_d_[wd] = 1;
  }

  const AbelianSpec& g_;
  const RSearchConstraints& c_;
  std::size_t m_ = 0, L_ = 0;
  std::vector<std::size_t> add_, sub_;
  std::vector<Int> ord_, pos_order_;
  std::optional<std::size_t> first_, last_, wrap_;
  std::vector<char> used_e_, used_d_;
  std::vector<std::size_t> vals_;
  bool early_ = true;
  std::optional<std::size_t> reserved_, wrap_reserved_;
  std::size_t reserved_at_ = 0, wrap_at_ = 0;
};

}  // namespace detail

// Seeded randomized backtracking with restarts.  Throws NotFound on timeout
// or when the constraints are unsatisfiable.
inline RTerrace search_r_terrace(const AbelianSpec& g, const RSearchConstraints& c,
                                 const RSearchOptions& opt = {}) {
  require(g.order() % 2 == 1 && g.order() >= 3, Errc::InvalidArgument, "R-terrace search needs odd order >= 3");
  require(static_cast<std::size_t>(g.order()) <= desk_limits().search_order, Errc::DeskScaleExceeded,
          "group order " + std::to_string(g.order()) + " exceeds the R-terrace search limit");
  auto budget = opt.node_budget ? opt.node_budget : static_cast<std::uint64_t>(20 * g.order());
  auto run = [&](std::uint64_t seed) {
    detail::RTerraceProblem prob(g, c);
    SearchOptions so;
    so.seed = seed;
    so.node_budget = budget;
    so.budget_growth = opt.budget_growth;
    so.timeout_ms = opt.timeout_ms;
    auto r = constrained_search(prob, so);
    std::optional<std::vector<AbElem>> out;
    if (r.found()) out = prob.solution(r.values);
    return std::pair{r.status, out};
  };
  auto finish = [&](const std::vector<AbElem>& e) {
    RTerrace t = make_r_terrace(g, e);
    if (c.star) t.star_index = 1;
    return t;
  };
  if (opt.portfolio <= 1) {
    auto [st, sol] = run(opt.seed);
    if (sol) return finish(*sol);
    fail(Errc::NotFound, st == SearchStatus::Exhausted ? "no R-terrace satisfies the constraints"
                                                       : "R-terrace search timed out");
  }
  std::vector<std::optional<std::vector<AbElem>>> sols(static_cast<std::size_t>(opt.portfolio));
  std::vector<SearchStatus> status(sols.size(), SearchStatus::Timeout);
  {
    std::vector<std::jthread> workers;
    for (std::size_t i = 0; i < sols.size(); ++i)
      workers.emplace_back([&, i] {
        auto [st, sol] = run(mix_seed(opt.seed, 1000 + i));
        status[i] = st;
        sols[i] = std::move(sol);
      });
  }
  for (auto& s : sols)
    if (s) return finish(*s);
  fail(Errc::NotFound, "R-terrace search portfolio found nothing");
}

}  // namespace seqlatin

#endif  // SEQLATIN_ROTATIONAL_HPP
