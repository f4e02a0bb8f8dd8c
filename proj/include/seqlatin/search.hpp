#ifndef SEQLATIN_SEARCH_HPP
#define SEQLATIN_SEARCH_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "seqlatin/error.hpp"

namespace seqlatin {

// Seeded generator.  Shuffles are done by hand so that results do not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return x % n;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SearchOptions {
  std::uint64_t seed = 0;
  bool shuffle = true;
  std::uint64_t node_budget = 0;  // first restart; 0 = a single unbounded run
  double budget_growth = 1.0;     // budget multiplier applied after each restart
  int max_restarts = 1 << 20;
  double timeout_ms = 0;          // 0 = none
};

enum class SearchStatus { Found, Exhausted, Timeout, RestartsExhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::vector<std::size_t> values;
  std::uint64_t nodes = 0;
  int restarts = 0;

  bool found() const { return status == SearchStatus::Found; }
};

namespace detail {

template <class P>
concept HasCandidates = requires(const P& p, std::size_t pos, std::vector<std::size_t>& out) {
  p.candidates(pos, out);
};

enum class RunEnd { Stopped, Exhausted, Budget, Timeout };

// Depth-first search over positions 0..length-1.  on_solution returns false
// to stop.  Leaves the problem in its initial state on return.
template <class P, class OnSolution>
RunEnd run_dfs(P& prob, Rng* rng, std::uint64_t budget, std::uint64_t& nodes,
               std::chrono::steady_clock::time_point deadline, bool has_deadline, OnSolution&& on_solution) {
  const std::size_t len = prob.length();
  std::vector<std::vector<std::size_t>> cand(len);
  std::vector<std::size_t> cursor(len, 0), chosen(len, 0);
  auto fill = [&](std::size_t pos) {
    cand[pos].clear();
    if constexpr (HasCandidates<P>) {
      prob.candidates(pos, cand[pos]);
    } else {
      for (std::size_t v = 0; v < prob.domain(); ++v) cand[pos].push_back(v);
    }
    if (rng) rng->shuffle(cand[pos]);
    cursor[pos] = 0;
  };
  auto unwind = [&](std::size_t depth) {
    while (depth > 0) {
      --depth;
      prob.unplace(depth, chosen[depth]);
    }
  };
  if (len == 0) {
    if (prob.accept_complete()) on_solution(chosen);
    return RunEnd::Exhausted;
  }
  std::uint64_t local = 0;
  std::size_t pos = 0;
  fill(0);
  for (;;) {
    if (pos == len) {
      if (prob.accept_complete() && !on_solution(chosen)) {
        unwind(len);
        return RunEnd::Stopped;
      }
      --pos;
      prob.unplace(pos, chosen[pos]);
      continue;
    }
    bool advanced = false;
    while (cursor[pos] < cand[pos].size()) {
      std::size_t v = cand[pos][cursor[pos]++];
      ++nodes;
      ++local;
      if (!prob.can_place(pos, v)) continue;
      prob.place(pos, v);
      chosen[pos] = v;
      ++pos;
      if (pos < len) fill(pos);
      advanced = true;
      break;
    }
    if (budget && local > budget) {
      unwind(pos);
      return RunEnd::Budget;
    }
    if (has_deadline && (local & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline) {
      unwind(pos);
      return RunEnd::Timeout;
    }
    if (advanced) continue;
    if (pos == 0) return RunEnd::Exhausted;
    --pos;
    prob.unplace(pos, chosen[pos]);
  }
}

}  // namespace detail

// Seeded backtracking with restarts.  The problem policy supplies
// length(), domain(), can_place(pos, v), place(pos, v), unplace(pos, v) and
// accept_complete(); an optional candidates(pos, out) narrows the values
// tried at a position.  can_place must be monotone: a rejected prefix never
// extends to a solution.
template <class P>
SearchResult constrained_search(P& prob, const SearchOptions& opt = {}) {
  SearchResult res;
  auto start = std::chrono::steady_clock::now();
  bool has_deadline = opt.timeout_ms > 0;
  auto deadline = start + std::chrono::microseconds(static_cast<std::int64_t>(opt.timeout_ms * 1000));
  double budget = static_cast<double>(opt.node_budget);
  for (int r = 0;; ++r, budget *= opt.budget_growth) {
    res.restarts = r;
    Rng rng(mix_seed(opt.seed, static_cast<std::uint64_t>(r)));
    auto end = detail::run_dfs(prob, opt.shuffle ? &rng : nullptr, static_cast<std::uint64_t>(budget), res.nodes, deadline,
                               has_deadline, [&](const std::vector<std::size_t>& sol) {
                                 res.values = sol;
                                 return false;
                               });
    switch (end) {
      case detail::RunEnd::Stopped: res.status = SearchStatus::Found; return res;
      case detail::RunEnd::Exhausted: res.status = SearchStatus::Exhausted; return res;
      case detail::RunEnd::Timeout: res.status = SearchStatus::Timeout; return res;
      case detail::RunEnd::Budget: break;
    }
    if (r + 1 >= opt.max_restarts) {
      res.status = SearchStatus::RestartsExhausted;
      return res;
    }
    if (has_deadline && std::chrono::steady_clock::now() > deadline) {
      res.status = SearchStatus::Timeout;
      return res;
    }
  }
}

// Visits every solution in natural value order.  Returns true when the
// whole space was explored (the callback never asked to stop).
template <class P, class F>
bool for_each_solution(P& prob, F&& visit) {
  std::uint64_t nodes = 0;
  auto end = detail::run_dfs(prob, nullptr, 0, nodes, {}, false, visit);
  return end == detail::RunEnd::Exhausted;
}

// ---------------------------------------------------------------------------
// Predicate form: arrangements of distinct values from [0, domain) checked by
// prefix predicates.

using PrefixPredicate = std::function<bool(std::span<const std::size_t>)>;

class PredicateProblem {
 public:
  PredicateProblem(std::size_t domain, std::size_t length, std::vector<PrefixPredicate> prefix_preds,
                   std::vector<PrefixPredicate> complete_preds = {})
      : domain_(domain), len_(length), pre_(std::move(prefix_preds)), full_(std::move(complete_preds)),
        used_(domain, 0) {
    require(length <= domain, Errc::InvalidArgument, "arrangement longer than the domain");
  }

  std::size_t length() const { return len_; }
  std::size_t domain() const { return domain_; }

  bool can_place(std::size_t, std::size_t v) {
    if (used_[v]) return false;
    prefix_.push_back(v);
    bool ok = true;
    for (const auto& p : pre_)
      if (!p(prefix_)) {
        ok = false;
        break;
      }
    prefix_.pop_back();
    return ok;
  }
  void place(std::size_t, std::size_t v) {
    used_[v] = 1;
    prefix_.push_back(v);
  }
  void unplace(std::size_t, std::size_t v) {
    used_[v] = 0;
    prefix_.pop_back();
  }
  bool accept_complete() const {
    for (const auto& p : full_)
      if (!p(prefix_)) return false;
    return true;
  }

 private:
  std::size_t domain_, len_;
  std::vector<PrefixPredicate> pre_, full_;
  std::vector<char> used_;
  std::vector<std::size_t> prefix_;
};

// Throws NotFound when no arrangement satisfies the predicates.
inline std::vector<std::size_t> constrained_search(std::size_t domain, std::size_t length,
                                                   std::vector<PrefixPredicate> prefix_preds,
                                                   std::vector<PrefixPredicate> complete_preds,
                                                   std::uint64_t seed = 0, double timeout_ms = 0) {
  PredicateProblem prob(domain, length, std::move(prefix_preds), std::move(complete_preds));
  SearchOptions opt;
  opt.seed = seed;
  opt.timeout_ms = timeout_ms;
  auto r = constrained_search(prob, opt);
  if (!r.found())
    fail(Errc::NotFound, r.status == SearchStatus::Timeout ? "search timed out" : "no arrangement satisfies the constraints");
  return r.values;
}

}  // namespace seqlatin

#endif  // SEQLATIN_SEARCH_HPP
