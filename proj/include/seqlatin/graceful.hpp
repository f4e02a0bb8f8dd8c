#ifndef SEQLATIN_GRACEFUL_HPP
#define SEQLATIN_GRACEFUL_HPP

#include <chrono>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <vector>

#include "seqlatin/error.hpp"
#include "seqlatin/limits.hpp"
#include "seqlatin/rotational.hpp"

namespace seqlatin {

// Permutation of 1..k whose absolute consecutive differences are distinct.
struct GracefulPerm {
  std::vector<Int> values;

  std::size_t k() const { return values.size(); }
  bool operator==(const GracefulPerm&) const = default;
};

inline bool is_graceful(const std::vector<Int>& v) {
  const auto k = static_cast<Int>(v.size());
  if (k == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(k) + 1, 0), diff(static_cast<std::size_t>(k), 0);
  for (Int x : v) {
    if (x < 1 || x > k || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = 1;
  }
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    auto d = static_cast<std::size_t>(std::llabs(v[i + 1] - v[i]));
    if (diff[d]) return false;
    diff[d] = 1;
  }
  return true;
}

inline GracefulPerm make_graceful(std::vector<Int> v) {
  require(is_graceful(v), Errc::InvalidArgument, "not a graceful permutation");
  return GracefulPerm{std::move(v)};
}

// 1, k, 2, k-1, ...
inline GracefulPerm walecki_graceful(Int k) {
  require(k >= 1, Errc::InvalidArgument, "k must be positive");
  std::vector<Int> v;
  Int lo = 1, hi = k;
  while (lo <= hi) {
    v.push_back(lo++);
    if (lo <= hi) v.push_back(hi--);
  }
  return GracefulPerm{std::move(v)};
}

namespace detail {

// Backtracking with forced-edge propagation.
class GracefulSearch {
 public:
  GracefulSearch(Int k, double timeout_ms)
      : k_(k), used_(static_cast<std::size_t>(k) + 2, 0), dused_(static_cast<std::size_t>(k) + 1, 0),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::microseconds(static_cast<std::int64_t>(timeout_ms * 1000))) {}

  bool run(Int first) {
    end_parity_ = (first + k_ * (k_ - 1) / 2) % 2;
    path_.assign(1, first);
    used_[static_cast<std::size_t>(first)] = 1;
    return rec();
  }
  const std::vector<Int>& path() const { return path_; }

 private:
  bool free_at(Int v) const { return v == path_.back() || !used_[static_cast<std::size_t>(v)]; }

  // Propagates edges forced by the unused differences.  A vertex may take
  // two more edges when unused and one when it ends the current path; a
  // difference with a single admissible edge must use it.
  bool feasible() const {
    const auto n = static_cast<std::size_t>(k_) + 1;
    std::vector<int> cap(n, 0);
    std::vector<std::size_t> comp(n);
    for (std::size_t v = 1; v < n; ++v) {
      comp[v] = v;
      cap[v] = used_[v] ? 0 : 2;
    }
    auto find = [&](std::size_t v) {
      while (comp[v] != v) v = comp[v] = comp[comp[v]];
      return v;
    };
    auto last = static_cast<std::size_t>(path_.back());
    cap[last] = 1;
    for (Int v : path_) comp[find(static_cast<std::size_t>(v))] = find(last);
    std::vector<char> forced(n, 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (Int d = k_ - 1; d >= 1; --d) {
        auto du = static_cast<std::size_t>(d);
        if (dused_[du] || forced[du]) continue;
        int count = 0;
        std::size_t ea = 0;
        for (Int a = 1; a + d <= k_ && count < 2; ++a) {
          auto x = static_cast<std::size_t>(a), y = static_cast<std::size_t>(a + d);
          if (cap[x] > 0 && cap[y] > 0 && find(x) != find(y)) {
            ++count;
            ea = x;
          }
        }
        if (count == 0) return false;
        if (count == 1) {
          auto y = ea + du;
          --cap[ea];
          --cap[y];
          comp[find(ea)] = find(y);
          forced[du] = 1;
          changed = true;
        }
      }
    }
    // A vertex short of edges has to end the path; only one can, and the sum
    // of all differences fixes the parity of the final entry.
    int short_count = 0;
    for (std::size_t v = 1; v < n; ++v) {
      if (used_[v] || cap[v] == 0) continue;
      int avail = 0;
      for (std::size_t u = 1; u < n && avail < cap[v]; ++u) {
        if (u == v || cap[u] == 0 || find(u) == find(v)) continue;
        auto d = static_cast<std::size_t>(u > v ? u - v : v - u);
        if (!dused_[d] && !forced[d]) ++avail;
      }
      if (avail >= cap[v]) continue;
      if (cap[v] - avail > 1 || ++short_count > 1) return false;
      if (static_cast<Int>(v % 2) != end_parity_) return false;
    }
    return true;
  }

  bool rec() {
    if (static_cast<Int>(path_.size()) == k_) return true;
    if ((++nodes_ & 0xffff) == 0 && std::chrono::steady_clock::now() > deadline_)
      fail(Errc::NotFound, "graceful search timed out at k=" + std::to_string(k_));
    Int last = path_.back();
    // Largest difference first; the higher endpoint wins a tie.
    for (Int step = 2 * (k_ - 1); step >= 1; --step) {
      Int dd = (step + 1) / 2;
      Int v = step % 2 == 0 ? last + dd : last - dd;
      if (v < 1 || v > k_ || used_[static_cast<std::size_t>(v)]) continue;
      auto d = static_cast<std::size_t>(dd);
      if (dused_[d]) continue;
      used_[static_cast<std::size_t>(v)] = 1;
      dused_[d] = 1;
      path_.push_back(v);
      if (feasible() && rec()) return true;
      path_.pop_back();
      dused_[d] = 0;
      used_[static_cast<std::size_t>(v)] = 0;
    }
    return false;
  }


  Int k_;
  std::vector<char> used_, dused_;
  std::vector<Int> path_;
  std::uint64_t nodes_ = 0;
  Int end_parity_ = 0;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace detail

// Graceful permutation of 1..k starting with x: the first one met by
// backtracking that tries the largest available difference first (ties go
// to the larger value).  Deterministic.
inline GracefulPerm graceful_with_first(Int k, Int x, double timeout_ms = 10000) {
  require(k >= 1 && x >= 1 && x <= k, Errc::InvalidArgument, "need 1 <= x <= k");
  require(static_cast<std::size_t>(k) <= desk_limits().graceful, Errc::DeskScaleExceeded,
          "k=" + std::to_string(k) + " exceeds the graceful search limit");
  detail::GracefulSearch s(k, timeout_ms);
  require(s.run(x), Errc::ConstructionFailed,
          "no graceful permutation of 1.." + std::to_string(k) + " starts with " + std::to_string(x));
  return GracefulPerm{s.path()};
}

// (g_1, ..., g_k, g_k + k, ..., g_1 + k) over Z_{2k+1}.
inline RTerrace graceful_to_r_terrace(const GracefulPerm& g) {
  require(is_graceful(g.values), Errc::InvalidArgument, "input is not graceful");
  const auto k = static_cast<Int>(g.k());
  std::vector<Int> v = g.values;
  for (auto it = g.values.rbegin(); it != g.values.rend(); ++it) v.push_back(*it + k);
  return make_r_terrace_cyclic(2 * k + 1, v);
}

// Directed R-terrace of Z_{2k+1} from the Walecki graceful permutation.
inline RTerrace walecki_r_terrace(Int m) {
  require(m >= 3 && m % 2 == 1, Errc::InvalidArgument, "m must be odd and >= 3");
  return graceful_to_r_terrace(walecki_graceful((m - 1) / 2));
}

}  // namespace seqlatin

#endif  // SEQLATIN_GRACEFUL_HPP
