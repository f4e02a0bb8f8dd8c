#ifndef SEQLATIN_ORACLE_HPP
#define SEQLATIN_ORACLE_HPP

#include <cstddef>
#include <string>
#include <thread>
#include <vector>

#include "seqlatin/error.hpp"
#include "seqlatin/finite_group.hpp"
#include "seqlatin/graceful.hpp"
#include "seqlatin/limits.hpp"

namespace seqlatin {

struct ExhaustiveResult {
  std::vector<std::vector<std::size_t>> terraces;  // identity-anchored
  bool exhausted = false;  // terraces is the complete list
};

namespace detail {

template <FiniteGroup G>
class TerraceEnumerator {
 public:
  TerraceEnumerator(const G& g, std::size_t cap) : g_(g), n_(g.order()), cap_(cap) {
    used_.assign(n_, 0);
    qused_.assign(n_, 0);
    path_.reserve(n_);
  }

  // All terraces starting (identity, second).  Stops after cap results.
  bool run_branch(std::size_t second, std::vector<std::vector<std::size_t>>& out) {
    out_ = &out;
    stopped_ = false;
    const auto id = g_.identity_index();
    path_.assign(1, id);
    used_[id] = 1;
    qused_[id] = 1;
    if (second != id) {
      auto b = g_.mul_index(g_.inv_index(id), second);
      used_[second] = 1;
      qused_[b] = 1;
      path_.push_back(second);
      rec();
      used_[second] = 0;
      qused_[b] = 0;
    }
    used_[id] = 0;
    qused_[id] = 0;
    return !stopped_;
  }

  // Order 1: the lone identity.
  bool run_trivial(std::vector<std::vector<std::size_t>>& out) {
    out.push_back({g_.identity_index()});
    return true;
  }

 private:
  void rec() {
    if (path_.size() == n_) {
      if (out_->size() >= cap_) {
        stopped_ = true;
        return;
      }
      out_->push_back(path_);
      return;
    }
    const auto inv_last = g_.inv_index(path_.back());
    for (std::size_t x = 0; x < n_ && !stopped_; ++x) {
      if (used_[x]) continue;
      auto b = g_.mul_index(inv_last, x);
      if (qused_[b]) continue;
      used_[x] = 1;
      qused_[b] = 1;
      path_.push_back(x);
      rec();
      path_.pop_back();
      used_[x] = 0;
      qused_[b] = 0;
    }
  }

  const G& g_;
  std::size_t n_, cap_;
  std::vector<char> used_, qused_;
  std::vector<std::size_t> path_;
  std::vector<std::vector<std::size_t>>* out_ = nullptr;
  bool stopped_ = false;
};

}  // namespace detail

// Backtracking over arrangements that start with the identity, pruning on
// repeated elements and repeated quotients.  limit = 0 means no limit.
// jobs > 1 shards the second element across threads; the merged list is in
// the same order as a single-threaded run.
template <FiniteGroup G>
ExhaustiveResult exhaustive_sequencings(const G& g, std::size_t limit = 0, unsigned jobs = 1) {
  const std::size_t n = g.order();
  require(n <= desk_limits().exhaustive, Errc::DeskScaleExceeded,
          "exhaustive search is limited to order " + std::to_string(desk_limits().exhaustive));
  const std::size_t cap = limit ? limit + 1 : static_cast<std::size_t>(-1);
  ExhaustiveResult res;
  if (n == 1) {
    detail::TerraceEnumerator<G> e(g, cap);
    e.run_trivial(res.terraces);
    res.exhausted = true;
    return res;
  }
  std::vector<std::vector<std::vector<std::size_t>>> per(n);
  std::vector<char> complete(n, 1);
  auto work = [&](std::size_t offset, std::size_t stride) {
    detail::TerraceEnumerator<G> e(g, cap);
    for (std::size_t s = offset; s < n; s += stride)
      if (s != g.identity_index()) complete[s] = e.run_branch(s, per[s]);
  };
  if (jobs <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> ws;
    for (unsigned w = 0; w < jobs; ++w) ws.emplace_back(work, w, jobs);
  }
  res.exhausted = true;
  for (std::size_t s = 0; s < n; ++s) {
    if (!complete[s]) res.exhausted = false;
    for (auto& t : per[s]) res.terraces.push_back(std::move(t));
  }
  if (limit && res.terraces.size() > limit) {
    res.terraces.resize(limit);
    res.exhausted = false;
  }
  return res;
}

// Every graceful permutation of 1..k in lexicographic order.
inline std::vector<GracefulPerm> enumerate_graceful(Int k) {
  require(k >= 1, Errc::InvalidArgument, "k must be positive");
  require(static_cast<std::size_t>(k) <= desk_limits().enumerate, Errc::DeskScaleExceeded,
          "graceful enumeration is limited to k <= " + std::to_string(desk_limits().enumerate));
  std::vector<GracefulPerm> out;
  std::vector<Int> path;
  std::vector<char> used(static_cast<std::size_t>(k) + 1, 0), dused(static_cast<std::size_t>(k), 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<Int>(path.size()) == k) {
      out.push_back(GracefulPerm{path});
      return;
    }
    for (Int v = 1; v <= k; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      std::size_t d = 0;
      if (!path.empty()) {
        d = static_cast<std::size_t>(v > path.back() ? v - path.back() : path.back() - v);
        if (dused[d]) continue;
        dused[d] = 1;
      }
      used[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      self(self);
      path.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
      if (d) dused[d] = 0;
    }
  };
  rec(rec);
  return out;
}

}  // namespace seqlatin

#endif  // SEQLATIN_ORACLE_HPP
