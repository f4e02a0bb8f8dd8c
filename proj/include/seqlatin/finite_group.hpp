#ifndef SEQLATIN_FINITE_GROUP_HPP
#define SEQLATIN_FINITE_GROUP_HPP

#include <concepts>
#include <cstddef>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "seqlatin/error.hpp"
#include "seqlatin/group.hpp"

namespace seqlatin {

// Index-level view of a finite group: elements are 0..order()-1 in the
// canonical enumeration of the underlying description.
template <class G>
concept FiniteGroup = requires(const G& g, std::size_t a, std::size_t b) {
  { g.order() } -> std::convertible_to<std::size_t>;
  { g.identity_index() } -> std::convertible_to<std::size_t>;
  { g.mul_index(a, b) } -> std::convertible_to<std::size_t>;
  { g.inv_index(a) } -> std::convertible_to<std::size_t>;
  { g.label(a) } -> std::convertible_to<std::string>;
};

class AbelianGroup {
 public:
  explicit AbelianGroup(AbelianSpec spec) : spec_(std::move(spec)) {
    n_ = static_cast<std::size_t>(spec_.order());
    r_ = spec_.rank();
    coords_.resize(n_ * r_);
    for (std::size_t i = 0; i < n_; ++i) {
      auto e = spec_.element_at(i);
      for (std::size_t j = 0; j < r_; ++j) coords_[i * r_ + j] = e[j];
    }
  }

  const AbelianSpec& spec() const { return spec_; }
  std::size_t order() const { return n_; }
  std::size_t identity_index() const { return 0; }

  std::size_t mul_index(std::size_t a, std::size_t b) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < r_; ++j) {
      Int n = spec_.factor(j);
      Int s = coords_[a * r_ + j] + coords_[b * r_ + j];
      if (s >= n) s -= n;
      idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(s);
    }
    return idx;
  }

  std::size_t inv_index(std::size_t a) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < r_; ++j) {
      Int n = spec_.factor(j);
      Int c = coords_[a * r_ + j];
      idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(c == 0 ? 0 : n - c);
    }
    return idx;
  }

  std::string label(std::size_t a) const {
    if (r_ == 1) return std::to_string(coords_[a]);
    return to_string(spec_.element_at(a));
  }

 private:
  AbelianSpec spec_;
  std::size_t n_ = 0, r_ = 0;
  std::vector<Int> coords_;
};

// Z_s x|_alpha A with index u*|A| + index(v).
class SemidirectGroup {
 public:
  explicit SemidirectGroup(SdSpec spec) : spec_(std::move(spec)), base_(spec_.base()) {
    m_ = base_.order();
    s_ = static_cast<std::size_t>(spec_.s());
    act_.resize(s_ * m_);
    for (std::size_t e = 0; e < s_; ++e) {
      auto pw = spec_.alpha().power(static_cast<Int>(e));
      for (std::size_t v = 0; v < m_; ++v)
        act_[e * m_ + v] = spec_.base().index_of(pw.apply(spec_.base().element_at(v)));
    }
  }

  const SdSpec& spec() const { return spec_; }
  std::size_t order() const { return s_ * m_; }
  std::size_t identity_index() const { return 0; }

  std::size_t mul_index(std::size_t a, std::size_t b) const {
    std::size_t u = a / m_, v = a % m_, x = b / m_, y = b % m_;
    std::size_t w = base_.mul_index(act_[x * m_ + v], y);
    return ((u + x) % s_) * m_ + w;
  }

  std::size_t inv_index(std::size_t a) const {
    std::size_t u = a / m_, v = a % m_;
    std::size_t nu = (s_ - u) % s_;
    // (u,v)^{-1} = (-u, -alpha^{-u}(v))
    return nu * m_ + base_.inv_index(act_[nu * m_ + v]);
  }

  std::string label(std::size_t a) const { return to_string(spec_.element_at(a)); }

 private:
  SdSpec spec_;
  AbelianGroup base_;
  std::size_t m_ = 1, s_ = 1;
  std::vector<std::size_t> act_;  // act_[e*m + v] = index of alpha^e(v)
};

// Group given by an explicit multiplication table.
class TableGroup {
 public:
  static constexpr std::size_t kFullCheckLimit = 512;

  TableGroup(std::vector<std::vector<std::size_t>> mul, std::size_t id, std::vector<std::string> names = {})
      : n_(mul.size()), id_(id), names_(std::move(names)) {
    require(n_ >= 1, Errc::InvalidArgument, "table group needs at least one element");
    require(id_ < n_, Errc::InvalidArgument, "identity index out of range");
    require(names_.empty() || names_.size() == n_, Errc::DimensionMismatch, "label count differs from order");
    mul_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      require(mul[i].size() == n_, Errc::DimensionMismatch, "multiplication table must be square");
      for (std::size_t j = 0; j < n_; ++j) {
        require(mul[i][j] < n_, Errc::InvalidArgument, "table entry out of range");
        mul_[i * n_ + j] = mul[i][j];
      }
    }
    validate();
  }

  std::size_t order() const { return n_; }
  std::size_t identity_index() const { return id_; }
  std::size_t mul_index(std::size_t a, std::size_t b) const { return mul_[a * n_ + b]; }
  std::size_t inv_index(std::size_t a) const { return inv_[a]; }
  std::string label(std::size_t a) const { return names_.empty() ? std::to_string(a) : names_[a]; }

  std::vector<std::vector<std::size_t>> table() const {
    std::vector<std::vector<std::size_t>> t(n_, std::vector<std::size_t>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t[i][j] = mul_index(i, j);
    return t;
  }
  const std::vector<std::string>& names() const { return names_; }

 private:
  void validate() {
    std::vector<char> seen(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      require(mul_index(id_, i) == i && mul_index(i, id_) == i, Errc::InvalidArgument,
              "identity row/column is not the identity map");
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t j = 0; j < n_; ++j) {
        require(!seen[mul_index(i, j)], Errc::InvalidArgument, "table is not a Latin square (row)");
        seen[mul_index(i, j)] = 1;
      }
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t j = 0; j < n_; ++j) {
        require(!seen[mul_index(j, i)], Errc::InvalidArgument, "table is not a Latin square (column)");
        seen[mul_index(j, i)] = 1;
      }
    }
    auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
      require(mul_index(mul_index(a, b), c) == mul_index(a, mul_index(b, c)), Errc::InvalidArgument,
              "multiplication is not associative");
    };
    if (n_ <= kFullCheckLimit) {
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b)
          for (std::size_t c = 0; c < n_; ++c) assoc(a, b, c);
    } else {
      std::mt19937_64 rng(0);
      for (int t = 0; t < 100000; ++t) assoc(rng() % n_, rng() % n_, rng() % n_);
    }
    inv_.assign(n_, 0);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (mul_index(a, b) == id_) inv_[a] = b;
  }

  std::size_t n_, id_;
  std::vector<std::size_t> mul_;
  std::vector<std::size_t> inv_;
  std::vector<std::string> names_;
};

// Type-erased carrier for the three group descriptions.
class AnyGroup {
 public:
  using Variant = std::variant<AbelianGroup, SemidirectGroup, TableGroup>;

  AnyGroup(AbelianGroup g) : g_(std::move(g)) {}
  AnyGroup(SemidirectGroup g) : g_(std::move(g)) {}
  AnyGroup(TableGroup g) : g_(std::move(g)) {}
  AnyGroup(const AbelianSpec& s) : g_(AbelianGroup(s)) {}
  AnyGroup(const SdSpec& s) : g_(SemidirectGroup(s)) {}

  const Variant& variant() const { return g_; }

  std::size_t order() const {
    return std::visit([](const auto& g) { return g.order(); }, g_);
  }
  std::size_t identity_index() const {
    return std::visit([](const auto& g) { return g.identity_index(); }, g_);
  }
  std::size_t mul_index(std::size_t a, std::size_t b) const {
    return std::visit([&](const auto& g) { return g.mul_index(a, b); }, g_);
  }
  std::size_t inv_index(std::size_t a) const {
    return std::visit([&](const auto& g) { return g.inv_index(a); }, g_);
  }
  std::string label(std::size_t a) const {
    return std::visit([&](const auto& g) { return g.label(a); }, g_);
  }

 private:
  Variant g_;
};

static_assert(FiniteGroup<AbelianGroup>);
static_assert(FiniteGroup<SemidirectGroup>);
static_assert(FiniteGroup<TableGroup>);
static_assert(FiniteGroup<AnyGroup>);

inline std::vector<std::size_t> enumerate(const TableGroup& g) {
  std::vector<std::size_t> out(g.order());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

}  // namespace seqlatin

#endif  // SEQLATIN_FINITE_GROUP_HPP
