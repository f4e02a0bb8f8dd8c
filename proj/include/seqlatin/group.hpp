#ifndef SEQLATIN_GROUP_HPP
#define SEQLATIN_GROUP_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "seqlatin/error.hpp"
#include "seqlatin/modmat.hpp"
#include "seqlatin/numtheory.hpp"

namespace seqlatin {

// Element of a finite abelian group: one reduced residue per cyclic factor.
struct AbElem {
  std::vector<Int> coords;

  AbElem() = default;
  AbElem(std::initializer_list<Int> c) : coords(c) {}
  explicit AbElem(std::vector<Int> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  Int operator[](std::size_t i) const { return coords[i]; }
  Int& operator[](std::size_t i) { return coords[i]; }

  bool operator==(const AbElem&) const = default;
  auto operator<=>(const AbElem&) const = default;
};

inline std::string to_string(const AbElem& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

// Z_{n_1} x ... x Z_{n_k}.  Elements are enumerated in mixed radix with the
// rightmost factor varying fastest.
class AbelianSpec {
 public:
  AbelianSpec() : AbelianSpec(std::vector<Int>{1}) {}

  explicit AbelianSpec(std::vector<Int> factors) : factors_(std::move(factors)) {
    require(!factors_.empty(), Errc::InvalidArgument, "abelian group needs at least one factor");
    order_ = 1;
    strides_.assign(factors_.size(), 1);
    for (std::size_t i = factors_.size(); i-- > 0;) {
      // A single factor of 1 is the trivial group; otherwise factors are >= 2.
      require(factors_[i] >= 2 || (factors_.size() == 1 && factors_[i] == 1), Errc::InvalidArgument,
              "cyclic factor orders must be >= 2");
      strides_[i] = order_;
      order_ *= factors_[i];
    }
  }

  AbelianSpec(std::initializer_list<Int> f) : AbelianSpec(std::vector<Int>(f)) {}

  static AbelianSpec cyclic(Int n) { return AbelianSpec(std::vector<Int>{n}); }

  const std::vector<Int>& factors() const { return factors_; }
  Int factor(std::size_t i) const { return factors_[i]; }
  std::size_t rank() const { return factors_.size(); }
  Int order() const { return order_; }
  bool is_cyclic() const { return factors_.size() == 1; }

  bool operator==(const AbelianSpec& o) const { return factors_ == o.factors_; }

  bool contains(const AbElem& x) const {
    if (x.size() != rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
      if (x[i] < 0 || x[i] >= factors_[i]) return false;
    return true;
  }

  void check(const AbElem& x) const {
    require(x.size() == rank(), Errc::DimensionMismatch,
            "element " + to_string(x) + " has wrong length for this group");
    require(contains(x), Errc::InvalidArgument, "element " + to_string(x) + " is not reduced");
  }

  AbElem zero() const { return AbElem(std::vector<Int>(rank(), 0)); }

  // Reduce arbitrary integer coordinates into canonical residues.
  AbElem reduce(std::vector<Int> c) const {
    require(c.size() == rank(), Errc::DimensionMismatch, "coordinate count mismatch");
    for (std::size_t i = 0; i < rank(); ++i) c[i] = nt::mod(c[i], factors_[i]);
    return AbElem(std::move(c));
  }

  std::size_t index_of(const AbElem& x) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) idx += static_cast<std::size_t>(x[i] * strides_[i]);
    return idx;
  }

  AbElem element_at(std::size_t idx) const {
    std::vector<Int> c(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      c[i] = static_cast<Int>(idx) / strides_[i];
      idx %= static_cast<std::size_t>(strides_[i]);
    }
    return AbElem(std::move(c));
  }

  AbElem add(const AbElem& x, const AbElem& y) const {
    same_shape(x, y);
    AbElem r = x;
    for (std::size_t i = 0; i < rank(); ++i) r[i] = (x[i] + y[i]) % factors_[i];
    return r;
  }

  AbElem sub(const AbElem& x, const AbElem& y) const {
    same_shape(x, y);
    AbElem r = x;
    for (std::size_t i = 0; i < rank(); ++i) r[i] = nt::mod(x[i] - y[i], factors_[i]);
    return r;
  }

  AbElem neg(const AbElem& x) const {
    require(x.size() == rank(), Errc::DimensionMismatch, "element length differs from group rank");
    AbElem r = x;
    for (std::size_t i = 0; i < rank(); ++i) r[i] = nt::mod(-x[i], factors_[i]);
    return r;
  }

  AbElem scale(const AbElem& x, Int c) const {
    AbElem r = x;
    for (std::size_t i = 0; i < rank(); ++i) r[i] = nt::mulmod(x[i], c, factors_[i]);
    return r;
  }

  bool is_zero(const AbElem& x) const {
    for (Int v : x.coords)
      if (v != 0) return false;
    return true;
  }

  Int element_order(const AbElem& x) const {
    Int o = 1;
    for (std::size_t i = 0; i < rank(); ++i)
      o = nt::lcm(o, factors_[i] / std::gcd(x[i], factors_[i]));
    return o;
  }

 private:
  void same_shape(const AbElem& x, const AbElem& y) const {
    require(x.size() == rank() && y.size() == rank(), Errc::DimensionMismatch,
            "operands " + to_string(x) + ", " + to_string(y) + " do not match group rank");
  }

  std::vector<Int> factors_;
  std::vector<Int> strides_;
  Int order_ = 1;
};

// Direct product; factor lists are concatenated.
inline AbelianSpec product(const AbelianSpec& a, const AbelianSpec& b) {
  if (a.order() == 1) return b;
  if (b.order() == 1) return a;
  auto f = a.factors();
  f.insert(f.end(), b.factors().begin(), b.factors().end());
  return AbelianSpec(f);
}

inline AbElem concat(const AbElem& x, const AbElem& y) {
  auto c = x.coords;
  c.insert(c.end(), y.coords.begin(), y.coords.end());
  return AbElem(std::move(c));
}

enum class AbOp { Add, Sub, Neg };

inline AbElem ab_op(const AbelianSpec& spec, const AbElem& x, const AbElem& y, AbOp op) {
  switch (op) {
    case AbOp::Add: return spec.add(x, y);
    case AbOp::Sub: return spec.sub(x, y);
    case AbOp::Neg: return spec.neg(x);
  }
  return x;
}

// True iff <g> and <h> meet only in the identity.
inline bool independent(const AbelianSpec& spec, const AbElem& g, const AbElem& h) {
  std::vector<bool> in_g(static_cast<std::size_t>(spec.order()), false);
  AbElem cur = g;
  while (!spec.is_zero(cur)) {
    in_g[spec.index_of(cur)] = true;
    cur = spec.add(cur, g);
  }
  cur = h;
  while (!spec.is_zero(cur)) {
    if (in_g[spec.index_of(cur)]) return false;
    cur = spec.add(cur, h);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Isomorphisms between presentations: each cyclic factor splits by CRT into
// prime-power components, and components with equal (p, e) are matched in
// order of appearance.

struct PrimaryComponent {
  Int p = 0;
  int e = 0;
  Int pe = 1;
  std::size_t factor = 0;
};

inline std::vector<PrimaryComponent> primary_components(const AbelianSpec& spec) {
  std::vector<PrimaryComponent> out;
  for (std::size_t i = 0; i < spec.rank(); ++i)
    for (auto [p, e] : nt::factorize(spec.factor(i))) out.push_back({p, e, nt::ipow(p, e), i});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.p != b.p ? a.p < b.p : a.e < b.e;
  });
  return out;
}

inline bool isomorphic(const AbelianSpec& a, const AbelianSpec& b) {
  auto x = primary_components(a), y = primary_components(b);
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].p != y[i].p || x[i].e != y[i].e) return false;
  return true;
}

class AbelianIso {
 public:
  AbelianIso(AbelianSpec from, AbelianSpec to) : from_(std::move(from)), to_(std::move(to)) {
    require(isomorphic(from_, to_), Errc::InvalidArgument, "groups are not isomorphic");
    src_ = primary_components(from_);
    dst_ = primary_components(to_);
    coef_.resize(dst_.size());
    for (std::size_t i = 0; i < dst_.size(); ++i) {
      Int n = to_.factor(dst_[i].factor), M = n / dst_[i].pe;
      coef_[i] = nt::mulmod(M, nt::invmod(M % dst_[i].pe, dst_[i].pe), n);
    }
  }

  const AbelianSpec& from() const { return from_; }
  const AbelianSpec& to() const { return to_; }

  AbElem operator()(const AbElem& x) const {
    from_.check(x);
    std::vector<Int> y(to_.rank(), 0);
    for (std::size_t i = 0; i < src_.size(); ++i) {
      Int v = x[src_[i].factor] % src_[i].pe;
      std::size_t f = dst_[i].factor;
      y[f] = (y[f] + nt::mulmod(v, coef_[i], to_.factor(f))) % to_.factor(f);
    }
    return AbElem(std::move(y));
  }

  AbelianIso inverse() const { return AbelianIso(to_, from_); }

 private:
  AbelianSpec from_, to_;
  std::vector<PrimaryComponent> src_, dst_;
  std::vector<Int> coef_;
};

// ---------------------------------------------------------------------------
// Automorphisms in block form.

// Multiplication by a unit on one cyclic factor.
struct ScalarBlock {
  std::size_t factor = 0;
  Int unit = 1;
  bool operator==(const ScalarBlock&) const = default;
};

// Invertible matrix over Z_p on a run of consecutive factors all equal to p.
struct MatrixBlock {
  std::size_t first = 0;
  ModMatrix matrix;
  bool operator==(const MatrixBlock&) const = default;
};

using AutBlock = std::variant<ScalarBlock, MatrixBlock>;

class Automorphism {
 public:
  Automorphism() = default;

  Automorphism(AbelianSpec spec, std::vector<AutBlock> blocks)
      : spec_(std::move(spec)), blocks_(std::move(blocks)) {
    std::vector<int> cover(spec_.rank(), 0);
    for (const auto& b : blocks_) {
      if (const auto* s = std::get_if<ScalarBlock>(&b)) {
        require(s->factor < spec_.rank(), Errc::InvalidArgument, "scalar block outside the group");
        Int n = spec_.factor(s->factor);
        require(std::gcd(nt::mod(s->unit, n), n) == 1, Errc::InvalidArgument,
                "scalar " + std::to_string(s->unit) + " is not a unit modulo " + std::to_string(n));
        ++cover[s->factor];
      } else {
        const auto& m = std::get<MatrixBlock>(b);
        Int p = m.matrix.modulus();
        require(nt::is_prime(p), Errc::InvalidArgument, "matrix blocks need a prime modulus");
        require(m.first + m.matrix.size() <= spec_.rank(), Errc::InvalidArgument,
                "matrix block outside the group");
        for (std::size_t i = 0; i < m.matrix.size(); ++i) {
          require(spec_.factor(m.first + i) == p, Errc::InvalidArgument,
                  "matrix block must cover factors of order " + std::to_string(p));
          ++cover[m.first + i];
        }
        require(m.matrix.invertible(), Errc::InvalidArgument, "matrix block is singular");
      }
    }
    for (int c : cover)
      require(c == 1, Errc::InvalidArgument, "every factor must be covered by exactly one block");
    for (auto& b : blocks_)
      if (auto* s = std::get_if<ScalarBlock>(&b)) s->unit = nt::mod(s->unit, spec_.factor(s->factor));
    order_ = 1;
    for (const auto& b : blocks_) {
      if (const auto* s = std::get_if<ScalarBlock>(&b))
        order_ = nt::lcm(order_, nt::mult_order(s->unit, spec_.factor(s->factor)));
      else
        order_ = nt::lcm(order_, std::get<MatrixBlock>(b).matrix.order());
    }
  }

  static Automorphism identity(const AbelianSpec& spec) { return scalar(spec, 1); }

  // Multiplication by r on every factor.
  static Automorphism scalar(const AbelianSpec& spec, Int r) {
    std::vector<AutBlock> blocks;
    for (std::size_t i = 0; i < spec.rank(); ++i) blocks.emplace_back(ScalarBlock{i, r});
    return Automorphism(spec, std::move(blocks));
  }

  const AbelianSpec& spec() const { return spec_; }
  const std::vector<AutBlock>& blocks() const { return blocks_; }
  Int order() const { return order_; }
  bool is_identity() const { return order_ == 1; }

  bool operator==(const Automorphism& o) const { return spec_ == o.spec_ && blocks_ == o.blocks_; }

  AbElem apply(const AbElem& x) const {
    spec_.check(x);
    AbElem y = x;
    for (const auto& b : blocks_) {
      if (const auto* s = std::get_if<ScalarBlock>(&b)) {
        y[s->factor] = nt::mulmod(x[s->factor], s->unit, spec_.factor(s->factor));
      } else {
        const auto& m = std::get<MatrixBlock>(b);
        std::span<const Int> sub(x.coords.data() + m.first, m.matrix.size());
        auto r = m.matrix.apply(sub);
        for (std::size_t i = 0; i < r.size(); ++i) y[m.first + i] = r[i];
      }
    }
    return y;
  }

  // alpha^e(x); negative exponents use the inverse.
  AbElem apply(const AbElem& x, Int e) const { return power(e).apply(x); }

  Automorphism power(Int e) const {
    e = nt::mod(e, order_);
    Automorphism r = *this;
    for (auto& b : r.blocks_) {
      if (auto* s = std::get_if<ScalarBlock>(&b))
        s->unit = nt::powmod(s->unit, static_cast<std::uint64_t>(e), spec_.factor(s->factor));
      else
        std::get<MatrixBlock>(b).matrix = std::get<MatrixBlock>(b).matrix.pow(e);
    }
    r.order_ = order_ / std::gcd(order_, e == 0 ? order_ : e);
    return r;
  }

  Automorphism inverse() const { return power(-1); }

 private:
  AbelianSpec spec_;
  std::vector<AutBlock> blocks_;
  Int order_ = 1;
};

inline AbElem aut_apply(const Automorphism& alpha, const AbElem& x, Int power) {
  return alpha.apply(x, power);
}

inline Int aut_order(const Automorphism& alpha) { return alpha.order(); }

// Extends an automorphism of A to A x B by acting as the identity on B.
inline Automorphism extend_by_identity(const Automorphism& alpha, const AbelianSpec& b) {
  if (b.order() == 1) return alpha;
  auto spec = product(alpha.spec(), b);
  auto blocks = alpha.blocks();
  for (std::size_t i = 0; i < b.rank(); ++i) blocks.emplace_back(ScalarBlock{alpha.spec().rank() + i, 1});
  return Automorphism(spec, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Semidirect products Z_s x|_alpha A with (u,v)(x,y) = (u+x, alpha^x(v) + y).

struct SdElem {
  Int u = 0;
  AbElem v;
  bool operator==(const SdElem&) const = default;
  auto operator<=>(const SdElem&) const = default;
};

inline std::string to_string(const SdElem& e) { return "(" + std::to_string(e.u) + "," + to_string(e.v) + ")"; }

class SdSpec {
 public:
  SdSpec(Int s, AbelianSpec base, Automorphism alpha)
      : s_(s), base_(std::move(base)), alpha_(std::move(alpha)) {
    require(s_ >= 1, Errc::InvalidArgument, "top cyclic order must be positive");
    require(alpha_.spec() == base_, Errc::DimensionMismatch, "automorphism acts on a different group");
    require(s_ % alpha_.order() == 0, Errc::InvalidArgument,
            "automorphism order " + std::to_string(alpha_.order()) + " does not divide " + std::to_string(s_));
  }

  Int s() const { return s_; }
  const AbelianSpec& base() const { return base_; }
  const Automorphism& alpha() const { return alpha_; }
  Int order() const { return s_ * base_.order(); }

  bool operator==(const SdSpec&) const = default;

  SdElem identity() const { return {0, base_.zero()}; }

  void check(const SdElem& e) const {
    require(e.u >= 0 && e.u < s_, Errc::InvalidArgument, "top coordinate out of range");
    base_.check(e.v);
  }

  std::size_t index_of(const SdElem& e) const {
    return static_cast<std::size_t>(e.u) * static_cast<std::size_t>(base_.order()) + base_.index_of(e.v);
  }

  SdElem element_at(std::size_t idx) const {
    auto m = static_cast<std::size_t>(base_.order());
    return {static_cast<Int>(idx / m), base_.element_at(idx % m)};
  }

 private:
  Int s_;
  AbelianSpec base_;
  Automorphism alpha_;
};

inline SdElem sd_mul(const SdSpec& g, const SdElem& a, const SdElem& b) {
  g.check(a);
  g.check(b);
  return {(a.u + b.u) % g.s(), g.base().add(g.alpha().apply(a.v, b.u), b.v)};
}

inline SdElem sd_inv(const SdSpec& g, const SdElem& a) {
  g.check(a);
  return {nt::mod(-a.u, g.s()), g.base().neg(g.alpha().apply(a.v, -a.u))};
}

inline std::vector<AbElem> enumerate(const AbelianSpec& spec) {
  std::vector<AbElem> out;
  out.reserve(static_cast<std::size_t>(spec.order()));
  for (Int i = 0; i < spec.order(); ++i) out.push_back(spec.element_at(static_cast<std::size_t>(i)));
  return out;
}

inline std::vector<SdElem> enumerate(const SdSpec& spec) {
  std::vector<SdElem> out;
  out.reserve(static_cast<std::size_t>(spec.order()));
  for (Int i = 0; i < spec.order(); ++i) out.push_back(spec.element_at(static_cast<std::size_t>(i)));
  return out;
}

}  // namespace seqlatin

#endif  // SEQLATIN_GROUP_HPP
