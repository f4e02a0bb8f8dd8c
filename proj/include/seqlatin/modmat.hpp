#ifndef SEQLATIN_MODMAT_HPP
#define SEQLATIN_MODMAT_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqlatin/error.hpp"
#include "seqlatin/numtheory.hpp"

namespace seqlatin {

// Square matrix over Z_p acting on column vectors from the left.
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::size_t n, Int p) : n_(n), p_(p), a_(n * n, 0) {}

  ModMatrix(std::vector<std::vector<Int>> rows, Int p) : n_(rows.size()), p_(p), a_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      require(rows[i].size() == n_, Errc::DimensionMismatch, "matrix must be square");
      for (std::size_t j = 0; j < n_; ++j) a_[i * n_ + j] = nt::mod(rows[i][j], p_);
    }
  }

  static ModMatrix identity(std::size_t n, Int p) {
    ModMatrix m(n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const { return n_; }
  Int modulus() const { return p_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool operator==(const ModMatrix&) const = default;

  std::vector<std::vector<Int>> rows() const {
    std::vector<std::vector<Int>> out(n_, std::vector<Int>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  ModMatrix operator*(const ModMatrix& o) const {
    require(n_ == o.n_ && p_ == o.p_, Errc::DimensionMismatch, "matrix shapes differ");
    ModMatrix r(n_, p_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        Int v = (*this)(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) r(i, j) = (r(i, j) + v * o(k, j)) % p_;
      }
    return r;
  }

  std::vector<Int> apply(std::span<const Int> x) const {
    require(x.size() == n_, Errc::DimensionMismatch, "vector length differs from matrix size");
    std::vector<Int> y(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < n_; ++j) s = (s + (*this)(i, j) * x[j]) % p_;
      y[i] = s;
    }
    return y;
  }

  ModMatrix pow(Int e) const {
    ModMatrix base = *this, r = identity(n_, p_);
    if (e < 0) {
      base = inverse();
      e = -e;
    }
    while (e > 0) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  // Gauss-Jordan inverse; nullopt when singular.
  std::optional<ModMatrix> try_inverse() const {
    ModMatrix a = *this, inv = identity(n_, p_);
    for (std::size_t col = 0; col < n_; ++col) {
      std::size_t piv = col;
      while (piv < n_ && a(piv, col) == 0) ++piv;
      if (piv == n_) return std::nullopt;
      if (piv != col) {
        for (std::size_t j = 0; j < n_; ++j) {
          std::swap(a(piv, j), a(col, j));
          std::swap(inv(piv, j), inv(col, j));
        }
      }
      Int s = nt::invmod(a(col, col), p_);
      for (std::size_t j = 0; j < n_; ++j) {
        a(col, j) = a(col, j) * s % p_;
        inv(col, j) = inv(col, j) * s % p_;
      }
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == col || a(i, col) == 0) continue;
        Int f = a(i, col);
        for (std::size_t j = 0; j < n_; ++j) {
          a(i, j) = nt::mod(a(i, j) - f * a(col, j), p_);
          inv(i, j) = nt::mod(inv(i, j) - f * inv(col, j), p_);
        }
      }
    }
    return inv;
  }

  bool invertible() const { return try_inverse().has_value(); }

  ModMatrix inverse() const {
    auto inv = try_inverse();
    require(inv.has_value(), Errc::InvalidArgument, "matrix is singular modulo " + std::to_string(p_));
    return *inv;
  }

  // Multiplicative order in GL(n, p); the matrix must be invertible.
  Int order() const {
    require(invertible(), Errc::InvalidArgument, "singular matrix has no order");
    ModMatrix id = identity(n_, p_), cur = *this;
    Int t = 1;
    while (!(cur == id)) {
      cur = cur * *this;
      ++t;
    }
    return t;
  }

  // Matrix whose columns are the given vectors.
  static ModMatrix from_columns(const std::vector<std::vector<Int>>& cols, Int p) {
    ModMatrix m(cols.size(), p);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      require(cols[j].size() == cols.size(), Errc::DimensionMismatch, "columns must form a square matrix");
      for (std::size_t i = 0; i < cols.size(); ++i) m(i, j) = nt::mod(cols[j][i], p);
    }
    return m;
  }

 private:
  std::size_t n_ = 0;
  Int p_ = 2;
  std::vector<Int> a_;
};

// Rank of a list of vectors over Z_p.
inline std::size_t rank_mod_p(std::vector<std::vector<Int>> rows, Int p) {
  if (rows.empty()) return 0;
  std::size_t cols = rows[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && nt::mod(rows[piv][c], p) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    Int s = nt::invmod(rows[r][c], p);
    for (auto& v : rows[r]) v = nt::mulmod(v, s, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      Int f = nt::mod(rows[i][c], p);
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = nt::mod(rows[i][j] - f * rows[r][j], p);
    }
    ++r;
  }
  return r;
}

}  // namespace seqlatin

#endif  // SEQLATIN_MODMAT_HPP
