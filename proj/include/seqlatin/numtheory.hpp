#ifndef SEQLATIN_NUMTHEORY_HPP
#define SEQLATIN_NUMTHEORY_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqlatin/error.hpp"

namespace seqlatin::nt {

// Non-negative residue of x modulo m (m > 0).
inline Int mod(Int x, Int m) {
  Int r = x % m;
  return r < 0 ? r + m : r;
}

inline Int mulmod(Int a, Int b, Int m) {
  return static_cast<Int>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

inline Int powmod(Int base, std::uint64_t e, Int m) {
  if (m == 1) return 0;
  Int result = 1;
  base = mod(base, m);
  while (e > 0) {
    if (e & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1U;
  }
  return result;
}

// Inverse of x modulo m; throws NotCoprime when gcd(x, m) != 1.
inline Int invmod(Int x, Int m) {
  Int a = mod(x, m), b = m;
  Int u = 1, v = 0;
  while (b != 0) {
    Int t = a / b;
    a -= t * b;
    std::swap(a, b);
    u -= t * v;
    std::swap(u, v);
  }
  require(a == 1, Errc::NotCoprime,
          std::to_string(x) + " is not invertible modulo " + std::to_string(m));
  return mod(u, m);
}

inline Int lcm(Int a, Int b) { return a / std::gcd(a, b) * b; }

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  Int d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (Int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    Int x = powmod(a, static_cast<std::uint64_t>(d), n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline Int pollard_rho(Int n) {
  if (n % 2 == 0) return 2;
  for (Int c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    auto f = [&](Int v) { return mod(mulmod(v, v, n) + c, n); };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(Int n, std::vector<Int>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace detail

using Factorization = std::vector<std::pair<Int, int>>;

// Prime factorization with primes ascending; factorize(1) is empty.
inline Factorization factorize(Int n) {
  require(n >= 1, Errc::InvalidArgument, "factorize expects n >= 1");
  std::vector<Int> primes;
  for (Int p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  detail::factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  Factorization out;
  for (Int p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

inline Int ipow(Int base, int e) {
  Int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Exponent of the unit group modulo m (odd and even m).
inline Int carmichael(Int m) {
  Int result = 1;
  for (auto [p, e] : factorize(m)) {
    Int lam;
    if (p == 2)
      lam = e <= 2 ? ipow(2, e - 1) : ipow(2, e - 2);
    else
      lam = ipow(p, e - 1) * (p - 1);
    result = lcm(result, lam);
  }
  return result;
}

// Least t >= 1 with x^t = 1 mod m.
inline Int mult_order(Int x, Int m) {
  require(m >= 1, Errc::InvalidArgument, "modulus must be positive");
  require(std::gcd(mod(x, m), m) == 1, Errc::NotCoprime,
          std::to_string(x) + " is not coprime to " + std::to_string(m));
  if (m == 1) return 1;
  Int t = carmichael(m);
  for (auto [f, e] : factorize(t)) {
    (void)e;
    while (t % f == 0 && powmod(x, static_cast<std::uint64_t>(t / f), m) == 1) t /= f;
  }
  return t;
}

inline bool is_primitive_root(Int x, Int q) {
  return std::gcd(mod(x, q), q) == 1 && mult_order(x, q) == q - 1;
}

// Smallest lambda in [2, q-1] such that lambda and lambda/(lambda-1) are both
// primitive roots modulo the odd prime q.
inline Int find_lambda(Int q) {
  require(q >= 3 && q % 2 == 1 && is_prime(q), Errc::InvalidArgument,
          "find_lambda expects an odd prime, got " + std::to_string(q));
  for (Int l = 2; l < q; ++l) {
    if (!is_primitive_root(l, q)) continue;
    Int ratio = mulmod(l, invmod(l - 1, q), q);
    if (is_primitive_root(ratio, q)) return l;
  }
  fail(Errc::ConstructionFailed, "no admissible lambda for q=" + std::to_string(q));
}

// True iff the unit group mod m has an element of order q (q prime).
inline bool has_unit_of_order(Int m, Int q) { return m > 1 && carmichael(m) % q == 0; }

// Smallest r in [2, m-1] with multiplicative order exactly q modulo m, or
// nullopt when the unit group has no such element.
inline std::optional<Int> find_unit_of_order(Int m, Int q) {
  require(m >= 3 && m % 2 == 1, Errc::InvalidArgument, "m must be odd and >= 3");
  require(is_prime(q) && q % 2 == 1, Errc::InvalidArgument, "q must be an odd prime");
  if (!has_unit_of_order(m, q)) return std::nullopt;
  for (Int r = 2; r < m; ++r) {
    // q is prime, so r^q = 1 with r != 1 pins the order to q.
    if (std::gcd(r, m) == 1 && powmod(r, static_cast<std::uint64_t>(q), m) == 1) return r;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Order-spectrum classification.

enum class Verdict { Trivial, Even, OddNonabelianExists, OddOnlyAbelian };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Trivial: return "Trivial";
    case Verdict::Even: return "Even";
    case Verdict::OddNonabelianExists: return "OddNonabelianExists";
    case Verdict::OddOnlyAbelian: return "OddOnlyAbelian";
  }
  return "?";
}

enum class PipelineKind { Cyclic, NonThree, ThreeFactor };

inline std::string_view pipeline_name(PipelineKind k) {
  switch (k) {
    case PipelineKind::Cyclic: return "cyclic";
    case PipelineKind::NonThree: return "non3";
    case PipelineKind::ThreeFactor: return "theorem3";
  }
  return "?";
}

// Parameters of the construction that realises a non-abelian group of order
// n = q * m.  For Cyclic, the base is Z_m.  For NonThree the base is
// Z_p^k x Z_b; for ThreeFactor it is Z_p^2 x Z_{3 or 9} x Z_b.
struct Witness {
  PipelineKind kind = PipelineKind::Cyclic;
  std::string witness_case;  // "cube", "p=1 mod q" or "p^2=1 mod q"
  Int q = 0;
  Int m = 0;
  Int p = 0;
  int k = 0;
  Int b = 1;
  bool nine = false;

  bool operator==(const Witness&) const = default;
};

struct OrderClassification {
  Verdict verdict = Verdict::Trivial;
  std::optional<Witness> witness;
};

namespace detail {

inline int exponent_of(const Factorization& f, Int p) {
  for (auto [pp, e] : f)
    if (pp == p) return e;
  return 0;
}

inline std::optional<Witness> pick_witness(Int n, const Factorization& f) {
  for (auto [q, eq] : f) {
    (void)eq;
    Int m = n / q;
    if (m >= 5 && has_unit_of_order(m, q)) {
      Witness w;
      w.kind = PipelineKind::Cyclic;
      w.q = q;
      w.m = m;
      if (exponent_of(f, q) >= 3) {
        w.witness_case = "cube";
        w.p = q;
        return w;
      }
      w.witness_case = "p=1 mod q";
      for (auto [p, e] : f) {
        (void)e;
        if (p != q && p % q == 1) {
          w.p = p;
          break;
        }
      }
      return w;
    }
  }
  std::optional<Witness> three;
  for (auto [p, ep] : f) {
    if (ep < 2 || p == 3) continue;
    for (auto [q, eq] : f) {
      (void)eq;
      if (q == p || powmod(p, static_cast<std::uint64_t>(ep), q) != 1) continue;
      Int m = n / q;
      Int rest = m / ipow(p, ep);
      int e3 = 0;
      while (rest % 3 == 0) {
        rest /= 3;
        ++e3;
      }
      Witness w;
      w.q = q;
      w.m = m;
      w.p = p;
      w.k = ep;
      w.b = rest;
      w.witness_case = "p^2=1 mod q";
      if (e3 == 0) {
        w.kind = PipelineKind::NonThree;
        return w;
      }
      if (!three && ep == 2 && e3 <= 2) {
        w.kind = PipelineKind::ThreeFactor;
        w.nine = (e3 == 2);
        three = w;
      }
    }
  }
  return three;
}

}  // namespace detail

// Decides whether a group-based complete Latin square of order n exists and,
// for odd n, which construction realises it.
inline OrderClassification classify_order(Int n) {
  require(n >= 1, Errc::InvalidArgument, "order must be positive");
  if (n == 1) return {Verdict::Trivial, std::nullopt};
  if (n % 2 == 0) return {Verdict::Even, std::nullopt};
  auto f = factorize(n);
  bool exists = false;
  for (auto [p, e] : f) {
    if (e >= 3) exists = true;
    for (int k = 1; k <= e && !exists; ++k) {
      Int pk = ipow(p, k);
      for (auto [q, eq] : f) {
        (void)eq;
        if (q != p && pk % q == 1) exists = true;
      }
    }
  }
  if (!exists) return {Verdict::OddOnlyAbelian, std::nullopt};
  auto w = detail::pick_witness(n, f);
  require(w.has_value(), Errc::ConstructionFailed,
          "no construction witness for order " + std::to_string(n));
  return {Verdict::OddNonabelianExists, w};
}

}  // namespace seqlatin::nt

#endif  // SEQLATIN_NUMTHEORY_HPP
