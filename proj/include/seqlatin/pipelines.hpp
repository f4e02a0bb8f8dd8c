#ifndef SEQLATIN_PIPELINES_HPP
#define SEQLATIN_PIPELINES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seqlatin/directed_template.hpp"
#include "seqlatin/error.hpp"
#include "seqlatin/finite_group.hpp"
#include "seqlatin/graceful.hpp"
#include "seqlatin/group.hpp"
#include "seqlatin/harmonious.hpp"
#include "seqlatin/latin.hpp"
#include "seqlatin/limits.hpp"
#include "seqlatin/modmat.hpp"
#include "seqlatin/numtheory.hpp"
#include "seqlatin/rotational.hpp"

namespace seqlatin {

// How a certificate was obtained.  Optional fields are filled by the
// pipelines that use them.
struct Provenance {
  std::string pipeline;  // walecki, cyclic, non3, theorem3, trivial
  std::string route;     // which branch inside the pipeline
  Int lambda = 0;
  std::optional<Int> unit;                // cyclic: alpha is multiplication by this
  std::optional<Int> scale;               // cyclic: multiplier applied to the base terrace
  std::optional<ModMatrix> alpha_block;   // matrix of alpha on Z_p^k
  std::optional<ModMatrix> basis_change;  // conjugating matrix applied to the companion form
  std::optional<std::vector<Int>> graceful;
  std::optional<RTerrace> r_terrace;
  std::optional<HashHarmonious> hash;
  std::vector<std::string> steps;
  bool searched = false;
  std::uint64_t seed = 0;
};

struct SequencingCertificate {
  std::variant<AbelianSpec, SdSpec> group;
  std::vector<std::size_t> terrace;     // element indices
  std::vector<std::size_t> sequencing;  // left quotients of the terrace
  Provenance provenance;
};

inline AnyGroup group_of(const SequencingCertificate& c) {
  return std::visit([](const auto& g) { return AnyGroup(g); }, c.group);
}

inline std::size_t certificate_order(const SequencingCertificate& c) {
  return std::visit([](const auto& g) { return static_cast<std::size_t>(g.order()); }, c.group);
}

// Independent recheck: the terrace is a directed terrace of the group and
// the stored sequencing is its quotient list.
inline TerraceCheck verify_certificate(const SequencingCertificate& c) {
  auto g = group_of(c);
  auto chk = check_directed_terrace(g, c.terrace);
  if (chk.ok && chk.quotients != c.sequencing) {
    chk.ok = false;
    chk.reason = "stored sequencing differs from the terrace quotients";
  }
  return chk;
}

namespace detail {

template <class Spec>
SequencingCertificate certify(const Spec& spec, std::vector<std::size_t> terrace, Provenance prov) {
  SequencingCertificate c{spec, std::move(terrace), {}, std::move(prov)};
  auto chk = check_directed_terrace(group_of(c), c.terrace);
  require(chk.ok, Errc::ConstructionFailed,
          "[" + c.provenance.pipeline + ":verify] assembled arrangement is not a directed terrace: " + chk.reason);
  c.sequencing = std::move(chk.quotients);
  return c;
}

inline std::string stage_error(const std::string& pipeline, const std::string& stage, const std::string& what) {
  return "[" + pipeline + ":" + stage + "] " + what;
}

// c_1 = x and c_{m-1} = y, using a rotation and possibly a reversal.
inline std::optional<HashHarmonious> place_pair(const HashHarmonious& h, const AbElem& x, const AbElem& y,
                                                std::string* how = nullptr) {
  const auto n = h.entries.size();
  for (int rev = 0; rev < 2; ++rev) {
    HashHarmonious cur = rev ? reverse_hash(h) : h;
    if (auto i = find_adjacent(cur.entries, y, x)) {
      if (how) *how = std::string(rev ? "reverse, " : "") + "rotate " + std::to_string((*i + 1) % n);
      return rotate_hash(cur, static_cast<Int>((*i + 1) % n));
    }
  }
  return std::nullopt;
}

inline SequencingCertificate finish_template(const RTerrace& a, const HashHarmonious& c, const SdSpec& sd, Int lambda,
                                             Provenance prov) {
  auto in = theorem4_assign(a, c, sd, lambda);
  auto rep = checklist(in);
  require(rep.all_pass(), Errc::ConstructionFailed,
          stage_error(prov.pipeline, "checklist", "families failing: " + rep.failing()));
  auto arr = assemble(in);
  prov.lambda = lambda;
  prov.r_terrace = a;
  prov.hash = c;
  return certify(sd, to_indices(sd, arr), std::move(prov));
}

}  // namespace detail

inline SequencingCertificate trivial_certificate() {
  Provenance p;
  p.pipeline = "trivial";
  return detail::certify(AbelianSpec{1}, {0}, p);
}

// Zig-zag terrace of Z_n, n even.
inline SequencingCertificate sequence_walecki(Int n) {
  auto w = walecki_terrace(n);
  Provenance p;
  p.pipeline = "walecki";
  std::vector<std::size_t> t(w.begin(), w.end());
  return detail::certify(AbelianSpec::cyclic(n), std::move(t), p);
}

// ---------------------------------------------------------------------------
// Cyclic base.

// Z_q x|_r Z_m with r a unit of order q.  Tries the direct prescription
// (scaled BGHJ pair -2s, s with a graceful terrace) first, then scans every
// adjacent pair of the scaled sequence against every rotation of the zig-zag
// R-terrace and its reverse, rescaled by a unit.
inline SequencingCertificate sequence_cyclic(Int q, Int m) {
  require(q >= 3 && nt::is_prime(q), Errc::InvalidArgument, "q must be an odd prime");
  require(m >= 5 && m % 2 == 1, Errc::InvalidArgument, "m must be odd and at least 5");
  auto ru = nt::find_unit_of_order(m, q);
  require(ru.has_value(), Errc::InvalidArgument,
          "Z_" + std::to_string(m) + " has no automorphism of order " + std::to_string(q));
  const Int r = *ru;
  const Int lam = nt::find_lambda(q);
  const Int k = (m - 1) / 2;
  AbelianSpec A = AbelianSpec::cyclic(m);
  SdSpec sd(q, A, Automorphism::scalar(A, r));
  auto rp = [&](Int e) { return nt::powmod(r, static_cast<std::uint64_t>(nt::mod(e, q)), m); };
  const Int s = nt::mulmod(rp(1 - lam), k + 1, m);
  auto base = scale_hash(bghj_base(A).hash, s);

  Provenance prov;
  prov.pipeline = "cyclic";
  prov.unit = r;
  prov.steps.push_back("scale BGHJ sequence by " + std::to_string(s));

  auto targets = [&](const HashHarmonious& c) {
    Int c1 = c.entries.front()[0], cl = c.entries.back()[0];
    Int X = nt::mod(c1 + cl - nt::mulmod(rp(q - 1), c1, m), m);
    Int W = nt::mulmod(rp(lam - 1), cl, m);
    return std::pair{X, W};
  };

  // Direct prescription, both role assignments.
  const AbElem one{s}, minus_two{nt::mod(-2 * s, m)};
  for (int swap = 0; swap < 2; ++swap) {
    std::string how;
    auto c = swap ? detail::place_pair(base, one, minus_two, &how) : detail::place_pair(base, minus_two, one, &how);
    if (!c) continue;
    auto [X, W] = targets(*c);
    if (X == 0) continue;
    Int g1 = X <= k ? X : X - k;
    try {
      auto g = graceful_with_first(k, g1);
      auto a = graceful_to_r_terrace(g);
      if (a.entries.front()[0] != X) a = reverse(a);
      Provenance p = prov;
      p.route = swap ? "prescribed, roles swapped" : "prescribed";
      p.graceful = g.values;
      p.steps.push_back("hash: " + how);
      if (a.entries.front()[0] != X) continue;
      return detail::finish_template(a, *c, sd, lam, p);
    } catch (const Error& e) {
      if (e.code() != Errc::ConditionsViolated && e.code() != Errc::DeskScaleExceeded &&
          e.code() != Errc::NotFound)
        throw;
    }
  }

  // Orbit scan.
  const auto L = static_cast<std::size_t>(m - 1);
  std::vector<Int> inv(static_cast<std::size_t>(m), 0);
  for (Int x = 1; x < m; ++x)
    if (std::gcd(x, m) == 1) inv[static_cast<std::size_t>(x)] = nt::invmod(x, m);
  const RTerrace wal = walecki_r_terrace(m);
  const RTerrace wal_rev = reverse(wal);
  for (std::size_t i = 0; i < L; ++i)
    for (int rev = 0; rev < 2; ++rev) {
      HashHarmonious c = rev ? reverse_hash(base) : base;
      c = rotate_hash(c, static_cast<Int>(i));
      auto [X, W] = targets(c);
      if (X == 0 || X == W) continue;
      for (int tr = 0; tr < 2; ++tr) {
        const RTerrace& T = tr ? wal_rev : wal;
        for (std::size_t j = 0; j < L; ++j) {
          Int t1 = T.entries[j][0], tl = T.entries[(j + L - 1) % L][0];
          Int b = nt::mod(t1 - tl, m);
          if (!inv[static_cast<std::size_t>(b)]) continue;
          Int v = nt::mulmod(W, inv[static_cast<std::size_t>(b)], m);
          if (!inv[static_cast<std::size_t>(v)] || nt::mulmod(v, t1, m) != X) continue;
          RTerrace a = apply_aut(rotate(T, static_cast<Int>(j)), Automorphism::scalar(A, v));
          Provenance p = prov;
          p.route = "orbit";
          p.scale = v;
          p.steps.push_back(std::string("hash: ") + (rev ? "reverse, " : "") + "rotate " + std::to_string(i));
          p.steps.push_back(std::string("terrace: zig-zag") + (tr ? " reversed" : "") + ", rotate " +
                            std::to_string(j) + ", scale " + std::to_string(v));
          return detail::finish_template(a, c, sd, lam, p);
        }
      }
    }
  fail(Errc::ConstructionFailed, detail::stage_error("cyclic", "orbit", "no placement satisfies the conditions"));
}

// ---------------------------------------------------------------------------
// Non-diagonalisable automorphisms of Z_p^k.

struct NondiagAut {
  Int p = 0, q = 0, lambda = 0;
  int k = 0, d = 0;
  ModMatrix companion;    // d x d companion block
  ModMatrix matrix;       // k x k block-diagonal form
  ModMatrix basis_change; // P with P^{-1} M^{lambda-1} P e_1 = e_2
  ModMatrix conjugated;   // P^{-1} M P
  Automorphism alpha;     // on Z_p^k, the block-diagonal form
  Automorphism alpha_prime;  // on Z_p^k, the conjugated form
};

namespace detail {

inline AbelianSpec power_spec(Int p, int k) { return AbelianSpec(std::vector<Int>(static_cast<std::size_t>(k), p)); }

// Adds standard basis vectors to cols until they span.
inline ModMatrix complete_basis(std::vector<std::vector<Int>> cols, std::size_t n, Int p) {
  require(rank_mod_p(cols, p) == cols.size(), Errc::NotIndependent, "vectors are linearly dependent");
  for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
    std::vector<Int> e(n, 0);
    e[i] = 1;
    cols.push_back(e);
    if (rank_mod_p(cols, p) < cols.size()) cols.pop_back();
  }
  return ModMatrix::from_columns(cols, p);
}

}  // namespace detail

// Companion block of the first monic degree-d divisor of (x^q-1)/(x-1)
// over F_p (coefficients c_0..c_{d-1} counted with c_0 fastest), padded with
// the identity, together with a basis change putting alpha^{lambda-1} in a
// form that sends e_1 to e_2.
inline NondiagAut build_nondiag_aut(Int p, int k, Int q, std::optional<Int> lambda = std::nullopt) {
  require(nt::is_prime(p) && p >= 3, Errc::InvalidArgument, "p must be an odd prime");
  require(nt::is_prime(q) && q >= 3 && q != p, Errc::InvalidArgument, "q must be an odd prime other than p");
  require(k >= 1, Errc::InvalidArgument, "k must be positive");
  const int d = static_cast<int>(nt::mult_order(nt::mod(p, q), q));
  require(d >= 2, Errc::Diagonalisable,
          "p = 1 mod q: every order-q automorphism of Z_p^k is diagonalisable");
  require(d <= k, Errc::InvalidArgument,
          "Z_" + std::to_string(p) + "^" + std::to_string(k) + " has no automorphism of order " + std::to_string(q));
  NondiagAut out;
  out.p = p;
  out.q = q;
  out.k = k;
  out.d = d;
  out.lambda = lambda ? *lambda : nt::find_lambda(q);
  const auto du = static_cast<std::size_t>(d);
  std::vector<Int> coef(du, 0);
  bool found = false;
  for (;;) {
    Int at_one = 1;
    for (Int c : coef) at_one += c;
    if (nt::mod(at_one, p) != 0) {
      ModMatrix C(du, p);
      for (std::size_t i = 0; i + 1 < du; ++i) C(i + 1, i) = 1;
      for (std::size_t i = 0; i < du; ++i) C(i, du - 1) = nt::mod(-coef[i], p);
      if (C.invertible() && C.pow(q) == ModMatrix::identity(du, p)) {
        out.companion = C;
        found = true;
        break;
      }
    }
    std::size_t i = 0;
    while (i < du && ++coef[i] == p) coef[i++] = 0;
    if (i == du) break;
  }
  require(found, Errc::ConstructionFailed, "no companion block of order q found");
  const auto ku = static_cast<std::size_t>(k);
  ModMatrix M = ModMatrix::identity(ku, p);
  for (std::size_t i = 0; i < du; ++i)
    for (std::size_t j = 0; j < du; ++j) M(i, j) = out.companion(i, j);
  out.matrix = M;
  auto P1 = M.pow(out.lambda - 1);
  std::vector<Int> e1(ku, 0);
  e1[0] = 1;
  auto v = P1.apply(e1);
  out.basis_change = detail::complete_basis({e1, v}, ku, p);
  out.conjugated = out.basis_change.inverse() * M * out.basis_change;
  auto spec = detail::power_spec(p, k);
  out.alpha = Automorphism(spec, {MatrixBlock{0, M}});
  out.alpha_prime = Automorphism(spec, {MatrixBlock{0, out.conjugated}});
  require(out.alpha_prime.order() == q, Errc::ConstructionFailed, "conjugated automorphism lost its order");
  return out;
}

// Automorphism of A sending g1 -> g2 and h1 -> h2, for two independent pairs
// of elements of the same prime order p lying in the Z_p factors of A.  It
// is the identity on the other factors.
inline Automorphism pair_transport(const AbelianSpec& A, const AbElem& g1, const AbElem& h1, const AbElem& g2,
                                   const AbElem& h2) {
  for (const auto* x : {&g1, &h1, &g2, &h2}) A.check(*x);
  const Int p = A.element_order(g1);
  require(nt::is_prime(p), Errc::OrderMismatch, "elements must have prime order");
  for (const auto* x : {&h1, &g2, &h2})
    require(A.element_order(*x) == p, Errc::OrderMismatch, "all four elements must have the same order");
  require(independent(A, g1, h1) && independent(A, g2, h2), Errc::NotIndependent, "pairs must be independent");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < A.rank(); ++i)
    if (A.factor(i) == p) idx.push_back(i);
  for (std::size_t i = 1; i < idx.size(); ++i)
    require(idx[i] == idx[i - 1] + 1, Errc::InvalidArgument, "the Z_p factors must be consecutive");
  auto restrict = [&](const AbElem& x) {
    std::vector<Int> v;
    for (std::size_t i = 0; i < A.rank(); ++i) {
      bool inside = !idx.empty() && i >= idx.front() && i <= idx.back();
      if (inside)
        v.push_back(x[i]);
      else
        require(x[i] == 0, Errc::InvalidArgument, "elements must lie in the Z_p^k component");
    }
    return v;
  };
  const auto n = idx.size();
  auto P1 = detail::complete_basis({restrict(g1), restrict(h1)}, n, p);
  auto P2 = detail::complete_basis({restrict(g2), restrict(h2)}, n, p);
  auto psi = P2 * P1.inverse();
  std::vector<AutBlock> blocks{MatrixBlock{idx.front(), psi}};
  for (std::size_t i = 0; i < A.rank(); ++i)
    if (i < idx.front() || i > idx.back()) blocks.emplace_back(ScalarBlock{i, 1});
  Automorphism out(A, std::move(blocks));
  require(out.apply(g1) == g2 && out.apply(h1) == h2, Errc::ConstructionFailed, "pair transport failed");
  return out;
}

// ---------------------------------------------------------------------------
// Non-cyclic bases Z_p^k x ...

namespace detail {

struct PairChoice {
  std::size_t j = 0;  // entries[j], entries[j+1] cyclically
  bool preferred = false;
};

inline std::optional<PairChoice> find_independent_pair(const RTerrace& t, Int p,
                                                       const std::vector<std::pair<AbElem, AbElem>>& prefer) {
  const auto& A = t.group;
  const auto L = t.entries.size();
  for (const auto& [x, y] : prefer)
    for (int o = 0; o < 2; ++o) {
      auto i = o ? find_adjacent(t.entries, y, x) : find_adjacent(t.entries, x, y);
      if (i) return PairChoice{*i, true};
    }
  for (std::size_t j = 0; j < L; ++j) {
    const auto& x = t.entries[j];
    const auto& y = t.entries[(j + 1) % L];
    if (A.element_order(x) == p && A.element_order(y) == p && independent(A, x, y)) return PairChoice{j, false};
  }
  return std::nullopt;
}

// Picks c with {c_1, c_{m-1}} = {(-2,0,..), (1,0,..)} so that the two target
// values a_1 and a_{m-1} are independent elements of order p, then moves an
// adjacent independent pair of the R-terrace onto them.
inline SequencingCertificate finish_noncyclic(const SdSpec& sd, Int lam, const RTerrace& T, Int p,
                                              const std::vector<std::pair<AbElem, AbElem>>& prefer,
                                              Provenance prov) {
  const auto& A = sd.base();
  const auto& al = sd.alpha();
  const Int q = sd.s();
  const auto& name = prov.pipeline;
  require(T.group == A, Errc::ConstructionFailed, stage_error(name, "terrace", "R-terrace lives in the wrong group"));
  auto hash = matched_from_base(A, 0).hash;
  std::vector<Int> e(A.rank(), 0);
  e[0] = 1;
  const AbElem one(e);
  const AbElem minus_two = A.scale(one, -2);
  std::optional<HashHarmonious> chosen;
  AbElem X, Y;
  for (int swap = 0; swap < 2 && !chosen; ++swap) {
    std::string how;
    auto c = swap ? place_pair(hash, one, minus_two, &how) : place_pair(hash, minus_two, one, &how);
    require(c.has_value(), Errc::ConstructionFailed,
            stage_error(name, "hash", "(1,0,..) and (-2,0,..) are not adjacent"));
    const auto& c1 = c->entries.front();
    const auto& cl = c->entries.back();
    X = A.sub(A.add(c1, cl), al.apply(c1, q - 1));
    Y = A.sub(X, al.apply(cl, lam - 1));
    if (A.element_order(X) == p && A.element_order(Y) == p && independent(A, X, Y)) {
      chosen = c;
      prov.steps.push_back(std::string("hash: ") + (swap ? "c_1 = (1,0,..)" : "c_1 = (-2,0,..)") + ", " + how);
    }
  }
  require(chosen.has_value(), Errc::ConstructionFailed,
          stage_error(name, "hash", "neither role assignment gives an independent target pair"));
  auto pc = find_independent_pair(T, p, prefer);
  require(pc.has_value(), Errc::ConstructionFailed,
          stage_error(name, "terrace", "no adjacent independent pair of order-p elements"));
  auto L = static_cast<Int>(T.size());
  RTerrace rot = rotate(T, static_cast<Int>(pc->j) + 1);
  const auto a1 = rot.entries.front();
  const auto al1 = rot.entries.back();
  auto psi = pair_transport(A, a1, al1, X, Y);
  prov.steps.push_back(std::string("terrace: ") + (pc->preferred ? "named" : "first") + " adjacent pair at " +
                       std::to_string(pc->j + 1) + ", rotate " + std::to_string(nt::mod(static_cast<Int>(pc->j) + 1, L)) +
                       ", transport " + to_string(a1) + "," + to_string(al1) + " -> " + to_string(X) + "," + to_string(Y));
  auto a = apply_aut(rot, psi);
  return finish_template(a, *chosen, sd, lam, std::move(prov));
}

// Standard R*-terrace of Z_p for p >= 7.
inline RTerrace prime_base(Int p, std::uint64_t seed, Provenance& prov) {
  const Int k = (p - 1) / 2;
  try {
    auto t = standardize(walecki_r_terrace(p));
    prov.steps.push_back("base: zig-zag R-terrace of Z_" + std::to_string(p) + ", standardized");
    return t;
  } catch (const Error& e) {
    if (e.code() != Errc::NoStarIndex) throw;
  }
  for (Int x = 1; x <= k; ++x) {
    try {
      auto g = graceful_with_first(k, x);
      auto t = standardize(graceful_to_r_terrace(g));
      prov.steps.push_back("base: graceful R-terrace of Z_" + std::to_string(p) + " from first element " +
                           std::to_string(x) + ", standardized");
      return t;
    } catch (const Error& e) {
      if (e.code() != Errc::NoStarIndex && e.code() != Errc::NotFound && e.code() != Errc::DeskScaleExceeded) throw;
    }
  }
  RSearchConstraints c;
  c.star = true;
  RSearchOptions o;
  o.seed = seed;
  prov.searched = true;
  prov.steps.push_back("base: searched standard R*-terrace of Z_" + std::to_string(p));
  return search_r_terrace(AbelianSpec::cyclic(p), c, o);
}

inline void check_b(const AbelianSpec& B, Int p) {
  require(B.order() % 2 == 1, Errc::InvalidArgument, "|B| must be odd");
  require(B.order() % 3 != 0, Errc::InvalidArgument, "3 must not divide |B|");
  require(B.order() % p != 0, Errc::InvalidArgument, "p must not divide |B|");
}

inline SdSpec noncyclic_group(const NondiagAut& na, const AbelianSpec& rest) {
  auto alpha = extend_by_identity(na.alpha_prime, rest);
  return SdSpec(na.q, alpha.spec(), alpha);
}

}  // namespace detail

// Z_q x| (Z_p^k x B), p != 3, alpha non-diagonalisable on Z_p^k and trivial
// on B.
inline SequencingCertificate sequence_non3(Int p, int k, Int q, const AbelianSpec& B, std::uint64_t seed = 0) {
  require(nt::is_prime(p) && p >= 5, Errc::InvalidArgument, "p must be a prime other than 2 and 3");
  require(k >= 2, Errc::InvalidArgument, "k must be at least 2");
  require(nt::is_prime(q) && q >= 3, Errc::InvalidArgument, "q must be an odd prime");
  require(nt::powmod(p, static_cast<std::uint64_t>(k), q) == 1, Errc::InvalidArgument, "need p^k = 1 mod q");
  detail::check_b(B, p);
  auto na = build_nondiag_aut(p, k, q);
  SdSpec sd = detail::noncyclic_group(na, B);
  Provenance prov;
  prov.pipeline = "non3";
  prov.seed = seed;
  prov.alpha_block = na.conjugated;
  prov.basis_change = na.basis_change;

  RTerrace base;
  int built = 1;
  if (p == 5) {
    RSearchConstraints c;
    c.star = true;
    c.independent_endpoints = true;
    RSearchOptions o;
    o.seed = seed;
    base = search_r_terrace(detail::power_spec(5, 2), c, o);
    prov.searched = true;
    prov.route = "searched Z_5^2 base";
    prov.steps.push_back("base: searched standard R*-terrace of Z_5^2, seed " + std::to_string(seed));
    built = 2;
  } else {
    base = detail::prime_base(p, seed, prov);
    prov.route = "Z_p base";
  }
  for (; built < k; ++built) base = fgm_extend(base, p);
  base = fgm_extend_many(base, B);
  if (B.order() > 1 || k > 1) prov.steps.push_back("FGM extension to " + to_string(AbElem(base.group.factors())));
  return detail::finish_noncyclic(sd, na.lambda, base, p, {}, std::move(prov));
}

// Z_q x| (Z_p^2 x Z_3 x B) (nine = false) or Z_q x| (Z_p^2 x Z_9 x B).
inline SequencingCertificate sequence_theorem3(Int p, Int q, const AbelianSpec& B, bool nine, std::uint64_t seed = 0) {
  require(nt::is_prime(p) && p >= 5, Errc::InvalidArgument, "p must be a prime other than 2 and 3");
  require(nt::is_prime(q) && q >= 3, Errc::InvalidArgument, "q must be an odd prime");
  require(nt::powmod(p, 2, q) == 1, Errc::InvalidArgument, "need p^2 = 1 mod q");
  detail::check_b(B, p);
  auto na = build_nondiag_aut(p, 2, q);
  const Int three = nine ? 9 : 3;
  AbelianSpec rest = product(AbelianSpec::cyclic(three), B);
  SdSpec sd = detail::noncyclic_group(na, rest);
  Provenance prov;
  prov.pipeline = "theorem3";
  prov.seed = seed;
  prov.alpha_block = na.conjugated;
  prov.basis_change = na.basis_change;

  const Int n3 = three * p;
  RTerrace base;
  std::vector<std::pair<AbElem, AbElem>> prefer;
  if (!nine) {
    prov.route = "G1";
    auto w = walecki_r_terrace(n3);
    auto stars = check_r_terrace(w.group, w.entries).star_indices;
    bool at_2p = std::find(stars.begin(), stars.end(), static_cast<std::size_t>(2 * p)) != stars.end();
    require(at_2p, Errc::ConstructionFailed,
            detail::stage_error("theorem3", "base", "zig-zag R-terrace of Z_3p has no star at 2p"));
    w.star_index = static_cast<std::size_t>(2 * p);
    base = standardize(w);
    prov.steps.push_back("base: zig-zag R-terrace of Z_" + std::to_string(n3) + ", star at " + std::to_string(2 * p));
    base = fgm_extend(base, p);
    prefer.push_back({AbElem{3 * (p - 1) / 2, 1}, AbElem{3, p - 1}});
  } else {
    prov.route = "G2";
    RSearchConstraints c;
    c.star = true;
    c.element_orders = {{1, p}, {2, p}, {0, p}};
    RSearchOptions o;
    o.seed = seed;
    base = search_r_terrace(AbelianSpec::cyclic(n3), c, o);
    prov.searched = true;
    prov.steps.push_back("base: searched standard R*-terrace of Z_" + std::to_string(n3) +
                         " with a_1, a_2, a_last of order " + std::to_string(p) + ", seed " + std::to_string(seed));
    Int a1 = base.entries.front()[0];
    base = fgm_extend(base, p);
    prefer.push_back({AbElem{a1, 1}, AbElem{a1, p - 1}});
  }
  base = fgm_extend_many(base, B);
  // Move Z_{3p} x Z_p x B onto Z_p x Z_p x Z_3 x B.
  AbelianIso iso(base.group, sd.base());
  RTerrace moved{sd.base(), {}, base.star_index};
  for (const auto& x : base.entries) moved.entries.push_back(iso(x));
  for (auto& [x, y] : prefer) {
    std::vector<Int> cx = x.coords, cy = y.coords;
    cx.resize(base.group.rank(), 0);
    cy.resize(base.group.rank(), 0);
    x = iso(AbElem(cx));
    y = iso(AbElem(cy));
  }
  prov.steps.push_back("FGM extension and regrouping to " + to_string(AbElem(sd.base().factors())));
  return detail::finish_noncyclic(sd, na.lambda, moved, p, prefer, std::move(prov));
}

// ---------------------------------------------------------------------------
// Order driver.

enum class OrderOutcome { Certificate, NoGroupBasedCLS, TrivialOrder };

inline std::string_view outcome_name(OrderOutcome o) {
  switch (o) {
    case OrderOutcome::Certificate: return "Certificate";
    case OrderOutcome::NoGroupBasedCLS: return "NoGroupBasedCLS";
    case OrderOutcome::TrivialOrder: return "TrivialOrder";
  }
  return "?";
}

struct OrderResult {
  OrderOutcome outcome = OrderOutcome::NoGroupBasedCLS;
  nt::OrderClassification classification;
  std::optional<SequencingCertificate> certificate;
};

inline OrderResult sequence_order(Int n, std::uint64_t seed = 0) {
  require(n >= 1, Errc::InvalidArgument, "order must be positive");
  require(static_cast<std::size_t>(n) <= desk_limits().order, Errc::DeskScaleExceeded,
          "order " + std::to_string(n) + " exceeds the desk limit of " + std::to_string(desk_limits().order));
  OrderResult res;
  res.classification = nt::classify_order(n);
  switch (res.classification.verdict) {
    case nt::Verdict::Trivial:
      res.outcome = OrderOutcome::TrivialOrder;
      res.certificate = trivial_certificate();
      return res;
    case nt::Verdict::Even:
      res.outcome = OrderOutcome::Certificate;
      res.certificate = sequence_walecki(n);
      return res;
    case nt::Verdict::OddOnlyAbelian:
      res.outcome = OrderOutcome::NoGroupBasedCLS;
      return res;
    case nt::Verdict::OddNonabelianExists: break;
  }
  const auto& w = *res.classification.witness;
  res.outcome = OrderOutcome::Certificate;
  AbelianSpec B = AbelianSpec::cyclic(w.b);
  switch (w.kind) {
    case nt::PipelineKind::Cyclic: res.certificate = sequence_cyclic(w.q, w.m); break;
    case nt::PipelineKind::NonThree: res.certificate = sequence_non3(w.p, w.k, w.q, B, seed); break;
    case nt::PipelineKind::ThreeFactor: res.certificate = sequence_theorem3(w.p, w.q, B, w.nine, seed); break;
  }
  return res;
}

}  // namespace seqlatin

#endif  // SEQLATIN_PIPELINES_HPP
