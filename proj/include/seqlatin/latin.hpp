#ifndef SEQLATIN_LATIN_HPP
#define SEQLATIN_LATIN_HPP

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "seqlatin/error.hpp"
#include "seqlatin/finite_group.hpp"
#include "seqlatin/group.hpp"

namespace seqlatin {

struct TerraceCheck {
  bool ok = false;
  std::string reason;
  std::vector<std::size_t> quotients;  // b_i = a_i^{-1} a_{i+1}
};

// Checks that the arrangement lists every element once and that its left
// quotients hit every non-identity element once.
template <FiniteGroup G>
TerraceCheck check_directed_terrace(const G& g, const std::vector<std::size_t>& a) {
  TerraceCheck r;
  const std::size_t n = g.order();
  if (a.size() != n) {
    r.reason = "arrangement has " + std::to_string(a.size()) + " entries, group has " + std::to_string(n);
    return r;
  }
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] >= n) {
      r.reason = "entry " + std::to_string(i) + " is not a group element";
      return r;
    }
    if (seen[a[i]]) {
      r.reason = "element " + g.label(a[i]) + " repeated at position " + std::to_string(i);
      return r;
    }
    seen[a[i]] = 1;
  }
  std::fill(seen.begin(), seen.end(), 0);
  seen[g.identity_index()] = 1;
  r.quotients.reserve(n ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto b = g.mul_index(g.inv_index(a[i]), a[i + 1]);
    r.quotients.push_back(b);
    if (seen[b]) {
      r.reason = "quotient " + g.label(b) + " repeated at position " + std::to_string(i);
      return r;
    }
    seen[b] = 1;
  }
  r.ok = true;
  return r;
}

template <FiniteGroup G>
bool is_directed_terrace(const G& g, const std::vector<std::size_t>& a) {
  return check_directed_terrace(g, a).ok;
}

inline std::vector<std::size_t> to_indices(const AbelianSpec& s, const std::vector<AbElem>& a) {
  std::vector<std::size_t> out;
  out.reserve(a.size());
  for (const auto& x : a) {
    s.check(x);
    out.push_back(s.index_of(x));
  }
  return out;
}

inline std::vector<std::size_t> to_indices(const SdSpec& s, const std::vector<SdElem>& a) {
  std::vector<std::size_t> out;
  out.reserve(a.size());
  for (const auto& x : a) {
    s.check(x);
    out.push_back(s.index_of(x));
  }
  return out;
}

inline bool is_directed_terrace(const SdSpec& s, const std::vector<SdElem>& a) {
  return check_directed_terrace(SemidirectGroup(s), to_indices(s, a)).ok;
}

inline bool is_directed_terrace(const AbelianSpec& s, const std::vector<AbElem>& a) {
  return check_directed_terrace(AbelianGroup(s), to_indices(s, a)).ok;
}

// 0, n-1, 1, n-2, ..., n/2 over Z_n.
inline std::vector<Int> walecki_terrace(Int n) {
  require(n >= 2, Errc::InvalidArgument, "n must be at least 2");
  require(n % 2 == 0, Errc::OddOrder, "the zig-zag terrace needs even n");
  std::vector<Int> v;
  v.reserve(static_cast<std::size_t>(n));
  Int lo = 0, hi = n - 1;
  while (lo <= hi) {
    v.push_back(lo++);
    if (lo <= hi) v.push_back(hi--);
  }
  return v;
}

struct LatinSquare {
  std::size_t n = 0;
  std::vector<std::size_t> grid;  // row-major symbol indices
  std::vector<std::size_t> row_order, col_order;
  std::vector<std::string> labels;  // symbol labels, may be empty

  std::size_t at(std::size_t r, std::size_t c) const { return grid[r * n + c]; }
  std::size_t& at(std::size_t r, std::size_t c) { return grid[r * n + c]; }
  std::string label(std::size_t s) const { return labels.empty() ? std::to_string(s) : labels[s]; }
};

// Cayley table with rows the inverses of the terrace and columns the terrace.
template <FiniteGroup G>
LatinSquare terrace_to_complete_square(const G& g, const std::vector<std::size_t>& terrace) {
  auto chk = check_directed_terrace(g, terrace);
  require(chk.ok, Errc::NotATerrace, "not a directed terrace: " + chk.reason);
  LatinSquare sq;
  sq.n = g.order();
  sq.col_order = terrace;
  for (auto x : terrace) sq.row_order.push_back(g.inv_index(x));
  sq.grid.resize(sq.n * sq.n);
  for (std::size_t i = 0; i < sq.n; ++i)
    for (std::size_t j = 0; j < sq.n; ++j) sq.at(i, j) = g.mul_index(sq.row_order[i], sq.col_order[j]);
  sq.labels.reserve(sq.n);
  for (std::size_t s = 0; s < sq.n; ++s) sq.labels.push_back(g.label(s));
  return sq;
}

struct Violation {
  std::string property;  // "latin", "row", "column"
  std::size_t x = 0, y = 0;  // symbols involved
  std::size_t r1 = 0, c1 = 0, r2 = 0, c2 = 0;  // the two clashing positions
};

struct CompletenessReport {
  bool is_latin = false;
  bool is_row_complete = false;
  bool is_column_complete = false;
  bool is_complete = false;
  std::optional<Violation> witness;
};

namespace detail {

// Ordered-pair occurrence table; stores the first position + 1.
inline bool adjacency_unique(const LatinSquare& sq, bool rows, Violation& w) {
  const std::size_t n = sq.n;
  std::vector<std::size_t> first(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b + 1 < n; ++b) {
      std::size_t r = rows ? a : b, c = rows ? b : a;
      std::size_t r2 = rows ? r : r + 1, c2 = rows ? c + 1 : c;
      std::size_t x = sq.at(r, c), y = sq.at(r2, c2);
      auto& slot = first[x * n + y];
      if (slot) {
        std::size_t pr = (slot - 1) / n, pc = (slot - 1) % n;
        w = {rows ? "row" : "column", x, y, pr, pc, r, c};
        return false;
      }
      slot = r * n + c + 1;
    }
  return true;
}

}  // namespace detail

inline CompletenessReport completeness_report(const LatinSquare& sq) {
  CompletenessReport rep;
  const std::size_t n = sq.n;
  require(sq.grid.size() == n * n, Errc::DimensionMismatch, "grid size differs from n*n");
  rep.is_latin = true;
  std::vector<std::size_t> pos(n);
  for (int pass = 0; pass < 2 && rep.is_latin; ++pass)
    for (std::size_t a = 0; a < n && rep.is_latin; ++a) {
      std::fill(pos.begin(), pos.end(), 0);
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t r = pass == 0 ? a : b, c = pass == 0 ? b : a;
        std::size_t s = sq.at(r, c);
        if (s >= n) {
          rep.is_latin = false;
          rep.witness = Violation{"latin", s, s, r, c, r, c};
          break;
        }
        if (pos[s]) {
          std::size_t p = pos[s] - 1;
          rep.is_latin = false;
          rep.witness = Violation{"latin", s, s, pass == 0 ? a : p, pass == 0 ? p : a, r, c};
          break;
        }
        pos[s] = b + 1;
      }
    }
  if (!rep.is_latin) return rep;
  Violation w;
  rep.is_row_complete = detail::adjacency_unique(sq, true, w);
  if (!rep.is_row_complete) rep.witness = w;
  rep.is_column_complete = detail::adjacency_unique(sq, false, w);
  if (!rep.is_column_complete && !rep.witness) rep.witness = w;
  rep.is_complete = rep.is_latin && rep.is_row_complete && rep.is_column_complete;
  return rep;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  require(!quoted, Errc::ParseError, "unterminated quote in CSV line");
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const LatinSquare& sq) {
  for (std::size_t r = 0; r < sq.n; ++r) {
    for (std::size_t c = 0; c < sq.n; ++c) {
      if (c) os << ',';
      os << detail::csv_field(sq.label(sq.at(r, c)));
    }
    os << '\n';
  }
}

// Reads n rows of n labels.  Symbols are numbered by first appearance.
inline LatinSquare read_csv(std::istream& is) {
  LatinSquare sq;
  std::map<std::string, std::size_t> ids;
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    rows.push_back(detail::csv_split(line));
  }
  sq.n = rows.size();
  sq.grid.reserve(sq.n * sq.n);
  for (const auto& row : rows) {
    require(row.size() == sq.n, Errc::ParseError,
            "CSV square is not square: row of " + std::to_string(row.size()) + " in " + std::to_string(sq.n) + " rows");
    for (const auto& f : row) {
      auto [it, fresh] = ids.emplace(f, ids.size());
      if (fresh) sq.labels.push_back(f);
      sq.grid.push_back(it->second);
    }
  }
  return sq;
}

inline std::string to_csv(const LatinSquare& sq) {
  std::ostringstream os;
  write_csv(os, sq);
  return os.str();
}

}  // namespace seqlatin

#endif  // SEQLATIN_LATIN_HPP
