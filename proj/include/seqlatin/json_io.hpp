#ifndef SEQLATIN_JSON_IO_HPP
#define SEQLATIN_JSON_IO_HPP

#include <cstddef>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "seqlatin/error.hpp"
#include "seqlatin/finite_group.hpp"
#include "seqlatin/group.hpp"
#include "seqlatin/latin.hpp"
#include "seqlatin/numtheory.hpp"
#include "seqlatin/pipelines.hpp"

namespace seqlatin::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "1";

// ---------------------------------------------------------------------------
// Matrices and automorphisms.

inline json to_json(const ModMatrix& m) { return json(m.rows()); }

inline json to_json(const Automorphism& a) {
  json blocks = json::array();
  for (const auto& b : a.blocks()) {
    if (const auto* s = std::get_if<ScalarBlock>(&b))
      blocks.push_back({{"scalar", {{"factor", s->factor}, {"unit", s->unit}}}});
    else {
      const auto& mb = std::get<MatrixBlock>(b);
      blocks.push_back({{"matrix", {{"first", mb.first}, {"rows", to_json(mb.matrix)}}}});
    }
  }
  return blocks;
}

inline Automorphism automorphism_from_json(const AbelianSpec& spec, const json& j) {
  require(j.is_array(), Errc::ParseError, "alpha must be a list of blocks");
  std::vector<AutBlock> blocks;
  for (const auto& b : j) {
    if (b.contains("scalar")) {
      blocks.emplace_back(ScalarBlock{b["scalar"].at("factor").get<std::size_t>(), b["scalar"].at("unit").get<Int>()});
    } else if (b.contains("matrix")) {
      auto first = b["matrix"].at("first").get<std::size_t>();
      require(first < spec.rank(), Errc::ParseError, "matrix block outside the group");
      auto rows = b["matrix"].at("rows").get<std::vector<std::vector<Int>>>();
      blocks.emplace_back(MatrixBlock{first, ModMatrix(rows, spec.factor(first))});
    } else {
      fail(Errc::ParseError, "unknown automorphism block");
    }
  }
  return Automorphism(spec, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Group descriptors.

inline json to_json(const AbelianSpec& s) { return {{"abelian", s.factors()}}; }

inline json to_json(const SdSpec& s) {
  return {{"semidirect", {{"s", s.s()}, {"base", s.base().factors()}, {"alpha", to_json(s.alpha())}}}};
}

inline json to_json(const TableGroup& g) {
  json t = {{"identity", g.identity_index()}, {"mul", g.table()}};
  if (!g.names().empty()) t["names"] = g.names();
  return {{"table", t}};
}

inline AnyGroup group_from_json(const json& j) {
  try {
    if (j.contains("abelian")) return AnyGroup(AbelianSpec(j["abelian"].get<std::vector<Int>>()));
    if (j.contains("semidirect")) {
      const auto& s = j["semidirect"];
      AbelianSpec base(s.at("base").get<std::vector<Int>>());
      return AnyGroup(SdSpec(s.at("s").get<Int>(), base, automorphism_from_json(base, s.at("alpha"))));
    }
    if (j.contains("table")) {
      const auto& t = j["table"];
      std::vector<std::string> names;
      if (t.contains("names")) names = t["names"].get<std::vector<std::string>>();
      return AnyGroup(TableGroup(t.at("mul").get<std::vector<std::vector<std::size_t>>>(),
                                 t.value("identity", std::size_t{0}), names));
    }
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("bad group descriptor: ") + e.what());
  }
  fail(Errc::ParseError, "group descriptor needs one of abelian, semidirect, table");
}

inline json group_to_json(const AnyGroup& g) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TableGroup>)
          return to_json(x);
        else
          return to_json(x.spec());
      },
      g.variant());
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Elements.

inline json to_json(const AbElem& x) { return json(x.coords); }
inline json to_json(const SdElem& x) { return json::array({x.u, to_json(x.v)}); }

inline json element_json(const AnyGroup& g, std::size_t idx) {
  return std::visit(
      [&](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TableGroup>)
          return x.names().empty() ? json(idx) : json(x.names()[idx]);
        else
          return to_json(x.spec().element_at(idx));
      },
      g.variant());
}

inline std::size_t element_index(const AnyGroup& g, const json& e) {
  try {
    return std::visit(
        [&](const auto& x) -> std::size_t {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, TableGroup>) {
            if (e.is_number_unsigned()) {
              auto i = e.get<std::size_t>();
              require(i < x.order(), Errc::ParseError, "element index out of range");
              return i;
            }
            const auto& names = x.names();
            auto s = e.get<std::string>();
            for (std::size_t i = 0; i < names.size(); ++i)
              if (names[i] == s) return i;
            fail(Errc::ParseError, "unknown element name " + s);
          } else if constexpr (std::is_same_v<T, AbelianGroup>) {
            AbElem v(e.get<std::vector<Int>>());
            x.spec().check(v);
            return x.spec().index_of(v);
          } else {
            require(e.is_array() && e.size() == 2, Errc::ParseError, "semidirect elements are [u, [v...]]");
            SdElem v{e[0].get<Int>(), AbElem(e[1].get<std::vector<Int>>())};
            x.spec().check(v);
            return x.spec().index_of(v);
          }
        },
        g.variant());
  } catch (const json::exception& ex) {
    fail(Errc::ParseError, std::string("bad element: ") + ex.what());
  } catch (const Error& ex) {
    if (ex.code() == Errc::ParseError) throw;
    fail(Errc::ParseError, std::string("bad element: ") + ex.what());
  }
}

inline json arrangement_json(const AnyGroup& g, const std::vector<std::size_t>& a) {
  json out = json::array();
  for (auto i : a) out.push_back(element_json(g, i));
  return out;
}

inline std::vector<std::size_t> arrangement_from_json(const AnyGroup& g, const json& j) {
  require(j.is_array(), Errc::ParseError, "arrangement must be a list");
  std::vector<std::size_t> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(element_index(g, e));
  return out;
}

inline json to_json(const std::vector<AbElem>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

// ---------------------------------------------------------------------------
// Classification and certificates.

inline json to_json(const nt::OrderClassification& c, Int n) {
  json j = {{"schema", kSchema}, {"n", n}, {"verdict", nt::verdict_name(c.verdict)}};
  if (c.witness) {
    const auto& w = *c.witness;
    json wj = {{"pipeline", nt::pipeline_name(w.kind)}, {"case", w.witness_case}, {"q", w.q}, {"m", w.m}};
    if (w.p) wj["p"] = w.p;
    if (w.kind != nt::PipelineKind::Cyclic) {
      wj["k"] = w.k;
      wj["b"] = w.b;
    }
    if (w.kind == nt::PipelineKind::ThreeFactor) wj["nine"] = w.nine;
    j["witness"] = wj;
  }
  return j;
}

inline json to_json(const Provenance& p) {
  json j = {{"pipeline", p.pipeline}};
  if (!p.route.empty()) j["route"] = p.route;
  if (p.lambda) j["lambda"] = p.lambda;
  if (p.unit) j["r"] = *p.unit;
  if (p.scale) j["scale"] = *p.scale;
  if (p.alpha_block) j["alpha_block"] = to_json(*p.alpha_block);
  if (p.basis_change) j["basis_change"] = to_json(*p.basis_change);
  if (p.graceful) j["graceful"] = *p.graceful;
  if (p.r_terrace) {
    j["r_terrace"] = {{"group", p.r_terrace->group.factors()}, {"entries", to_json(p.r_terrace->entries)}};
    if (p.r_terrace->star_index) j["r_terrace"]["star_index"] = *p.r_terrace->star_index;
  }
  if (p.hash) j["hash_harmonious"] = to_json(p.hash->entries);
  j["steps"] = p.steps;
  j["searched"] = p.searched;
  if (p.searched) j["seed"] = p.seed;
  return j;
}

inline json to_json(const SequencingCertificate& c) {
  auto g = group_of(c);
  json j = {{"schema", kSchema}};
  j["group"] = std::visit([](const auto& s) { return to_json(s); }, c.group);
  j["order"] = g.order();
  j["terrace"] = arrangement_json(g, c.terrace);
  j["sequencing"] = arrangement_json(g, c.sequencing);
  j["provenance"] = to_json(c.provenance);
  return j;
}

// Group, terrace and sequencing; provenance is carried as opaque JSON.
struct LoadedCertificate {
  AnyGroup group;
  std::vector<std::size_t> terrace, sequencing;
  json provenance;
};

inline LoadedCertificate certificate_from_json(const json& j) {
  require(j.is_object(), Errc::ParseError, "certificate must be a JSON object");
  require(j.value("schema", std::string()) == kSchema, Errc::ParseError, "unsupported certificate schema");
  require(j.contains("group") && j.contains("terrace"), Errc::ParseError, "certificate needs group and terrace");
  auto g = group_from_json(j["group"]);
  LoadedCertificate out{g, arrangement_from_json(g, j["terrace"]), {}, j.value("provenance", json::object())};
  if (j.contains("sequencing")) out.sequencing = arrangement_from_json(g, j["sequencing"]);
  return out;
}

inline TerraceCheck verify_loaded(const LoadedCertificate& c) {
  auto chk = check_directed_terrace(c.group, c.terrace);
  if (chk.ok && !c.sequencing.empty() && chk.quotients != c.sequencing) {
    chk.ok = false;
    chk.reason = "stored sequencing differs from the terrace quotients";
  }
  return chk;
}

// ---------------------------------------------------------------------------
// Squares.

inline json to_json(const CompletenessReport& r) {
  json j = {{"is_latin", r.is_latin},
            {"is_row_complete", r.is_row_complete},
            {"is_column_complete", r.is_column_complete},
            {"is_complete", r.is_complete}};
  if (r.witness) {
    const auto& w = *r.witness;
    j["witness"] = {{"property", w.property},
                    {"symbols", {w.x, w.y}},
                    {"first", {w.r1, w.c1}},
                    {"second", {w.r2, w.c2}}};
  }
  return j;
}

inline json to_json(const LatinSquare& sq, const CompletenessReport& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < sq.n; ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < sq.n; ++c) row.push_back(sq.label(sq.at(i, c)));
    rows.push_back(row);
  }
  json ro = json::array(), co = json::array();
  for (auto x : sq.row_order) ro.push_back(sq.label(x));
  for (auto x : sq.col_order) co.push_back(sq.label(x));
  return {{"schema", kSchema}, {"n", sq.n}, {"row_order", ro}, {"col_order", co}, {"square", rows},
          {"report", to_json(r)}};
}

}  // namespace seqlatin::io

#endif  // SEQLATIN_JSON_IO_HPP
