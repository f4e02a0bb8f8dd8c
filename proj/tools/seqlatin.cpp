// seqlatin command-line front end.
//
// Exit codes: 0 success, 1 negative result, 2 usage error, 3 internal failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqlatin/seqlatin.hpp"

namespace {

using namespace seqlatin;
using io::json;

constexpr int kOk = 0, kNegative = 1, kUsage = 2, kInternal = 3;

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  unsigned jobs = 1;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  require(f.good(), Errc::InvalidArgument, "cannot write " + c.out);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// "7" or "5,7" -> factor list; empty -> trivial group.
AbelianSpec parse_b(const std::string& text) {
  if (text.empty() || text == "1") return AbelianSpec{1};
  std::vector<Int> f;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      f.push_back(std::stoll(item, &used));
      require(used == item.size(), Errc::ParseError, "");
    } catch (const std::exception&) {
      fail(Errc::ParseError, "--b expects a factor list such as 7 or 5,7");
    }
  }
  return AbelianSpec(f);
}

int code_for(const Error& e) {
  switch (e.code()) {
    case Errc::InvalidArgument:
    case Errc::ParseError:
    case Errc::DimensionMismatch:
    case Errc::DeskScaleExceeded:
    case Errc::UnsupportedDecomposition:
    case Errc::Diagonalisable:
    case Errc::NotCoprime:
    case Errc::OddOrder: return kUsage;
    case Errc::NotFound:
    case Errc::NotATerrace: return kNegative;
    default: return kInternal;
  }
}

int cmd_classify(Int n) {
  require(n >= 1, Errc::InvalidArgument, "order must be positive");
  auto c = nt::classify_order(n);
  std::cout << dump(io::to_json(c, n));
  std::cerr << "order " << n << ": " << nt::verdict_name(c.verdict);
  if (c.witness) std::cerr << " via " << nt::pipeline_name(c.witness->kind) << " (q=" << c.witness->q << ")";
  std::cerr << "\n";
  return kOk;
}

struct SequenceArgs {
  std::optional<Int> order, q, m, p;
  std::optional<int> k;
  std::string b;
  bool nine = false;
};

int cmd_sequence(const SequenceArgs& a, const Common& c) {
  std::optional<SequencingCertificate> cert;
  if (a.order) {
    require(!a.q && !a.m && !a.p && !a.k, Errc::InvalidArgument, "--order cannot be combined with --q/--m/--p/--k");
    auto r = sequence_order(*a.order, c.seed);
    if (r.outcome == OrderOutcome::NoGroupBasedCLS) {
      std::cout << dump({{"schema", io::kSchema}, {"n", *a.order}, {"outcome", outcome_name(r.outcome)}});
      std::cerr << "order " << *a.order << ": no group-based complete Latin square exists\n";
      return kNegative;
    }
    cert = r.certificate;
  } else if (a.q && a.m) {
    require(!a.p && !a.k, Errc::InvalidArgument, "--m selects the cyclic construction; drop --p/--k");
    cert = sequence_cyclic(*a.q, *a.m);
  } else if (a.p && a.q) {
    auto B = parse_b(a.b);
    if (a.k && !a.nine)
      cert = sequence_non3(*a.p, *a.k, *a.q, B, c.seed);
    else
      cert = sequence_theorem3(*a.p, *a.q, B, a.nine, c.seed);
  } else {
    fail(Errc::InvalidArgument, "give --order N, or --q Q --m M, or --p P --q Q [--k K] [--b B] [--nine]");
  }
  auto chk = verify_certificate(*cert);
  require(chk.ok, Errc::ConstructionFailed, "certificate failed verification: " + chk.reason);
  emit(c, dump(io::to_json(*cert)));
  std::cerr << "verified directed terrace of order " << certificate_order(*cert) << " ("
            << cert->provenance.pipeline << (cert->provenance.route.empty() ? "" : ", " + cert->provenance.route)
            << ")\n";
  return kOk;
}

int cmd_latin(std::optional<Int> order, const std::string& cert_path, const Common& c) {
  LatinSquare sq;
  if (order) {
    auto r = sequence_order(*order, c.seed);
    if (!r.certificate) {
      std::cerr << "order " << *order << ": no group-based complete Latin square exists\n";
      return kNegative;
    }
    sq = terrace_to_complete_square(group_of(*r.certificate), r.certificate->terrace);
  } else {
    require(!cert_path.empty(), Errc::InvalidArgument, "give --order N or --certificate file.json");
    auto lc = io::certificate_from_json(io::read_json_file(cert_path));
    sq = terrace_to_complete_square(lc.group, lc.terrace);
  }
  auto rep = completeness_report(sq);
  require(rep.is_complete, Errc::ConstructionFailed, "constructed square is not complete");
  if (c.format == "csv")
    emit(c, to_csv(sq));
  else
    emit(c, dump(io::to_json(sq, rep)));
  std::cerr << sq.n << "x" << sq.n << " complete Latin square"
            << (c.out.empty() ? "" : " written to " + c.out) << "\n";
  return kOk;
}

int cmd_verify(const std::string& square, const std::string& cert) {
  require(square.empty() != cert.empty(), Errc::InvalidArgument, "give exactly one of --square or --certificate");
  if (!square.empty()) {
    std::ifstream in(square);
    require(in.good(), Errc::InvalidArgument, "cannot open " + square);
    auto sq = read_csv(in);
    auto rep = completeness_report(sq);
    json j = io::to_json(rep);
    j["n"] = sq.n;
    std::cout << dump(j);
    std::cerr << square << ": " << (rep.is_complete ? "complete" : "not complete") << "\n";
    return rep.is_complete ? kOk : kNegative;
  }
  auto lc = io::certificate_from_json(io::read_json_file(cert));
  auto chk = io::verify_loaded(lc);
  json j = {{"schema", io::kSchema}, {"order", lc.group.order()}, {"is_directed_terrace", chk.ok}};
  if (!chk.ok) j["reason"] = chk.reason;
  std::cout << dump(j);
  std::cerr << cert << ": " << (chk.ok ? "valid" : "invalid: " + chk.reason) << "\n";
  return chk.ok ? kOk : kNegative;
}

int cmd_graceful(Int k, std::optional<Int> first, bool all) {
  json j = {{"schema", io::kSchema}, {"k", k}};
  if (all) {
    auto ps = enumerate_graceful(k);
    json arr = json::array();
    for (const auto& p : ps) arr.push_back(p.values);
    j["count"] = ps.size();
    j["permutations"] = arr;
    std::cerr << ps.size() << " graceful permutations of 1.." << k << "\n";
  } else {
    auto g = first ? graceful_with_first(k, *first) : walecki_graceful(k);
    j["permutation"] = g.values;
    std::vector<Int> r;
    for (const auto& x : graceful_to_r_terrace(g).entries) r.push_back(x[0]);
    j["r_terrace"] = r;
  }
  std::cout << dump(j);
  return kOk;
}

int cmd_search(const std::string& group_path, bool exhaustive, std::size_t limit, bool rterrace, bool star,
               const Common& c) {
  auto g = io::group_from_json(io::read_json_file(group_path));
  if (exhaustive) {
    auto r = exhaustive_sequencings(g, limit, c.jobs);
    json arr = json::array();
    for (const auto& t : r.terraces) arr.push_back(io::arrangement_json(g, t));
    std::cout << dump({{"schema", io::kSchema},
                       {"group", io::group_to_json(g)},
                       {"count", r.terraces.size()},
                       {"exhausted", r.exhausted},
                       {"terraces", arr}});
    std::cerr << r.terraces.size() << " identity-anchored directed terraces" << (r.exhausted ? " (complete)" : "")
              << "\n";
    return r.terraces.empty() ? kNegative : kOk;
  }
  require(rterrace, Errc::InvalidArgument, "choose --exhaustive or --rterrace");
  const auto* ag = std::get_if<AbelianGroup>(&g.variant());
  require(ag != nullptr, Errc::InvalidArgument, "R-terrace search needs an abelian group");
  RSearchConstraints cons;
  cons.star = star;
  RSearchOptions opt;
  opt.seed = c.seed;
  opt.portfolio = static_cast<int>(c.jobs);
  auto t = search_r_terrace(ag->spec(), cons, opt);
  json j = {{"schema", io::kSchema}, {"group", io::to_json(ag->spec())}, {"entries", io::to_json(t.entries)}};
  if (t.star_index) j["star_index"] = *t.star_index;
  std::cout << dump(j);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequencings, directed terraces and complete Latin squares"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--seed", common.seed, "seed for every search");
    sc->add_option("--out", common.out, "write output here instead of stdout");
    sc->add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sc->add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  Int classify_n = 0;
  auto* classify = app.add_subcommand("classify", "decide whether order n admits a group-based complete Latin square");
  classify->add_option("n", classify_n, "order")->required();

  SequenceArgs sa;
  auto* sequence = app.add_subcommand("sequence", "construct and verify a sequencing");
  sequence->add_option("--order", sa.order, "group order");
  sequence->add_option("--q", sa.q, "prime order of the acting automorphism");
  sequence->add_option("--m", sa.m, "order of the cyclic base Z_m");
  sequence->add_option("--p", sa.p, "prime p of the Z_p^k block");
  sequence->add_option("--k", sa.k, "rank k of the Z_p^k block");
  sequence->add_option("--b", sa.b, "cyclic factors of B, comma separated");
  sequence->add_flag("--nine", sa.nine, "use Z_9 instead of Z_3 next to Z_p^2");
  add_common(sequence);

  std::optional<Int> latin_order;
  std::string latin_cert;
  auto* latin = app.add_subcommand("latin", "build a complete Latin square");
  latin->add_option("--order", latin_order, "order n");
  latin->add_option("--certificate", latin_cert, "certificate JSON to build from");
  add_common(latin);

  std::string verify_square, verify_cert;
  auto* verify = app.add_subcommand("verify", "check a square (CSV) or a certificate (JSON)");
  verify->add_option("--square", verify_square, "CSV square");
  verify->add_option("--certificate", verify_cert, "certificate JSON");

  Int gk = 0;
  std::optional<Int> gfirst;
  bool gall = false;
  auto* graceful = app.add_subcommand("graceful", "graceful permutations of 1..k");
  graceful->add_option("--k", gk, "k")->required();
  graceful->add_option("--first", gfirst, "required first element");
  graceful->add_flag("--all", gall, "enumerate all of them");

  std::string sgroup;
  bool sexh = false, srt = false, sstar = false;
  std::size_t slimit = 0;
  auto* search = app.add_subcommand("search", "brute-force and constrained searches");
  search->add_option("--group", sgroup, "group descriptor JSON")->required();
  search->add_flag("--exhaustive", sexh, "enumerate identity-anchored directed terraces");
  search->add_option("--limit", slimit, "stop after this many (0 = all)");
  search->add_flag("--rterrace", srt, "search for a directed R-terrace");
  search->add_flag("--star", sstar, "require a standard R*-terrace");
  add_common(search);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*classify) return cmd_classify(classify_n);
    if (*sequence) return cmd_sequence(sa, common);
    if (*latin) return cmd_latin(latin_order, latin_cert, common);
    if (*verify) return cmd_verify(verify_square, verify_cert);
    if (*graceful) return cmd_graceful(gk, gfirst, gall);
    if (*search) return cmd_search(sgroup, sexh, slimit, srt, sstar, common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    int rc = code_for(e);
    if (rc == kUsage) std::cerr << "run with --help for usage\n";
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
