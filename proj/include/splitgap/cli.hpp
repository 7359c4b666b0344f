#pragma once

// Command-line front end. run() is the whole program, parameterized by its
// streams so that tests can drive it in-process.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "splitgap/conjscan.hpp"
#include "splitgap/fatpoints.hpp"
#include "splitgap/io.hpp"
#include "splitgap/lattice.hpp"
#include "splitgap/param.hpp"
#include "splitgap/splitting.hpp"

namespace splitgap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

struct Config {
  u64 prime = kDefaultPrime;
  u64 seed = 1;
  std::string format = "json";
};

namespace detail {

inline std::optional<u64> env_u64(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  std::size_t used = 0;
  const unsigned long long x = std::stoull(v, &used);
  if (used != std::string(v).size()) throw DimensionError(std::string("bad value in ") + name);
  return static_cast<u64>(x);
}

inline std::string join(const std::vector<int>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

inline std::string type_text(const DivClass& c) { return std::to_string(c.d) + ";" + join(c.m, ","); }

inline void emit(std::ostream& out, const Config& cfg, const json& j, const std::vector<std::pair<std::string, std::string>>& table) {
  if (cfg.format == "json") {
    out << j.dump(2) << "\n";
    return;
  }
  std::size_t width = 0;
  for (const auto& [k, v] : table) width = std::max(width, k.size());
  for (const auto& [k, v] : table) out << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------

inline int cmd_exc_enum(std::ostream& out, const Config& cfg, int r, std::optional<int> dmax, bool count_only) {
  const auto types = enum_exceptional(r, dmax);
  u64 with_perms = 0;
  for (const auto& t : types) with_perms += permutation_count(t);
  if (count_only) {
    out << types.size() << "\n";
    return kExitOk;
  }
  if (cfg.format == "json") {
    json list = json::array();
    for (const auto& t : types) list.push_back(to_json(t));
    json j = {{"r", r}, {"dmax", dmax ? json(*dmax) : json(nullptr)}, {"count", types.size()},
              {"classes_with_permutations", with_perms}, {"types", list}};
    out << j.dump(2) << "\n";
  } else {
    for (const auto& t : types) out << t.d << " " << join(t.m) << "\n";
  }
  return kExitOk;
}

inline int cmd_classify(std::ostream& out, const Config& cfg, const DivClass& c) {
  const NumType t(c);
  json j = {{"type", to_json(c)},
            {"r", c.r()},
            {"self_intersection", self_intersection(c)},
            {"canonical_degree", canonical_degree(c)},
            {"exceptional", is_exceptional_class(c)},
            {"smooth_rational", smooth_rational_numerics_ok(c)}};
  std::vector<std::pair<std::string, std::string>> table{
      {"type", type_text(c)},
      {"D^2", std::to_string(self_intersection(c))},
      {"K.D", std::to_string(canonical_degree(c))},
      {"exceptional", yes_no(is_exceptional_class(c))},
      {"smooth rational", yes_no(smooth_rational_numerics_ok(c))}};
  if (c.d >= 1) {
    const bool asc = is_ascenzi(t);
    j["ascenzi"] = asc;
    table.emplace_back("ascenzi", yes_no(asc));
    if (asc) {
      const auto v = ascenzi_classify(t);
      j["predicted_split"] = to_json(SplitType{v.a, v.b});
      table.emplace_back("predicted split", to_string(SplitType{v.a, v.b}));
    }
  } else {
    j["ascenzi"] = true;
    table.emplace_back("ascenzi", "yes (point)");
  }
  const auto sa = semi_adjoint(c);
  j["semi_adjoint"] = sa ? to_json(*sa) : json(nullptr);
  table.emplace_back("semi-adjoint", sa ? type_text(*sa) : "none");
  if (c.d >= 1 && smooth_rational_numerics_ok(c)) {
    const BaseReduction red = reduce_to_base(c);
    j["reduction"] = {{"word", to_json(red.word)}, {"base", to_json(red.base)}};
    table.emplace_back("reduction length", std::to_string(red.word.size()));
    table.emplace_back("base", type_text(red.base));
  }
  if (c.r() >= 3 && c.r() <= 8) {
    const auto orbit = orbit_closure(c, std::nullopt);
    u64 classes = 0;
    for (const auto& o : orbit) classes += permutation_count(o);
    j["orbit"] = {{"types", orbit.size()}, {"classes", classes}};
    table.emplace_back("orbit types", std::to_string(orbit.size()));
    table.emplace_back("orbit classes", std::to_string(classes));
  }
  emit(out, cfg, j, table);
  return kExitOk;
}

inline int cmd_param(std::ostream& out, const Config& cfg, const DivClass& c, bool trace) {
  const PrimeField f(cfg.prime);
  const ParamResult res = parameterize(c, random_points(c.r(), cfg.seed, f), cfg.seed);
  json j = {{"type", to_json(c)},      {"seed", cfg.seed},         {"p", cfg.prime},
            {"attempts", res.attempts}, {"points", points_json(res.points.points)},
            {"word", to_json(res.word)}, {"base", to_json(res.base)}, {"param", to_json(res.phi)}};
  if (trace) {
    json steps = json::array();
    for (const auto& st : res.trace) steps.push_back(to_json(st));
    j["trace"] = steps;
  }
  std::vector<std::pair<std::string, std::string>> table{{"type", type_text(c)}, {"seed", std::to_string(cfg.seed)},
                                                          {"attempts", std::to_string(res.attempts)},
                                                          {"reduction length", std::to_string(res.word.size())}};
  for (std::size_t i = 0; i < 3; ++i) table.emplace_back("phi" + std::to_string(i), to_string(res.phi[i]));
  emit(out, cfg, j, table);
  return kExitOk;
}

inline int cmd_split(std::ostream& out, const Config& cfg, const DivClass& c) {
  const PrimeField f(cfg.prime);
  const ParamResult res = parameterize(c, random_points(c.r(), cfg.seed, f), cfg.seed);
  const SplitReport rep = split_all_methods(res.phi);
  if (!rep.methods_agree) throw InvariantError("splitting methods disagree");
  json j = {{"type", to_json(c)}, {"seed", cfg.seed}, {"p", cfg.prime}, {"a", rep.split.a}, {"b", rep.split.b},
            {"gap", rep.split.gap()}};
  j["method"] = c.d >= 2 ? "moving_lines+saturation+min_syzygy" : "line";
  j["sigma"] = c.d >= 2 ? json(rep.sigma) : json(nullptr);
  j["syzygy"] = to_json(rep.syzygy);
  const NumType t(c);
  j["ascenzi"] = is_ascenzi(t);
  emit(out, cfg, j,
       {{"type", type_text(c)},
        {"seed", std::to_string(cfg.seed)},
        {"split", to_string(rep.split)},
        {"gap", std::to_string(rep.split.gap())},
        {"sigma", c.d >= 2 ? std::to_string(rep.sigma) : "-"},
        {"syzygy degree", std::to_string(rep.syzygy.degree)},
        {"ascenzi", yes_no(is_ascenzi(t))}});
  return kExitOk;
}

inline int cmd_fatpoints(std::ostream& out, const Config& cfg, const std::vector<int>& mults, std::pair<int, int> krange) {
  const PrimeField f(cfg.prime);
  const FatScheme z = random_fat_scheme(mults, cfg.seed, f);
  const int a = alpha(z);
  json reports = json::array();
  std::vector<std::pair<std::string, std::string>> table{{"mults", join(mults, ",")},
                                                         {"length", std::to_string(z.length())},
                                                         {"alpha", std::to_string(a)},
                                                         {"dim I_alpha", std::to_string(ideal_dim(z, a))}};
  for (int k = krange.first; k <= krange.second; ++k) {
    const MuReport r = mu_rank(z, k);
    reports.push_back(to_json(r));
    table.emplace_back("k=" + std::to_string(k),
                       "dim I_k " + std::to_string(r.dim_k) + ", dim I_k+1 " + std::to_string(r.dim_next) + ", rank " +
                           std::to_string(r.rank) + ", ker " + std::to_string(r.kernel) + ", coker " + std::to_string(r.cokernel));
  }
  json j = {{"mults", mults},  {"length", z.length()}, {"seed", cfg.seed}, {"p", cfg.prime},
            {"alpha", a},      {"dim_alpha", ideal_dim(z, a)}, {"reports", reports}};
  emit(out, cfg, j, table);
  return kExitOk;
}

inline int cmd_prop43(std::ostream& out, const Config& cfg, const DivClass& c) {
  const PrimeField f(cfg.prime);
  const InterpolationReport r = prop43_check(c, random_points(9, cfg.seed, f));
  json j = {{"cprime", to_json(c)},        {"half_degree", r.half_degree},     {"mults", r.mults},
            {"length", r.length},          {"alpha", r.alpha},                 {"expected_alpha", r.expected_alpha},
            {"dim_alpha", r.dim_alpha},    {"expected_dim_alpha", r.expected_dim_alpha},
            {"mu", to_json(r.mu)},         {"passed", r.passed()},             {"seed", cfg.seed}};
  emit(out, cfg, j,
       {{"C'", type_text(c)},
        {"Z", join(r.mults, ",")},
        {"alpha", std::to_string(r.alpha) + " (expected " + std::to_string(r.expected_alpha) + ")"},
        {"dim I_alpha", std::to_string(r.dim_alpha)},
        {"coker mu_alpha", std::to_string(r.mu.cokernel)},
        {"passed", yes_no(r.passed())}});
  return r.passed() ? kExitOk : kExitDomain;
}

inline std::string record_row(const ScanRecord& r) {
  std::ostringstream os;
  os << std::left << std::setw(36) << type_text(r.type.as_class()) << " ";
  if (r.split) os << std::setw(9) << to_string(*r.split) << " gap " << r.gap();
  else os << std::setw(9) << "-" << " gap -";
  os << "  ascenzi " << yes_no(r.ascenzi) << "  semi-adjoint " << (r.semi_adjoint ? type_text(*r.semi_adjoint) : "none");
  if (r.status != "ok") os << "  [" << r.status << "]";
  return os.str();
}

inline int cmd_scan(std::ostream& out, const Config& cfg, int dmax, const std::string& out_path, bool resume, bool certify) {
  const PrimeField f(cfg.prime);
  std::map<NumType, ScanRecord> done;
  if (resume) {
    if (out_path.empty()) throw DimensionError("--resume needs --out");
    std::ifstream in(out_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::parse_error&) {
        continue;  // a torn final line from an interrupted run
      }
      if (!j.contains("type")) continue;
      ScanRecord r = scan_record_from_json(j);
      done.emplace(r.type, std::move(r));
    }
  }
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::trunc);
    if (!file) throw DomainError("cannot open " + out_path);
  }
  std::ostream& sink = out_path.empty() ? out : file;
  ScanSummary summary;
  for (const NumType& t : enum_exceptional(9, dmax)) {
    auto it = done.find(t);
    const ScanRecord rec = it != done.end() ? it->second : scan_type(t, cfg.seed, certify, f);
    summary.add(rec);
    if (cfg.format == "json" || !out_path.empty()) sink << to_json(rec).dump() << "\n";
    else sink << record_row(rec) << "\n";
    sink.flush();
  }
  json s = {{"summary", to_json(summary)}, {"dmax", dmax}, {"seed", cfg.seed}, {"p", cfg.prime}};
  if (cfg.format == "json" || !out_path.empty()) sink << s.dump() << "\n";
  if (!out_path.empty() || cfg.format != "json") {
    std::vector<std::pair<std::string, std::string>> table;
    for (const auto& [k, v] : s["summary"].items()) table.emplace_back(k, v.dump());
    Config tcfg = cfg;
    tcfg.format = "table";
    if (out_path.empty()) emit(out, tcfg, s, table);
    else out << s.dump() << "\n";
  }
  return summary.failed == 0 && summary.hard_direction_holds() ? kExitOk : kExitDomain;
}

inline int cmd_search(std::ostream& out, const Config& cfg, const DivClass& e, std::optional<int> dA_max, bool compare) {
  const PrimeField f(cfg.prime);
  PointSet pts = random_points(e.r(), cfg.seed, f);
  json j = {{"E", to_json(e)}, {"dA_max", dA_max.value_or(e.d)}, {"seed", cfg.seed}, {"p", cfg.prime}};
  std::vector<std::pair<std::string, std::string>> table{{"E", type_text(e)}};
  std::optional<SplitType> split;
  if (compare) {
    const ParamResult res = parameterize(e, pts, cfg.seed);
    pts = res.points;
    split = splitting_type(res.phi);
  }
  const auto r = search_conjectureR(e, pts, dA_max);
  if (r) {
    j["result"] = {{"A", to_json(r->a)}, {"A_dot_E", r->a_dot_e}, {"candidates", r->candidates}, {"tested", r->tested}};
    table.emplace_back("A", type_text(r->a));
    table.emplace_back("A.E", std::to_string(r->a_dot_e));
  } else {
    j["result"] = nullptr;
    table.emplace_back("A", "none");
  }
  if (split) {
    j["a_E"] = split->a;
    j["matches"] = r ? json(r->a_dot_e == split->a) : json(nullptr);
    table.emplace_back("a_E", std::to_string(split->a));
  }
  emit(out, cfg, j, table);
  return kExitOk;
}

inline int cmd_list7(std::ostream& out, const Config& cfg, std::pair<int, int> drange) {
  const PrimeField f(cfg.prime);
  const auto e7 = enum_exceptional(7, std::nullopt);
  u64 e7_classes = 0;
  for (const auto& t : e7) e7_classes += permutation_count(t);
  std::vector<int> ds;
  for (int d = drange.first; d <= drange.second; ++d) ds.push_back(d);
  json fams = json::array();
  bool all = true;
  std::vector<std::pair<std::string, std::string>> table{{"E7 orbit", std::to_string(e7.size()) + " types, " + std::to_string(e7_classes) + " classes"}};
  for (const Family& fam : theorem35_families()) {
    const bool fixed_type = fam.step == std::array<int, 8>{};
    const auto rows = theorem35_spotcheck(fam, fixed_type ? std::vector<int>{0} : ds, cfg.seed, f);
    json jr = json::array();
    std::string gaps;
    for (const auto& row : rows) {
      all = all && row.match();
      jr.push_back({{"d", row.d},
                    {"type", to_json(row.type)},
                    {"ascenzi", row.ascenzi},
                    {"expected_gap", row.expected_gap},
                    {"a", row.computed.a},
                    {"b", row.computed.b},
                    {"gap", row.computed.gap()},
                    {"match", row.match()}});
      gaps += (gaps.empty() ? "" : " ") + std::to_string(row.computed.gap()) + (row.match() ? "" : "!");
    }
    fams.push_back({{"family", fam.name}, {"rows", jr}});
    table.emplace_back(fam.name, "gaps " + gaps);
  }
  table.emplace_back("all match", yes_no(all));
  json j = {{"e7_orbit_types", e7.size()}, {"e7_orbit_classes", e7_classes}, {"seed", cfg.seed},
            {"families", fams}, {"all_match", all}};
  emit(out, cfg, j, table);
  return all ? kExitOk : kExitDomain;
}

}  // namespace detail

/// Runs one command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  try {
    if (auto p = detail::env_u64("SPLITGAP_P")) cfg.prime = *p;
    if (auto s = detail::env_u64("SPLITGAP_SEED")) cfg.seed = *s;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Splitting types of rational plane curves through generic points"};
  app.name("splitgap");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--p", cfg.prime, "prime modulus (env SPLITGAP_P)");
  app.add_option("--seed", cfg.seed, "random seed (env SPLITGAP_SEED)");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "table"}));

  int r = 9;
  int dmax_val = 61;
  bool count_only = false;
  std::string type_text;
  std::string mults_text;
  std::string k_text = "0..3";
  std::string d_text = "0..2";
  std::string out_path;
  std::string prop43_text;
  bool trace = false, resume = false, certify = false, compare = false;
  int dA_max = -1;

  auto* enum_cmd = app.add_subcommand("exc-enum", "enumerate exceptional types on r points");
  enum_cmd->add_option("--r", r, "number of points (3..9)")->required();
  auto* enum_dmax = enum_cmd->add_option("--dmax", dmax_val, "degree cap (required for r = 9)");
  enum_cmd->add_flag("--count", count_only, "print only the number of types");

  auto* classify_cmd = app.add_subcommand("classify", "numerical invariants of a class");
  classify_cmd->add_option("--type", type_text, "d,m1,...,mr")->required();

  auto* param_cmd = app.add_subcommand("param", "parameterize a curve of the given type");
  param_cmd->add_option("--type", type_text, "d,m1,...,mr")->required();
  param_cmd->add_flag("--trace", trace, "include every Cremona step");

  auto* split_cmd = app.add_subcommand("split", "splitting type of a curve of the given type");
  split_cmd->add_option("--type", type_text, "d,m1,...,mr")->required();

  auto* fat_cmd = app.add_subcommand("fatpoints", "ideal dimensions and multiplication maps of a fat point scheme");
  auto* fat_mults = fat_cmd->add_option("--mults", mults_text, "m1,...,mr");
  fat_cmd->add_option("--k", k_text, "degree or range a..b");
  auto* fat_prop = fat_cmd->add_option("--prop43", prop43_text, "check the scheme built from an even exceptional class 2d',2m1+1,...");
  fat_mults->excludes(fat_prop);

  auto* scan_cmd = app.add_subcommand("scan-conj9", "scan exceptional types on nine points");
  scan_cmd->add_option("--dmax", dmax_val, "degree cap");
  scan_cmd->add_option("--out", out_path, "JSON-lines output file");
  scan_cmd->add_flag("--resume", resume, "reuse records already in --out");
  scan_cmd->add_flag("--certify", certify, "attach semi-adjoint certificates");

  auto* search_cmd = app.add_subcommand("search-conjR", "least A.E over classes A with -K.A = 2, h1 = 0, le = 1");
  search_cmd->add_option("--type", type_text, "the exceptional class E")->required();
  search_cmd->add_option("--dA-max", dA_max, "degree cap for A (default d_E)");
  search_cmd->add_flag("--compare", compare, "also compute a_E");

  auto* list7_cmd = app.add_subcommand("list7-check", "spot-check the seven-point classification");
  list7_cmd->add_option("--d", d_text, "family parameter range a..b");

  for (auto* sc : {enum_cmd, classify_cmd, param_cmd, split_cmd, fat_cmd, scan_cmd, search_cmd, list7_cmd}) {
    sc->add_option("--seed", cfg.seed, "random seed");
    sc->add_option("--p", cfg.prime, "prime modulus");
    sc->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "table"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (cfg.prime >= (1ULL << 32) || !is_prime(cfg.prime)) {
    err << "error: --p must be a prime below 2^32, got " << cfg.prime << "\n";
    return kExitUsage;
  }

  try {
    if (*enum_cmd) {
      return detail::cmd_exc_enum(out, cfg, r, *enum_dmax ? std::optional<int>(dmax_val) : std::nullopt, count_only);
    }
    if (*classify_cmd) return detail::cmd_classify(out, cfg, parse_class(type_text));
    if (*param_cmd) return detail::cmd_param(out, cfg, parse_class(type_text), trace);
    if (*split_cmd) return detail::cmd_split(out, cfg, parse_class(type_text));
    if (*fat_cmd) {
      if (!prop43_text.empty()) return detail::cmd_prop43(out, cfg, parse_class(prop43_text));
      if (mults_text.empty()) {
        err << "error: fatpoints needs --mults or --prop43\n";
        return kExitUsage;
      }
      return detail::cmd_fatpoints(out, cfg, parse_int_list(mults_text), parse_range(k_text));
    }
    if (*scan_cmd) return detail::cmd_scan(out, cfg, dmax_val, out_path, resume, certify);
    if (*search_cmd) {
      return detail::cmd_search(out, cfg, parse_class(type_text), dA_max >= 0 ? std::optional<int>(dA_max) : std::nullopt, compare);
    }
    if (*list7_cmd) return detail::cmd_list7(out, cfg, parse_range(d_text));
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace splitgap::cli
