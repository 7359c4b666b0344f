#pragma once

// JSON forms of the domain values, and parsing of comma-separated types.

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "splitgap/conjscan.hpp"
#include "splitgap/fatpoints.hpp"
#include "splitgap/lattice.hpp"
#include "splitgap/param.hpp"
#include "splitgap/splitting.hpp"

namespace splitgap {

using json = nlohmann::ordered_json;

/// "d,m1,...,mr" (spaces allowed) to a class.
inline DivClass parse_class(std::string_view text) {
  std::vector<int> vals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw DimensionError("cannot parse integer '" + std::string(tok) + "' in type list");
    }
    vals.push_back(v);
    pos = end + 1;
  }
  if (vals.size() < 2) throw DimensionError("a type needs d and at least one multiplicity");
  return DivClass(vals.front(), std::vector<int>(vals.begin() + 1, vals.end()));
}

inline std::vector<int> parse_int_list(std::string_view text) {
  const DivClass c = parse_class("0," + std::string(text));
  return c.m;
}

/// "a..b" or a single integer.
inline std::pair<int, int> parse_range(std::string_view text) {
  const auto dots = text.find("..");
  auto to_int = [](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw DimensionError("bad range '" + std::string(s) + "'");
    return v;
  };
  if (dots == std::string_view::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int lo = to_int(text.substr(0, dots));
  const int hi = to_int(text.substr(dots + 2));
  if (hi < lo) throw DimensionError("empty range");
  return {lo, hi};
}

inline json to_json(const DivClass& c) {
  json j = json::array({c.d});
  for (int m : c.m) j.push_back(m);
  return j;
}

inline json to_json(const NumType& t) { return to_json(t.as_class()); }

inline DivClass class_from_json(const json& j) {
  if (!j.is_array() || j.size() < 2) throw DimensionError("type must be an array [d, m1, ...]");
  std::vector<int> m;
  for (std::size_t i = 1; i < j.size(); ++i) m.push_back(j[i].get<int>());
  return DivClass(j[0].get<int>(), std::move(m));
}

inline json to_json(const Reflection& s) {
  json idx = json::array();
  const int n = s.kind == Reflection::Kind::Quad ? 3 : 2;
  for (int i = 0; i < n; ++i) idx.push_back(s.idx[static_cast<std::size_t>(i)] + 1);
  return {{"op", s.kind == Reflection::Kind::Quad ? "quad" : "swap"}, {"idx", idx}};
}

inline json to_json(const WeylWord& w) {
  json j = json::array();
  for (const auto& s : w) j.push_back(to_json(s));
  return j;
}

inline json to_json(const BinForm& f) { return json::array({f.degree(), f.coeffs()}); }

inline json to_json(const ParamTriple& phi) {
  json comps = json::array();
  json text = json::array();
  for (const auto& c : phi.components()) {
    comps.push_back(to_json(c));
    text.push_back(to_string(c));
  }
  return {{"degree", phi.degree()}, {"phi", comps}, {"text", text}};
}

inline json to_json(const PlanePoint& p) { return json::array({p[0], p[1], p[2]}); }

inline json points_json(const std::vector<PlanePoint>& pts) {
  json j = json::array();
  for (const auto& p : pts) j.push_back(to_json(p));
  return j;
}

inline json to_json(const SplitType& s) { return {{"a", s.a}, {"b", s.b}, {"gap", s.gap()}}; }

inline json to_json(const Syzygy& s) {
  json alpha = json::array();
  for (const auto& a : s.alpha) alpha.push_back(to_json(a));
  return {{"degree", s.degree}, {"alpha", alpha}};
}

inline json to_json(const CremonaStep& st) {
  json centers = json::array();
  for (int c : st.centers) centers.push_back(c + 1);
  json lines = json::array();
  for (const auto& l : st.lines) lines.push_back(to_json(l));
  return {{"centers", centers}, {"lines", lines}, {"before", points_json(st.before)}, {"after", points_json(st.after)}};
}

inline json to_json(const MuReport& r) {
  return {{"k", r.k},         {"dim_k", r.dim_k},   {"dim_k1", r.dim_next},
          {"rank", r.rank},   {"kernel", r.kernel}, {"cokernel", r.cokernel}};
}

inline json to_json(const UnbalancedCertificate& c) {
  return {{"A", to_json(c.a)},           {"h1_A", c.h1_a}, {"le_A", c.le_a}, {"h0_A_minus_E_plus_L", c.h0_residual},
          {"A_dot_E", c.bound},           {"a_E", c.split.a}, {"holds", c.holds()}};
}

inline json to_json(const ScanRecord& r) {
  json j = {{"type", to_json(r.type)}, {"ascenzi", r.ascenzi}};
  j["semi_adjoint"] = r.semi_adjoint ? to_json(*r.semi_adjoint) : json(nullptr);
  if (r.split) {
    j["a"] = r.split->a;
    j["b"] = r.split->b;
    j["gap"] = r.split->gap();
  } else {
    j["a"] = nullptr;
    j["b"] = nullptr;
    j["gap"] = nullptr;
  }
  j["seed"] = r.seed;
  j["attempts"] = r.attempts;
  j["status"] = r.status;
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  return j;
}

/// Reads back the fields that the summary depends on.
inline ScanRecord scan_record_from_json(const json& j) {
  ScanRecord r;
  r.type = NumType(class_from_json(j.at("type")));
  r.ascenzi = j.at("ascenzi").get<bool>();
  if (!j.at("semi_adjoint").is_null()) r.semi_adjoint = class_from_json(j.at("semi_adjoint"));
  if (!j.at("a").is_null()) r.split = SplitType{j.at("a").get<int>(), j.at("b").get<int>()};
  r.seed = j.at("seed").get<u64>();
  r.attempts = j.at("attempts").get<int>();
  r.status = j.at("status").get<std::string>();
  if (j.contains("certificate")) {
    const json& c = j.at("certificate");
    UnbalancedCertificate cert;
    cert.e = r.type.as_class();
    cert.a = class_from_json(c.at("A"));
    cert.h1_a = c.at("h1_A").get<int>();
    cert.le_a = c.at("le_A").get<int>();
    cert.h0_residual = c.at("h0_A_minus_E_plus_L").get<int>();
    cert.bound = c.at("A_dot_E").get<i64>();
    cert.split = r.split.value_or(SplitType{});
    r.certificate = cert;
  }
  return r;
}

inline json to_json(const ScanSummary& s) {
  return {{"total", s.total},
          {"computed", s.computed},
          {"points", s.points},
          {"failed", s.failed},
          {"ascenzi", s.ascenzi},
          {"with_semi_adjoint", s.with_semi_adjoint},
          {"gap_at_least_2", s.gap_at_least_2},
          {"semi_adjoint_and_gap_at_least_2", s.semi_and_unbalanced},
          {"semi_adjoint_but_gap_at_most_1", s.semi_but_balanced},
          {"gap_at_least_2_without_semi_adjoint", s.unbalanced_without_semi},
          {"max_gap", s.max_gap},
          {"certificates", s.certificates},
          {"certificates_holding", s.certificates_holding},
          {"proved_direction_holds", s.hard_direction_holds()},
          {"converse_observed", s.converse_observed()}};
}

}  // namespace splitgap
