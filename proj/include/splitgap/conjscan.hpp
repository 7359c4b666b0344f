#pragma once

// End-to-end experiments: the nine-point scan comparing splitting gaps with
// semi-adjoint existence, certificates for unbalanced splitting, the search
// for adjoint-type classes A bounding a_E, and the seven-point family table.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "splitgap/fatpoints.hpp"
#include "splitgap/lattice.hpp"
#include "splitgap/param.hpp"
#include "splitgap/splitting.hpp"

namespace splitgap {

/// Per-class seed, independent of enumeration order.
inline u64 class_seed(u64 seed, const DivClass& c) {
  u64 h = derive_seed(seed, static_cast<u64>(static_cast<i64>(c.d)));
  for (int m : c.m) h = derive_seed(h, static_cast<u64>(static_cast<i64>(m)));
  return h;
}

struct UnbalancedCertificate {
  DivClass e;
  DivClass a;
  int h1_a = 0;
  int le_a = 0;
  int h0_residual = 0;  // h^0(A - E + L)
  i64 bound = 0;        // A.E = (d_E - 2)/2
  SplitType split;      // computed
  bool holds() const { return h1_a == 0 && le_a >= 1 && h0_residual == 0 && split.a <= bound && split.gap() >= 2; }
};

/// Evidence that E has gap >= 2 via its semi-adjoint; none when E has no semi-adjoint.
inline std::optional<UnbalancedCertificate> certify_unbalanced(const DivClass& e, const PointSet& points, u64 seed,
                                                               std::optional<SplitType> known_split = std::nullopt) {
  if (!is_exceptional_class(e)) throw DomainError("certify_unbalanced needs an exceptional class");
  const auto a = semi_adjoint(e);
  if (!a) return std::nullopt;
  UnbalancedCertificate cert;
  cert.e = e;
  cert.a = *a;
  PointSet pts = points;
  if (known_split) {
    cert.split = *known_split;
  } else {
    ParamResult res = parameterize(e, points, seed);
    pts = res.points;
    cert.split = splitting_type(res.phi);
  }
  cert.h1_a = h1_class(*a, pts);
  cert.le_a = linear_excess(*a, pts);
  cert.h0_residual = h0_class(*a - e + line_class(e.r()), pts);
  cert.bound = intersect(*a, e);
  return cert;
}

struct ScanRecord {
  NumType type;
  bool ascenzi = false;
  std::optional<DivClass> semi_adjoint;
  std::optional<SplitType> split;  // absent for the point class and failures
  u64 seed = 0;
  int attempts = 0;
  std::string status = "ok";       // ok | point | failed: <reason>
  std::optional<UnbalancedCertificate> certificate;

  int gap() const { return split ? split->gap() : -1; }
};

struct ScanSummary {
  int total = 0;
  int computed = 0;
  int points = 0;
  int failed = 0;
  int ascenzi = 0;
  int with_semi_adjoint = 0;
  int gap_at_least_2 = 0;
  int semi_and_unbalanced = 0;
  int semi_but_balanced = 0;          // would contradict the proved direction
  int unbalanced_without_semi = 0;    // would contradict the conjectured converse
  int max_gap = 0;
  int certificates = 0;
  int certificates_holding = 0;

  bool hard_direction_holds() const { return semi_but_balanced == 0; }
  bool converse_observed() const { return unbalanced_without_semi == 0 && max_gap <= 2; }

  void add(const ScanRecord& r) {
    ++total;
    if (r.ascenzi) ++ascenzi;
    if (r.semi_adjoint) ++with_semi_adjoint;
    if (r.certificate) {
      ++certificates;
      if (r.certificate->holds()) ++certificates_holding;
    }
    if (r.status == "point") {
      ++points;
      return;
    }
    if (!r.split) {
      ++failed;
      return;
    }
    ++computed;
    const int g = r.gap();
    max_gap = std::max(max_gap, g);
    if (g >= 2) ++gap_at_least_2;
    if (r.semi_adjoint && g >= 2) ++semi_and_unbalanced;
    if (r.semi_adjoint && g < 2) ++semi_but_balanced;
    if (!r.semi_adjoint && g >= 2) ++unbalanced_without_semi;
  }
};

/// One scan record for an exceptional type on nine points.
inline ScanRecord scan_type(const NumType& t, u64 seed, bool certify, const PrimeField& f = PrimeField()) {
  ScanRecord rec;
  rec.type = t;
  const DivClass c = t.as_class();
  rec.ascenzi = t.d < 1 || is_ascenzi(t);
  rec.semi_adjoint = semi_adjoint(c);
  rec.seed = class_seed(seed, c);
  if (t.d < 1) {
    rec.status = "point";
    return rec;
  }
  try {
    const ParamResult res = parameterize(c, random_points(c.r(), rec.seed, f), rec.seed);
    rec.attempts = res.attempts;
    const SplitReport rep = split_all_methods(res.phi);
    if (!rep.methods_agree) throw InvariantError("splitting methods disagree");
    rec.split = rep.split;
    if (certify && rec.semi_adjoint) rec.certificate = certify_unbalanced(c, res.points, rec.seed, rep.split);
  } catch (const std::exception& e) {
    rec.split.reset();
    rec.status = std::string("failed: ") + e.what();
  }
  return rec;
}

struct ScanResult {
  std::vector<ScanRecord> records;
  ScanSummary summary;
};

/// Scans every exceptional type on nine points with degree <= dmax. `skip`
/// lets a resumed run pass over types already recorded; `sink` sees each
/// record as it is produced.
inline ScanResult scan_conjecture9(int dmax, u64 seed, bool certify = false, const PrimeField& f = PrimeField(),
                                   const std::function<bool(const NumType&)>& skip = {},
                                   const std::function<void(const ScanRecord&)>& sink = {}) {
  ScanResult out;
  for (const NumType& t : enum_exceptional(9, dmax)) {
    if (skip && skip(t)) continue;
    ScanRecord rec = scan_type(t, seed, certify, f);
    if (sink) sink(rec);
    out.summary.add(rec);
    out.records.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search for classes A with -K.A = 2, h^1(A) = 0 and le(A) = 1

struct ConjRResult {
  DivClass a;               // aligned with E's point order
  i64 a_dot_e = 0;
  int candidates = 0;       // passing the numerical prefilter
  int tested = 0;           // fully tested by rank computations
};

namespace detail {

// Non-increasing m with 0 <= m_i <= cap, sum = total, length r.
inline void partitions(int r, int cap, int total, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& emit) {
  if (static_cast<int>(cur.size()) == r) {
    if (total == 0) emit(cur);
    return;
  }
  const int slots = r - static_cast<int>(cur.size());
  for (int v = std::min(cap, total); v >= 0; --v) {
    if (static_cast<i64>(v) * slots < total) break;
    cur.push_back(v);
    partitions(r, v, total - v, cur, emit);
    cur.pop_back();
  }
}

}  // namespace detail

/// Sorted candidates A with -K.A = 2, 0 <= m_i <= d_A <= dA_max, 0 <= A^2 <= d_A - 1.
/// The bound on A^2 follows from le(A) = 1 with h^1(A) = h^1(A+L) = 0.
inline std::vector<NumType> conjR_candidates(int r, int dA_max) {
  std::vector<NumType> out;
  for (int d = 0; d <= dA_max; ++d) {
    const int total = 3 * d - 2;
    if (total < 0) continue;
    std::vector<int> cur;
    detail::partitions(r, d, total, cur, [&](const std::vector<int>& m) {
      i64 sq = static_cast<i64>(d) * d;
      for (int x : m) sq -= static_cast<i64>(x) * x;
      if (sq >= 0 && sq <= d - 1 && sq % 2 == 0) out.push_back(NumType(DivClass(d, m)));
    });
  }
  return out;
}

/// Places the sorted multiplicities of A on E's points so that A.E is least:
/// largest with largest.
inline DivClass align_with(const NumType& a, const DivClass& e) {
  std::vector<std::size_t> order(e.m.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return e.m[x] > e.m[y]; });
  std::vector<int> m(e.m.size(), 0);
  for (std::size_t i = 0; i < order.size() && i < a.m.size(); ++i) m[order[i]] = a.m[i];
  return DivClass(a.d, m);
}

inline std::optional<ConjRResult> search_conjectureR(const DivClass& e, const PointSet& points, std::optional<int> dA_max = std::nullopt) {
  const int cap = dA_max.value_or(e.d);
  struct Cand {
    DivClass a;
    i64 dot;
  };
  std::vector<Cand> cands;
  for (const NumType& t : conjR_candidates(e.r(), cap)) {
    DivClass a = align_with(t, e);
    const i64 dot = intersect(a, e);
    cands.push_back({std::move(a), dot});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.dot != y.dot) return x.dot < y.dot;
    if (x.a.d != y.a.d) return x.a.d < y.a.d;
    return NumType(x.a).m < NumType(y.a).m;
  });
  int tested = 0;
  for (const Cand& c : cands) {
    ++tested;
    if (h1_class(c.a, points) != 0) continue;
    if (linear_excess(c.a, points) != 1) continue;
    return ConjRResult{c.a, c.dot, static_cast<int>(cands.size()), tested};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Seven-point families

struct Family {
  std::string name;
  std::array<int, 8> base{};  // (d, m_1..m_7)
  std::array<int, 8> step{};
  /// Closed-form gap; absent where the family is Ascenzi and the gap is forced.
  std::function<int(int)> gap;
  /// Ascenzi exactly for d < ascenzi_below (a large value means always).
  int ascenzi_below = 1 << 20;

  DivClass at(int d) const {
    std::vector<int> m(7);
    for (std::size_t i = 0; i < 7; ++i) m[i] = base[i + 1] + d * step[i + 1];
    return DivClass(base[0] + d * step[0], m);
  }
};

namespace detail {

using Row8 = std::array<int, 8>;
inline constexpr Row8 kS1{1, 1, 0, 0, 0, 0, 0, 0};
inline constexpr Row8 kS2{2, 1, 1, 1, 1, 0, 0, 0};
inline constexpr Row8 kS3{3, 2, 1, 1, 1, 1, 1, 0};
inline constexpr Row8 kS4{4, 2, 2, 2, 1, 1, 1, 1};
inline constexpr Row8 kS5{5, 2, 2, 2, 2, 2, 2, 1};
inline constexpr Row8 kZero{0, 0, 0, 0, 0, 0, 0, 0};

inline std::string row_name(const Row8& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < 8; ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + ")";
}

inline Family ascenzi_family(const Row8& base, const Row8& step) {
  return {row_name(base) + "+d" + row_name(step), base, step, {}, 1 << 20};
}

inline Family gap_family(const Row8& base, const Row8& step, int ascenzi_below, std::function<int(int)> gap) {
  return {row_name(base) + "+d" + row_name(step), base, step, std::move(gap), ascenzi_below};
}

inline Family fixed(const Row8& base, std::optional<int> gap = std::nullopt) {
  Family f{row_name(base), base, kZero, {}, 1 << 20};
  if (gap) {
    const int g = *gap;
    f.gap = [g](int) { return g; };
    f.ascenzi_below = 0;
  }
  return f;
}

}  // namespace detail

/// The classes of rational curves on seven points in the orbits of H0 + dH1
/// and H2 + dH1, together with the orbits of E_7, 2H0 and H1.
inline std::vector<Family> theorem35_families() {
  using namespace detail;
  auto minus1 = [](int d) { return std::abs(d - 1); };
  auto same = [](int d) { return d; };
  auto plus1 = [](int d) { return d + 1; };
  auto plus2 = [](int d) { return d + 2; };
  return {
      // E_7 orbit, excluding the point class
      fixed({1, 1, 1, 0, 0, 0, 0, 0}),
      fixed({2, 1, 1, 1, 1, 1, 0, 0}),
      fixed({3, 2, 1, 1, 1, 1, 1, 1}),
      // H0 + d H1
      ascenzi_family({1, 0, 0, 0, 0, 0, 0, 0}, kS1),
      ascenzi_family({2, 1, 1, 1, 0, 0, 0, 0}, kS1),
      ascenzi_family({2, 1, 1, 1, 0, 0, 0, 0}, kS2),
      ascenzi_family({3, 2, 1, 1, 1, 1, 0, 0}, kS1),
      ascenzi_family({3, 2, 1, 1, 1, 1, 0, 0}, kS2),
      ascenzi_family({3, 2, 1, 1, 1, 1, 0, 0}, kS3),
      ascenzi_family({4, 2, 2, 2, 1, 1, 1, 0}, kS2),
      ascenzi_family({4, 2, 2, 2, 1, 1, 1, 0}, kS3),
      ascenzi_family({4, 2, 2, 2, 1, 1, 1, 0}, kS4),
      ascenzi_family({4, 3, 1, 1, 1, 1, 1, 1}, kS3),
      ascenzi_family({5, 2, 2, 2, 2, 2, 2, 0}, kS3),
      gap_family({5, 2, 2, 2, 2, 2, 2, 0}, kS5, 1, minus1),
      ascenzi_family({5, 3, 2, 2, 2, 1, 1, 1}, kS2),
      ascenzi_family({6, 3, 3, 2, 2, 2, 2, 1}, kS3),
      ascenzi_family({6, 3, 3, 2, 2, 2, 2, 1}, kS4),
      gap_family({6, 3, 3, 2, 2, 2, 2, 1}, kS5, 2, same),
      ascenzi_family({7, 3, 3, 3, 3, 2, 2, 2}, kS4),
      gap_family({7, 3, 3, 3, 3, 2, 2, 2}, kS5, 1, plus1),
      gap_family({8, 3, 3, 3, 3, 3, 3, 3}, kS5, 0, plus2),
      // H2 + d H1
      ascenzi_family({2, 1, 1, 0, 0, 0, 0, 0}, kS1),
      ascenzi_family({3, 2, 1, 1, 1, 0, 0, 0}, kS1),
      ascenzi_family({3, 2, 1, 1, 1, 0, 0, 0}, kS2),
      ascenzi_family({4, 2, 2, 2, 1, 1, 0, 0}, kS2),
      ascenzi_family({4, 3, 1, 1, 1, 1, 1, 0}, kS1),
      ascenzi_family({4, 3, 1, 1, 1, 1, 1, 0}, kS3),
      ascenzi_family({5, 3, 2, 2, 2, 1, 1, 0}, kS2),
      ascenzi_family({5, 3, 2, 2, 2, 1, 1, 0}, kS3),
      ascenzi_family({6, 3, 3, 3, 2, 1, 1, 1}, kS2),
      ascenzi_family({6, 3, 3, 3, 2, 1, 1, 1}, kS4),
      ascenzi_family({6, 4, 2, 2, 2, 2, 1, 1}, kS3),
      ascenzi_family({6, 3, 3, 2, 2, 2, 2, 0}, kS3),
      ascenzi_family({7, 4, 3, 3, 2, 2, 2, 1}, kS3),
      ascenzi_family({7, 4, 3, 3, 2, 2, 2, 1}, kS4),
      ascenzi_family({8, 4, 4, 3, 3, 2, 2, 2}, kS4),
      gap_family({8, 4, 3, 3, 3, 3, 3, 1}, kS5, 2, same),
      ascenzi_family({9, 4, 4, 4, 3, 3, 3, 2}, kS4),
      gap_family({9, 4, 4, 4, 3, 3, 3, 2}, kS5, 1, plus1),
      gap_family({10, 4, 4, 4, 4, 4, 3, 3}, kS5, 0, plus2),
      // 2 H0 orbit
      fixed({2, 0, 0, 0, 0, 0, 0, 0}, 0),  // a conic: 2 > 2*0 + 1, though its splitting is forced
      fixed({4, 2, 2, 2, 0, 0, 0, 0}),
      fixed({6, 4, 2, 2, 2, 2, 0, 0}),
      fixed({8, 4, 4, 4, 2, 2, 2, 0}),
      fixed({8, 6, 2, 2, 2, 2, 2, 2}),
      fixed({10, 6, 4, 4, 4, 2, 2, 2}),
      fixed({10, 4, 4, 4, 4, 4, 4, 0}, 0),
      fixed({12, 6, 6, 4, 4, 4, 4, 2}),
      fixed({14, 6, 6, 6, 6, 4, 4, 4}, 2),
      fixed({16, 6, 6, 6, 6, 6, 6, 6}, 4),
      // H1 orbit
      fixed({1, 1, 0, 0, 0, 0, 0, 0}),
      fixed({2, 1, 1, 1, 1, 0, 0, 0}),
      fixed({3, 2, 1, 1, 1, 1, 1, 0}),
      fixed({4, 2, 2, 2, 1, 1, 1, 1}),
      fixed({5, 2, 2, 2, 2, 2, 2, 1}),
  };
}

struct SpotRow {
  int d = 0;
  DivClass type;
  bool ascenzi = false;
  bool ascenzi_expected = false;
  int expected_gap = 0;
  SplitType computed;
  bool match() const { return ascenzi == ascenzi_expected && computed.gap() == expected_gap; }
};

inline std::vector<SpotRow> theorem35_spotcheck(const Family& fam, const std::vector<int>& drange, u64 seed,
                                                const PrimeField& f = PrimeField()) {
  std::vector<SpotRow> rows;
  for (int d : drange) {
    SpotRow row;
    row.d = d;
    row.type = fam.at(d);
    const NumType t(row.type);
    row.ascenzi = is_ascenzi(t);
    row.ascenzi_expected = d < fam.ascenzi_below;
    row.expected_gap = fam.gap ? fam.gap(d) : ascenzi_classify(t).b - ascenzi_classify(t).a;
    const u64 s = class_seed(seed, row.type);
    const ParamResult res = parameterize(row.type, random_points(7, s, f), s);
    const SplitReport rep = split_all_methods(res.phi);
    if (!rep.methods_agree) throw InvariantError("splitting methods disagree on " + to_string(row.type));
    row.computed = rep.split;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace splitgap
