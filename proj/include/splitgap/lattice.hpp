#pragma once

// Divisor classes dL - sum m_i E_i on the blow-up of the plane at r points:
// intersection form, Weyl reflections, exceptional-class enumeration and
// the numerical classifications built on them.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "splitgap/field.hpp"

namespace splitgap {

/// The class dL - m_1E_1 - ... - m_rE_r, stored as (d; m_1..m_r).
struct DivClass {
  int d = 0;
  std::vector<int> m;

  DivClass() = default;
  DivClass(int degree, std::vector<int> mults) : d(degree), m(std::move(mults)) {
    if (m.empty()) throw DimensionError("DivClass needs r >= 1");
  }

  int r() const { return static_cast<int>(m.size()); }

  /// Same class viewed on a blow-up with more points (extra m_i = 0).
  DivClass padded(int r_new) const {
    if (r_new < r()) throw DimensionError("cannot pad to fewer points");
    DivClass out = *this;
    out.m.resize(static_cast<std::size_t>(r_new), 0);
    return out;
  }

  int max_mult() const { return *std::max_element(m.begin(), m.end()); }

  friend bool operator==(const DivClass&, const DivClass&) = default;
  friend auto operator<=>(const DivClass&, const DivClass&) = default;
};

inline DivClass operator+(const DivClass& a, const DivClass& b) {
  if (a.r() != b.r()) throw DimensionError("class dimension mismatch");
  DivClass out = a;
  out.d += b.d;
  for (std::size_t i = 0; i < out.m.size(); ++i) out.m[i] += b.m[i];
  return out;
}

inline DivClass operator*(int s, const DivClass& a) {
  DivClass out = a;
  out.d *= s;
  for (int& x : out.m) x *= s;
  return out;
}

inline DivClass operator-(const DivClass& a, const DivClass& b) { return a + (-1) * b; }

/// A divisor class up to permutation of the points: m sorted non-increasing.
struct NumType {
  int d = 0;
  std::vector<int> m;

  NumType() = default;
  NumType(int degree, std::vector<int> mults) : d(degree), m(std::move(mults)) {
    if (m.empty()) throw DimensionError("NumType needs r >= 1");
    std::sort(m.begin(), m.end(), std::greater<>());
  }
  explicit NumType(const DivClass& c) : NumType(c.d, c.m) {}

  int r() const { return static_cast<int>(m.size()); }
  DivClass as_class() const { return DivClass(d, m); }

  friend bool operator==(const NumType&, const NumType&) = default;
  friend auto operator<=>(const NumType&, const NumType&) = default;
};

inline std::string to_string(const DivClass& c) {
  std::ostringstream os;
  os << '(' << c.d << ';';
  for (std::size_t i = 0; i < c.m.size(); ++i) os << (i ? "," : "") << c.m[i];
  os << ')';
  return os.str();
}
inline std::string to_string(const NumType& t) { return to_string(t.as_class()); }

/// One Weyl generator. Indices are 0-based here; serialized forms are 1-based.
struct Reflection {
  enum class Kind { Swap, Quad };
  Kind kind = Kind::Quad;
  std::array<int, 3> idx{0, 0, 0};

  static Reflection swap(int i, int j) { return {Kind::Swap, {i, j, -1}}; }
  static Reflection quad(int i, int j, int k) { return {Kind::Quad, {i, j, k}}; }

  friend bool operator==(const Reflection&, const Reflection&) = default;
};

using WeylWord = std::vector<Reflection>;

// ---------------------------------------------------------------------------
// Basic classes and the intersection form

inline DivClass line_class(int r) { return DivClass(1, std::vector<int>(static_cast<std::size_t>(r), 0)); }

inline DivClass canonical_class(int r) {
  return DivClass(-3, std::vector<int>(static_cast<std::size_t>(r), -1));
}

/// E_i (0-based i): the class (0; 0,..,-1,..,0).
inline DivClass exceptional_divisor(int i, int r) {
  DivClass e(0, std::vector<int>(static_cast<std::size_t>(r), 0));
  e.m.at(static_cast<std::size_t>(i)) = -1;
  return e;
}

inline i64 intersect(const DivClass& a, const DivClass& b) {
  if (a.r() != b.r()) {
    throw DimensionError("intersect: r mismatch (" + std::to_string(a.r()) + " vs " +
                         std::to_string(b.r()) + ")");
  }
  i64 s = static_cast<i64>(a.d) * b.d;
  for (std::size_t i = 0; i < a.m.size(); ++i) s -= static_cast<i64>(a.m[i]) * b.m[i];
  return s;
}

inline i64 self_intersection(const DivClass& a) { return intersect(a, a); }
inline i64 canonical_degree(const DivClass& a) { return intersect(canonical_class(a.r()), a); }

// ---------------------------------------------------------------------------
// Weyl reflections

inline void check_indices(const Reflection& s, int r) {
  const int n = s.kind == Reflection::Kind::Quad ? 3 : 2;
  for (int t = 0; t < n; ++t) {
    if (s.idx[t] < 0 || s.idx[t] >= r) throw DimensionError("reflection index out of range");
  }
  if (s.kind == Reflection::Kind::Quad && !(s.idx[0] < s.idx[1] && s.idx[1] < s.idx[2])) {
    throw DimensionError("quad reflection needs i < j < k");
  }
  if (s.kind == Reflection::Kind::Swap && s.idx[0] == s.idx[1]) {
    throw DimensionError("swap reflection needs distinct indices");
  }
}

/// s_v(D) = D + (v.D) v with v = L - E_i - E_j - E_k, or the transposition
/// of m_i and m_j for v = E_i - E_j.
inline DivClass reflect(const DivClass& c, const Reflection& s) {
  check_indices(s, c.r());
  DivClass out = c;
  if (s.kind == Reflection::Kind::Swap) {
    std::swap(out.m[static_cast<std::size_t>(s.idx[0])], out.m[static_cast<std::size_t>(s.idx[1])]);
    return out;
  }
  const auto [i, j, k] = s.idx;
  const int vd = c.d - c.m[static_cast<std::size_t>(i)] - c.m[static_cast<std::size_t>(j)] -
                 c.m[static_cast<std::size_t>(k)];
  out.d += vd;
  for (int t : {i, j, k}) out.m[static_cast<std::size_t>(t)] += vd;
  return out;
}

inline DivClass reflect(DivClass c, const WeylWord& w) {
  for (const auto& s : w) c = reflect(c, s);
  return c;
}

// ---------------------------------------------------------------------------
// Class predicates

inline bool is_exceptional_class(const DivClass& c) {
  return self_intersection(c) == -1 && canonical_degree(c) == -1;
}

/// Adjunction with genus 0: D^2 = -2 - K.D.
inline bool smooth_rational_numerics_ok(const DivClass& c) {
  return self_intersection(c) == -2 - canonical_degree(c);
}

inline bool is_ascenzi(const NumType& t) { return t.d <= 2 * t.m.front() + 1; }

struct AscenziVerdict {
  bool ascenzi = false;
  int a = 0;
  int b = 0;
};

/// Splitting type forced by a point of maximal multiplicity when d <= 2m+1.
inline AscenziVerdict ascenzi_classify(const NumType& t) {
  if (t.d < 1) throw DomainError("ascenzi_classify needs d >= 1");
  const int m1 = t.m.front();
  if (t.d > 2 * m1 + 1) return {};
  if (t.d <= 2 * m1) return {true, t.d - m1, m1};
  return {true, m1, m1 + 1};
}

/// A with 2A = E + K + L, which exists exactly when d is even and every m_i odd.
inline std::optional<DivClass> semi_adjoint(const DivClass& e) {
  const DivClass twice = e + canonical_class(e.r()) + line_class(e.r());
  if (twice.d % 2 != 0) return std::nullopt;
  DivClass a(twice.d / 2, twice.m);
  for (int& x : a.m) {
    if (x % 2 != 0) return std::nullopt;
    x /= 2;
  }
  return a;
}

struct SemiAdjointLift {
  DivClass a;
  DivClass c_a;
  int s = 0;
};

/// For E exceptional with sorted non-negative m and d >= 2m_1 - 1, returns
/// A = E + E_1 - sK (s = d - 2m_1 + 1) and the exceptional class C_A = 2A - K - L,
/// whose semi-adjoint is A.
inline SemiAdjointLift semi_adjoint_lift(const DivClass& e) {
  if (!is_exceptional_class(e)) throw DomainError("semi_adjoint_lift: not exceptional " + to_string(e));
  if (!std::is_sorted(e.m.begin(), e.m.end(), std::greater<>()) || e.m.back() < 0) {
    throw DomainError("semi_adjoint_lift: multiplicities must be sorted and non-negative");
  }
  const int m1 = e.m.front();
  if (e.d < 2 * m1 - 1) throw DomainError("semi_adjoint_lift: needs d >= 2m_1 - 1");
  const int s = e.d - 2 * m1 + 1;
  const int r = e.r();
  DivClass a = e + exceptional_divisor(0, r) - s * canonical_class(r);
  DivClass c = 2 * a - canonical_class(r) - line_class(r);
  return {a, c, s};
}

/// Degree bound for exceptional classes with d - 2m_1 <= j on nine points.
inline int ascenzi_degree_bound(int j) {
  if (4 * j + 8 < 0) throw DomainError("ascenzi_degree_bound needs j >= -2");
  // floor(4 sqrt(4j+8)) = floor(sqrt(16(4j+8))), computed exactly.
  const i64 n = 16LL * (4 * j + 8);
  i64 root = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (root * root > n) --root;
  while ((root + 1) * (root + 1) <= n) ++root;
  return 3 * j + static_cast<int>(root) + 10;
}

// ---------------------------------------------------------------------------
// Orbits and enumeration

/// Number of distinct classes obtained by permuting the multiplicities.
inline u64 permutation_count(const NumType& t) {
  std::map<int, int> counts;
  for (int x : t.m) ++counts[x];
  // multinomial r! / prod(c!) evaluated incrementally to stay exact
  u64 total = 1;
  int placed = 0;
  for (const auto& [value, c] : counts) {
    for (int i = 1; i <= c; ++i) {
      ++placed;
      total = total * static_cast<u64>(placed) / static_cast<u64>(i);
    }
  }
  return total;
}

/// Closure of a set of normalized types under all quadratic reflections,
/// keeping only degrees in [dmin, dmax].
inline std::set<NumType> quad_closure(const std::vector<NumType>& seeds, std::optional<int> dmax,
                                      int dmin = std::numeric_limits<int>::min()) {
  std::set<NumType> seen;
  std::deque<NumType> frontier;
  for (const auto& s : seeds) {
    if (seen.insert(s).second) frontier.push_back(s);
  }
  while (!frontier.empty()) {
    const NumType cur = frontier.front();
    frontier.pop_front();
    const DivClass c = cur.as_class();
    const int r = c.r();
    for (int i = 0; i < r; ++i) {
      for (int j = i + 1; j < r; ++j) {
        for (int k = j + 1; k < r; ++k) {
          NumType next(reflect(c, Reflection::quad(i, j, k)));
          if (dmax && next.d > *dmax) continue;
          if (next.d < dmin) continue;
          if (seen.insert(next).second) frontier.push_back(std::move(next));
        }
      }
    }
  }
  return seen;
}

/// Numerical types of exceptional classes with 0 <= d <= dmax, seeded from E_1.
/// For r <= 8 the set is finite and dmax may be omitted.
inline std::set<NumType> enum_exceptional(int r, std::optional<int> dmax) {
  if (r < 3 || r > 9) throw DomainError("enum_exceptional supports 3 <= r <= 9");
  if (r == 9 && !dmax) throw DomainError("enum_exceptional with r = 9 needs a degree cap");
  if (dmax && *dmax < 0) throw DomainError("dmax must be non-negative");
  return quad_closure({NumType(exceptional_divisor(0, r))}, dmax, 0);
}

/// W(X)-orbit of D as normalized types, capped at degree dmax when given.
inline std::set<NumType> orbit_closure(const DivClass& c, std::optional<int> dmax) {
  if (c.r() >= 9 && !dmax) throw DomainError("orbit_closure with r >= 9 needs a degree cap");
  if (c.r() < 3) {
    return {NumType(c)};
  }
  return quad_closure({NumType(c)}, dmax);
}

struct BaseReduction {
  WeylWord word;
  DivClass base;
};

/// Greedy Cremona reduction: repeatedly apply the quad reflection on a triple
/// maximizing m_i + m_j + m_k (lexicographically least among ties) while that
/// sum exceeds d and the resulting degree 2d - (m_i+m_j+m_k) stays >= 1.
inline BaseReduction reduce_to_base(const DivClass& c) {
  if (c.d < 1) throw DomainError("reduce_to_base needs d >= 1: " + to_string(c));
  if (!smooth_rational_numerics_ok(c)) throw DomainError("reduce_to_base: not a rational class " + to_string(c));
  BaseReduction out{{}, c};
  const int r = c.r();
  const int guard = c.d + 1;
  for (int step = 0; step < guard; ++step) {
    DivClass& cur = out.base;
    int best = std::numeric_limits<int>::min();
    std::array<int, 3> arg{-1, -1, -1};
    for (int i = 0; i < r; ++i) {
      for (int j = i + 1; j < r; ++j) {
        for (int k = j + 1; k < r; ++k) {
          const int s = cur.m[static_cast<std::size_t>(i)] + cur.m[static_cast<std::size_t>(j)] +
                        cur.m[static_cast<std::size_t>(k)];
          if (s > best) {
            best = s;
            arg = {i, j, k};
          }
        }
      }
    }
    if (arg[0] < 0 || best <= cur.d || 2 * cur.d - best < 1) return out;
    const Reflection q = Reflection::quad(arg[0], arg[1], arg[2]);
    out.word.push_back(q);
    cur = reflect(cur, q);
  }
  throw InvariantError("reduce_to_base did not terminate for " + to_string(c));
}

// ---------------------------------------------------------------------------
// Nine-point structure: E = v + (v^2/2) K + E_9 with v in K^perp ∩ E_9^perp.

struct NinePointDecomposition {
  DivClass v;
  i64 v_square = 0;
};

inline NinePointDecomposition nine_point_decomposition(const DivClass& e) {
  if (e.r() != 9) throw DimensionError("nine_point_decomposition needs r = 9");
  const DivClass e9 = exceptional_divisor(8, 9);
  const DivClass diff = e - e9;
  const int t = static_cast<int>(intersect(diff, e9));
  DivClass v = diff + t * canonical_class(9);
  return {v, self_intersection(v)};
}

/// Rebuilds v + (v^2/2) K + E_9; equals E for every exceptional class on nine points.
inline DivClass nine_point_reconstruct(const NinePointDecomposition& dec) {
  if (dec.v_square % 2 != 0) throw InvariantError("v^2 must be even on K^perp");
  return dec.v + static_cast<int>(dec.v_square / 2) * canonical_class(9) + exceptional_divisor(8, 9);
}

}  // namespace splitgap
