#pragma once

// Explicit parameterizations of rational plane curves with assigned
// multiplicities at random points: quadratic Cremona steps reduce the class to
// a line or a conic, which is parameterized directly and pulled back.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splitgap/binform.hpp"
#include "splitgap/exactla.hpp"
#include "splitgap/field.hpp"
#include "splitgap/lattice.hpp"
#include "splitgap/planeform.hpp"

namespace splitgap {

/// Homogeneous coordinates with the first nonzero coordinate equal to 1.
using PlanePoint = std::array<u64, 3>;

inline PlanePoint normalize_point(const PrimeField& f, PlanePoint x) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (x[i] != 0) {
      const u64 inv = f.inv(x[i]);
      for (auto& c : x) c = f.mul(c, inv);
      return x;
    }
  }
  throw DomainError("the zero vector is not a projective point");
}

inline bool is_zero_vector(const PlanePoint& x) { return x[0] == 0 && x[1] == 0 && x[2] == 0; }

inline PlanePoint cross(const PrimeField& f, const PlanePoint& a, const PlanePoint& b) {
  return {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])), f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
          f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

inline u64 dot(const PrimeField& f, const PlanePoint& a, const PlanePoint& b) {
  return f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]));
}

inline bool collinear(const PrimeField& f, const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) {
  return dot(f, cross(f, a, b), c) == 0;
}

struct PointSet {
  PrimeField field;
  std::vector<PlanePoint> points;
  u64 seed = 0;

  std::size_t size() const { return points.size(); }
  const PlanePoint& operator[](std::size_t i) const { return points.at(i); }
};

/// Rows of the conic-interpolation matrix (monomials of degree 2).
inline std::vector<u64> conic_row(const PrimeField& f, const PlanePoint& x) {
  std::vector<u64> row;
  for (const auto& a : monomial_exponents(2)) {
    u64 v = 1;
    for (std::size_t i = 0; i < 3; ++i) v = f.mul(v, f.pow(x[i], static_cast<u64>(a[i])));
    row.push_back(v);
  }
  return row;
}

/// Distinct points, no three collinear, no six on a conic.
inline bool is_generic(const PrimeField& f, const std::vector<PlanePoint>& pts) {
  const std::size_t r = pts.size();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      if (pts[i] == pts[j]) return false;
      for (std::size_t k = j + 1; k < r; ++k) {
        if (collinear(f, pts[i], pts[j], pts[k])) return false;
      }
    }
  }
  if (r < 6) return true;
  std::vector<std::size_t> pick{0, 1, 2, 3, 4, 5};
  for (;;) {
    MatFp m(f, 6, 6);
    for (std::size_t a = 0; a < 6; ++a) {
      const auto row = conic_row(f, pts[pick[a]]);
      for (std::size_t b = 0; b < 6; ++b) m.at(a, b) = row[b];
    }
    if (rank(m) < 6) return false;
    // next 6-subset in lexicographic order
    int pos = 5;
    while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == r - 6 + static_cast<std::size_t>(pos)) --pos;
    if (pos < 0) break;
    ++pick[static_cast<std::size_t>(pos)];
    for (std::size_t q = static_cast<std::size_t>(pos) + 1; q < 6; ++q) pick[q] = pick[q - 1] + 1;
  }
  return true;
}

inline PlanePoint random_point(ResidueSource& src) {
  for (;;) {
    PlanePoint x{src.next(), src.next(), src.next()};
    if (!is_zero_vector(x)) return normalize_point(src.field(), x);
  }
}

inline constexpr int kPointRetries = 64;

/// r generic points, deterministic in (seed, p). Attempt t draws from the
/// stream derive_seed(seed, t).
inline PointSet random_points(int r, u64 seed, const PrimeField& f = PrimeField()) {
  if (r < 1) throw DomainError("random_points needs r >= 1");
  for (int attempt = 0; attempt < kPointRetries; ++attempt) {
    ResidueSource src(f, derive_seed(seed, static_cast<u64>(attempt)));
    std::vector<PlanePoint> pts;
    for (int i = 0; i < r; ++i) pts.push_back(random_point(src));
    if (is_generic(f, pts)) return {f, std::move(pts), seed};
  }
  throw DegenerateError("random_points: no generic configuration found; modulus too small?");
}

// ---------------------------------------------------------------------------
// Quadratic Cremona steps

using Mat3 = std::array<std::array<u64, 3>, 3>;

inline Mat3 adjugate(const PrimeField& f, const Mat3& a) {
  Mat3 out{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      // cofactor of a[j][i]
      const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      out[i][j] = f.sub(f.mul(a[r0][c0], a[r1][c1]), f.mul(a[r0][c1], a[r1][c0]));
    }
  }
  return out;
}

inline u64 det3(const PrimeField& f, const Mat3& a) {
  return dot(f, a[0], cross(f, a[1], a[2]));
}

struct CremonaStep {
  std::array<int, 3> centers{};      // 0-based (i, j, k)
  Mat3 lines{};                      // rows H_jk, H_ik, H_ij
  std::vector<PlanePoint> before;
  std::vector<PlanePoint> after;

  /// The defining quadrics (H_ij H_ik, H_ij H_jk, H_ik H_jk).
  std::array<PlaneForm, 3> quadrics(const PrimeField& f) const {
    const PlaneForm hjk = PlaneForm::linear(f, lines[0]);
    const PlaneForm hik = PlaneForm::linear(f, lines[1]);
    const PlaneForm hij = PlaneForm::linear(f, lines[2]);
    return {mul(hij, hik), mul(hij, hjk), mul(hik, hjk)};
  }
};

inline PlanePoint apply_matrix(const PrimeField& f, const Mat3& a, const PlanePoint& x) {
  return {dot(f, a[0], x), dot(f, a[1], x), dot(f, a[2], x)};
}

/// Maps the points through the quadratic transformation centered at i, j, k.
/// The centers are replaced by (1,0,0), (0,1,0), (0,0,1): the images of the
/// lines opposite to them.
inline CremonaStep cremona_apply(const PointSet& pts, int i, int j, int k) {
  const PrimeField& f = pts.field;
  const int r = static_cast<int>(pts.size());
  if (i == j || j == k || i == k || std::min({i, j, k}) < 0 || std::max({i, j, k}) >= r) {
    throw DimensionError("cremona_apply: bad center indices");
  }
  CremonaStep st;
  st.centers = {i, j, k};
  const auto& P = pts.points;
  const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j), uk = static_cast<std::size_t>(k);
  if (collinear(f, P[ui], P[uj], P[uk])) throw DegenerateError("cremona_apply: collinear centers");
  st.lines = {normalize_point(f, cross(f, P[uj], P[uk])), normalize_point(f, cross(f, P[ui], P[uk])),
              normalize_point(f, cross(f, P[ui], P[uj]))};
  st.before = P;
  st.after.resize(P.size());
  for (std::size_t n = 0; n < P.size(); ++n) {
    if (n == ui) st.after[n] = {1, 0, 0};
    else if (n == uj) st.after[n] = {0, 1, 0};
    else if (n == uk) st.after[n] = {0, 0, 1};
    else {
      const PlanePoint y = apply_matrix(f, st.lines, P[n]);
      const PlanePoint img{f.mul(y[1], y[2]), f.mul(y[0], y[2]), f.mul(y[0], y[1])};
      // A point on one fundamental line goes to the matching coordinate point;
      // on two lines the map is undefined.
      if (is_zero_vector(img)) throw DegenerateError("cremona_apply: point on two fundamental lines");
      st.after[n] = normalize_point(f, img);
    }
  }
  return st;
}

namespace detail {

inline std::array<BinForm, 3> combine(const Mat3& a, const std::array<BinForm, 3>& v) {
  const PrimeField& f = v[0].field();
  std::array<BinForm, 3> out{BinForm(f, v[0].degree()), BinForm(f, v[0].degree()), BinForm(f, v[0].degree())};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (a[i][j]) out[i] = out[i] + v[j].scaled(a[i][j]);
    }
  }
  return out;
}

inline std::array<BinForm, 3> sigma(const std::array<BinForm, 3>& y) {
  return {mul(y[1], y[2]), mul(y[0], y[2]), mul(y[0], y[1])};
}

inline ParamTriple strip_common_factor(std::array<BinForm, 3> v) {
  const BinForm g = gcd(v[0], v[1], v[2]);
  for (auto& c : v) c = div_exact(c, g);
  try {
    return ParamTriple(std::move(v[0]), std::move(v[1]), std::move(v[2]));
  } catch (const DomainError& e) {
    throw DegenerateError(std::string("Cremona image degenerates: ") + e.what());
  }
}

}  // namespace detail

/// Image of a parameterized curve under the step, common factor removed.
inline ParamTriple cremona_push(const CremonaStep& st, const ParamTriple& phi) {
  return detail::strip_common_factor(detail::sigma(detail::combine(st.lines, phi.components())));
}

/// Preimage of a parameterized curve in the transformed plane.
inline ParamTriple cremona_pull(const CremonaStep& st, const ParamTriple& psi) {
  const PrimeField& f = psi.field();
  return detail::strip_common_factor(detail::combine(adjugate(f, st.lines), detail::sigma(psi.components())));
}

// ---------------------------------------------------------------------------
// Multiplicities

/// Number of parameter values (with multiplicity) mapping to P.
inline int multiplicity_at(const ParamTriple& phi, const PlanePoint& point) {
  const PrimeField& f = phi.field();
  const PlanePoint P = normalize_point(f, point);
  std::size_t c = 0;
  while (P[c] == 0) ++c;
  const std::size_t a = (c + 1) % 3, b = (c + 2) % 3;
  const BinForm fa = phi[a] - phi[c].scaled(P[a]);
  const BinForm fb = phi[b] - phi[c].scaled(P[b]);
  if (fa.is_zero() && fb.is_zero()) throw InvariantError("multiplicity_at: constant map");
  return gcd(fa, fb).degree();
}

// ---------------------------------------------------------------------------
// Parameterization

struct ParamResult {
  ParamTriple phi;
  PointSet points;                 // the configuration actually used
  WeylWord word;                   // reduction word, first step first
  std::vector<CremonaStep> trace;  // one per word letter
  DivClass base;                   // class reached by the reduction
  int attempts = 1;
};

inline constexpr int kParamRetries = 16;

namespace detail {

inline ParamTriple line_through(const PrimeField& f, const PlanePoint& a, const PlanePoint& b) {
  if (a == b) throw DegenerateError("line through coincident points");
  std::array<BinForm, 3> v{BinForm(f, 1), BinForm(f, 1), BinForm(f, 1)};
  for (std::size_t i = 0; i < 3; ++i) {
    v[i].coeff(0) = a[i];
    v[i].coeff(1) = b[i];
  }
  return ParamTriple(v[0], v[1], v[2]);
}

// Conic through five points, parameterized by the lines through the first.
inline ParamTriple conic_through(const PrimeField& f, const std::vector<PlanePoint>& five, ResidueSource& src) {
  MatFp m(f, 5, 6);
  for (std::size_t a = 0; a < 5; ++a) {
    const auto row = conic_row(f, five[a]);
    for (std::size_t b = 0; b < 6; ++b) m.at(a, b) = row[b];
  }
  const auto ker = kernel_basis(m);
  if (ker.size() != 1) throw DegenerateError("conic interpolation is not unique");
  const PlaneForm conic(f, 2, ker.front());
  // Gram matrix of 2C, nonsingular iff the conic is smooth (p odd).
  Mat3 gram{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      Exponent e{0, 0, 0};
      ++e[i];
      ++e[j];
      const u64 c = conic.coeff(e);
      gram[i][j] = (i == j) ? f.add(c, c) : c;
    }
  }
  if (det3(f, gram) == 0) throw DegenerateError("interpolated conic is singular");

  const PlanePoint& q = five.front();
  const PlanePoint grad = apply_matrix(f, gram, q);
  const PlanePoint r1 = random_point(src);
  const PlanePoint r2 = random_point(src);
  if (r1 == r2 || collinear(f, q, r1, r2)) throw DegenerateError("bad auxiliary line");
  const ParamTriple rline = line_through(f, r1, r2);
  const BinForm c_r = compose(conic, rline);
  BinForm g_r(f, 1);
  g_r.coeff(0) = dot(f, grad, r1);
  g_r.coeff(1) = dot(f, grad, r2);
  std::array<BinForm, 3> v{BinForm(f, 2), BinForm(f, 2), BinForm(f, 2)};
  // v_i = (grad.R) R_i - C(R) q_i: the second intersection of the line qR with the conic
  for (std::size_t i = 0; i < 3; ++i) v[i] = mul(g_r, rline[i]) - c_r.scaled(q[i]);
  try {
    return ParamTriple(v[0], v[1], v[2]);
  } catch (const DomainError& e) {
    throw DegenerateError(std::string("conic parameterization degenerates: ") + e.what());
  }
}

inline BinForm random_form(ResidueSource& src, int degree) {
  BinForm out(src.field(), degree);
  for (int i = 0; i <= degree; ++i) out.coeff(i) = src.next();
  return out;
}

// Degree d with a (d-1)-fold point P and at most one further simple point Q:
// phi = a P + b R with R(s,t) = s R1 + t R2, deg a = d, deg b = d-1. The
// parameter values where b vanishes all map to P.
inline ParamTriple monoid_through(const PrimeField& f, int d, const PlanePoint& p, const std::optional<PlanePoint>& q,
                                  ResidueSource& src) {
  const PlanePoint r1 = random_point(src);
  const PlanePoint r2 = random_point(src);
  if (r1 == r2 || collinear(f, p, r1, r2)) throw DegenerateError("bad auxiliary line");
  const ParamTriple rline = line_through(f, r1, r2);
  BinForm a = random_form(src, d);
  const BinForm b = random_form(src, d - 1);
  if (q) {
    // q = alpha p + beta1 r1 + beta2 r2; the line through p and q meets R at (beta1, beta2)
    const Mat3 cols{{{p[0], r1[0], r2[0]}, {p[1], r1[1], r2[1]}, {p[2], r1[2], r2[2]}}};
    const u64 det = det3(f, cols);
    if (det == 0) throw DegenerateError("auxiliary frame is singular");
    const PlanePoint coef = apply_matrix(f, adjugate(f, cols), *q);
    const u64 inv = f.inv(det);
    const u64 al = f.mul(coef[0], inv), s0 = f.mul(coef[1], inv), t0 = f.mul(coef[2], inv);
    if (s0 == 0 && t0 == 0) throw DegenerateError("simple point coincides with the singular point");
    // make a(s0,t0) = alpha b(s0,t0) by correcting one monomial
    const u64 want = f.mul(al, b.eval(s0, t0));
    const u64 diff = f.sub(want, a.eval(s0, t0));
    if (s0 != 0) a.coeff(0) = f.add(a.coeff(0), f.mul(diff, f.inv(f.pow(s0, static_cast<u64>(d)))));
    else a.coeff(d) = f.add(a.coeff(d), f.mul(diff, f.inv(f.pow(t0, static_cast<u64>(d)))));
  }
  std::array<BinForm, 3> v{BinForm(f, d), BinForm(f, d), BinForm(f, d)};
  for (std::size_t i = 0; i < 3; ++i) v[i] = a.scaled(p[i]) + mul(b, rline[i]);
  try {
    return ParamTriple(v[0], v[1], v[2]);
  } catch (const DomainError& e) {
    throw DegenerateError(std::string("monoid parameterization degenerates: ") + e.what());
  }
}

inline ParamTriple parameterize_base(const DivClass& base, const std::vector<PlanePoint>& pts, ResidueSource& src) {
  const PrimeField& f = src.field();
  if (base.d >= 3) {
    // a (d-1)-fold point and at most one simple point
    std::optional<PlanePoint> sing, simple;
    int simple_count = 0;
    for (std::size_t i = 0; i < base.m.size(); ++i) {
      const int mi = base.m[i];
      if (mi == base.d - 1 && !sing) sing = pts[i];
      else if (mi == 1) {
        simple = pts[i];
        ++simple_count;
      } else if (mi != 0) {
        throw DomainError("reduction stalled at " + to_string(base));
      }
    }
    if (!sing || simple_count > 1) throw DomainError("reduction stalled at " + to_string(base));
    return monoid_through(f, base.d, *sing, simple, src);
  }
  std::vector<PlanePoint> through;
  for (std::size_t i = 0; i < base.m.size(); ++i) {
    const int mi = base.m[i];
    if (mi < 0 || mi > 1) throw DomainError("reduction reached a non-curve class " + to_string(base));
    if (mi == 1) through.push_back(pts[i]);
  }
  const std::size_t need = base.d == 1 ? 2 : 5;
  if (through.size() > need) throw DomainError("base class passes through too many points: " + to_string(base));
  while (through.size() < need) through.push_back(random_point(src));
  if (base.d == 1) return line_through(f, through[0], through[1]);
  return conic_through(f, through, src);
}

inline std::optional<ParamResult> try_parameterize(const DivClass& c, const PointSet& pts, ResidueSource& src) {
  const BaseReduction red = reduce_to_base(c);
  std::vector<CremonaStep> trace;
  PointSet cur = pts;
  for (const auto& q : red.word) {
    trace.push_back(cremona_apply(cur, q.idx[0], q.idx[1], q.idx[2]));
    cur.points = trace.back().after;
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t b = a + 1; b < cur.size(); ++b)
        if (cur[a] == cur[b]) throw DegenerateError("Cremona image merges two points");
  }
  ParamTriple phi = parameterize_base(red.base, cur.points, src);
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) phi = cremona_pull(*it, phi);

  if (phi.degree() != c.d) return std::nullopt;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (multiplicity_at(phi, pts[i]) != c.m[i]) return std::nullopt;
  }
  return ParamResult{std::move(phi), pts, red.word, std::move(trace), red.base, 1};
}

}  // namespace detail

/// Parameterizes a rational curve of class c through the given points. On a
/// degenerate configuration the points are regenerated from derive_seed(seed, attempt).
inline ParamResult parameterize(const DivClass& c, const PointSet& points, u64 seed, int max_attempts = kParamRetries) {
  if (c.d < 1) throw DomainError("parameterize needs degree >= 1: " + to_string(c));
  if (!smooth_rational_numerics_ok(c)) throw DomainError("not the class of a smooth rational curve: " + to_string(c));
  if (std::any_of(c.m.begin(), c.m.end(), [](int x) { return x < 0; })) {
    throw DomainError("negative multiplicity in " + to_string(c));
  }
  if (points.size() < c.m.size()) throw DimensionError("fewer points than multiplicities");
  const DivClass full = c.padded(static_cast<int>(points.size()));
  const PrimeField& f = points.field;

  PointSet pts = points;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    if (attempt > 0) pts = random_points(static_cast<int>(points.size()), derive_seed(seed, 0x1000 + static_cast<u64>(attempt)), f);
    ResidueSource src(f, derive_seed(seed, 0x2000 + static_cast<u64>(attempt)));
    try {
      if (auto res = detail::try_parameterize(full, pts, src)) {
        res->attempts = attempt + 1;
        return std::move(*res);
      }
    } catch (const DegenerateError&) {
      // regenerate and retry
    }
  }
  throw DegenerateError("parameterize: retries exhausted for " + to_string(c));
}

inline ParamResult parameterize(const DivClass& c, u64 seed, const PrimeField& f = PrimeField()) {
  return parameterize(c, random_points(c.r(), seed, f), seed);
}

}  // namespace splitgap
