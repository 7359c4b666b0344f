#pragma once

// Fat point schemes Z = m_1 p_1 + ... + m_r p_r at random points: graded
// pieces of the ideal I_Z by interpolation, the multiplication maps
// mu_k : I_k (x) R_1 -> I_{k+1}, and the cohomology of divisor classes.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "splitgap/exactla.hpp"
#include "splitgap/field.hpp"
#include "splitgap/lattice.hpp"
#include "splitgap/param.hpp"
#include "splitgap/planeform.hpp"

namespace splitgap {

class FatScheme {
 public:
  FatScheme(PointSet points, std::vector<int> mults) : points_(std::move(points)), mults_(std::move(mults)) {
    if (points_.size() != mults_.size()) throw DimensionError("FatScheme: point and multiplicity counts differ");
    for (int m : mults_) {
      if (m < 0) throw DomainError("FatScheme: negative multiplicity");
      length_ += static_cast<i64>(m) * (m + 1) / 2;
    }
  }

  const PointSet& points() const { return points_; }
  const PrimeField& field() const { return points_.field; }
  const std::vector<int>& mults() const { return mults_; }
  i64 length() const { return length_; }
  int max_mult() const { return mults_.empty() ? 0 : *std::max_element(mults_.begin(), mults_.end()); }

 private:
  PointSet points_;
  std::vector<int> mults_;
  i64 length_ = 0;
};

inline FatScheme random_fat_scheme(const std::vector<int>& mults, u64 seed, const PrimeField& f = PrimeField()) {
  return FatScheme(random_points(static_cast<int>(mults.size()), seed, f), mults);
}

namespace detail {

inline void require_safe_degree(const PrimeField& f, int k) {
  if (static_cast<u64>(k) >= f.modulus()) {
    throw DomainError("modulus " + std::to_string(f.modulus()) + " must exceed degree " + std::to_string(k));
  }
}

// Binomial coefficients mod p up to n.
inline std::vector<std::vector<u64>> binomials(const PrimeField& f, int n) {
  std::vector<std::vector<u64>> c(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    auto& row = c[static_cast<std::size_t>(i)];
    row.assign(static_cast<std::size_t>(i + 1), 1);
    for (int j = 1; j < i; ++j) {
      row[static_cast<std::size_t>(j)] =
          f.add(c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)], c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]);
    }
  }
  return c;
}

}  // namespace detail

/// Linear conditions on degree-k forms for vanishing to order m_i at p_i.
/// In the affine chart where the point's first nonzero coordinate is 1, each
/// row is a Taylor coefficient of order < m_i at the point.
inline MatFp conditions_matrix(const FatScheme& z, int k) {
  if (k < 0) throw DimensionError("negative degree");
  const PrimeField& f = z.field();
  detail::require_safe_degree(f, k);
  const auto exps = monomial_exponents(k);
  const auto binom = detail::binomials(f, k);
  MatFp m(f, static_cast<std::size_t>(z.length()), exps.size());
  std::size_t row = 0;
  for (std::size_t n = 0; n < z.mults().size(); ++n) {
    const int mult = z.mults()[n];
    if (mult == 0) continue;
    const PlanePoint& P = z.points()[n];
    std::size_t c = 0;
    while (P[c] == 0) ++c;
    const std::size_t ua = (c + 1) % 3, ub = (c + 2) % 3;
    std::vector<u64> pa(static_cast<std::size_t>(k + 1)), pb(static_cast<std::size_t>(k + 1));
    pa[0] = pb[0] = 1;
    for (std::size_t e = 1; e <= static_cast<std::size_t>(k); ++e) {
      pa[e] = f.mul(pa[e - 1], P[ua]);
      pb[e] = f.mul(pb[e - 1], P[ub]);
    }
    for (int i = 0; i < mult; ++i) {
      for (int j = 0; i + j < mult; ++j, ++row) {
        for (std::size_t col = 0; col < exps.size(); ++col) {
          const int ea = exps[col][ua], eb = exps[col][ub];
          if (ea < i || eb < j) continue;
          u64 v = f.mul(binom[static_cast<std::size_t>(ea)][static_cast<std::size_t>(i)],
                        binom[static_cast<std::size_t>(eb)][static_cast<std::size_t>(j)]);
          v = f.mul(v, f.mul(pa[static_cast<std::size_t>(ea - i)], pb[static_cast<std::size_t>(eb - j)]));
          m.at(row, col) = v;
        }
      }
    }
  }
  return m;
}

/// dim (I_Z)_k.
inline int ideal_dim(const FatScheme& z, int k) {
  if (k < 0) return 0;
  const MatFp m = conditions_matrix(z, k);
  return static_cast<int>(m.cols() - rank(m));
}

/// A basis of (I_Z)_k.
inline std::vector<PlaneForm> ideal_basis(const FatScheme& z, int k) {
  std::vector<PlaneForm> out;
  if (k < 0) return out;
  for (auto& v : kernel_basis(conditions_matrix(z, k))) out.emplace_back(z.field(), k, std::move(v));
  return out;
}

struct MuReport {
  int k = 0;
  int dim_k = 0;       // dim (I_Z)_k
  int dim_next = 0;    // dim (I_Z)_{k+1}
  int rank = 0;
  int kernel = 0;
  int cokernel = 0;
  std::vector<std::array<PlaneForm, 3>> kernel_forms;  // (A0, A1, A2) with sum A_j x_j = 0

  bool identities_hold() const { return rank + kernel == 3 * dim_k && rank + cokernel == dim_next; }
};

/// mu_k : (I_Z)_k (x) R_1 -> (I_Z)_{k+1}.
inline MuReport mu_rank(const FatScheme& z, int k, bool keep_kernel = false) {
  const PrimeField& f = z.field();
  MuReport rep;
  rep.k = k;
  const auto basis = ideal_basis(z, k);
  rep.dim_k = static_cast<int>(basis.size());
  rep.dim_next = ideal_dim(z, k + 1);
  const std::size_t nb = basis.size();
  // column j*nb + l holds the image b_l * x_j
  MatFp m(f, monomial_count(k + 1), 3 * nb);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t l = 0; l < nb; ++l) {
      const PlaneForm img = basis[l].times_variable(static_cast<int>(j));
      for (std::size_t row = 0; row < img.coeffs().size(); ++row) m.at(row, j * nb + l) = img.coeffs()[row];
    }
  }
  if (keep_kernel) {
    for (const auto& v : kernel_basis(m)) {
      std::array<PlaneForm, 3> a{PlaneForm(f, k), PlaneForm(f, k), PlaneForm(f, k)};
      for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t l = 0; l < nb; ++l) {
          const u64 c = v[j * nb + l];
          if (!c) continue;
          std::vector<u64> scaled = basis[l].coeffs();
          for (auto& x : scaled) x = f.mul(x, c);
          a[j] = a[j] + PlaneForm(f, k, std::move(scaled));
        }
      }
      rep.kernel_forms.push_back(std::move(a));
    }
  }
  rep.rank = static_cast<int>(rank(std::move(m)));
  rep.kernel = 3 * rep.dim_k - rep.rank;
  rep.cokernel = rep.dim_next - rep.rank;
  if (!rep.identities_hold() || rep.cokernel < 0) throw InvariantError("mu_rank: inconsistent dimensions");
  return rep;
}

// ---------------------------------------------------------------------------
// Divisor classes on the blow-up

/// The fat scheme of a class: its multiplicities at the first r points.
/// Negative multiplicities are clamped to 0; `clamped` reports whether that happened.
struct ClassScheme {
  FatScheme scheme;
  bool clamped = false;
};

inline ClassScheme class_scheme(const DivClass& c, const PointSet& points) {
  if (points.size() < c.m.size()) throw DimensionError("fewer points than multiplicities");
  std::vector<int> mults(points.size(), 0);
  bool clamped = false;
  for (std::size_t i = 0; i < c.m.size(); ++i) {
    if (c.m[i] < 0) clamped = true;
    mults[i] = std::max(0, c.m[i]);
  }
  return {FatScheme(points, std::move(mults)), clamped};
}

struct H0Report {
  int h0 = 0;
  bool clamped = false;
};

inline H0Report h0_report(const DivClass& c, const PointSet& points) {
  if (c.d < 0) return {0, false};
  const ClassScheme cs = class_scheme(c, points);
  return {ideal_dim(cs.scheme, c.d), cs.clamped};
}

inline int h0_class(const DivClass& c, const PointSet& points) { return h0_report(c, points).h0; }

/// h^1 = h^0 - chi, valid while h^2 = 0 (d >= -2).
inline int h1_class(const DivClass& c, const PointSet& points) {
  if (c.d < -2) throw DomainError("h1_class needs d >= -2");
  const i64 chi = (self_intersection(c) - canonical_degree(c)) / 2 + 1;
  return static_cast<int>(h0_class(c, points) - chi);
}

/// le(A) = dim ker (H^0(A) (x) H^0(L) -> H^0(A+L)).
inline MuReport linear_excess_report(const DivClass& a, const PointSet& points, bool keep_kernel = false) {
  if (a.d < 0) throw DomainError("linear_excess needs d >= 0");
  return mu_rank(class_scheme(a, points).scheme, a.d, keep_kernel);
}

inline int linear_excess(const DivClass& a, const PointSet& points) { return linear_excess_report(a, points).kernel; }

// ---------------------------------------------------------------------------
// Initial degree and generators

/// alpha(Z) = least k with (I_Z)_k != 0, found by bisection (nonvanishing is
/// monotone in k since x0 * I_k lies in I_{k+1}).
inline int alpha(const FatScheme& z) {
  int lo = 0, hi = 3 * z.max_mult() + 3;
  if (ideal_dim(z, hi) == 0) throw DomainError("alpha: no form up to degree " + std::to_string(hi));
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (ideal_dim(z, mid) > 0) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

struct BettiRow {
  MuReport mu;
  int generators_next = 0;  // minimal generators in degree k+1 (= coker mu_k)
};

struct BettiReport {
  int alpha = 0;
  int generators_at_alpha = 0;
  std::vector<BettiRow> rows;
};

inline BettiReport betti_report(const FatScheme& z, int k_from, int k_to) {
  if (k_from < 0 || k_to < k_from) throw DimensionError("betti_report: bad degree range");
  BettiReport rep;
  rep.alpha = alpha(z);
  rep.generators_at_alpha = ideal_dim(z, rep.alpha);
  for (int k = k_from; k <= k_to; ++k) {
    MuReport mu = mu_rank(z, k);
    const int gens = mu.cokernel;
    rep.rows.push_back({std::move(mu), gens});
  }
  return rep;
}

struct InterpolationReport {
  DivClass cprime;
  int half_degree = 0;           // d'
  std::vector<int> mults;        // 3m'_i + 1
  i64 length = 0;
  int alpha = 0;
  int expected_alpha = 0;        // 3d' - 1
  int dim_alpha = 0;
  int dim_before = 0;            // dim (I_Z)_{alpha-1}
  int expected_dim_alpha = 0;    // C(alpha+2, 2) - length
  MuReport mu;
  bool alpha_ok = false;
  bool hilbert_maximal = false;
  bool cokernel_ok = false;
  bool passed() const { return alpha_ok && hilbert_maximal && cokernel_ok; }
};

/// For C' = (2d'; 2m'_1+1, ..., 2m'_9+1) exceptional: Z = sum (3m'_i+1) p_i has
/// alpha(Z) = 3d'-1, maximal Hilbert function there, and coker mu_alpha >= 2.
inline InterpolationReport prop43_check(const DivClass& cprime, const PointSet& points) {
  if (cprime.r() != 9 || !is_exceptional_class(cprime)) throw DomainError("prop43_check needs an exceptional class on 9 points");
  if (cprime.d % 2 != 0 || cprime.d < 4) throw DomainError("prop43_check needs even degree 2d' with d' >= 2");
  for (int m : cprime.m) {
    if (m < 1 || m % 2 == 0) throw DomainError("prop43_check needs odd positive multiplicities");
  }
  InterpolationReport rep;
  rep.cprime = cprime;
  rep.half_degree = cprime.d / 2;
  for (int m : cprime.m) rep.mults.push_back(3 * ((m - 1) / 2) + 1);
  const FatScheme z(points, rep.mults);
  rep.length = z.length();
  rep.expected_alpha = 3 * rep.half_degree - 1;
  rep.alpha = alpha(z);
  rep.alpha_ok = rep.alpha == rep.expected_alpha;
  rep.dim_alpha = ideal_dim(z, rep.alpha);
  rep.dim_before = rep.alpha > 0 ? ideal_dim(z, rep.alpha - 1) : 0;
  rep.expected_dim_alpha = static_cast<int>(static_cast<i64>(monomial_count(rep.alpha)) - rep.length);
  rep.hilbert_maximal = rep.dim_alpha == rep.expected_dim_alpha && rep.dim_before == 0;
  rep.mu = mu_rank(z, rep.alpha);
  rep.cokernel_ok = rep.mu.cokernel >= 2;
  return rep;
}

}  // namespace splitgap
