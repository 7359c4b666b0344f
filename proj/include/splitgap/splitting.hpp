#pragma once

// Splitting type of a parameterized plane curve, from the syzygy module of
// (phi0, phi1, phi2): moving-line nullity, saturation degree and the least
// degree of a syzygy. Also syzygies induced by relations among plane forms.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splitgap/binform.hpp"
#include "splitgap/exactla.hpp"
#include "splitgap/planeform.hpp"

namespace splitgap {

struct SplitType {
  int a = 0;
  int b = 0;
  int gap() const { return b - a; }
  friend bool operator==(const SplitType&, const SplitType&) = default;
};

inline std::string to_string(const SplitType& s) {
  return "(" + std::to_string(s.a) + "," + std::to_string(s.b) + ")";
}

struct Syzygy {
  int degree = 0;
  std::array<BinForm, 3> alpha;
};

/// True when alpha0 phi0 + alpha1 phi1 + alpha2 phi2 vanishes identically.
inline bool is_syzygy(const ParamTriple& phi, const std::array<BinForm, 3>& alpha) {
  BinForm acc = mul(alpha[0], phi[0]);
  acc = acc + mul(alpha[1], phi[1]);
  acc = acc + mul(alpha[2], phi[2]);
  return acc.is_zero();
}

/// Matrix of (beta0, beta1, beta2) in S_k^3 -> sum beta_i phi_i in S_{k+d}.
/// Column 3w+i carries s^(k-w) t^w phi_i; row rho is the coefficient of s^(k+d-rho) t^rho.
inline MatFp syzygy_matrix(const ParamTriple& phi, int k) {
  if (k < 0) throw DimensionError("syzygy degree must be non-negative");
  const int d = phi.degree();
  MatFp m(phi.field(), static_cast<std::size_t>(k + d + 1), static_cast<std::size_t>(3 * (k + 1)));
  for (int w = 0; w <= k; ++w) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (int j = 0; j <= d; ++j) {
        m.at(static_cast<std::size_t>(w + j), static_cast<std::size_t>(3 * w) + i) = phi[i].coeff(j);
      }
    }
  }
  return m;
}

inline std::size_t syzygy_space_dim(const ParamTriple& phi, int k) { return nullity(syzygy_matrix(phi, k)); }

/// The moving-line matrix: syzygies of degree n-1 where d = 2n + delta.
inline MatFp moving_line_matrix(const ParamTriple& phi) {
  const int d = phi.degree();
  if (d < 2) throw DomainError("moving_line_matrix needs degree >= 2");
  return syzygy_matrix(phi, d / 2 - 1);
}

/// For even d = 2n: the 3n x 3n matrix with entry (u, 3w+i) = phi_{i, 2n+w-u}
/// (zero outside 0..2n).
inline MatFp moving_line_matrix_by_index(const ParamTriple& phi) {
  const int d = phi.degree();
  if (d < 2 || d % 2 != 0) throw DomainError("index formula applies to even degree >= 2");
  const int n = d / 2;
  MatFp m(phi.field(), static_cast<std::size_t>(3 * n), static_cast<std::size_t>(3 * n));
  for (int u = 0; u < 3 * n; ++u) {
    for (int w = 0; w < n; ++w) {
      for (std::size_t i = 0; i < 3; ++i) {
        const int idx = 2 * n + w - u;
        if (idx >= 0 && idx <= 2 * n) m.at(static_cast<std::size_t>(u), static_cast<std::size_t>(3 * w) + i) = phi[i].coeff(idx);
      }
    }
  }
  return m;
}

inline SplitType splitting_moving_lines(const ParamTriple& phi) {
  const int d = phi.degree();
  const int n = d / 2;
  const int p = static_cast<int>(nullity(moving_line_matrix(phi)));
  const int a = n - p;
  return {a, d - a};
}

/// dim J_k for the ideal J = (phi0, phi1, phi2), k >= d.
inline std::size_t ideal_degree_dim(const ParamTriple& phi, int k) {
  const int d = phi.degree();
  if (k < d) throw DimensionError("ideal_degree_dim needs k >= d");
  return rank(syzygy_matrix(phi, k - d));
}

struct SaturationResult {
  int sigma = 0;
  SplitType split;
};

/// sigma = least k with J_k = S_k; the search stays within [d, 2d-2].
inline SaturationResult splitting_saturation(const ParamTriple& phi) {
  const int d = phi.degree();
  if (d < 2) throw DomainError("splitting_saturation needs degree >= 2");
  auto full = [&](int k) { return ideal_degree_dim(phi, k) == static_cast<std::size_t>(k + 1); };
  int lo = d, hi = 2 * d - 2;
  if (!full(hi)) throw DomainError("J is not saturated by degree 2d-2: invalid parameterization");
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (full(mid)) hi = mid;
    else lo = mid + 1;
  }
  const int b = lo - d + 1;
  return {lo, {d - b, b}};
}

inline Syzygy syzygy_from_vector(const PrimeField& f, int k, const std::vector<u64>& v) {
  Syzygy s{k, {BinForm(f, k), BinForm(f, k), BinForm(f, k)}};
  for (int w = 0; w <= k; ++w) {
    for (std::size_t i = 0; i < 3; ++i) s.alpha[i].coeff(w) = v[static_cast<std::size_t>(3 * w) + i];
  }
  return s;
}

/// A syzygy of least degree (the first kernel vector in echelon order).
inline Syzygy min_syzygy(const ParamTriple& phi) {
  const int d = phi.degree();
  for (int k = 0; k <= d; ++k) {
    const auto ker = kernel_basis(syzygy_matrix(phi, k));
    if (!ker.empty()) return syzygy_from_vector(phi.field(), k, ker.front());
  }
  throw InvariantError("no syzygy up to degree d");
}

/// Splitting type for any degree; lines have type (0,1).
inline SplitType splitting_type(const ParamTriple& phi) {
  if (phi.degree() == 1) return {0, 1};
  return splitting_moving_lines(phi);
}

struct SplitReport {
  SplitType split;
  int sigma = 0;  // saturation degree, 0 for lines
  Syzygy syzygy;
  bool methods_agree = true;
};

/// Runs all three methods; methods_agree records whether they coincide.
inline SplitReport split_all_methods(const ParamTriple& phi) {
  const Syzygy syz = min_syzygy(phi);
  if (phi.degree() == 1) return {{0, 1}, 0, syz, syz.degree == 0};
  const SplitType ml = splitting_moving_lines(phi);
  const SaturationResult sat = splitting_saturation(phi);
  return {ml, sat.sigma, syz, ml == sat.split && syz.degree == ml.a};
}

struct PlaneSyzygy {
  Syzygy syzygy;
  BinForm cofactor;
};

/// Given plane forms with A0 x0 + A1 x1 + A2 x2 = 0, the syzygy
/// (A_i(phi)) / gcd and the removed common factor.
inline PlaneSyzygy syzygy_from_plane(const ParamTriple& phi, const std::array<PlaneForm, 3>& forms) {
  const int q = forms[0].degree();
  if (forms[1].degree() != q || forms[2].degree() != q) throw DimensionError("plane forms differ in degree");
  const PlaneForm relation = forms[0].times_variable(0) + forms[1].times_variable(1) + forms[2].times_variable(2);
  if (!relation.is_zero()) throw DomainError("forms do not satisfy sum A_i x_i = 0");
  std::array<BinForm, 3> psi{compose(forms[0], phi), compose(forms[1], phi), compose(forms[2], phi)};
  if (psi[0].is_zero() && psi[1].is_zero() && psi[2].is_zero()) {
    throw DomainError("all plane forms vanish on the curve");
  }
  BinForm g = gcd(psi[0], psi[1], psi[2]);
  for (auto& c : psi) c = div_exact(c, g);
  const int k = psi[0].degree();
  return {{k, std::move(psi)}, std::move(g)};
}

}  // namespace splitgap
