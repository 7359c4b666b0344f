#pragma once

// Binary forms over F_p: the graded ring K[s,t] of the source line.
// Coefficient i of a degree-n form multiplies s^(n-i) t^i.

#include <algorithm>
#include <array>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "splitgap/field.hpp"

namespace splitgap {

class BinForm {
 public:
  BinForm(const PrimeField& f, int degree) : field_(f), coeffs_(static_cast<std::size_t>(check(degree)) + 1, 0) {}
  BinForm(const PrimeField& f, std::vector<u64> coeffs) : field_(f), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DimensionError("BinForm needs at least one coefficient");
    for (auto& c : coeffs_) c %= f.modulus();
  }

  static BinForm from_signed(const PrimeField& f, const std::vector<i64>& c) {
    std::vector<u64> v;
    v.reserve(c.size());
    for (i64 x : c) v.push_back(f.reduce(x));
    return BinForm(f, std::move(v));
  }

  /// s^a t^b with coefficient c.
  static BinForm monomial(const PrimeField& f, int a, int b, u64 c = 1) {
    BinForm out(f, a + b);
    out.coeffs_[static_cast<std::size_t>(b)] = c % f.modulus();
    return out;
  }

  static BinForm constant(const PrimeField& f, u64 c) { return BinForm(f, std::vector<u64>{c}); }

  const PrimeField& field() const { return field_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<u64>& coeffs() const { return coeffs_; }
  u64 coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  u64& coeff(int i) { return coeffs_.at(static_cast<std::size_t>(i)); }

  /// The zero form keeps a nominal degree so that it can sit in graded slots.
  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
  }

  /// Index of the first nonzero coefficient: the exponent of t dividing the form.
  int t_valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i]) return static_cast<int>(i);
    }
    return degree() + 1;
  }

  /// Scales so that the first nonzero coefficient is 1.
  BinForm monic() const {
    if (is_zero()) return *this;
    const u64 inv = field_.inv(coeffs_[static_cast<std::size_t>(t_valuation())]);
    return scaled(inv);
  }

  BinForm scaled(u64 c) const {
    BinForm out = *this;
    for (auto& x : out.coeffs_) x = field_.mul(x, c);
    return out;
  }

  u64 eval(u64 s0, u64 t0) const {
    // Horner in s with t-powers accumulated alongside.
    const std::size_t n = coeffs_.size() - 1;
    u64 acc = 0;
    u64 tpow = 1;
    std::vector<u64> tp(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      tp[i] = tpow;
      tpow = field_.mul(tpow, t0);
    }
    for (std::size_t i = 0; i <= n; ++i) acc = field_.add(field_.mul(acc, s0), field_.mul(coeffs_[i], tp[i]));
    return acc;
  }

  friend bool operator==(const BinForm& a, const BinForm& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

  /// Equality up to a nonzero scalar.
  bool proportional_to(const BinForm& o) const {
    if (degree() != o.degree()) return false;
    return monic() == o.monic();
  }

 private:
  static int check(int degree) {
    if (degree < 0) throw DimensionError("negative form degree");
    return degree;
  }

  PrimeField field_;
  std::vector<u64> coeffs_;
};

inline void require_same_field(const BinForm& a, const BinForm& b) {
  if (!(a.field() == b.field())) throw DimensionError("forms over different moduli");
}

inline BinForm operator+(const BinForm& a, const BinForm& b) {
  require_same_field(a, b);
  if (a.degree() != b.degree()) throw DimensionError("adding forms of different degree");
  BinForm out = a;
  for (int i = 0; i <= a.degree(); ++i) out.coeff(i) = a.field().add(a.coeff(i), b.coeff(i));
  return out;
}

inline BinForm operator-(const BinForm& a, const BinForm& b) {
  require_same_field(a, b);
  if (a.degree() != b.degree()) throw DimensionError("subtracting forms of different degree");
  BinForm out = a;
  for (int i = 0; i <= a.degree(); ++i) out.coeff(i) = a.field().sub(a.coeff(i), b.coeff(i));
  return out;
}

inline BinForm mul(const BinForm& a, const BinForm& b) {
  require_same_field(a, b);
  const PrimeField& f = a.field();
  const u64 p = f.modulus();
  BinForm out(f, a.degree() + b.degree());
  std::vector<u64> acc(static_cast<std::size_t>(out.degree()) + 1, 0);
  for (int i = 0; i <= a.degree(); ++i) {
    const u64 ai = a.coeff(i);
    if (!ai) continue;
    for (int j = 0; j <= b.degree(); ++j) {
      auto& slot = acc[static_cast<std::size_t>(i + j)];
      slot = (slot + ai * b.coeff(j)) % p;
    }
  }
  for (int i = 0; i <= out.degree(); ++i) out.coeff(i) = acc[static_cast<std::size_t>(i)];
  return out;
}

inline BinForm operator*(const BinForm& a, const BinForm& b) { return mul(a, b); }

/// Quotient f / g; throws InvariantError if g does not divide f.
inline BinForm div_exact(const BinForm& f, const BinForm& g) {
  require_same_field(f, g);
  if (g.is_zero()) throw DomainError("division by the zero form");
  const int dq = f.degree() - g.degree();
  if (dq < 0) {
    if (f.is_zero()) return BinForm(f.field(), 0);
    throw InvariantError("div_exact: divisor has larger degree");
  }
  const PrimeField& fld = f.field();
  const int j0 = g.t_valuation();
  const u64 inv = fld.inv(g.coeff(j0));
  BinForm q(fld, dq);
  for (int i = 0; i <= dq; ++i) {
    // f_{i+j0} = sum_l q_l g_{i+j0-l}; terms with l < i are known.
    u64 acc = (i + j0 <= f.degree()) ? f.coeff(i + j0) : 0;
    for (int l = std::max(0, i + j0 - g.degree()); l < i; ++l) {
      acc = fld.sub(acc, fld.mul(q.coeff(l), g.coeff(i + j0 - l)));
    }
    q.coeff(i) = fld.mul(acc, inv);
  }
  if (!(mul(g, q) == f)) throw InvariantError("div_exact: divisor does not divide");
  return q;
}

namespace detail {

// Dense univariate polynomials, lowest degree first, no trailing zeros.
using UPoly = std::vector<u64>;

inline void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline UPoly upoly_mod(UPoly a, const UPoly& b, const PrimeField& f) {
  const u64 inv = f.inv(b.back());
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const u64 c = f.mul(a.back(), inv);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    trim(a);
  }
  return a;
}

inline UPoly upoly_gcd(UPoly a, UPoly b, const PrimeField& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = upoly_mod(std::move(a), b, f);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace detail

/// Monic homogeneous gcd. Powers of t are split off first; the remaining
/// parts are dehomogenized at t = 1, where the Euclidean algorithm applies.
inline BinForm gcd(const BinForm& f, const BinForm& g) {
  require_same_field(f, g);
  const PrimeField& fld = f.field();
  if (f.is_zero() && g.is_zero()) throw DomainError("gcd(0, 0) is undefined");
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();

  const int vf = f.t_valuation();
  const int vg = g.t_valuation();
  // After removing t^v, the form's s^k-coefficient ordering reversed gives a
  // polynomial in s (at t = 1) of full degree.
  auto dehom = [](const BinForm& h, int v) {
    detail::UPoly u;
    for (int i = h.degree(); i >= v; --i) u.push_back(h.coeff(i));  // coefficient of s^(deg-i)
    return u;
  };
  detail::UPoly u = detail::upoly_gcd(dehom(f, vf), dehom(g, vg), fld);
  const int e = std::min(vf, vg);
  const int du = static_cast<int>(u.size()) - 1;
  BinForm out(fld, du + e);
  // s^k (k <= du) becomes s^k t^(du-k), then multiplied by t^e.
  for (int k = 0; k <= du; ++k) out.coeff(du - k + e) = u[static_cast<std::size_t>(k)];
  return out.monic();
}

inline BinForm gcd(const BinForm& a, const BinForm& b, const BinForm& c) {
  if (a.is_zero() && b.is_zero()) return gcd(c, c);
  return gcd(gcd(a, b), c);
}

inline BinForm pow(const BinForm& f, int e) {
  BinForm out = BinForm::constant(f.field(), 1);
  for (int i = 0; i < e; ++i) out = mul(out, f);
  return out;
}

inline std::string to_string(const BinForm& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const int n = f.degree();
  for (int i = 0; i <= n; ++i) {
    const u64 c = f.coeff(i);
    if (!c) continue;
    if (!first) os << " + ";
    first = false;
    os << f.field().centered(c);
    const int a = n - i;
    if (a > 0) os << "*s" << (a > 1 ? "^" + std::to_string(a) : "");
    if (i > 0) os << "*t" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

/// Three forms of a common degree with no common factor: a map P^1 -> P^2.
class ParamTriple {
 public:
  ParamTriple(BinForm phi0, BinForm phi1, BinForm phi2) : phi_{std::move(phi0), std::move(phi1), std::move(phi2)} {
    const int d = phi_[0].degree();
    if (phi_[1].degree() != d || phi_[2].degree() != d) throw DimensionError("ParamTriple components differ in degree");
    if (d < 1) throw DomainError("ParamTriple needs degree >= 1");
    require_same_field(phi_[0], phi_[1]);
    require_same_field(phi_[0], phi_[2]);
    if (gcd(phi_[0], phi_[1], phi_[2]).degree() != 0) throw DomainError("ParamTriple components share a factor");
    const BinForm* ref = nullptr;
    bool proportional = true;
    for (const auto& c : phi_) {
      if (c.is_zero()) continue;
      if (!ref) ref = &c;
      else if (!c.proportional_to(*ref)) proportional = false;
    }
    if (proportional) throw DomainError("ParamTriple components are proportional: image is a point");
  }

  int degree() const { return phi_[0].degree(); }
  const PrimeField& field() const { return phi_[0].field(); }
  const BinForm& operator[](std::size_t i) const { return phi_.at(i); }
  const std::array<BinForm, 3>& components() const { return phi_; }

  std::array<u64, 3> eval(u64 s0, u64 t0) const {
    return {phi_[0].eval(s0, t0), phi_[1].eval(s0, t0), phi_[2].eval(s0, t0)};
  }

 private:
  std::array<BinForm, 3> phi_;
};

}  // namespace splitgap
