#pragma once

// Ternary forms of a fixed degree over F_p and their pullback along a
// parameterization. Monomials x0^a0 x1^a1 x2^a2 of degree k are ordered by a0
// descending, then a2 ascending: with e = k - a0 the index is e(e+1)/2 + a2.

#include <array>
#include <cstddef>
#include <vector>

#include "splitgap/binform.hpp"
#include "splitgap/field.hpp"

namespace splitgap {

using Exponent = std::array<int, 3>;

inline std::size_t monomial_count(int k) {
  if (k < 0) return 0;
  return static_cast<std::size_t>(k + 1) * static_cast<std::size_t>(k + 2) / 2;
}

inline std::size_t monomial_index(const Exponent& a) {
  const int e = a[1] + a[2];
  return static_cast<std::size_t>(e) * static_cast<std::size_t>(e + 1) / 2 + static_cast<std::size_t>(a[2]);
}

inline std::vector<Exponent> monomial_exponents(int k) {
  std::vector<Exponent> out;
  out.reserve(monomial_count(k));
  for (int e = 0; e <= k; ++e) {
    for (int a2 = 0; a2 <= e; ++a2) out.push_back({k - e, e - a2, a2});
  }
  return out;
}

class PlaneForm {
 public:
  PlaneForm(const PrimeField& f, int degree) : field_(f), degree_(degree), coeffs_(monomial_count(degree), 0) {
    if (degree < 0) throw DimensionError("negative plane form degree");
  }
  PlaneForm(const PrimeField& f, int degree, std::vector<u64> coeffs)
      : field_(f), degree_(degree), coeffs_(std::move(coeffs)) {
    if (degree < 0 || coeffs_.size() != monomial_count(degree)) throw DimensionError("plane form coefficient count");
    for (auto& c : coeffs_) c %= f.modulus();
  }

  /// The linear form c0 x0 + c1 x1 + c2 x2.
  static PlaneForm linear(const PrimeField& f, const std::array<u64, 3>& c) {
    PlaneForm out(f, 1);
    for (int i = 0; i < 3; ++i) {
      Exponent a{0, 0, 0};
      a[static_cast<std::size_t>(i)] = 1;
      out.coeffs_[monomial_index(a)] = c[static_cast<std::size_t>(i)] % f.modulus();
    }
    return out;
  }

  const PrimeField& field() const { return field_; }
  int degree() const { return degree_; }
  const std::vector<u64>& coeffs() const { return coeffs_; }
  u64 coeff(const Exponent& a) const { return coeffs_[monomial_index(a)]; }
  u64& coeff(const Exponent& a) { return coeffs_[monomial_index(a)]; }

  bool is_zero() const {
    for (u64 c : coeffs_) {
      if (c) return false;
    }
    return true;
  }

  u64 eval(const std::array<u64, 3>& x) const {
    const auto exps = monomial_exponents(degree_);
    u64 acc = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (!coeffs_[i]) continue;
      u64 term = coeffs_[i];
      for (int v = 0; v < 3; ++v) term = field_.mul(term, field_.pow(x[static_cast<std::size_t>(v)], static_cast<u64>(exps[i][static_cast<std::size_t>(v)])));
      acc = field_.add(acc, term);
    }
    return acc;
  }

  /// Multiplication by the variable x_j.
  PlaneForm times_variable(int j) const {
    PlaneForm out(field_, degree_ + 1);
    const auto exps = monomial_exponents(degree_);
    for (std::size_t i = 0; i < exps.size(); ++i) {
      Exponent a = exps[i];
      ++a[static_cast<std::size_t>(j)];
      out.coeffs_[monomial_index(a)] = coeffs_[i];
    }
    return out;
  }

  friend bool operator==(const PlaneForm& a, const PlaneForm& b) {
    return a.field_ == b.field_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  PrimeField field_;
  int degree_;
  std::vector<u64> coeffs_;
};

inline PlaneForm operator+(const PlaneForm& a, const PlaneForm& b) {
  if (a.degree() != b.degree() || !(a.field() == b.field())) throw DimensionError("adding incompatible plane forms");
  std::vector<u64> c(a.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.field().add(a.coeffs()[i], b.coeffs()[i]);
  return PlaneForm(a.field(), a.degree(), std::move(c));
}

inline PlaneForm mul(const PlaneForm& a, const PlaneForm& b) {
  if (!(a.field() == b.field())) throw DimensionError("plane forms over different moduli");
  const PrimeField& f = a.field();
  PlaneForm out(f, a.degree() + b.degree());
  const auto ea = monomial_exponents(a.degree());
  const auto eb = monomial_exponents(b.degree());
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (!a.coeffs()[i]) continue;
    for (std::size_t j = 0; j < eb.size(); ++j) {
      if (!b.coeffs()[j]) continue;
      const Exponent s{ea[i][0] + eb[j][0], ea[i][1] + eb[j][1], ea[i][2] + eb[j][2]};
      u64& slot = out.coeff(s);
      slot = f.add(slot, f.mul(a.coeffs()[i], b.coeffs()[j]));
    }
  }
  return out;
}

/// F(phi0, phi1, phi2), a binary form of degree deg(F) * deg(phi).
inline BinForm compose(const PlaneForm& form, const ParamTriple& phi) {
  const PrimeField& f = form.field();
  const int k = form.degree();
  const int d = phi.degree();
  std::array<std::vector<BinForm>, 3> powers;
  for (std::size_t v = 0; v < 3; ++v) {
    powers[v].push_back(BinForm::constant(f, 1));
    for (int e = 1; e <= k; ++e) powers[v].push_back(mul(powers[v].back(), phi[v]));
  }
  BinForm out(f, k * d);
  const auto exps = monomial_exponents(k);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const u64 c = form.coeffs()[i];
    if (!c) continue;
    const auto& a = exps[i];
    BinForm term = mul(mul(powers[0][static_cast<std::size_t>(a[0])], powers[1][static_cast<std::size_t>(a[1])]),
                       powers[2][static_cast<std::size_t>(a[2])]);
    out = out + term.scaled(c);
  }
  return out;
}

}  // namespace splitgap
