#pragma once

// Dense matrices over F_p: rank, row echelon forms, right kernels.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "splitgap/field.hpp"

namespace splitgap {

class MatFp {
 public:
  MatFp(const PrimeField& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  u64& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  u64 at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Stores a signed integer, reduced into [0, p).
  void set(std::size_t i, std::size_t j, i64 v) { at(i, j) = field_.reduce(v); }

  std::span<u64> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const u64> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  static MatFp identity(const PrimeField& f, std::size_t n) {
    MatFp m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::vector<u64> apply(std::span<const u64> v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
    std::vector<u64> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      u64 acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc = field_.add(acc, field_.mul(at(i, j), v[j]));
      out[i] = acc;
    }
    return out;
  }

  friend bool operator==(const MatFp& a, const MatFp& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<u64> data_;
};

struct EchelonForm {
  MatFp reduced;                       // reduced row echelon form, zero rows last
  std::vector<std::size_t> pivot_cols;  // one per nonzero row, increasing
};

namespace detail {

// row_dst -= factor * row_src, on the columns from `from` onwards
inline void axpy_row(const PrimeField& f, std::span<u64> dst, std::span<const u64> src, u64 factor,
                     std::size_t from) {
  const u64 p = f.modulus();
  const u64 neg = f.neg(factor);
  for (std::size_t j = from; j < dst.size(); ++j) {
    if (src[j] != 0) dst[j] = (dst[j] + neg * src[j]) % p;
  }
}

}  // namespace detail

/// Gauss-Jordan elimination; the pivot in each column is the first nonzero
/// entry at or below the current row.
inline EchelonForm row_reduce(MatFp m) {
  const PrimeField& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      auto a = m.row(piv);
      auto b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const u64 inv = f.inv(m.at(r, c));
    for (auto& x : m.row(r).subspan(c)) x = f.mul(x, inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r && m.at(i, c) != 0) detail::axpy_row(f, m.row(i), m.row(r), m.at(i, c), c);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

/// Rank by forward elimination only.
inline std::size_t rank(MatFp m) {
  const PrimeField& f = m.field();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      auto a = m.row(piv);
      auto b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const u64 inv = f.inv(m.at(r, c));
    for (auto& x : m.row(r).subspan(c)) x = f.mul(x, inv);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m.at(i, c) != 0) detail::axpy_row(f, m.row(i), m.row(r), m.at(i, c), c);
    }
    ++r;
  }
  return r;
}

inline std::size_t nullity(const MatFp& m) { return m.cols() - rank(m); }

/// Builds a matrix whose rows are the given vectors.
inline MatFp from_rows(const PrimeField& f, const std::vector<std::vector<u64>>& rows, std::size_t cols) {
  MatFp m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("ragged row list");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

/// Basis of {v : Mv = 0}, itself in reduced row echelon form (each vector's
/// leading coordinate is 1 and no other basis vector is nonzero there).
inline std::vector<std::vector<u64>> kernel_basis(const MatFp& m) {
  const PrimeField& f = m.field();
  const EchelonForm ef = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ef.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<u64>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<u64> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < ef.pivot_cols.size(); ++i) v[ef.pivot_cols[i]] = f.neg(ef.reduced.at(i, free));
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;

  const EchelonForm norm = row_reduce(from_rows(f, basis, m.cols()));
  std::vector<std::vector<u64>> out;
  for (std::size_t i = 0; i < norm.pivot_cols.size(); ++i) {
    auto r = norm.reduced.row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

}  // namespace splitgap
