#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/scalar.hpp"

namespace koszul {

/// Dense matrix over an exact field. Row-major; all operations are pure.
template <class F>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<F> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<F> row(std::size_t i) const {
    return std::vector<F>(data_.begin() + i * cols_,
                          data_.begin() + (i + 1) * cols_);
  }
  std::vector<F> col(std::size_t j) const {
    std::vector<F> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (aik == F(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  friend Matrix operator*(const F& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x = s * x;
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::vector<F> apply(const std::vector<F>& v) const {
    std::vector<F> out(rows_, F(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != F(0)) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != F(0)) return false;
    return true;
  }

  void append_row(const std::vector<F>& r) {
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

private:
  std::size_t rows_, cols_;
  std::vector<F> data_;
};

/// Reduced row echelon form. Pivot tie-breaking is leftmost column,
/// topmost row; pivot list comes back ascending.
template <class F>
std::pair<Matrix<F>, std::vector<std::size_t>> rref(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c) == F(0)) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(sel, j));
    F inv = F(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = inv * m(r, j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == F(0)) continue;
      F f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).second.size();
}

/// Rows of the result form a basis of { v : m v = 0 }.
template <class F>
Matrix<F> null_space(const Matrix<F>& m) {
  auto [r, pivots] = rref(m);
  std::vector<std::size_t> free_cols;
  {
    std::size_t pi = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (pi < pivots.size() && pivots[pi] == c) { ++pi; continue; }
      free_cols.push_back(c);
    }
  }
  Matrix<F> basis(free_cols.size(), m.cols());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(k, free_cols[k]) = F(1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      basis(k, pivots[i]) = -r(i, free_cols[k]);
  }
  return basis;
}

/// Exact solve m x = b; nullopt signals inconsistency.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& m,
                                    const std::vector<F>& b) {
  Matrix<F> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto [r, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<F> x(m.cols(), F(0));
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[pivots[i]] = r(i, m.cols());
  return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) return std::nullopt;
  if (n == 0) return Matrix<F>(0, 0);
  Matrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  auto [r, pivots] = rref(std::move(aug));
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

/// Canonical form of a row space: RREF with zero rows dropped.
template <class F>
Matrix<F> row_space_basis(const Matrix<F>& m) {
  auto [r, pivots] = rref(m);
  Matrix<F> out(pivots.size(), m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = r(i, j);
  return out;
}

template <class F>
bool same_row_space(const Matrix<F>& a, const Matrix<F>& b) {
  return row_space_basis(a) == row_space_basis(b);
}

/// Does v lie in the row space of rr (assumed already in RREF)?
template <class F>
bool in_row_space(const Matrix<F>& rr, std::vector<F> v) {
  for (std::size_t i = 0; i < rr.rows(); ++i) {
    // leading column of row i
    std::size_t lead = 0;
    while (lead < rr.cols() && rr(i, lead) == F(0)) ++lead;
    if (lead == rr.cols()) continue;
    if (v[lead] == F(0)) continue;
    F f = v[lead];
    for (std::size_t j = lead; j < rr.cols(); ++j) v[j] -= f * rr(i, j);
  }
  for (const auto& x : v)
    if (x != F(0)) return false;
  return true;
}

template <class F>
std::string matrix_str(const Matrix<F>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += field_str(m(i, j));
    }
    s += "]";
  }
  return s + "]";
}

template <class F>
Matrix<F> matrix_power(const Matrix<F>& m, long e) {
  const std::size_t n = m.rows();
  if (e < 0) {
    auto inv = inverse(m);
    if (!inv) throw std::domain_error("matrix_power: singular matrix");
    return matrix_power(*inv, -e);
  }
  Matrix<F> acc = Matrix<F>::identity(n), base = m;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

}  // namespace koszul
