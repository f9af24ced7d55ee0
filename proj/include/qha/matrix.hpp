#pragma once

// Dense matrices over an exact field scalar K with reduced row echelon form,
// kernel bases and linear solving. Storage is row major and all arithmetic is
// exact; there are no tolerances anywhere.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qha/errors.hpp"
#include "qha/scalar.hpp"

namespace qha {

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<K> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw InvariantViolation("matrix data size does not match shape");
  }

  static Matrix identity(std::size_t n, const K& one) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const K& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  K& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const K& x : data_)
      if (!qha::is_zero(x)) return false;
    return true;
  }

  // First nonzero entry if any; used to pin the field of heterogeneous results.
  const K* any_nonzero() const {
    for (const K& x : data_)
      if (!qha::is_zero(x)) return &x;
    return nullptr;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!(a.data_[i] == b.data_[i])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> data_;
};

template <class K>
Matrix<K> operator+(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvariantViolation("matrix sum shape mismatch");
  Matrix<K> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

template <class K>
Matrix<K> operator-(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvariantViolation("matrix difference shape mismatch");
  Matrix<K> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

template <class K>
Matrix<K> operator*(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.rows()) throw InvariantViolation("matrix product shape mismatch");
  Matrix<K> r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const K& aik = a(i, k);
      if (qha::is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (qha::is_zero(b(k, j))) continue;
        r(i, j) += aik * b(k, j);
      }
    }
  return r;
}

template <class K>
Matrix<K> scale(const Matrix<K>& a, const K& c) {
  Matrix<K> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = c * a(i, j);
  return r;
}

template <class K>
Matrix<K> transpose(const Matrix<K>& a) {
  Matrix<K> r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

template <class K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw InvariantViolation("hstack row mismatch");
  Matrix<K> r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

template <class K>
Matrix<K> vstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.cols()) throw InvariantViolation("vstack column mismatch");
  Matrix<K> r(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

template <class K>
Matrix<K> row_select(const Matrix<K>& a, const std::vector<std::size_t>& rows) {
  Matrix<K> r(rows.size(), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(rows[i], j);
  return r;
}

template <class K>
Matrix<K> col_select(const Matrix<K>& a, const std::vector<std::size_t>& cols) {
  Matrix<K> r(a.rows(), cols.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = a(i, cols[j]);
  return r;
}

template <class K>
K trace(const Matrix<K>& a) {
  if (a.rows() != a.cols()) throw InvariantViolation("trace of a non-square matrix");
  K t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

template <class K>
Matrix<K> kronecker(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (qha::is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

template <class K>
struct RrefResult {
  Matrix<K> reduced;
  std::vector<std::size_t> pivots;  // pivot column indices, strictly increasing
  std::size_t rank = 0;
};

template <class K>
RrefResult<K> rref(Matrix<K> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && qha::is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    K inv = scalar_one(m(r, c)) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = inv * m(r, j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || qha::is_zero(m(i, c))) continue;
      K f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return RrefResult<K>{std::move(m), std::move(pivots), r};
}

// Columns form a basis of the right null space {x : m x = 0}. The basis is the
// standard one: unit value at each free column, pivot entries filled in.
template <class K>
Matrix<K> kernel_basis(const Matrix<K>& m) {
  RrefResult<K> e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  K proto = e.rank > 0 ? e.reduced(0, e.pivots[0]) : K{};
  K one = scalar_one(proto);
  Matrix<K> k(m.cols(), free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    k(free_cols[f], f) = one;
    for (std::size_t r = 0; r < e.rank; ++r) k(e.pivots[r], f) = -e.reduced(r, free_cols[f]);
  }
  return k;
}

// Solves a x = b for all columns of b simultaneously; nullopt when inconsistent.
// Free variables are set to zero.
template <class K>
std::optional<Matrix<K>> solve_linear(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw InvariantViolation("solve_linear row mismatch");
  RrefResult<K> e = rref(hstack(a, b));
  Matrix<K> x(a.cols(), b.cols());
  for (std::size_t r = 0; r < e.rank; ++r) {
    std::size_t pc = e.pivots[r];
    if (pc >= a.cols()) return std::nullopt;  // pivot in the augmented block
    for (std::size_t j = 0; j < b.cols(); ++j) x(pc, j) = e.reduced(r, a.cols() + j);
  }
  return x;
}

// Row space basis: the nonzero rows of the reduced row echelon form.
template <class K>
Matrix<K> row_space_basis(const Matrix<K>& m) {
  RrefResult<K> e = rref(m);
  std::vector<std::size_t> idx(e.rank);
  for (std::size_t i = 0; i < e.rank; ++i) idx[i] = i;
  return row_select(e.reduced, idx);
}

template <class K>
std::size_t rank(const Matrix<K>& m) {
  return rref(m).rank;
}

}  // namespace qha
