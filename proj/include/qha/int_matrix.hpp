#pragma once

// Dense matrices over arbitrary-precision integers: ring arithmetic, Kronecker
// products, fraction-free determinants and exact inverses of unimodular matrices.
// Euler-characteristic identities are verified with this type so that both sides
// live in Z, never in floating point.

#include <cstddef>
#include <string>
#include <vector>

#include "qha/errors.hpp"
#include "qha/matrix.hpp"
#include "qha/scalar.hpp"

namespace qha {

// Raised when an integer matrix that must have determinant +-1 does not.
struct UnimodularityError : std::runtime_error {
  explicit UnimodularityError(Integer determinant)
      : std::runtime_error("matrix is not unimodular: det = " + determinant.get_str()),
        det(std::move(determinant)) {}
  Integer det;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw InvariantViolation("matrix data size does not match shape");
  }
  IntMatrix(std::size_t rows, std::size_t cols, const std::vector<long>& data)
      : rows_(rows), cols_(cols), data_(data.begin(), data.end()) {
    if (data_.size() != rows_ * cols_)
      throw InvariantViolation("matrix data size does not match shape");
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const Integer& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + (*this)(i, j).get_str();
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
};

inline IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvariantViolation("matrix sum shape mismatch");
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvariantViolation("matrix difference shape mismatch");
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline IntMatrix operator-(const IntMatrix& a) {
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = -a(i, j);
  return r;
}

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InvariantViolation("matrix product shape mismatch");
  IntMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

inline IntMatrix transpose(const IntMatrix& a) {
  IntMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

inline Integer trace(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InvariantViolation("trace of a non-square matrix");
  Integer t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

// Block structure: entry ((i*rb+k),(j*cb+l)) = a(i,j)*b(k,l). With identity
// ordering conventions this realises the tensor product on dimension data.
inline IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

// Bareiss fraction-free elimination; every division below is exact.
inline Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw InvariantViolation("determinant of a non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

inline Matrix<Rational> to_rational(const IntMatrix& a) {
  Matrix<Rational> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
  return r;
}

template <class K>
Matrix<K> to_field(const IntMatrix& a, const K& proto) {
  Matrix<K> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = scalar_from_integer(a(i, j), proto);
  return r;
}

// Exact inverse of a unimodular integer matrix. The determinant is computed
// first; anything other than +-1 raises UnimodularityError carrying it.
inline IntMatrix int_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvariantViolation("inverse of a non-square matrix");
  Integer det = determinant(m);
  if (det != 1 && det != -1) throw UnimodularityError(det);
  std::size_t n = m.rows();
  RrefResult<Rational> e = rref(hstack(to_rational(m), Matrix<Rational>::identity(n, Rational(1))));
  if (e.rank != n) throw InvariantViolation("unimodular matrix failed to reduce to full rank");
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = e.reduced(i, n + j);
      if (x.get_den() != 1)
        throw InvariantViolation("inverse of a unimodular matrix must be integral");
      inv(i, j) = x.get_num();
    }
  return inv;
}

}  // namespace qha
