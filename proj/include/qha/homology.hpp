#ifndef QHA_HOMOLOGY_HPP
#define QHA_HOMOLOGY_HPP

// Exact subquotient machinery shared by module-level cohomology and plain
// k-linear complexes: given row spaces B <= Z of an ambient coordinate space,
// represent Z/B with an explicit basis and an exact projection map.

#include <cstddef>
#include <vector>

#include "qha/errors.hpp"
#include "qha/matrix.hpp"
#include "qha/scalar.hpp"

namespace qha {

// Eliminates the pivot coordinates of `rr` from every row of `rows`.
template <class K>
Matrix<K> reduce_mod(Matrix<K> rows, const RrefResult<K>& rr) {
  for (std::size_t p = 0; p < rr.pivots.size(); ++p) {
    const std::size_t c = rr.pivots[p];
    for (std::size_t r = 0; r < rows.rows(); ++r) {
      K f = rows(r, c);
      if (qha::is_zero(f)) continue;
      for (std::size_t j = 0; j < rows.cols(); ++j) rows(r, j) = rows(r, j) - f * rr.reduced(p, j);
    }
  }
  return rows;
}

// The subquotient Z/B of an ambient row space, with B <= Z assumed.
// `basis` rows are representatives reduced against B; projection reduces a row
// of Z modulo B and expresses it in the basis.
template <class K>
struct Subquotient {
  std::size_t ambient = 0;
  RrefResult<K> denom;   // reduced row basis of B
  Matrix<K> basis;       // dim() x ambient representatives

  std::size_t dim() const { return basis.rows(); }

  // rows: k x ambient, each row lying in Z. Returns k x dim() coordinates.
  Matrix<K> project(const Matrix<K>& rows) const {
    if (rows.cols() != ambient) throw InvariantViolation("subquotient projection: bad ambient");
    Matrix<K> r = reduce_mod(rows, denom);
    auto sol = solve_linear(transpose(basis), transpose(r));
    if (!sol) throw InvariantViolation("subquotient projection: row outside the subquotient");
    return transpose(*sol);
  }
};

template <class K>
Subquotient<K> make_subquotient(const Matrix<K>& z_rows, const Matrix<K>& b_rows) {
  if (z_rows.cols() != b_rows.cols())
    throw InvariantViolation("subquotient: ambient dimension mismatch");
  Subquotient<K> q;
  q.ambient = z_rows.cols();
  q.denom = rref(b_rows);
  Matrix<K> reduced = reduce_mod(z_rows, q.denom);
  q.basis = row_space_basis(reduced);
  return q;
}

// A bounded cochain complex of plain coordinate spaces with row-acting
// differentials: diffs[t] has shape dims[t] x dims[t+1] and represents the map
// from degree lo+t to degree lo+t+1.
template <class K>
struct LinearComplex {
  int lo = 0;
  std::vector<std::size_t> dims;
  std::vector<Matrix<K>> diffs;

  std::size_t length() const { return dims.size(); }

  void validate() const {
    if (dims.empty()) return;
    if (diffs.size() + 1 != dims.size())
      throw InvariantViolation("linear complex: differential count mismatch");
    for (std::size_t t = 0; t + 1 < dims.size(); ++t)
      if (diffs[t].rows() != dims[t] || diffs[t].cols() != dims[t + 1])
        throw InvariantViolation("linear complex: differential shape mismatch");
    for (std::size_t t = 0; t + 2 < dims.size(); ++t)
      if (!(diffs[t] * diffs[t + 1]).is_zero())
        throw InvariantViolation("linear complex: d \xE2\x88\x98 d != 0");
  }
};

template <class K>
struct LinearCohomology {
  int lo = 0;
  std::vector<Subquotient<K>> spaces;

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    d.reserve(spaces.size());
    for (const auto& s : spaces) d.push_back(s.dim());
    return d;
  }
};

template <class K>
LinearCohomology<K> linear_cohomology(const LinearComplex<K>& c, const K& proto) {
  c.validate();
  LinearCohomology<K> h;
  h.lo = c.lo;
  const K one = scalar_one(proto);
  for (std::size_t t = 0; t < c.dims.size(); ++t) {
    Matrix<K> z = (t + 1 < c.dims.size())
                      ? transpose(kernel_basis(transpose(c.diffs[t])))
                      : Matrix<K>::identity(c.dims[t], one);
    Matrix<K> b = (t > 0) ? c.diffs[t - 1] : Matrix<K>(0, c.dims[t]);
    h.spaces.push_back(make_subquotient(z, b));
  }
  return h;
}

// Traces of the maps induced on cohomology by a degreewise endomorphism
// (endos[t]: dims[t] x dims[t]) that commutes with the differential.
template <class K>
std::vector<K> induced_traces(const LinearCohomology<K>& h, const std::vector<Matrix<K>>& endos,
                              const K& proto) {
  if (endos.size() != h.spaces.size())
    throw InvariantViolation("induced_traces: endo count mismatch");
  std::vector<K> out;
  out.reserve(h.spaces.size());
  for (std::size_t t = 0; t < h.spaces.size(); ++t) {
    const auto& s = h.spaces[t];
    if (s.dim() == 0) {
      out.push_back(scalar_from_int(0, proto));
      continue;
    }
    Matrix<K> coords = s.project(s.basis * endos[t]);
    out.push_back(trace(coords));
  }
  return out;
}

}  // namespace qha

#endif  // QHA_HOMOLOGY_HPP
