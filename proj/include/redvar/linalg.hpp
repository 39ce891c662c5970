#pragma once

#include "redvar/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace redvar {

// Dense row-major integer matrix.  Sizes here are tiny (rank <= 4 geometry,
// character lattices of a few dozen generators), so no sparsity.
struct IntMat {
  int rows = 0, cols = 0;
  IntVec a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  IntMat transposed() const {
    IntMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntVec col(int j) const {
    IntVec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
  }

  IntVec row(int i) const {
    IntVec v(cols);
    for (int j = 0; j < cols; ++j) v[j] = at(i, j);
    return v;
  }

  bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

struct QMat {
  int rows = 0, cols = 0;
  QVec a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Rat& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Rat& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

IntMat mat_mul(const IntMat& x, const IntMat& y);
IntVec mat_apply(const IntMat& m, const IntVec& v);
QVec mat_apply_q(const IntMat& m, const QVec& v);

Int dot(const IntVec& x, const IntVec& y);
Rat dot_q(const QVec& x, const QVec& y);
Rat dot_iq(const IntVec& x, const QVec& y);

// Determinant of a square integer matrix (Bareiss fraction-free elimination).
Int det_int(const IntMat& m);

// Rank over the rationals.
int rank_q(const QMat& m);
int rank_int(const IntMat& m);

// Solve M x = b over Q.  Returns nullopt if inconsistent; otherwise one
// particular solution (free coordinates set to zero).
std::optional<QVec> solve_q(const QMat& m, const QVec& b);

// Basis of the rational nullspace {x : M x = 0}, each vector scaled to a
// primitive integer vector.
std::vector<IntVec> nullspace_int(const QMat& m);

// Divide by the gcd of the entries; first nonzero entry made positive when
// `orient` is set.
IntVec primitive(const IntVec& v, bool orient = false);

// Clear denominators and reduce, giving a primitive integer vector parallel
// to v.
IntVec primitive_of_q(const QVec& v, bool orient = false);

QMat qmat_from_columns(const std::vector<QVec>& cols);
QMat qmat_from_rows(const std::vector<QVec>& rows);
IntMat imat_from_columns(const std::vector<IntVec>& cols);
IntMat imat_from_rows(const std::vector<IntVec>& rows);

inline QVec qvec_sub(const QVec& x, const QVec& y) {
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

inline QVec qvec_add(const QVec& x, const QVec& y) {
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

inline QVec qvec_scale(const Rat& c, const QVec& x) {
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
  return r;
}

inline bool qvec_is_integral(const QVec& v) {
  for (const auto& q : v)
    if (!is_integer(q)) return false;
  return true;
}

inline IntVec qvec_to_int(const QVec& v) {
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = rat_num(v[i]);
  return r;
}

}  // namespace redvar
