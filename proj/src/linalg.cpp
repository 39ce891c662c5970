#include "redvar/linalg.hpp"

#include <stdexcept>

namespace redvar {

IntMat mat_mul(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  IntMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Int& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += xik * y.at(k, j);
    }
  return r;
}

IntVec mat_apply(const IntMat& m, const IntVec& v) {
  if (m.cols != static_cast<int>(v.size())) throw std::invalid_argument("mat_apply: shape mismatch");
  IntVec r(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
  return r;
}

QVec mat_apply_q(const IntMat& m, const QVec& v) {
  if (m.cols != static_cast<int>(v.size())) throw std::invalid_argument("mat_apply_q: shape mismatch");
  QVec r(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[i] += Rat(m.at(i, j)) * v[j];
  return r;
}

Int dot(const IntVec& x, const IntVec& y) {
  Int s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Rat dot_q(const QVec& x, const QVec& y) {
  Rat s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Rat dot_iq(const IntVec& x, const QVec& y) {
  Rat s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += Rat(x[i]) * y[i];
  return s;
}

Int det_int(const IntMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("det_int: not square");
  int n = m.rows;
  if (n == 0) return 1;
  IntMat a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a.at(i, j) = (a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j)) / prev;
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

namespace {

// Row echelon over Q, in place; returns pivot columns.
std::vector<int> echelon(QMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(p, j));
    Rat inv = Rat(1) / m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank_q(const QMat& m) {
  QMat t = m;
  return static_cast<int>(echelon(t).size());
}

int rank_int(const IntMat& m) {
  QMat t(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(i, j) = Rat(m.at(i, j));
  return rank_q(t);
}

std::optional<QVec> solve_q(const QMat& m, const QVec& b) {
  if (m.rows != static_cast<int>(b.size())) throw std::invalid_argument("solve_q: shape mismatch");
  QMat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  auto pivots = echelon(aug);
  for (int p : pivots)
    if (p == m.cols) return std::nullopt;  // row (0 ... 0 | 1): inconsistent
  QVec x(m.cols, Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), m.cols);
  return x;
}

std::vector<IntVec> nullspace_int(const QMat& m) {
  QMat t = m;
  auto pivots = echelon(t);
  std::vector<bool> is_pivot(m.cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<IntVec> basis;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    QVec v(m.cols, Rat(0));
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -t.at(static_cast<int>(r), c);
    basis.push_back(primitive_of_q(v));
  }
  return basis;
}

IntVec primitive(const IntVec& v, bool orient) {
  Int g = 0;
  for (const auto& x : v) g = gcd_int(g, x);
  IntVec r = v;
  if (g > 1)
    for (auto& x : r) x /= g;
  if (orient) {
    for (const auto& x : r) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : r) y = -y;
      break;
    }
  }
  return r;
}

IntVec primitive_of_q(const QVec& v, bool orient) {
  Int l = 1;
  for (const auto& q : v) l = lcm_int(l, rat_den(q));
  IntVec w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = rat_num(v[i] * Rat(l));
  return primitive(w, orient);
}

QMat qmat_from_columns(const std::vector<QVec>& cols) {
  if (cols.empty()) return QMat(0, 0);
  QMat m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols; ++j)
    for (int i = 0; i < m.rows; ++i) m.at(i, j) = cols[j][i];
  return m;
}

QMat qmat_from_rows(const std::vector<QVec>& rows) {
  if (rows.empty()) return QMat(0, 0);
  QMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

IntMat imat_from_columns(const std::vector<IntVec>& cols) {
  if (cols.empty()) return IntMat(0, 0);
  IntMat m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols; ++j)
    for (int i = 0; i < m.rows; ++i) m.at(i, j) = cols[j][i];
  return m;
}

IntMat imat_from_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) return IntMat(0, 0);
  IntMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

}  // namespace redvar
