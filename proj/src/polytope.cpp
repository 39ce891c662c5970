#include "redvar/polytope.hpp"

#include "redvar/abgroup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace redvar {

namespace {

std::vector<QVec> dedupe_sorted(std::vector<QVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Basis (as rows) of the linear span of the given vectors.
std::vector<QVec> span_basis(const std::vector<QVec>& vecs) {
  if (vecs.empty()) return {};
  QMat m = qmat_from_rows(vecs);
  // row echelon; keep nonzero rows
  std::vector<QVec> rows;
  {
    QMat t = m;
    int r = 0;
    for (int c = 0; c < t.cols && r < t.rows; ++c) {
      int p = -1;
      for (int i = r; i < t.rows; ++i)
        if (t.at(i, c) != 0) { p = i; break; }
      if (p < 0) continue;
      if (p != r)
        for (int j = 0; j < t.cols; ++j) std::swap(t.at(r, j), t.at(p, j));
      Rat inv = Rat(1) / t.at(r, c);
      for (int j = c; j < t.cols; ++j) t.at(r, j) *= inv;
      for (int i = 0; i < t.rows; ++i) {
        if (i == r || t.at(i, c) == 0) continue;
        Rat f = t.at(i, c);
        for (int j = c; j < t.cols; ++j) t.at(i, j) -= f * t.at(r, j);
      }
      ++r;
    }
    for (int i = 0; i < r; ++i) {
      QVec row(t.cols);
      for (int j = 0; j < t.cols; ++j) row[j] = t.at(i, j);
      rows.push_back(row);
    }
  }
  return rows;
}

void enumerate_subsets(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (int i = start; i <= n - (k - depth); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (k >= 0 && k <= n) rec(0, 0);
}

}  // namespace

std::string LatticePolytope::key() const {
  std::string s;
  for (const auto& v : vertices) {
    s += "[";
    for (const auto& c : v) s += rat_to_string(c) + ",";
    s += "]";
  }
  return s;
}

LatticePolytope convex_hull(const std::vector<QVec>& points, int dim_cap) {
  LatticePolytope p;
  if (points.empty()) return p;
  int n = static_cast<int>(points[0].size());
  if (n > dim_cap) throw DimCapError("ambient dimension " + std::to_string(n) + " exceeds cap " + std::to_string(dim_cap));
  for (const auto& pt : points)
    if (static_cast<int>(pt.size()) != n) throw std::invalid_argument("convex_hull: ragged input");
  std::vector<QVec> pts = dedupe_sorted(points);
  p.ambient = n;

  const QVec& p0 = pts[0];
  std::vector<QVec> diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(qvec_sub(pts[i], p0));
  std::vector<QVec> dir = span_basis(diffs);
  int d = static_cast<int>(dir.size());
  p.dim = d;

  // affine hull equations
  if (d < n) {
    QMat dm = qmat_from_rows(dir);
    std::vector<IntVec> forms = dm.rows == 0
        ? [&] {
            std::vector<IntVec> f;
            for (int i = 0; i < n; ++i) {
              IntVec e(n, Int(0));
              e[i] = 1;
              f.push_back(e);
            }
            return f;
          }()
        : nullspace_int(dm);
    for (auto& f : forms) {
      IntVec a = primitive(f, true);
      p.equations.push_back({a, dot_iq(a, p0)});
    }
    std::sort(p.equations.begin(), p.equations.end());
  }

  if (d == 0) {
    p.vertices = {p0};
    p.is_lattice = qvec_is_integral(p0);
    return p;
  }

  // exhaustive facet search over d-subsets
  int m = static_cast<int>(pts.size());
  std::set<Ineq> facet_set;
  enumerate_subsets(m, d, [&](const std::vector<int>& idx) {
    // normal within the direction space orthogonal to the subset differences
    QMat sys(d - 1 + 0, d);
    std::vector<QVec> rows;
    for (int i = 1; i < d; ++i) {
      QVec diff = qvec_sub(pts[idx[i]], pts[idx[0]]);
      // constraint: sum_k y_k (dir_k . diff) = 0
      QVec row(d);
      for (int k = 0; k < d; ++k) row[k] = dot_q(dir[k], diff);
      rows.push_back(row);
    }
    QMat cm = qmat_from_rows(rows);
    std::vector<IntVec> ys = rows.empty()
        ? std::vector<IntVec>{IntVec{Int(1)}}
        : nullspace_int(cm);
    if (ys.size() != 1) return;  // subset does not span a hyperplane
    QVec normal(static_cast<size_t>(p.ambient), Rat(0));
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < p.ambient; ++j) normal[j] += Rat(ys[0][k]) * dir[k][j];
    IntVec a = primitive_of_q(normal);
    Rat b = dot_iq(a, pts[idx[0]]);
    bool le = true, ge = true;
    for (const auto& q : pts) {
      Rat v = dot_iq(a, q);
      if (v > b) le = false;
      if (v < b) ge = false;
      if (!le && !ge) return;
    }
    if (le) facet_set.insert({a, b});
    if (ge) {
      IntVec na(a.size());
      for (size_t i = 0; i < a.size(); ++i) na[i] = -a[i];
      facet_set.insert({na, -b});
    }
  });
  p.facets.assign(facet_set.begin(), facet_set.end());

  // vertices: points whose active facet normals span the direction space
  for (const auto& q : pts) {
    std::vector<QVec> active;
    for (const auto& f : p.facets)
      if (dot_iq(f.a, q) == f.b) active.push_back(to_qvec(f.a));
    if (static_cast<int>(span_basis(active).size()) == d) p.vertices.push_back(q);
  }
  std::sort(p.vertices.begin(), p.vertices.end());
  p.is_lattice = true;
  for (const auto& v : p.vertices)
    if (!qvec_is_integral(v)) { p.is_lattice = false; break; }
  return p;
}

bool contains(const LatticePolytope& p, const QVec& x) {
  if (p.empty()) return false;
  if (static_cast<int>(x.size()) != p.ambient) throw std::invalid_argument("contains: dimension mismatch");
  for (const auto& e : p.equations)
    if (dot_iq(e.a, x) != e.b) return false;
  for (const auto& f : p.facets)
    if (dot_iq(f.a, x) > f.b) return false;
  return true;
}

bool relative_interior_contains(const LatticePolytope& p, const QVec& x) {
  if (p.empty()) return false;
  if (static_cast<int>(x.size()) != p.ambient) throw std::invalid_argument("relative_interior_contains: dimension mismatch");
  for (const auto& e : p.equations)
    if (dot_iq(e.a, x) != e.b) return false;
  for (const auto& f : p.facets)
    if (dot_iq(f.a, x) >= f.b) return false;
  return true;
}

LatticePolytope intersect(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.ambient != q.ambient) throw std::invalid_argument("intersect: ambient mismatch");
  LatticePolytope out;
  out.ambient = p.ambient;
  if (p.empty() || q.empty()) return out;
  std::vector<Ineq> eqs, ineqs;
  eqs.insert(eqs.end(), p.equations.begin(), p.equations.end());
  eqs.insert(eqs.end(), q.equations.begin(), q.equations.end());
  ineqs.insert(ineqs.end(), p.facets.begin(), p.facets.end());
  ineqs.insert(ineqs.end(), q.facets.begin(), q.facets.end());

  int n = p.ambient;
  auto feasible = [&](const QVec& x) { return contains(p, x) && contains(q, x); };

  std::set<QVec> candidates;
  int ni = static_cast<int>(ineqs.size());
  for (int k = 0; k <= std::min(n, ni); ++k) {
    enumerate_subsets(ni, k, [&](const std::vector<int>& idx) {
      std::vector<QVec> rows;
      QVec rhs;
      for (const auto& e : eqs) {
        rows.push_back(to_qvec(e.a));
        rhs.push_back(e.b);
      }
      for (int i : idx) {
        rows.push_back(to_qvec(ineqs[i].a));
        rhs.push_back(ineqs[i].b);
      }
      QMat m = qmat_from_rows(rows);
      if (m.rows == 0 || rank_q(m) != n) return;  // not a unique point
      auto sol = solve_q(m, rhs);
      if (!sol) return;
      if (feasible(*sol)) candidates.insert(*sol);
    });
    // vertices of P cap Q have active sets of rank n; subsets of all sizes up
    // to n are tried, so nothing is missed.
  }
  // also each polytope's own vertices may be interior to the other
  for (const auto& v : p.vertices)
    if (contains(q, v)) candidates.insert(v);
  for (const auto& v : q.vertices)
    if (contains(p, v)) candidates.insert(v);
  if (candidates.empty()) return out;
  return convex_hull(std::vector<QVec>(candidates.begin(), candidates.end()), p.ambient);
}

bool relint_intersects(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.empty() || q.empty()) return false;
  LinearSystem sys(p.ambient);
  for (const auto& e : p.equations) sys.add_int(e.a, e.b, Rel::EQ);
  for (const auto& e : q.equations) sys.add_int(e.a, e.b, Rel::EQ);
  for (const auto& f : p.facets) sys.add_int(f.a, f.b, Rel::LT);
  for (const auto& f : q.facets) sys.add_int(f.a, f.b, Rel::LT);
  return fm_feasible(sys).feasible;
}

std::vector<IntVec> lattice_points(const LatticePolytope& p) {
  std::vector<IntVec> out;
  if (p.empty()) return out;
  int n = p.ambient;
  std::vector<Int> lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    Rat mn = p.vertices[0][j], mx = p.vertices[0][j];
    for (const auto& v : p.vertices) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    lo[j] = ceil_rat(mn);
    hi[j] = floor_rat(mx);
  }
  IntVec cur(n);
  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      if (contains(p, to_qvec(cur))) out.push_back(cur);
      return;
    }
    for (Int v = lo[j]; v <= hi[j]; ++v) {
      cur[j] = v;
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

LatticePolytope chamber_intersection(const RootSystem& rs, const LatticePolytope& p) {
  if (p.ambient != rs.rank) throw std::invalid_argument("chamber_intersection: rank mismatch");
  LatticePolytope chamber;
  // the dominant cone is unbounded; intersect by clipping against a box that
  // contains p, then against the wall inequalities via candidate vertices
  LatticePolytope out;
  out.ambient = p.ambient;
  if (p.empty()) return out;
  std::vector<Ineq> eqs = p.equations;
  std::vector<Ineq> ineqs = p.facets;
  for (int i = 0; i < rs.rank; ++i) {
    IntVec a(rs.rank, Int(0));
    a[i] = -1;  // -x_i <= 0
    ineqs.push_back({a, Rat(0)});
  }
  int n = p.ambient;
  std::set<QVec> candidates;
  auto ok = [&](const QVec& x) {
    if (!contains(p, x)) return false;
    for (const auto& c : x)
      if (c < 0) return false;
    return true;
  };
  int ni = static_cast<int>(ineqs.size());
  for (int k = 0; k <= std::min(n, ni); ++k) {
    enumerate_subsets(ni, k, [&](const std::vector<int>& idx) {
      std::vector<QVec> rows;
      QVec rhs;
      for (const auto& e : eqs) {
        rows.push_back(to_qvec(e.a));
        rhs.push_back(e.b);
      }
      for (int i : idx) {
        rows.push_back(to_qvec(ineqs[i].a));
        rhs.push_back(ineqs[i].b);
      }
      QMat m = qmat_from_rows(rows);
      if (m.rows == 0 || rank_q(m) != n) return;
      auto sol = solve_q(m, rhs);
      if (sol && ok(*sol)) candidates.insert(*sol);
    });
  }
  for (const auto& v : p.vertices)
    if (ok(v)) candidates.insert(v);
  if (candidates.empty()) return out;
  return convex_hull(std::vector<QVec>(candidates.begin(), candidates.end()), p.ambient);
}

LatticePolytope transform(const LatticePolytope& p, const IntMat& m) {
  std::vector<QVec> pts;
  for (const auto& v : p.vertices) pts.push_back(mat_apply_q(m, v));
  if (pts.empty()) {
    LatticePolytope out;
    out.ambient = m.rows;
    return out;
  }
  return convex_hull(pts, std::max(p.ambient, m.rows));
}

LatticePolytope dilate(const LatticePolytope& p, const Int& n) {
  std::vector<QVec> pts;
  for (const auto& v : p.vertices) pts.push_back(qvec_scale(Rat(n), v));
  if (pts.empty()) return p;
  return convex_hull(pts, p.ambient);
}

std::vector<LatticePolytope> facet_polytopes(const LatticePolytope& p) {
  std::vector<LatticePolytope> out;
  if (p.dim <= 0) return out;
  for (const auto& f : p.facets) {
    std::vector<QVec> pts;
    for (const auto& v : p.vertices)
      if (dot_iq(f.a, v) == f.b) pts.push_back(v);
    out.push_back(convex_hull(pts, p.ambient));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticePolytope> all_faces(const LatticePolytope& p) {
  std::map<std::string, LatticePolytope> seen;
  std::function<void(const LatticePolytope&)> rec = [&](const LatticePolytope& q) {
    if (!seen.emplace(q.key(), q).second) return;
    for (const auto& f : facet_polytopes(q)) rec(f);
  };
  if (!p.empty()) rec(p);
  std::vector<LatticePolytope> out;
  for (auto& [k, v] : seen) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_face_of(const LatticePolytope& p, const LatticePolytope& f) {
  if (f.empty() || p.empty()) return false;
  for (const auto& v : f.vertices)
    if (!contains(p, v)) return false;
  // relint point of f: vertex average
  QVec c(f.ambient, Rat(0));
  for (const auto& v : f.vertices) c = qvec_add(c, v);
  c = qvec_scale(Rat(1) / Rat(static_cast<int>(f.vertices.size())), c);
  std::vector<QVec> active;
  for (const auto& v : p.vertices) {
    bool on_all = true;
    for (const auto& fc : p.facets)
      if (dot_iq(fc.a, c) == fc.b && dot_iq(fc.a, v) != fc.b) { on_all = false; break; }
    if (on_all) active.push_back(v);
  }
  std::sort(active.begin(), active.end());
  return active == f.vertices;
}

namespace {

// simplices (vertex tuples) triangulating p, fanned from the first vertex
void triangulate_rec(const LatticePolytope& p, std::vector<std::vector<QVec>>& out) {
  if (p.dim == 0) {
    out.push_back({p.vertices[0]});
    return;
  }
  const QVec& apex = p.vertices.front();
  for (const auto& f : facet_polytopes(p)) {
    bool has_apex = false;
    for (const auto& v : f.vertices)
      if (v == apex) { has_apex = true; break; }
    if (has_apex) continue;
    std::vector<std::vector<QVec>> sub;
    triangulate_rec(f, sub);
    for (auto& s : sub) {
      s.push_back(apex);
      out.push_back(s);
    }
  }
}

// |det| of the simplex edge matrix in coordinates of the ambient lattice
// restricted to the direction space of p.
Rat simplex_nvol(const std::vector<QVec>& simplex, const std::vector<IntVec>& lattice_basis) {
  int d = static_cast<int>(simplex.size()) - 1;
  if (d == 0) return 1;
  std::vector<QVec> cols;
  QMat basis(static_cast<int>(simplex[0].size()), d);
  QMat bm = qmat_from_columns([&] {
    std::vector<QVec> bc;
    for (const auto& b : lattice_basis) bc.push_back(to_qvec(b));
    return bc;
  }());
  QMat dm(d, d);
  for (int i = 0; i < d; ++i) {
    QVec diff = qvec_sub(simplex[i + 1], simplex[0]);
    auto sol = solve_q(bm, diff);
    if (!sol) throw std::logic_error("simplex edge escapes direction lattice");
    for (int r = 0; r < d; ++r) dm.at(r, i) = (*sol)[r];
  }
  // rational determinant by elimination
  Rat det = 1;
  for (int k = 0; k < d; ++k) {
    int piv = -1;
    for (int i = k; i < d; ++i)
      if (dm.at(i, k) != 0) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != k) {
      for (int j = 0; j < d; ++j) std::swap(dm.at(k, j), dm.at(piv, j));
      det = -det;
    }
    det *= dm.at(k, k);
    Rat inv = Rat(1) / dm.at(k, k);
    for (int i = k + 1; i < d; ++i) {
      Rat f = dm.at(i, k) * inv;
      if (f == 0) continue;
      for (int j = k; j < d; ++j) dm.at(i, j) -= f * dm.at(k, j);
    }
  }
  return det < 0 ? -det : det;
}

std::vector<IntVec> direction_lattice(const LatticePolytope& p) {
  std::vector<QVec> dirs;
  for (size_t i = 1; i < p.vertices.size(); ++i) dirs.push_back(qvec_sub(p.vertices[i], p.vertices[0]));
  return lattice_of_subspace(dirs, p.ambient);
}

}  // namespace

Rat normalized_volume(const LatticePolytope& p) {
  if (p.empty()) return 0;
  if (p.dim == 0) return 1;
  std::vector<IntVec> basis = direction_lattice(p);
  std::vector<std::vector<QVec>> tris;
  triangulate_rec(p, tris);
  Rat vol = 0;
  for (const auto& s : tris) vol += simplex_nvol(s, basis);
  return vol;
}

QVec centroid(const LatticePolytope& p) {
  if (p.empty()) throw std::invalid_argument("centroid of empty polytope");
  if (p.dim == 0) return p.vertices[0];
  std::vector<IntVec> basis = direction_lattice(p);
  std::vector<std::vector<QVec>> tris;
  triangulate_rec(p, tris);
  QVec num(p.ambient, Rat(0));
  Rat den = 0;
  for (const auto& s : tris) {
    Rat v = simplex_nvol(s, basis);
    if (v == 0) continue;
    QVec c(p.ambient, Rat(0));
    for (const auto& pt : s) c = qvec_add(c, pt);
    c = qvec_scale(Rat(1) / Rat(static_cast<int>(s.size())), c);
    num = qvec_add(num, qvec_scale(v, c));
    den += v;
  }
  return qvec_scale(Rat(1) / den, num);
}

Rat PLFunction::value_at(const QVec& x) const {
  for (const auto& c : cells)
    if (contains(c.poly, x)) return c.value_at(x);
  throw std::invalid_argument("PLFunction: point outside domain");
}

LowerEnvelope lower_envelope(const std::vector<std::pair<QVec, Rat>>& lifted, int dim_cap) {
  if (lifted.empty()) throw std::invalid_argument("lower_envelope: empty input");
  int n = static_cast<int>(lifted[0].first.size());
  std::map<QVec, Rat> height;
  for (const auto& [x, h] : lifted) {
    auto [it, fresh] = height.emplace(x, h);
    if (!fresh && it->second != h)
      throw std::invalid_argument("lower_envelope: duplicate point with different heights");
  }

  std::vector<QVec> base_pts;
  std::vector<QVec> lifted_pts;
  for (const auto& [x, h] : height) {
    base_pts.push_back(x);
    QVec l = x;
    l.push_back(h);
    lifted_pts.push_back(l);
  }
  LatticePolytope base = convex_hull(base_pts, dim_cap);
  LatticePolytope hull = convex_hull(lifted_pts, dim_cap + 1);

  LowerEnvelope env;
  env.h.domain = base;

  auto affine_from = [&](const IntVec& a, const Rat& b) {
    // a . (x, y) = b with a_last < 0  =>  y = (b - a_x.x)/a_last
    QVec coeffs(n);
    Rat al = Rat(a[n]);
    for (int j = 0; j < n; ++j) coeffs[j] = -Rat(a[j]) / al;
    Rat c = b / al;
    return std::make_pair(coeffs, c);
  };

  if (hull.dim <= base.dim) {
    // all lifted points affinely dependent on the base: single cell
    env.cells = {base};
    for (const auto& [x, h] : height) env.attained.push_back(x);
    // fit the affine function on an affine basis of the points
    // find it via least structure: solve coeffs.x + c = h on enough points
    std::vector<QVec> rows;
    QVec rhs;
    for (const auto& [x, h] : height) {
      QVec r = x;
      r.push_back(Rat(1));
      rows.push_back(r);
      rhs.push_back(h);
    }
    auto sol = solve_q(qmat_from_rows(rows), rhs);
    if (!sol) throw std::logic_error("lower_envelope: degenerate case not affine");
    QVec coeffs(sol->begin(), sol->begin() + n);
    env.h.cells = {{base, coeffs, (*sol)[n]}};
    std::sort(env.attained.begin(), env.attained.end());
    return env;
  }

  for (const auto& f : hull.facets) {
    if (f.a[n] >= 0) continue;  // not a lower facet
    std::vector<QVec> cell_pts;
    for (const auto& lp : lifted_pts)
      if (dot_iq(f.a, lp) == f.b) cell_pts.push_back(QVec(lp.begin(), lp.begin() + n));
    LatticePolytope cell = convex_hull(cell_pts, dim_cap);
    auto [coeffs, c] = affine_from(f.a, f.b);
    env.cells.push_back(cell);
    env.h.cells.push_back({cell, coeffs, c});
  }
  std::sort(env.cells.begin(), env.cells.end());
  std::sort(env.h.cells.begin(), env.h.cells.end(),
            [](const PLCell& a, const PLCell& b) { return a.poly < b.poly; });

  for (const auto& [x, h] : height)
    if (env.h.value_at(x) == h) env.attained.push_back(x);
  std::sort(env.attained.begin(), env.attained.end());
  return env;
}

}  // namespace redvar
