#include "redvar/admissible.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace redvar {

namespace {

bool cell_order(const WComplex::Cell& a, const WComplex::Cell& b) {
  if (a.poly.dim != b.poly.dim) return a.poly.dim < b.poly.dim;
  if (a.poly.vertices != b.poly.vertices) return a.poly.vertices < b.poly.vertices;
  return a.id < b.id;
}

void infer_faces_embedded(WComplex& c) {
  int n = c.ncells();
  c.face_rel.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    c.face_rel[i][i] = true;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (c.cells[i].poly.dim <= c.cells[j].poly.dim && is_face_of(c.cells[j].poly, c.cells[i].poly))
        c.face_rel[i][j] = true;
    }
  }
}

void infer_action_embedded(WComplex& c) {
  const RootSystem& rs = *c.rs;
  int n = c.ncells();
  std::map<std::string, int> by_key;
  for (int i = 0; i < n; ++i) by_key[c.cells[i].poly.key()] = i;
  c.w_action.assign(rs.weyl_order(), std::vector<int>(n, -1));
  for (int w = 0; w < rs.weyl_order(); ++w)
    for (int i = 0; i < n; ++i) {
      LatticePolytope img = transform(c.cells[i].poly, rs.weyl_elements[w]);
      auto it = by_key.find(img.key());
      if (it != by_key.end()) c.w_action[w][i] = it->second;
    }
}

}  // namespace

int WComplex::index_of(const std::string& id) const {
  for (int i = 0; i < ncells(); ++i)
    if (cells[i].id == id) return i;
  return -1;
}

int WComplex::index_of_poly(const LatticePolytope& p) const {
  for (int i = 0; i < ncells(); ++i)
    if (cells[i].poly == p) return i;
  return -1;
}

std::vector<int> WComplex::maximal_cells() const {
  std::vector<int> out;
  for (int i = 0; i < ncells(); ++i) {
    bool maximal = true;
    for (int j = 0; j < ncells() && maximal; ++j)
      if (j != i && face_rel[i][j]) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

std::vector<std::vector<int>> WComplex::orbits() const {
  int n = ncells();
  std::vector<int> root(n);
  for (int i = 0; i < n; ++i) root[i] = i;
  std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
  for (const auto& row : w_action)
    for (int i = 0; i < n; ++i)
      if (row[i] >= 0) root[find(i)] = find(row[i]);
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [k, v] : groups) {
    std::sort(v.begin(), v.end());
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> WComplex::orbit_of(int cell) const {
  for (const auto& o : orbits())
    if (std::find(o.begin(), o.end(), cell) != o.end()) return o;
  return {cell};
}

int WComplex::canonical_rep(const std::vector<int>& orbit) const {
  // relative interior meets the closed dominant chamber
  for (int i : orbit) {
    const LatticePolytope& p = cells[i].poly;
    LinearSystem sys(p.ambient);
    for (const auto& e : p.equations) sys.add_int(e.a, e.b, Rel::EQ);
    for (const auto& f : p.facets) sys.add_int(f.a, f.b, Rel::LT);
    for (int k = 0; k < p.ambient; ++k) {
      IntVec a(p.ambient, Int(0));
      a[k] = -1;
      sys.add_int(a, Rat(0), Rel::LE);
    }
    if (fm_feasible(sys).feasible) return i;
  }
  return orbit.front();
}

int WComplex::orbit_rep_of(int cell) const { return canonical_rep(orbit_of(cell)); }

std::vector<int> WComplex::faces_of(int cell) const {
  std::vector<int> out;
  for (int i = 0; i < ncells(); ++i)
    if (face_rel[i][cell]) out.push_back(i);
  return out;
}

WComplex orbit_complex(std::shared_ptr<const RootSystem> rs, const LatticePolytope& delta) {
  std::map<std::string, LatticePolytope> pool;
  for (int w = 0; w < rs->weyl_order(); ++w) {
    LatticePolytope img = transform(delta, rs->weyl_elements[w]);
    for (const auto& f : all_faces(img)) pool.emplace(f.key(), f);
  }
  WComplex c;
  c.rs = std::move(rs);
  for (auto& [k, p] : pool) c.cells.push_back({"", p});
  std::sort(c.cells.begin(), c.cells.end(), cell_order);
  for (int i = 0; i < c.ncells(); ++i) c.cells[i].id = "c" + std::to_string(i);
  infer_faces_embedded(c);
  infer_action_embedded(c);
  return c;
}

WComplex embedded_complex(std::shared_ptr<const RootSystem> rs, const std::vector<LatticePolytope>& given,
                          bool add_faces) {
  std::map<std::string, LatticePolytope> pool;
  for (const auto& p : given) {
    if (add_faces) {
      for (const auto& f : all_faces(p)) pool.emplace(f.key(), f);
    } else {
      pool.emplace(p.key(), p);
    }
  }
  WComplex c;
  c.rs = std::move(rs);
  for (auto& [k, p] : pool) c.cells.push_back({"", p});
  std::sort(c.cells.begin(), c.cells.end(), cell_order);
  for (int i = 0; i < c.ncells(); ++i) c.cells[i].id = "c" + std::to_string(i);
  infer_faces_embedded(c);
  infer_action_embedded(c);
  return c;
}

WComplex abstract_complex(std::shared_ptr<const RootSystem> rs,
                          const std::vector<std::pair<std::string, LatticePolytope>>& cells,
                          const std::vector<std::pair<std::string, std::string>>& face_pairs,
                          const std::map<int, std::map<std::string, std::string>>& generator_action) {
  WComplex c;
  c.rs = rs;
  c.abstract_mode = true;
  for (const auto& [id, p] : cells) c.cells.push_back({id, p});
  std::sort(c.cells.begin(), c.cells.end(), cell_order);
  int n = c.ncells();
  c.face_rel.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) c.face_rel[i][i] = true;
  for (const auto& [f, p] : face_pairs) {
    int i = c.index_of(f), j = c.index_of(p);
    if (i < 0 || j < 0) throw ValidationError({"dangling face id '" + f + "' or '" + p + "'"});
    c.face_rel[i][j] = true;
  }
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (c.face_rel[i][k])
        for (int j = 0; j < n; ++j)
          if (c.face_rel[k][j]) c.face_rel[i][j] = true;

  // extend the generator action over the whole group
  const RootSystem& r = *rs;
  c.w_action.assign(r.weyl_order(), std::vector<int>(n, -1));
  c.w_action[r.identity_index()] = [&] {
    std::vector<int> idm(n);
    for (int i = 0; i < n; ++i) idm[i] = i;
    return idm;
  }();
  std::vector<std::vector<int>> gens(r.rank, std::vector<int>(n, -1));
  for (int g = 0; g < r.rank; ++g) {
    auto it = generator_action.find(g);
    if (it == generator_action.end()) throw ValidationError({"missing generator action s" + std::to_string(g + 1)});
    for (int i = 0; i < n; ++i) {
      auto jt = it->second.find(c.cells[i].id);
      if (jt == it->second.end()) throw ValidationError({"generator action missing cell '" + c.cells[i].id + "'"});
      int j = c.index_of(jt->second);
      if (j < 0) throw ValidationError({"dangling id in w_action: '" + jt->second + "'"});
      gens[g][i] = j;
    }
  }
  std::queue<int> todo;
  todo.push(r.identity_index());
  while (!todo.empty()) {
    int w = todo.front();
    todo.pop();
    for (int g = 0; g < r.rank; ++g) {
      int gw = r.compose(r.simple_reflection(g), w);
      std::vector<int> act(n);
      for (int i = 0; i < n; ++i) act[i] = gens[g][c.w_action[w][i]];
      if (c.w_action[gw][0] < 0) {
        c.w_action[gw] = act;
        todo.push(gw);
      } else if (c.w_action[gw] != act) {
        throw ValidationError({"w_action is not a group action (inconsistent extension)"});
      }
    }
  }
  return c;
}

std::vector<std::string> check_admissible(const RootSystem& rs, const LatticePolytope& delta) {
  std::vector<std::string> report;
  if (delta.empty()) return {"empty polytope"};
  if (delta.ambient != rs.rank) return {"ambient dimension differs from rank"};
  if (!delta.is_lattice) report.push_back("non-lattice vertex");

  // relative interior meets the dominant chamber
  {
    LinearSystem sys(delta.ambient);
    for (const auto& e : delta.equations) sys.add_int(e.a, e.b, Rel::EQ);
    for (const auto& f : delta.facets) sys.add_int(f.a, f.b, Rel::LT);
    for (int k = 0; k < delta.ambient; ++k) {
      IntVec a(delta.ambient, Int(0));
      a[k] = -1;
      sys.add_int(a, Rat(0), Rel::LE);
    }
    if (!fm_feasible(sys).feasible) report.push_back("relative interior misses the dominant chamber");
  }

  // distinct translates have disjoint relative interiors; when the relative
  // interiors meet, the relative interior of the intersection lies in both,
  // so its vertex average decides the question exactly
  for (int w = 0; w < rs.weyl_order(); ++w) {
    if (w == rs.identity_index()) continue;
    LatticePolytope img = transform(delta, rs.weyl_elements[w]);
    if (img.vertices == delta.vertices) continue;  // w stabilizes delta
    LatticePolytope cap = intersect(delta, img);
    if (cap.empty()) continue;
    QVec c(cap.ambient, Rat(0));
    for (const auto& v : cap.vertices) c = qvec_add(c, v);
    c = qvec_scale(Rat(1) / Rat(static_cast<int>(cap.vertices.size())), c);
    if (relative_interior_contains(delta, c) && relative_interior_contains(img, c))
      report.push_back("interior meets its translate under w" + std::to_string(w));
  }
  std::sort(report.begin(), report.end());
  report.erase(std::unique(report.begin(), report.end()), report.end());
  return report;
}

std::vector<std::string> check_wcomplex(const WComplex& c) {
  std::vector<std::string> report;
  int n = c.ncells();
  if (n == 0) return {"empty complex"};
  const RootSystem& rs = *c.rs;

  // (1) lattice polytopes
  for (int i = 0; i < n; ++i)
    if (!c.cells[i].poly.is_lattice) report.push_back("cell " + c.cells[i].id + ": non-lattice vertex");

  // declared faces must be geometric faces
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && c.face_rel[i][j] && !is_face_of(c.cells[j].poly, c.cells[i].poly))
        report.push_back("cell " + c.cells[i].id + " declared a face of " + c.cells[j].id + " but is not");

  // (2) face closure: every geometric face of every cell is a cell
  for (int i = 0; i < n; ++i) {
    for (const auto& f : all_faces(c.cells[i].poly)) {
      bool found = false;
      for (int j = 0; j < n && !found; ++j)
        if (c.face_rel[j][i] && c.cells[j].poly == f) found = true;
      if (!found)
        report.push_back("cell " + c.cells[i].id + ": face closure fails (missing " + f.key() + ")");
    }
  }

  // (3)/(4b) intersections are single common faces; in abstract mode the
  // geometric check applies within each W-orbit (injectivity of rho there)
  auto pair_ok = [&](int a, int b) -> bool {
    LatticePolytope cap = intersect(c.cells[a].poly, c.cells[b].poly);
    std::vector<int> common;
    for (int k = 0; k < n; ++k)
      if (c.face_rel[k][a] && c.face_rel[k][b]) common.push_back(k);
    if (cap.empty()) return common.empty();
    for (int k : common)
      if (c.cells[k].poly == cap) return true;
    return false;
  };
  if (!c.abstract_mode) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (!pair_ok(a, b))
          report.push_back("cells " + c.cells[a].id + ", " + c.cells[b].id +
                           ": intersection is not a common face");
  } else {
    for (const auto& orb : c.orbits())
      for (size_t x = 0; x < orb.size(); ++x)
        for (size_t y = x + 1; y < orb.size(); ++y)
          if (!pair_ok(orb[x], orb[y]))
            report.push_back("cells " + c.cells[orb[x]].id + ", " + c.cells[orb[y]].id +
                             ": reference map not injective on the orbit union");
  }

  // (4) W-action: defined everywhere and compatible with rho
  for (int w = 0; w < rs.weyl_order(); ++w)
    for (int i = 0; i < n; ++i) {
      int j = c.w_action[w][i];
      if (j < 0) {
        report.push_back("cell " + c.cells[i].id + ": W-translate under w" + std::to_string(w) +
                         " is not a cell");
        continue;
      }
      LatticePolytope img = transform(c.cells[i].poly, rs.weyl_elements[w]);
      if (!(img == c.cells[j].poly))
        report.push_back("cell " + c.cells[i].id + ": W-action incompatible with the reference map at w" +
                         std::to_string(w));
    }

  std::sort(report.begin(), report.end());
  report.erase(std::unique(report.begin(), report.end()), report.end());
  return report;
}

bool is_multiplicity_free(const WComplex& c) {
  int n = c.ncells();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (relint_intersects(c.cells[a].poly, c.cells[b].poly)) return false;
  return true;
}

int orbit_count(const WComplex& c) { return static_cast<int>(c.orbits().size()); }

std::vector<IntVec> MarkedType::dominant_marks_of(int cell) const {
  std::vector<IntVec> out;
  auto it = cell_marks.find(cell);
  if (it == cell_marks.end()) return out;
  for (const auto& m : it->second) {
    bool dom = true;
    for (const auto& x : m)
      if (x < 0) { dom = false; break; }
    if (dom) out.push_back(m);
  }
  return out;
}

std::vector<IntVec> MarkedType::dominant_marks() const {
  std::set<IntVec> out;
  for (const auto& m : marks) {
    bool dom = true;
    for (const auto& x : m)
      if (x < 0) { dom = false; break; }
    if (dom) out.insert(m);
  }
  return std::vector<IntVec>(out.begin(), out.end());
}

MarkedType check_marking(const WComplex& c, const std::vector<IntVec>& marks) {
  std::vector<std::string> errors;
  const RootSystem& rs = *c.rs;
  std::set<IntVec> mset(marks.begin(), marks.end());

  // W-invariance of the point set
  for (const auto& m : mset)
    for (int w = 0; w < rs.weyl_order(); ++w)
      if (!mset.count(rs.act_int(w, m))) {
        errors.push_back("marks not W-invariant at [" + [&] {
          std::string s;
          for (const auto& x : m) s += x.str() + ",";
          return s;
        }() + "]");
        break;
      }

  MarkedType t;
  t.complex = c;
  t.marks.assign(mset.begin(), mset.end());
  std::sort(t.marks.begin(), t.marks.end());

  // every mark lies in some cell; attach marks per cell
  for (const auto& m : t.marks) {
    bool anywhere = false;
    for (int i = 0; i < c.ncells(); ++i)
      if (contains(c.cells[i].poly, to_qvec(m))) {
        t.cell_marks[i].push_back(m);
        anywhere = true;
      }
    if (!anywhere) errors.push_back("mark outside the support");
  }
  for (auto& [i, v] : t.cell_marks) std::sort(v.begin(), v.end());

  // every vertex of every cell is marked
  for (int i = 0; i < c.ncells(); ++i)
    for (const auto& v : c.cells[i].poly.vertices) {
      if (!qvec_is_integral(v)) continue;  // reported by check_wcomplex
      if (!mset.count(qvec_to_int(v)))
        errors.push_back("vertex of cell " + c.cells[i].id + " unmarked");
    }

  std::sort(errors.begin(), errors.end());
  errors.erase(std::unique(errors.begin(), errors.end()), errors.end());
  if (!errors.empty()) throw ValidationError(errors);
  return t;
}

bool subdivides(const WComplex& fine, const WComplex& coarse) {
  // every maximal cell of fine sits inside a cell of coarse
  for (int i : fine.maximal_cells()) {
    bool inside = false;
    for (int j = 0; j < coarse.ncells() && !inside; ++j) {
      bool all_in = true;
      for (const auto& v : fine.cells[i].poly.vertices)
        if (!contains(coarse.cells[j].poly, v)) { all_in = false; break; }
      inside = all_in;
    }
    if (!inside) return false;
  }
  // supports match: each maximal cell of coarse is covered by fine's cells
  for (int j : coarse.maximal_cells()) {
    const LatticePolytope& big = coarse.cells[j].poly;
    Rat total = 0;
    for (int i : fine.maximal_cells()) {
      LatticePolytope cap = intersect(big, fine.cells[i].poly);
      if (!cap.empty() && cap.dim == big.dim) total += normalized_volume(cap);
    }
    if (total != normalized_volume(big)) return false;
  }
  return true;
}

namespace {

bool same_support(const WComplex& a, const WComplex& b) {
  // mutual coverage of maximal cells by the other complex's cells
  auto covered = [](const WComplex& x, const WComplex& y) {
    for (int i : x.maximal_cells()) {
      const LatticePolytope& p = x.cells[i].poly;
      Rat total = 0;
      for (int j : y.maximal_cells()) {
        LatticePolytope cap = intersect(p, y.cells[j].poly);
        if (!cap.empty() && cap.dim == p.dim) total += normalized_volume(cap);
      }
      if (total != normalized_volume(p)) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

}  // namespace

bool type_leq(const MarkedType& a, const MarkedType& b) {
  if (!same_support(a.complex, b.complex)) throw ValidationError({"support mismatch"});
  if (!subdivides(a.complex, b.complex)) return false;
  std::set<IntVec> bm(b.marks.begin(), b.marks.end());
  for (const auto& m : a.marks)
    if (!bm.count(m)) return false;
  return true;
}

}  // namespace redvar
