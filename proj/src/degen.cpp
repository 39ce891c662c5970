#include "redvar/degen.hpp"

#include "redvar/abgroup.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace redvar {

namespace {

std::string point_str(const IntVec& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + "]";
}

bool is_dominant_int(const IntVec& v) {
  for (const auto& x : v)
    if (x < 0) return false;
  return true;
}

// Lattice basis of span{(1, v) : v vertex of tau} inside Z^{1+r}.
std::vector<IntVec> cone_lattice(const LatticePolytope& tau) {
  std::vector<QVec> span;
  for (const auto& v : tau.vertices) {
    QVec w(v.size() + 1, Rat(1));
    for (size_t i = 0; i < v.size(); ++i) w[i + 1] = v[i];
    span.push_back(w);
  }
  return lattice_of_subspace(span, tau.ambient + 1);
}

PLFunction transport_pl(const PLFunction& pl, const RootSystem& rs, int w) {
  PLFunction out;
  const IntMat& m = rs.weyl_elements[w];
  int winv = rs.inverse(w);
  const IntMat& mi = rs.weyl_elements[winv];
  out.domain = transform(pl.domain, m);
  for (const auto& c : pl.cells) {
    PLCell nc;
    nc.poly = transform(c.poly, m);
    // value'(y) = value(w^{-1} y): coeffs' = coeffs * W^{-1}
    QVec coeffs(c.coeffs.size(), Rat(0));
    for (int j = 0; j < mi.cols; ++j)
      for (int i = 0; i < mi.rows; ++i) coeffs[j] += c.coeffs[i] * Rat(mi.at(i, j));
    nc.coeffs = coeffs;
    nc.constant = c.constant;
    out.cells.push_back(nc);
  }
  std::sort(out.cells.begin(), out.cells.end(), [](const PLCell& a, const PLCell& b) { return a.poly < b.poly; });
  return out;
}

}  // namespace

Int minimal_integrality(const PLFunction& h) {
  Int n = 1;
  for (const auto& cell : h.cells) {
    std::vector<IntVec> basis = cone_lattice(cell.poly);
    for (const auto& b : basis) {
      // L(x0, x) = constant * x0 + coeffs . x
      Rat val = Rat(b[0]) * cell.constant;
      for (size_t i = 1; i < b.size(); ++i) val += Rat(b[i]) * cell.coeffs[i - 1];
      n = lcm_int(n, rat_den(val));
    }
  }
  return n;
}

CoherentSubdivision degenerate(const RootSystem& rs, const LatticePolytope& delta,
                               const std::vector<IntVec>& marks, const std::map<IntVec, Rat>& heights) {
  auto adm = check_admissible(rs, delta);
  if (!adm.empty()) throw ValidationError(adm);
  auto rs_ptr = std::make_shared<RootSystem>(rs);
  WComplex oc = orbit_complex(rs_ptr, delta);
  MarkedType marked = check_marking(oc, marks);

  int delta_idx = oc.index_of_poly(delta);
  if (delta_idx < 0) throw ValidationError({"polytope not found in its own orbit complex"});
  const auto& delta_marks = marked.cell_marks[delta_idx];

  // validate height keys
  std::set<IntVec> mark_set(marked.marks.begin(), marked.marks.end());
  for (const auto& [k, v] : heights) {
    if (!is_dominant_int(k)) throw ValidationError({"non-dominant height key " + point_str(k)});
    if (!mark_set.count(k)) throw ValidationError({"height key is not a mark: " + point_str(k)});
  }

  auto height_of = [&](const IntVec& x) -> Rat {
    auto rep = dominant_representative(rs, to_qvec(x));
    IntVec key = qvec_to_int(rep.dominant);
    auto it = heights.find(key);
    if (it == heights.end()) {
      bool vertex = false;
      for (const auto& v : delta.vertices)
        if (qvec_is_integral(v) && qvec_to_int(v) == x) vertex = true;
      throw ValidationError({vertex ? "heights missing at a vertex: " + point_str(x)
                                    : "height missing for mark " + point_str(x)});
    }
    return it->second;
  };

  std::vector<std::pair<QVec, Rat>> lifted;
  for (const auto& x : delta_marks) lifted.emplace_back(to_qvec(x), height_of(x));
  // every vertex of delta must be lifted
  for (const auto& v : delta.vertices) {
    bool found = false;
    for (const auto& [x, hv] : lifted)
      if (x == v) found = true;
    if (!found) throw ValidationError({"heights missing at a vertex"});
  }
  LowerEnvelope env = lower_envelope(lifted, std::max(4, delta.ambient + 1));

  // W-orbit of the refined cells
  std::vector<LatticePolytope> new_cells;
  for (int w = 0; w < rs.weyl_order(); ++w)
    for (const auto& cell : env.cells) new_cells.push_back(transform(cell, rs.weyl_elements[w]));
  CoherentSubdivision out;
  out.subdivision = embedded_complex(rs_ptr, new_cells, true);

  std::set<IntVec> new_marks;
  for (const auto& a : env.attained)
    for (int w = 0; w < rs.weyl_order(); ++w) new_marks.insert(rs.act_int(w, qvec_to_int(a)));
  out.marking = check_marking(out.subdivision, std::vector<IntVec>(new_marks.begin(), new_marks.end()));

  // envelopes per input maximal cell (the W-translates of delta)
  for (int w = 0; w < rs.weyl_order(); ++w) {
    LatticePolytope img = transform(delta, rs.weyl_elements[w]);
    int idx = oc.index_of_poly(img);
    std::string id = oc.cells[idx].id;
    if (!out.envelopes.count(id)) out.envelopes[id] = transport_pl(env.h, rs, w);
  }
  out.integrality_n = 1;
  for (const auto& [id, pl] : out.envelopes) out.integrality_n = lcm_int(out.integrality_n, minimal_integrality(pl));
  return out;
}

namespace {

// gamma as a linear functional on span(1, phi), fitted from the provided
// values; nullopt when the values admit no linear extension killing the
// wall sublattice of the face.
struct GammaFunctional {
  QVec coeffs;  // on (x0, x)
  Rat at(const IntVec& x) const {
    Rat v = coeffs[0];
    for (size_t i = 0; i < x.size(); ++i) v += coeffs[i + 1] * Rat(x[i]);
    return v;
  }
};

std::optional<GammaFunctional> fit_gamma(const RootSystem& rs, const LatticePolytope& phi,
                                         const std::map<IntVec, Rat>& values,
                                         std::vector<std::string>& errors, const std::string& face_id) {
  if (values.empty()) return std::nullopt;
  // solve L(1, x) = value with L supported on span(1, phi)
  std::vector<IntVec> basis = cone_lattice(phi);
  std::vector<QVec> rows;
  QVec rhs;
  for (const auto& [x, v] : values) {
    QVec r(phi.ambient + 1, Rat(0));
    r[0] = 1;
    for (int i = 0; i < phi.ambient; ++i) r[i + 1] = Rat(x[i]);
    rows.push_back(r);
    rhs.push_back(v);
  }
  // pin the functional on the orthogonal complement of the span to zero
  {
    std::vector<QVec> span;
    for (const auto& b : basis) span.push_back(to_qvec(b));
    QMat sm = qmat_from_rows(span);
    if (sm.rows > 0)
      for (const auto& f : nullspace_int(sm)) {
        rows.push_back(to_qvec(f));
        rhs.push_back(Rat(0));
      }
  }
  auto sol = solve_q(qmat_from_rows(rows), rhs);
  if (!sol) {
    errors.push_back("gamma on face " + face_id + " is not linear");
    return std::nullopt;
  }
  GammaFunctional g;
  g.coeffs = *sol;
  for (const auto& [x, v] : values)
    if (g.at(x) != v) {
      errors.push_back("gamma on face " + face_id + " is not linear");
      return std::nullopt;
    }
  // the functional must kill Z K_phi cap lin Cone(phi)
  {
    std::vector<IntVec> kgens;
    for (int i = 0; i < rs.rank; ++i) {
      bool pos = false, neg = false, all_zero = true;
      for (const auto& v : phi.vertices) {
        if (v[i] > 0) pos = true;
        if (v[i] < 0) neg = true;
        if (v[i] != 0) all_zero = false;
      }
      if ((pos && neg) || all_zero) {
        IntVec a(rs.rank + 1, Int(0));
        for (int j = 0; j < rs.rank; ++j) a[j + 1] = rs.cartan.at(i, j);
        kgens.push_back(a);
      }
    }
    std::vector<QVec> span;
    for (const auto& v : phi.vertices) {
      QVec w(v.size() + 1, Rat(1));
      for (size_t i = 0; i < v.size(); ++i) w[i + 1] = v[i];
      span.push_back(w);
    }
    for (const auto& k : lattice_intersect_subspace(kgens, span)) {
      Rat val = 0;
      for (size_t i = 0; i < k.size(); ++i) val += g.coeffs[i] * Rat(k[i]);
      if (val != 0) {
        errors.push_back("gamma on face " + face_id + " does not kill the wall sublattice");
        return std::nullopt;
      }
    }
  }
  return g;
}

}  // namespace

CoherentSubdivision degenerate_complex(const MarkedType& type, const HeightData& heights) {
  const WComplex& c = type.complex;
  const RootSystem& rs = *c.rs;
  auto rep = check_wcomplex(c);
  if (!rep.empty()) throw ValidationError(rep);
  if (!is_multiplicity_free(c)) throw ValidationError({"support is not multiplicity-free"});

  std::vector<int> max_cells = c.maximal_cells();

  // resolve the full height map of one maximal cell: explicit entries first,
  // then W-transport from any same-class cell carrying the dominant key
  auto resolve = [&](int i, const IntVec& x) -> Rat {
    auto own = heights.cell_heights.find(c.cells[i].id);
    if (own != heights.cell_heights.end()) {
      auto it = own->second.find(x);
      if (it != own->second.end()) return it->second;
    }
    for (int w = 0; w < rs.weyl_order(); ++w) {
      IntVec img = rs.act_int(w, x);
      bool dom = true;
      for (const auto& e : img)
        if (e < 0) { dom = false; break; }
      if (!dom) continue;
      int target = c.w_action[w][i];
      if (target < 0) continue;
      auto tm = heights.cell_heights.find(c.cells[target].id);
      if (tm == heights.cell_heights.end()) continue;
      auto it = tm->second.find(img);
      if (it != tm->second.end()) return it->second;
    }
    throw ValidationError({"height missing for mark " + point_str(x) + " of cell " + c.cells[i].id});
  };

  // check every maximal cell has coverage and compute envelopes
  std::map<int, LowerEnvelope> envs;
  std::map<int, std::map<IntVec, Rat>> cell_height_map;
  for (int i : max_cells) {
    auto it = type.cell_marks.find(i);
    if (it == type.cell_marks.end() || it->second.empty())
      throw ValidationError({"cell " + c.cells[i].id + " carries no marks"});
    std::vector<std::pair<QVec, Rat>> lifted;
    for (const auto& x : it->second) {
      Rat h = resolve(i, x);
      cell_height_map[i][x] = h;
      lifted.emplace_back(to_qvec(x), h);
    }
    envs.emplace(i, lower_envelope(lifted, std::max(4, c.cells[i].poly.ambient + 1)));
  }

  // cocycle compatibility on shared faces
  std::vector<std::string> errors;
  for (size_t a = 0; a < max_cells.size(); ++a)
    for (size_t b = a + 1; b < max_cells.size(); ++b) {
      int i = max_cells[a], j = max_cells[b];
      for (int k = 0; k < c.ncells(); ++k) {
        if (k == i || k == j || !c.face_rel[k][i] || !c.face_rel[k][j]) continue;
        const LatticePolytope& phi = c.cells[k].poly;
        std::vector<IntVec> pts = lattice_points(phi);
        std::optional<GammaFunctional> g;
        auto gv = heights.gamma.find(c.cells[k].id);
        if (gv != heights.gamma.end()) {
          g = fit_gamma(rs, phi, gv->second, errors, c.cells[k].id);
        } else {
          // no cocycle data supplied: infer the functional from the envelope
          // differences themselves; it must still be linear and kill the
          // wall sublattice
          std::map<IntVec, Rat> observed;
          for (const auto& x : pts)
            observed[x] = envs.at(i).h.value_at(to_qvec(x)) - envs.at(j).h.value_at(to_qvec(x));
          g = fit_gamma(rs, phi, observed, errors, c.cells[k].id);
          if (!g) continue;  // reported already
        }
        for (const auto& x : pts) {
          Rat hi = envs.at(i).h.value_at(to_qvec(x));
          Rat hj = envs.at(j).h.value_at(to_qvec(x));
          Rat expected = g ? g->at(x) : Rat(0);
          if (hi - hj != expected)
            errors.push_back("compatibility fails on face " + c.cells[k].id + " at " + point_str(x) +
                             ": difference " + rat_to_string(hi - hj) + " vs gamma " +
                             rat_to_string(expected));
        }
        // marked points must shift by the same functional
        auto mk = type.cell_marks.find(k);
        if (mk != type.cell_marks.end())
          for (const auto& x : mk->second) {
            Rat mi = cell_height_map[i].count(x) ? cell_height_map[i][x] : resolve(i, x);
            Rat mj = cell_height_map[j].count(x) ? cell_height_map[j][x] : resolve(j, x);
            Rat expected = g ? g->at(x) : Rat(0);
            if (mi - mj != expected)
              errors.push_back("mark heights incompatible on face " + c.cells[k].id + " at " + point_str(x));
          }
      }
    }
  if (!errors.empty()) {
    std::sort(errors.begin(), errors.end());
    errors.erase(std::unique(errors.begin(), errors.end()), errors.end());
    throw ValidationError(errors);
  }

  // glue
  std::vector<LatticePolytope> new_cells;
  std::set<IntVec> new_marks;
  for (int i : max_cells) {
    for (const auto& cell : envs.at(i).cells) new_cells.push_back(cell);
    for (const auto& p : envs.at(i).attained) new_marks.insert(qvec_to_int(p));
  }
  CoherentSubdivision out;
  out.subdivision = embedded_complex(c.rs, new_cells, true);
  auto srep = check_wcomplex(out.subdivision);
  if (!srep.empty()) throw ValidationError(srep);
  out.marking = check_marking(out.subdivision, std::vector<IntVec>(new_marks.begin(), new_marks.end()));
  for (int i : max_cells) out.envelopes[c.cells[i].id] = envs.at(i).h;
  out.integrality_n = 1;
  for (const auto& [id, pl] : out.envelopes) out.integrality_n = lcm_int(out.integrality_n, minimal_integrality(pl));
  return out;
}

CoherenceResult is_coherent(const RootSystem& rs, const LatticePolytope& delta,
                            const WComplex& candidate, const std::vector<IntVec>& marking,
                            const std::vector<IntVec>& ambient_marks) {
  auto rs_ptr = std::make_shared<RootSystem>(rs);
  auto rep = check_wcomplex(candidate);
  if (!rep.empty()) throw ValidationError(rep);
  WComplex oc = orbit_complex(rs_ptr, delta);
  if (!subdivides(candidate, oc)) throw ValidationError({"candidate does not subdivide the polytope"});
  MarkedType marked = check_marking(candidate, marking);

  std::set<IntVec> ambient;
  if (ambient_marks.empty()) {
    for (int i = 0; i < oc.ncells(); ++i)
      for (const auto& p : lattice_points(oc.cells[i].poly)) ambient.insert(p);
  } else {
    ambient.insert(ambient_marks.begin(), ambient_marks.end());
    for (const auto& m : marked.marks)
      if (!ambient.count(m)) throw ValidationError({"marking exceeds the ambient mark set"});
  }

  // variables: dominant representatives of the ambient marks
  std::vector<IntVec> vars;
  {
    std::set<IntVec> vs;
    for (const auto& x : ambient) vs.insert(qvec_to_int(dominant_representative(rs, to_qvec(x)).dominant));
    vars.assign(vs.begin(), vs.end());
  }
  auto var_of = [&](const IntVec& x) -> int {
    IntVec key = qvec_to_int(dominant_representative(rs, to_qvec(x)).dominant);
    auto it = std::lower_bound(vars.begin(), vars.end(), key);
    return static_cast<int>(it - vars.begin());
  };

  std::set<IntVec> mark_set(marked.marks.begin(), marked.marks.end());
  LinearSystem sys(static_cast<int>(vars.size()));

  // restrict to the cells inside delta and the ambient points of delta;
  // the translated conditions coincide after folding to dominant keys
  std::vector<IntVec> local_pts;
  for (const auto& x : ambient)
    if (contains(delta, to_qvec(x))) local_pts.push_back(x);

  for (int ci : candidate.maximal_cells()) {
    const LatticePolytope& tau = candidate.cells[ci].poly;
    bool inside = true;
    for (const auto& v : tau.vertices)
      if (!contains(delta, v)) { inside = false; break; }
    if (!inside) continue;
    // affine basis from the vertices
    std::vector<QVec> basis;
    for (const auto& v : tau.vertices) {
      std::vector<QVec> trial = basis;
      trial.push_back(v);
      std::vector<QVec> diffs;
      for (size_t i = 1; i < trial.size(); ++i) diffs.push_back(qvec_sub(trial[i], trial[0]));
      QMat dm = qmat_from_rows(diffs);
      if (diffs.empty() || rank_q(dm) == static_cast<int>(diffs.size())) basis = trial;
      if (static_cast<int>(basis.size()) == tau.dim + 1) break;
    }
    // barycentric coordinates of y with respect to the basis
    auto bary = [&](const QVec& y) {
      std::vector<QVec> rows;
      int nb = static_cast<int>(basis.size());
      for (int r = 0; r < delta.ambient; ++r) {
        QVec row(nb);
        for (int k = 0; k < nb; ++k) row[k] = basis[k][r];
        rows.push_back(row);
      }
      rows.push_back(QVec(nb, Rat(1)));
      QVec rhs = y;
      rhs.push_back(Rat(1));
      auto sol = solve_q(qmat_from_rows(rows), rhs);
      if (!sol) throw std::logic_error("barycentric solve failed");
      return *sol;
    };
    for (const auto& y : local_pts) {
      bool in_tau = contains(tau, to_qvec(y));
      bool marked_in_tau = in_tau && mark_set.count(y);
      QVec mu = bary(to_qvec(y));
      QVec row(vars.size(), Rat(0));
      for (size_t k = 0; k < basis.size(); ++k) row[var_of(qvec_to_int(basis[k]))] += mu[k];
      row[var_of(y)] -= 1;
      sys.add(row, Rat(0), marked_in_tau ? Rel::EQ : Rel::LT);
    }
  }

  CoherenceResult out;
  out.lp = sys;
  SlackResult sr = fm_max_slack(sys);
  if (!sr.system_consistent || (sr.bounded && sr.max_slack <= 0)) {
    out.coherent = false;
    out.certificate = sr.certificate;
    return out;
  }
  out.coherent = true;
  for (size_t i = 0; i < vars.size(); ++i) out.witness[vars[i]] = sr.witness[i];
  return out;
}

}  // namespace redvar
