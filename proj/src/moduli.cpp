#include "redvar/moduli.hpp"

#include "redvar/reps.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

namespace redvar {

namespace {

bool is_dominant_int(const IntVec& v) {
  for (const auto& x : v)
    if (x < 0) return false;
  return true;
}

QVec cone_point(const QVec& x) {
  QVec w(x.size() + 1);
  w[0] = 1;
  for (size_t i = 0; i < x.size(); ++i) w[i + 1] = x[i];
  return w;
}

IntVec cone_point_int(const IntVec& x) {
  IntVec w(x.size() + 1);
  w[0] = 1;
  for (size_t i = 0; i < x.size(); ++i) w[i + 1] = x[i];
  return w;
}

// coordinates of an integer vector in an integral lattice basis
IntVec coords_in_basis(const std::vector<IntVec>& basis, const IntVec& x) {
  QMat m = qmat_from_columns([&] {
    std::vector<QVec> cols;
    for (const auto& b : basis) cols.push_back(to_qvec(b));
    return cols;
  }());
  auto sol = solve_q(m, to_qvec(x));
  if (!sol) throw std::logic_error("vector outside lattice span");
  if (!qvec_is_integral(*sol)) throw std::logic_error("vector outside lattice");
  return qvec_to_int(*sol);
}

}  // namespace

std::vector<int> k_delta(const RootSystem& rs, const LatticePolytope& delta) {
  auto adm = check_admissible(rs, delta);
  if (!adm.empty()) throw ValidationError(adm);
  std::vector<int> out;
  for (int i = 0; i < rs.rank; ++i) {
    bool pos = false, neg = false, all_zero = true;
    for (const auto& v : delta.vertices) {
      if (v[i] > 0) pos = true;
      if (v[i] < 0) neg = true;
      if (v[i] != 0) all_zero = false;
    }
    if ((pos && neg) || all_zero) out.push_back(i);
  }
  return out;
}

CellCharGroup cell_char_group(const RootSystem& rs, const LatticePolytope& delta) {
  if (delta.empty()) throw ValidationError({"empty polytope"});
  CellCharGroup g;
  std::vector<QVec> span;
  for (const auto& v : delta.vertices) span.push_back(cone_point(v));
  g.lattice_basis = lattice_of_subspace(span, rs.rank + 1);

  // wall-meeting simple roots, by vertex signs (no admissibility needed here)
  std::vector<IntVec> kgens;
  for (int i = 0; i < rs.rank; ++i) {
    bool pos = false, neg = false, all_zero = true;
    for (const auto& v : delta.vertices) {
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
  g.kprime = lattice_intersect_subspace(kgens, span);
  std::vector<IntVec> rel_cols;
  for (const auto& k : g.kprime) rel_cols.push_back(coords_in_basis(g.lattice_basis, k));
  g.relations = rel_cols.empty() ? IntMat(static_cast<int>(g.lattice_basis.size()), 0)
                                 : imat_from_columns(rel_cols);
  g.group = group_from_presentation(static_cast<int>(g.lattice_basis.size()), g.relations);
  return g;
}

FGAbelianGroup aut_character_group(const RootSystem& rs, const LatticePolytope& delta) {
  auto adm = check_admissible(rs, delta);
  if (!adm.empty()) throw ValidationError(adm);
  return cell_char_group(rs, delta).group;
}

PairSequence pair_sequence(const RootSystem& rs, const LatticePolytope& delta,
                           const std::vector<IntVec>& marks) {
  auto adm = check_admissible(rs, delta);
  if (!adm.empty()) throw ValidationError(adm);
  auto rs_ptr = std::make_shared<RootSystem>(rs);
  WComplex oc = orbit_complex(rs_ptr, delta);
  MarkedType mt = check_marking(oc, marks);

  PairSequence ps;
  ps.target = cell_char_group(rs, delta);
  for (const auto& m : marks)
    if (is_dominant_int(m) && contains(delta, to_qvec(m))) ps.cplus.push_back(m);
  std::sort(ps.cplus.begin(), ps.cplus.end());
  ps.cplus.erase(std::unique(ps.cplus.begin(), ps.cplus.end()), ps.cplus.end());
  if (ps.cplus.empty()) throw ValidationError({"no dominant marks on the cell"});

  ps.fun = free_group(static_cast<int>(ps.cplus.size()));
  ps.p_matrix = IntMat(static_cast<int>(ps.target.lattice_basis.size()), static_cast<int>(ps.cplus.size()));
  for (size_t j = 0; j < ps.cplus.size(); ++j) {
    IntVec coords = coords_in_basis(ps.target.lattice_basis, cone_point_int(ps.cplus[j]));
    for (size_t i = 0; i < coords.size(); ++i) ps.p_matrix.at(static_cast<int>(i), static_cast<int>(j)) = coords[i];
  }

  GroupHom p{ps.fun, ps.target.group, ps.p_matrix};
  auto ker = kernel(p);
  ps.l_group = ker.group;
  ps.l_embedding = ker.embedding;
  ps.k_group = cokernel(p).group;

  // audits: K finite, rank exactness
  if (ps.k_group.free_rank != 0)
    throw ValidationError({"cokernel K is infinite; marking does not span the cell"});
  IntMat proj = free_quotient_projection(ps.target.group);
  IntMat real_p = mat_mul(proj, ps.p_matrix);
  long rank_image = rank_int(real_p);
  if (ps.l_group.free_rank + rank_image != static_cast<long>(ps.cplus.size()))
    throw std::logic_error("rank exactness audit failed");
  return ps;
}

// ---------------------------------------------------------------------------
// quotient-poset complexes

namespace {

struct ClassPoset {
  std::vector<std::vector<int>> classes;
  std::vector<int> rep;       // cell index of the canonical representative
  std::vector<int> class_of;  // cell -> class
  std::vector<std::pair<int, int>> flags;          // (upper, lower), strict
  std::vector<std::array<int, 3>> chains;          // x0 > x1 > x2
};

ClassPoset build_class_poset(const WComplex& c) {
  ClassPoset p;
  p.classes = c.orbits();
  p.class_of.assign(c.ncells(), -1);
  for (size_t k = 0; k < p.classes.size(); ++k)
    for (int i : p.classes[k]) p.class_of[i] = static_cast<int>(k);
  for (const auto& cls : p.classes) p.rep.push_back(c.canonical_rep(cls));

  std::set<std::pair<int, int>> flag_set;
  for (int i = 0; i < c.ncells(); ++i)
    for (int j = 0; j < c.ncells(); ++j)
      if (i != j && c.face_rel[i][j] && p.class_of[i] != p.class_of[j])
        flag_set.insert({p.class_of[j], p.class_of[i]});  // (upper, lower)
  p.flags.assign(flag_set.begin(), flag_set.end());

  // representatives must realize the incidences
  for (const auto& [a, b] : p.flags)
    if (!c.face_rel[p.rep[b]][p.rep[a]])
      throw ValidationError({"canonical representatives do not realize a face incidence; unsupported complex"});

  for (const auto& [a, b] : p.flags)
    for (const auto& [b2, d] : p.flags)
      if (b2 == b) {
        if (!flag_set.count({a, d})) throw std::logic_error("face relation not transitive on classes");
        p.chains.push_back({a, b, d});
      }
  std::sort(p.chains.begin(), p.chains.end());
  return p;
}

struct Assembled {
  FGAbelianGroup group;
  std::vector<int> offsets;
  std::vector<int> sizes;
};

Assembled assemble(const std::vector<const FGAbelianGroup*>& blocks) {
  Assembled t;
  int total = 0, rel_total = 0;
  for (const auto* b : blocks) {
    t.offsets.push_back(total);
    t.sizes.push_back(b->ngens);
    total += b->ngens;
    rel_total += b->relations.cols;
  }
  IntMat rel(total, rel_total);
  int rc = 0;
  for (size_t k = 0; k < blocks.size(); ++k)
    for (int j = 0; j < blocks[k]->relations.cols; ++j, ++rc)
      for (int i = 0; i < blocks[k]->ngens; ++i)
        rel.at(t.offsets[k] + i, rc) = blocks[k]->relations.at(i, j);
  t.group = group_from_presentation(total, rel);
  return t;
}

// All character data needed for both cohomology computations.
struct CharComplexData {
  ClassPoset poset;
  std::vector<CellCharGroup> cell_groups;      // per class
  std::vector<FGAbelianGroup> aut_groups;      // per class (alias of cell_groups.group)
  std::vector<IntMat> incl;                    // per flag: G_lower -> G_upper (basis coords)
  Assembled a0, a1, a2;
  IntMat da10, da21;
};

CharComplexData build_aut_char_data(const WComplex& c) {
  CharComplexData d;
  d.poset = build_class_poset(c);
  const RootSystem& rs = *c.rs;
  for (size_t k = 0; k < d.poset.classes.size(); ++k) {
    d.cell_groups.push_back(cell_char_group(rs, c.cells[d.poset.rep[k]].poly));
    d.aut_groups.push_back(d.cell_groups.back().group);
  }
  // inclusion matrices per flag, with relation-compatibility verified by
  // check_hom when complexes are assembled
  for (const auto& [a, b] : d.poset.flags) {
    const auto& gb = d.cell_groups[b];
    const auto& ga = d.cell_groups[a];
    IntMat m(static_cast<int>(ga.lattice_basis.size()), static_cast<int>(gb.lattice_basis.size()));
    for (size_t j = 0; j < gb.lattice_basis.size(); ++j) {
      IntVec coords = coords_in_basis(ga.lattice_basis, gb.lattice_basis[j]);
      for (size_t i = 0; i < coords.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(j)) = coords[i];
    }
    d.incl.push_back(m);
  }

  std::vector<const FGAbelianGroup*> blocks0, blocks1, blocks2;
  for (const auto& g : d.aut_groups) blocks0.push_back(&g);
  for (const auto& [a, b] : d.poset.flags) blocks1.push_back(&d.aut_groups[b]);
  for (const auto& ch : d.poset.chains) blocks2.push_back(&d.aut_groups[ch[2]]);
  d.a0 = assemble(blocks0);
  d.a1 = assemble(blocks1);
  d.a2 = assemble(blocks2);

  auto flag_index = [&](int a, int b) {
    for (size_t f = 0; f < d.poset.flags.size(); ++f)
      if (d.poset.flags[f] == std::make_pair(a, b)) return static_cast<int>(f);
    throw std::logic_error("missing flag");
  };

  d.da10 = IntMat(d.a0.group.ngens, d.a1.group.ngens);
  for (size_t f = 0; f < d.poset.flags.size(); ++f) {
    auto [a, b] = d.poset.flags[f];
    const IntMat& inc = d.incl[f];
    for (int j = 0; j < d.a1.sizes[f]; ++j) {
      for (int i = 0; i < inc.rows; ++i) d.da10.at(d.a0.offsets[a] + i, d.a1.offsets[f] + j) = inc.at(i, j);
      d.da10.at(d.a0.offsets[b] + j, d.a1.offsets[f] + j) -= 1;
    }
  }

  d.da21 = IntMat(d.a1.group.ngens, d.a2.group.ngens);
  for (size_t t = 0; t < d.poset.chains.size(); ++t) {
    auto [a, b, e] = d.poset.chains[t];
    int fab = flag_index(a, b), fae = flag_index(a, e), fbe = flag_index(b, e);
    const IntMat& inc_eb = d.incl[flag_index(b, e)];  // G_e -> G_b
    for (int j = 0; j < d.a2.sizes[t]; ++j) {
      for (int i = 0; i < inc_eb.rows; ++i)
        d.da21.at(d.a1.offsets[fab] + i, d.a2.offsets[t] + j) += inc_eb.at(i, j);
      d.da21.at(d.a1.offsets[fae] + j, d.a2.offsets[t] + j) -= 1;
      d.da21.at(d.a1.offsets[fbe] + j, d.a2.offsets[t] + j) += 1;
    }
  }
  return d;
}

}  // namespace

ComplexCohomology aut_complex_cohomology(const WComplex& complex) {
  auto rep = check_wcomplex(complex);
  if (!rep.empty()) throw ValidationError(rep);
  if (!is_multiplicity_free(complex)) throw ValidationError({"non-multiplicity-free support refused"});
  CharComplexData d = build_aut_char_data(complex);
  IntComplex k;
  k.terms = {d.a2.group, d.a1.group, d.a0.group};
  k.diffs = {d.da21, d.da10};
  k.labels = {"C2", "C1", "C0"};
  ComplexCohomology out;
  out.h0 = homology(k, 2);
  out.h1 = homology(k, 1);
  return out;
}

PairCohomology pair_moduli_cohomology(const MarkedType& type) {
  const WComplex& c = type.complex;
  auto rep = check_wcomplex(c);
  if (!rep.empty()) throw ValidationError(rep);
  if (!is_multiplicity_free(c)) throw ValidationError({"non-multiplicity-free support refused"});
  CharComplexData d = build_aut_char_data(c);
  const ClassPoset& poset = d.poset;

  // Fun blocks per class: free on the dominant marks of the representative
  std::vector<std::vector<IntVec>> fun_marks(poset.classes.size());
  std::vector<FGAbelianGroup> fun_groups;
  for (size_t k = 0; k < poset.classes.size(); ++k) {
    fun_marks[k] = type.dominant_marks_of(poset.rep[k]);
    if (fun_marks[k].empty()) throw ValidationError({"class representative carries no dominant marks"});
    fun_groups.push_back(free_group(static_cast<int>(fun_marks[k].size())));
  }
  auto mark_slot = [&](size_t cls, const IntVec& m) {
    auto it = std::lower_bound(fun_marks[cls].begin(), fun_marks[cls].end(), m);
    if (it == fun_marks[cls].end() || *it != m)
      throw ValidationError({"dominant mark of a face is not a mark of the containing representative"});
    return static_cast<int>(it - fun_marks[cls].begin());
  };

  std::vector<const FGAbelianGroup*> blocksB0, blocksB1;
  for (const auto& g : fun_groups) blocksB0.push_back(&g);
  for (const auto& [a, b] : poset.flags) blocksB1.push_back(&fun_groups[b]);
  Assembled b0 = assemble(blocksB0);
  Assembled b1 = assemble(blocksB1);

  // p-hat per class: Fun_x -> G_x
  std::vector<IntMat> phat;
  for (size_t k = 0; k < poset.classes.size(); ++k) {
    const auto& cg = d.cell_groups[k];
    IntMat m(static_cast<int>(cg.lattice_basis.size()), static_cast<int>(fun_marks[k].size()));
    for (size_t j = 0; j < fun_marks[k].size(); ++j) {
      IntVec coords = coords_in_basis(cg.lattice_basis, cone_point_int(fun_marks[k][j]));
      for (size_t i = 0; i < coords.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(j)) = coords[i];
    }
    phat.push_back(m);
  }

  // M0 = A0;  M1 = A1 + B0;  M2 = A2 + B1
  Assembled m0 = d.a0;
  IntMat m1_rel(d.a1.group.ngens + b0.group.ngens, d.a1.group.relations.cols + b0.group.relations.cols);
  for (int j = 0; j < d.a1.group.relations.cols; ++j)
    for (int i = 0; i < d.a1.group.ngens; ++i) m1_rel.at(i, j) = d.a1.group.relations.at(i, j);
  for (int j = 0; j < b0.group.relations.cols; ++j)
    for (int i = 0; i < b0.group.ngens; ++i)
      m1_rel.at(d.a1.group.ngens + i, d.a1.group.relations.cols + j) = b0.group.relations.at(i, j);
  FGAbelianGroup m1 = group_from_presentation(d.a1.group.ngens + b0.group.ngens, m1_rel);

  IntMat m2_rel(d.a2.group.ngens + b1.group.ngens, d.a2.group.relations.cols + b1.group.relations.cols);
  for (int j = 0; j < d.a2.group.relations.cols; ++j)
    for (int i = 0; i < d.a2.group.ngens; ++i) m2_rel.at(i, j) = d.a2.group.relations.at(i, j);
  for (int j = 0; j < b1.group.relations.cols; ++j)
    for (int i = 0; i < b1.group.ngens; ++i)
      m2_rel.at(d.a2.group.ngens + i, d.a2.group.relations.cols + j) = b1.group.relations.at(i, j);
  FGAbelianGroup m2 = group_from_presentation(d.a2.group.ngens + b1.group.ngens, m2_rel);

  // d(M1 -> M0) = [dA10 | phat0]
  IntMat dm10(m0.group.ngens, m1.ngens);
  for (int j = 0; j < d.a1.group.ngens; ++j)
    for (int i = 0; i < m0.group.ngens; ++i) dm10.at(i, j) = d.da10.at(i, j);
  for (size_t k = 0; k < poset.classes.size(); ++k)
    for (int j = 0; j < b0.sizes[k]; ++j)
      for (int i = 0; i < phat[k].rows; ++i)
        dm10.at(d.a0.offsets[k] + i, d.a1.group.ngens + b0.offsets[k] + j) = phat[k].at(i, j);

  // d(M2 -> M1): A2 columns via dA21; B1 columns via (phat at the flag slot,
  // minus the Fun boundary)
  IntMat dm21(m1.ngens, m2.ngens);
  for (int j = 0; j < d.a2.group.ngens; ++j)
    for (int i = 0; i < d.a1.group.ngens; ++i) dm21.at(i, j) = d.da21.at(i, j);
  for (size_t f = 0; f < poset.flags.size(); ++f) {
    auto [a, b] = poset.flags[f];
    for (int j = 0; j < b1.sizes[f]; ++j) {
      int col = d.a2.group.ngens + b1.offsets[f] + j;
      // p-hat into the A1 flag slot (same lower class b)
      for (int i = 0; i < phat[b].rows; ++i) dm21.at(d.a1.offsets[f] + i, col) += phat[b].at(i, j);
      // minus Fun boundary: -(incl into a) + (id at b)
      const IntVec& m = fun_marks[b][j];
      int slot_a = mark_slot(a, m);
      dm21.at(d.a1.group.ngens + b0.offsets[a] + slot_a, col) -= 1;
      dm21.at(d.a1.group.ngens + b0.offsets[b] + j, col) += 1;
    }
  }

  IntComplex k;
  k.terms = {m2, m1, m0.group};
  k.diffs = {dm21, dm10};
  k.labels = {"M2", "M1", "M0"};
  PairCohomology out;
  out.aut_chars = homology(k, 2);
  out.iso_chars = homology(k, 1);
  if (out.aut_chars.free_rank != 0)
    throw ValidationError({"pair automorphism group is infinite; marking violates the type invariants"});
  return out;
}

// ---------------------------------------------------------------------------
// point configurations and fiber polytopes

namespace {

int config_dim(const std::vector<IntVec>& geo) {
  std::vector<QVec> diffs;
  for (size_t i = 1; i < geo.size(); ++i) {
    QVec d(geo[i].size());
    for (size_t j = 0; j < geo[i].size(); ++j) d[j] = Rat(geo[i][j] - geo[0][j]);
    diffs.push_back(d);
  }
  if (diffs.empty()) return 0;
  return rank_q(qmat_from_rows(diffs));
}

}  // namespace

std::vector<LabeledTriangulation> all_triangulations(const PointConfig& config) {
  int nl = static_cast<int>(config.points.size());
  if (nl == 0) return {};
  std::vector<IntVec> geo = config.points;
  std::sort(geo.begin(), geo.end());
  geo.erase(std::unique(geo.begin(), geo.end()), geo.end());
  int ng = static_cast<int>(geo.size());
  std::vector<int> label_geo(nl);
  for (int l = 0; l < nl; ++l)
    label_geo[l] = static_cast<int>(std::lower_bound(geo.begin(), geo.end(), config.points[l]) - geo.begin());
  int d = config_dim(geo);

  std::vector<QVec> geo_q;
  for (const auto& g : geo) geo_q.push_back(to_qvec(g));
  LatticePolytope hull = convex_hull(geo_q, static_cast<int>(geo[0].size()));
  Rat total = normalized_volume(hull);

  // candidate simplices: affinely independent (d+1)-subsets
  std::vector<std::vector<int>> cands;
  std::vector<LatticePolytope> cand_hulls;
  std::vector<Rat> cand_vols;
  {
    std::vector<int> idx(d + 1);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == d + 1) {
        std::vector<QVec> pts;
        for (int i : idx) pts.push_back(geo_q[i]);
        LatticePolytope h = convex_hull(pts, hull.ambient);
        if (h.dim != d) return;
        cands.push_back(idx);
        cand_hulls.push_back(h);
        cand_vols.push_back(normalized_volume(h));
        return;
      }
      for (int i = start; i <= ng - (d + 1 - depth); ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
  }
  int nc = static_cast<int>(cands.size());

  // pairwise compatibility (face-to-face with disjoint interiors)
  std::vector<std::vector<bool>> compat(nc, std::vector<bool>(nc, false));
  for (int a = 0; a < nc; ++a)
    for (int b = a + 1; b < nc; ++b) {
      LatticePolytope cap = intersect(cand_hulls[a], cand_hulls[b]);
      bool ok;
      if (cap.empty()) {
        std::vector<int> common;
        std::set_intersection(cands[a].begin(), cands[a].end(), cands[b].begin(), cands[b].end(),
                              std::back_inserter(common));
        ok = common.empty();
      } else {
        std::vector<int> common;
        std::set_intersection(cands[a].begin(), cands[a].end(), cands[b].begin(), cands[b].end(),
                              std::back_inserter(common));
        std::vector<QVec> cpts;
        for (int i : common) cpts.push_back(geo_q[i]);
        ok = !cpts.empty() && convex_hull(cpts, hull.ambient) == cap && is_face_of(cand_hulls[a], cap) &&
             is_face_of(cand_hulls[b], cap);
      }
      compat[a][b] = compat[b][a] = ok;
    }

  // exact covers in canonical order
  std::vector<std::vector<int>> geo_triangulations;  // lists of candidate ids
  std::vector<int> chosen;
  std::function<void(int, const Rat&)> cover = [&](int start, const Rat& vol) {
    if (vol == total) {
      geo_triangulations.push_back(chosen);
      return;
    }
    for (int i = start; i < nc; ++i) {
      if (vol + cand_vols[i] > total) continue;
      bool ok = true;
      for (int j : chosen)
        if (!compat[j][i]) { ok = false; break; }
      if (!ok) continue;
      chosen.push_back(i);
      cover(i + 1, vol + cand_vols[i]);
      chosen.pop_back();
    }
  };
  cover(0, Rat(0));

  // label assignments per geometric triangulation
  std::set<LabeledTriangulation> out;
  std::vector<std::vector<int>> copies(ng);
  for (int l = 0; l < nl; ++l) copies[label_geo[l]].push_back(l);
  for (const auto& gt : geo_triangulations) {
    std::set<int> used;
    for (int ci : gt)
      for (int g : cands[ci]) used.insert(g);
    std::vector<int> used_list(used.begin(), used.end());
    std::vector<int> pick(used_list.size(), 0);
    while (true) {
      std::map<int, int> geo_label;
      for (size_t i = 0; i < used_list.size(); ++i) geo_label[used_list[i]] = copies[used_list[i]][pick[i]];
      LabeledTriangulation t;
      for (int ci : gt) {
        std::vector<int> cell;
        for (int g : cands[ci]) cell.push_back(geo_label[g]);
        std::sort(cell.begin(), cell.end());
        t.cells.push_back(cell);
      }
      std::sort(t.cells.begin(), t.cells.end());
      out.insert(t);
      // advance the mixed-radix counter
      size_t k = 0;
      while (k < pick.size()) {
        if (++pick[k] < static_cast<int>(copies[used_list[k]].size())) break;
        pick[k] = 0;
        ++k;
      }
      if (k == pick.size()) break;
    }
  }
  return std::vector<LabeledTriangulation>(out.begin(), out.end());
}

RegularityResult triangulation_regular(const PointConfig& config, const LabeledTriangulation& t) {
  int nl = static_cast<int>(config.points.size());
  LinearSystem sys(nl);
  for (const auto& cell : t.cells) {
    // barycentric interpolation through the cell's points
    std::vector<QVec> pts;
    for (int l : cell) pts.push_back(to_qvec(config.points[l]));
    int nb = static_cast<int>(pts.size());
    std::vector<QVec> rows;
    for (size_t r = 0; r < config.points[0].size(); ++r) {
      QVec row(nb);
      for (int k = 0; k < nb; ++k) row[k] = pts[k][r];
      rows.push_back(row);
    }
    rows.push_back(QVec(nb, Rat(1)));
    QMat m = qmat_from_rows(rows);
    std::set<int> in_cell(cell.begin(), cell.end());
    for (int l = 0; l < nl; ++l) {
      if (in_cell.count(l)) continue;
      QVec rhs = to_qvec(config.points[l]);
      rhs.push_back(Rat(1));
      auto mu = solve_q(m, rhs);
      if (!mu) throw std::logic_error("configuration point escapes the affine hull");
      QVec row(nl, Rat(0));
      for (int k = 0; k < nb; ++k) row[cell[k]] += (*mu)[k];
      row[l] -= 1;
      sys.add(row, Rat(0), Rel::LT);
    }
  }
  RegularityResult res;
  SlackResult sr = fm_max_slack(sys);
  res.regular = sr.system_consistent && (!sr.bounded || sr.max_slack > 0);
  if (res.regular) res.witness = sr.witness;
  return res;
}

IntVec gkz_vector(const PointConfig& config, const LabeledTriangulation& t) {
  IntVec phi(config.points.size(), Int(0));
  for (const auto& cell : t.cells) {
    std::vector<QVec> pts;
    for (int l : cell) pts.push_back(to_qvec(config.points[l]));
    Rat vol = normalized_volume(convex_hull(pts, static_cast<int>(config.points[0].size())));
    if (!is_integer(vol)) throw std::logic_error("non-integral cell volume");
    for (int l : cell) phi[l] += rat_num(vol);
  }
  return phi;
}

FiberPolytopeResult fiber_polytope(const RootSystem& rs, const LatticePolytope& delta,
                                   const std::vector<IntVec>& marks) {
  PairSequence ps = pair_sequence(rs, delta, marks);

  // configuration: free-part images of (1, c)
  IntMat proj = free_quotient_projection(ps.target.group);
  PointConfig config;
  for (size_t j = 0; j < ps.cplus.size(); ++j) config.points.push_back(mat_apply(proj, ps.p_matrix.col(static_cast<int>(j))));
  {
    std::vector<IntVec> geo = config.points;
    std::sort(geo.begin(), geo.end());
    geo.erase(std::unique(geo.begin(), geo.end()), geo.end());
    config.dim = config_dim(geo);
  }

  FiberPolytopeResult out;
  std::vector<std::pair<IntVec, QVec>> vertices;  // (gkz, witness)
  for (const auto& t : all_triangulations(config)) {
    RegularityResult reg = triangulation_regular(config, t);
    if (!reg.regular) continue;
    IntVec phi = gkz_vector(config, t);
    vertices.emplace_back(phi, reg.witness);
  }
  if (vertices.empty()) throw std::logic_error("no regular triangulation found");
  std::sort(vertices.begin(), vertices.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i].first == vertices[i - 1].first)
      throw std::logic_error("distinct regular triangulations share a weight vector");

  for (const auto& [phi, w] : vertices) out.gkz_vertices.push_back(phi);

  // kernel-basis coordinates relative to the lexicographically least vertex
  const IntVec& base = out.gkz_vertices.front();
  int lrank = static_cast<int>(ps.l_group.free_rank);
  std::vector<QVec> kcoords;
  for (const auto& phi : out.gkz_vertices) {
    QVec diff(phi.size());
    for (size_t i = 0; i < phi.size(); ++i) diff[i] = Rat(phi[i] - base[i]);
    if (lrank == 0) {
      kcoords.push_back(QVec{});
      continue;
    }
    QMat emb(ps.l_embedding.rows, lrank);
    for (int i = 0; i < ps.l_embedding.rows; ++i)
      for (int j = 0; j < lrank; ++j) emb.at(i, j) = Rat(ps.l_embedding.at(i, j));
    auto sol = solve_q(emb, diff);
    if (!sol) throw std::logic_error("weight difference escapes the kernel");
    kcoords.push_back(*sol);
  }
  out.polytope = convex_hull(kcoords, std::max(lrank, 1));
  out.dim = out.polytope.dim;

  if (out.dim != static_cast<int>(ps.l_group.free_rank))
    throw std::logic_error("fiber polytope dimension differs from the kernel rank");
  // every weight vector must be a vertex
  if (out.polytope.vertices.size() != vertices.size())
    throw std::logic_error("a regular triangulation failed to give a vertex");

  // subdivision certificates from the regularity witnesses
  for (const auto& [phi, w] : vertices) {
    std::map<IntVec, Rat> heights;
    for (size_t j = 0; j < ps.cplus.size(); ++j) heights[ps.cplus[j]] = w[j];
    out.vertex_subdivisions.emplace(phi, degenerate(rs, delta, marks, heights));
  }
  return out;
}

FiberPolytopeResult global_fiber_polytope(const MarkedType& type) {
  const WComplex& c = type.complex;
  const RootSystem& rs = *c.rs;
  auto rep = check_wcomplex(c);
  if (!rep.empty()) throw ValidationError(rep);
  if (!is_multiplicity_free(c)) throw ValidationError({"non-multiplicity-free support refused"});

  // classes of maximal cells
  std::vector<int> max_cells = c.maximal_cells();
  std::set<int> max_set(max_cells.begin(), max_cells.end());
  std::vector<std::vector<int>> classes;
  std::vector<int> reps;
  {
    std::set<int> seen;
    for (int m : max_cells) {
      if (seen.count(m)) continue;
      auto orb = c.orbit_of(m);
      for (int x : orb) seen.insert(x);
      classes.push_back(orb);
      reps.push_back(c.canonical_rep(orb));
    }
  }

  // per-class marks and fiber polytopes
  std::vector<std::vector<IntVec>> class_marks(classes.size());
  std::vector<FiberPolytopeResult> fibers;
  std::vector<std::vector<IntVec>> cplus(classes.size());
  for (size_t k = 0; k < classes.size(); ++k) {
    std::set<IntVec> ms;
    for (const auto& m : type.marks)
      for (int cell : classes[k])
        if (contains(c.cells[cell].poly, to_qvec(m))) ms.insert(m);
    class_marks[k].assign(ms.begin(), ms.end());
    fibers.push_back(fiber_polytope(rs, c.cells[reps[k]].poly, class_marks[k]));
    for (const auto& m : class_marks[k])
      if (is_dominant_int(m) && contains(c.cells[reps[k]].poly, to_qvec(m))) cplus[k].push_back(m);
    std::sort(cplus[k].begin(), cplus[k].end());
  }

  // boundary map of the Fun cosheaf on shared codimension-one face classes
  std::vector<int> offsets;
  int total = 0;
  for (size_t k = 0; k < classes.size(); ++k) {
    offsets.push_back(total);
    total += static_cast<int>(cplus[k].size());
  }
  auto slot = [&](size_t cls, const IntVec& m) {
    auto it = std::lower_bound(cplus[cls].begin(), cplus[cls].end(), m);
    if (it == cplus[cls].end() || *it != m)
      throw ValidationError({"shared-face mark missing from a class representative"});
    return offsets[cls] + static_cast<int>(it - cplus[cls].begin());
  };

  std::vector<IntVec> boundary_cols;
  {
    std::set<int> face_classes_done;
    for (int k = 0; k < c.ncells(); ++k) {
      std::vector<int> containing;
      for (int m : max_cells)
        if (m != k && c.face_rel[k][m] && c.cells[k].poly.dim == c.cells[m].poly.dim - 1)
          containing.push_back(m);
      if (containing.size() < 2) continue;
      int face_rep = c.orbit_rep_of(k);
      if (face_classes_done.count(face_rep)) continue;
      face_classes_done.insert(face_rep);
      // work at the canonical face representative
      std::vector<int> sides;
      for (int m : max_cells)
        if (m != face_rep && c.face_rel[face_rep][m] &&
            c.cells[face_rep].poly.dim == c.cells[m].poly.dim - 1)
          sides.push_back(m);
      if (sides.size() != 2)
        throw ValidationError({"face shared by more than two maximal cells; unsupported"});
      size_t ca = 0, cb = 0;
      for (size_t k2 = 0; k2 < classes.size(); ++k2) {
        if (std::find(classes[k2].begin(), classes[k2].end(), sides[0]) != classes[k2].end()) ca = k2;
        if (std::find(classes[k2].begin(), classes[k2].end(), sides[1]) != classes[k2].end()) cb = k2;
      }
      for (const auto& m : type.dominant_marks_of(face_rep)) {
        IntVec col(total, Int(0));
        col[slot(ca, m)] += 1;
        col[slot(cb, m)] -= 1;
        boundary_cols.push_back(col);
      }
    }
  }
  bool boundary_zero = true;
  for (const auto& col : boundary_cols)
    for (const auto& x : col)
      if (x != 0) boundary_zero = false;

  if (classes.size() == 1 && boundary_zero) return fibers[0];

  FGAbelianGroup h0 = group_from_presentation(
      total, boundary_cols.empty() ? IntMat(total, 0) : imat_from_columns(boundary_cols));
  IntMat proj = free_quotient_projection(h0);

  // product vertices, projected
  std::vector<std::vector<size_t>> tuples;
  {
    std::vector<size_t> cur(classes.size(), 0);
    while (true) {
      tuples.push_back(cur);
      size_t k = 0;
      while (k < classes.size()) {
        if (++cur[k] < fibers[k].gkz_vertices.size()) break;
        cur[k] = 0;
        ++k;
      }
      if (k == classes.size()) break;
    }
  }
  std::set<IntVec> projected;
  std::map<IntVec, std::vector<size_t>> tuple_of;
  for (const auto& tup : tuples) {
    IntVec concat(total, Int(0));
    for (size_t k = 0; k < classes.size(); ++k) {
      const IntVec& phi = fibers[k].gkz_vertices[tup[k]];
      for (size_t j = 0; j < phi.size(); ++j) concat[offsets[k] + j] = phi[j];
    }
    IntVec p = mat_apply(proj, concat);
    if (projected.insert(p).second) tuple_of[p] = tup;
  }

  FiberPolytopeResult out;
  out.gkz_vertices.assign(projected.begin(), projected.end());
  const IntVec& base = out.gkz_vertices.front();
  std::vector<QVec> diffs;
  for (const auto& p : out.gkz_vertices) {
    QVec d(p.size());
    for (size_t i = 0; i < p.size(); ++i) d[i] = Rat(p[i] - base[i]);
    diffs.push_back(d);
  }
  std::vector<IntVec> lat = lattice_of_subspace(diffs, total == 0 ? 1 : static_cast<int>(base.size()));
  std::vector<QVec> coords;
  for (const auto& d : diffs) {
    if (lat.empty()) {
      coords.push_back(QVec{});
      continue;
    }
    QMat bm(static_cast<int>(lat[0].size()), static_cast<int>(lat.size()));
    for (size_t j = 0; j < lat.size(); ++j)
      for (size_t i = 0; i < lat[j].size(); ++i) bm.at(static_cast<int>(i), static_cast<int>(j)) = Rat(lat[j][i]);
    auto sol = solve_q(bm, d);
    if (!sol) throw std::logic_error("projected difference escapes its lattice");
    coords.push_back(*sol);
  }
  out.polytope = convex_hull(coords, std::max(static_cast<int>(lat.size()), 1));
  out.dim = out.polytope.dim;

  // certificates: per-vertex glued degeneration when the tuple heights glue
  for (const auto& p : out.gkz_vertices) {
    const auto& tup = tuple_of[p];
    HeightData hd;
    for (size_t k = 0; k < classes.size(); ++k) {
      const auto& ft = fibers[k];
      const IntVec& phi = ft.gkz_vertices[tup[k]];
      auto it = ft.vertex_subdivisions.find(phi);
      if (it == ft.vertex_subdivisions.end()) continue;
      // recover witness heights from the certificate's envelope values
      std::map<IntVec, Rat> hmap;
      for (const auto& m : cplus[k]) {
        const PLFunction* pl = nullptr;
        for (const auto& [id, f] : it->second.envelopes)
          if (contains(f.domain, to_qvec(m))) { pl = &f; break; }
        if (pl) hmap[m] = pl->value_at(to_qvec(m));
      }
      hd.cell_heights[c.cells[reps[k]].id] = hmap;
    }
    try {
      out.vertex_subdivisions.emplace(p, degenerate_complex(type, hd));
    } catch (const ValidationError&) {
      // heights of the tuple do not glue over shared faces; no certificate
    }
  }
  return out;
}

Int stratum_dimension_general(const RootSystem& rs, const std::vector<IntVec>& marks) {
  std::set<IntVec> cplus;
  for (const auto& m : marks)
    if (is_dominant_int(m)) cplus.insert(m);
  Int total = 0;
  for (const auto& m : cplus) {
    Int d = weyl_dim(rs, m);
    total += d * d - 1;
  }
  return total;
}

// ---------------------------------------------------------------------------
// strata enumeration

namespace {

// Heights LP deciding whether the candidate marked subdivision of the
// support is induced by a compatible system of height functions.
struct StrataLP {
  bool coherent = false;
  HeightData witness;
};

StrataLP strata_coherent(const RootSystem& rs, const MarkedType& support_type, const WComplex& cand,
                         const std::vector<IntVec>& cand_marks) {
  const WComplex& sup = support_type.complex;
  std::vector<int> max_cells = sup.maximal_cells();

  // classes of maximal support cells
  std::vector<std::vector<int>> classes;
  std::vector<int> reps;
  std::vector<int> class_of(sup.ncells(), -1);
  {
    std::set<int> seen;
    for (int m : max_cells) {
      if (seen.count(m)) continue;
      auto orb = sup.orbit_of(m);
      for (int x : orb) {
        seen.insert(x);
        class_of[x] = static_cast<int>(classes.size());
      }
      classes.push_back(orb);
      reps.push_back(sup.canonical_rep(orb));
    }
  }

  // variables: (class, dominant mark key)
  std::vector<std::pair<int, IntVec>> vars;
  for (size_t k = 0; k < classes.size(); ++k) {
    std::set<IntVec> keys;
    for (int cell : classes[k]) {
      auto it = support_type.cell_marks.find(cell);
      if (it == support_type.cell_marks.end()) continue;
      for (const auto& m : it->second)
        keys.insert(qvec_to_int(dominant_representative(rs, to_qvec(m)).dominant));
    }
    for (const auto& key : keys) vars.emplace_back(static_cast<int>(k), key);
  }
  std::sort(vars.begin(), vars.end());
  auto var_of = [&](int cls, const IntVec& x) {
    IntVec key = qvec_to_int(dominant_representative(rs, to_qvec(x)).dominant);
    auto it = std::lower_bound(vars.begin(), vars.end(), std::make_pair(cls, key));
    if (it == vars.end() || *it != std::make_pair(cls, key)) throw std::logic_error("missing height variable");
    return static_cast<int>(it - vars.begin());
  };

  std::set<IntVec> msel(cand_marks.begin(), cand_marks.end());
  LinearSystem sys(static_cast<int>(vars.size()));

  // a symbolic affine-function row for the candidate cell containing x
  auto cell_row = [&](int sup_cell, const LatticePolytope& tau, const QVec& x) {
    std::vector<QVec> basis;
    for (const auto& v : tau.vertices) {
      std::vector<QVec> trial = basis;
      trial.push_back(v);
      std::vector<QVec> diffs;
      for (size_t i = 1; i < trial.size(); ++i) diffs.push_back(qvec_sub(trial[i], trial[0]));
      if (diffs.empty() || rank_q(qmat_from_rows(diffs)) == static_cast<int>(diffs.size())) basis = trial;
      if (static_cast<int>(basis.size()) == tau.dim + 1) break;
    }
    int nb = static_cast<int>(basis.size());
    std::vector<QVec> rows;
    for (size_t r = 0; r < x.size(); ++r) {
      QVec row(nb);
      for (int k = 0; k < nb; ++k) row[k] = basis[k][r];
      rows.push_back(row);
    }
    rows.push_back(QVec(nb, Rat(1)));
    QVec rhs = x;
    rhs.push_back(Rat(1));
    auto mu = solve_q(qmat_from_rows(rows), rhs);
    if (!mu) throw std::logic_error("barycentric solve failed");
    QVec row(vars.size(), Rat(0));
    for (int k = 0; k < nb; ++k) row[var_of(class_of[sup_cell], qvec_to_int(basis[k]))] += (*mu)[k];
    return row;
  };

  // envelope conditions per maximal support cell
  for (int m : max_cells) {
    const LatticePolytope& big = sup.cells[m].poly;
    auto mit = support_type.cell_marks.find(m);
    if (mit == support_type.cell_marks.end()) continue;
    for (int ci : cand.maximal_cells()) {
      const LatticePolytope& tau = cand.cells[ci].poly;
      bool inside = true;
      for (const auto& v : tau.vertices)
        if (!contains(big, v)) { inside = false; break; }
      if (!inside || tau.dim != big.dim) continue;
      for (const auto& y : mit->second) {
        QVec row = cell_row(m, tau, to_qvec(y));
        row[var_of(class_of[m], y)] -= 1;
        bool marked_in_tau = msel.count(y) && contains(tau, to_qvec(y));
        sys.add(row, Rat(0), marked_in_tau ? Rel::EQ : Rel::LT);
      }
    }
  }

  // cross-class shared faces: the difference of the two sides must be one
  // affine-linear functional over the face
  for (size_t a = 0; a < max_cells.size(); ++a)
    for (size_t b = a + 1; b < max_cells.size(); ++b) {
      int i = max_cells[a], j = max_cells[b];
      if (class_of[i] == class_of[j]) continue;  // same variables; nothing to glue
      for (int k = 0; k < sup.ncells(); ++k) {
        if (k == i || k == j || !sup.face_rel[k][i] || !sup.face_rel[k][j]) continue;
        const LatticePolytope& phi = sup.cells[k].poly;
        std::vector<IntVec> pts = lattice_points(phi);
        if (pts.size() < 2) continue;  // a point face: difference is trivially linear
        auto cell_of = [&](int sup_cell, const QVec& x) -> const LatticePolytope* {
          for (int ci : cand.maximal_cells()) {
            const LatticePolytope& tau = cand.cells[ci].poly;
            bool inside = true;
            for (const auto& v : tau.vertices)
              if (!contains(sup.cells[sup_cell].poly, v)) { inside = false; break; }
            if (inside && contains(tau, x)) return &cand.cells[ci].poly;
          }
          return nullptr;
        };
        auto diff_row = [&](const QVec& x) {
          const LatticePolytope* ti = cell_of(i, x);
          const LatticePolytope* tj = cell_of(j, x);
          if (!ti || !tj) throw std::logic_error("face point not covered by the candidate");
          QVec r1 = cell_row(i, *ti, x);
          QVec r2 = cell_row(j, *tj, x);
          return qvec_sub(r1, r2);
        };
        // affine basis of the face from its lattice points
        std::vector<QVec> fbasis;
        for (const auto& p : pts) {
          std::vector<QVec> trial = fbasis;
          trial.push_back(to_qvec(p));
          std::vector<QVec> ds;
          for (size_t z = 1; z < trial.size(); ++z) ds.push_back(qvec_sub(trial[z], trial[0]));
          if (ds.empty() || rank_q(qmat_from_rows(ds)) == static_cast<int>(ds.size())) fbasis = trial;
          if (static_cast<int>(fbasis.size()) == phi.dim + 1) break;
        }
        std::vector<QVec> basis_rows;
        for (const auto& fb : fbasis) basis_rows.push_back(diff_row(fb));
        for (const auto& p : pts) {
          QVec x = to_qvec(p);
          // barycentric with respect to fbasis
          int nb = static_cast<int>(fbasis.size());
          std::vector<QVec> rows;
          for (size_t r = 0; r < x.size(); ++r) {
            QVec row(nb);
            for (int z = 0; z < nb; ++z) row[z] = fbasis[z][r];
            rows.push_back(row);
          }
          rows.push_back(QVec(nb, Rat(1)));
          QVec rhs = x;
          rhs.push_back(Rat(1));
          auto mu = solve_q(qmat_from_rows(rows), rhs);
          if (!mu) continue;
          QVec row = diff_row(x);
          for (int z = 0; z < nb; ++z) row = qvec_sub(row, qvec_scale((*mu)[z], basis_rows[z]));
          bool zero = true;
          for (const auto& e : row)
            if (e != 0) zero = false;
          if (!zero) sys.add(row, Rat(0), Rel::EQ);
        }
      }
    }

  StrataLP out;
  SlackResult sr = fm_max_slack(sys);
  if (!sr.system_consistent || (sr.bounded && sr.max_slack <= 0)) return out;
  out.coherent = true;
  for (size_t v = 0; v < vars.size(); ++v)
    out.witness.cell_heights[sup.cells[reps[vars[v].first]].id][vars[v].second] = sr.witness[v];
  return out;
}

}  // namespace

StrataPoset enumerate_strata(const RootSystem& rs, const WComplex& support,
                             const std::vector<IntVec>& max_marks, long enum_cap) {
  auto rep = check_wcomplex(support);
  if (!rep.empty()) throw ValidationError(rep);
  if (!is_multiplicity_free(support)) throw ValidationError({"non-multiplicity-free support refused"});
  for (int m : support.maximal_cells())
    if (support.cells[m].poly.dim > 2) throw ValidationError({"strata enumeration capped at 2-dimensional supports"});
  MarkedType sup_type = check_marking(support, max_marks);

  // per-class cover enumeration
  std::vector<int> max_cells = support.maximal_cells();
  std::vector<std::vector<int>> classes;
  std::vector<int> reps;
  {
    std::set<int> seen;
    for (int m : max_cells) {
      if (seen.count(m)) continue;
      auto orb = support.orbit_of(m);
      for (int x : orb) seen.insert(x);
      classes.push_back(orb);
      reps.push_back(support.canonical_rep(orb));
    }
  }

  std::vector<std::vector<std::vector<LatticePolytope>>> class_covers(classes.size());
  for (size_t k = 0; k < classes.size(); ++k) {
    const LatticePolytope& big = support.cells[reps[k]].poly;
    std::vector<IntVec> local;
    for (const auto& m : max_marks)
      if (contains(big, to_qvec(m))) local.push_back(m);
    if (local.size() > 13) throw CapError("too many marks on one cell for strata enumeration");

    // candidate cells: full-dimensional hulls of mark subsets
    std::map<std::string, LatticePolytope> cand_map;
    int nl = static_cast<int>(local.size());
    for (long mask = 1; mask < (1L << nl); ++mask) {
      std::vector<QVec> pts;
      for (int i = 0; i < nl; ++i)
        if (mask & (1L << i)) pts.push_back(to_qvec(local[i]));
      LatticePolytope h = convex_hull(pts, big.ambient);
      if (h.dim == big.dim) cand_map.emplace(h.key(), h);
    }
    std::vector<LatticePolytope> cands;
    for (auto& [key, h] : cand_map) cands.push_back(h);
    std::sort(cands.begin(), cands.end());

    int nc = static_cast<int>(cands.size());
    std::vector<Rat> vols;
    for (const auto& h : cands) vols.push_back(normalized_volume(h));
    Rat total = normalized_volume(big);
    std::vector<std::vector<bool>> compat(nc, std::vector<bool>(nc, false));
    for (int a = 0; a < nc; ++a)
      for (int b = a + 1; b < nc; ++b) {
        LatticePolytope cap = intersect(cands[a], cands[b]);
        bool ok = cap.empty() ||
                  (cap.dim < cands[a].dim && is_face_of(cands[a], cap) && is_face_of(cands[b], cap));
        compat[a][b] = compat[b][a] = ok;
      }
    // the chosen cell set must be invariant under the stabilizer of the
    // representative, so search over whole stabilizer orbits of cells
    std::vector<int> stab = stabilizer_of_vertices(rs, big.vertices);
    std::map<std::string, int> cand_index;
    for (int i = 0; i < nc; ++i) cand_index[cands[i].key()] = i;
    std::vector<std::vector<int>> orbits;
    std::vector<Rat> orbit_vols;
    {
      std::vector<bool> seen(nc, false);
      for (int i = 0; i < nc; ++i) {
        if (seen[i]) continue;
        std::set<int> orb;
        for (int w : stab) {
          auto it = cand_index.find(transform(cands[i], rs.weyl_elements[w]).key());
          if (it == cand_index.end()) throw std::logic_error("stabilizer escapes the candidate set");
          orb.insert(it->second);
        }
        bool internal_ok = true;
        Rat vol = 0;
        for (int a : orb) {
          seen[a] = true;
          vol += vols[a];
          for (int b : orb)
            if (a < b && !compat[a][b]) internal_ok = false;
        }
        if (internal_ok) {
          orbits.push_back(std::vector<int>(orb.begin(), orb.end()));
          orbit_vols.push_back(vol);
        }
      }
    }
    int no = static_cast<int>(orbits.size());
    std::vector<std::vector<bool>> orbit_compat(no, std::vector<bool>(no, false));
    for (int a = 0; a < no; ++a)
      for (int b = a + 1; b < no; ++b) {
        bool ok = true;
        for (int x : orbits[a])
          for (int y : orbits[b])
            if (x == y || !compat[std::min(x, y)][std::max(x, y)]) { ok = false; break; }
        orbit_compat[a][b] = orbit_compat[b][a] = ok;
      }

    std::vector<int> chosen;
    long steps = 0;
    std::function<void(int, const Rat&)> cover = [&](int start, const Rat& vol) {
      if (++steps > enum_cap) throw CapError("strata enumeration cap exceeded");
      if (vol == total) {
        std::vector<LatticePolytope> cover_cells;
        for (int o : chosen)
          for (int i : orbits[o]) cover_cells.push_back(cands[i]);
        class_covers[k].push_back(cover_cells);
        return;
      }
      for (int o = start; o < no; ++o) {
        if (vol + orbit_vols[o] > total) continue;
        bool ok = true;
        for (int j : chosen)
          if (!orbit_compat[j][o]) { ok = false; break; }
        if (!ok) continue;
        chosen.push_back(o);
        cover(o + 1, vol + orbit_vols[o]);
        chosen.pop_back();
      }
    };
    cover(0, Rat(0));
  }

  // combine class covers into full candidate complexes
  StrataPoset out;
  std::vector<size_t> pick(classes.size(), 0);
  bool done = classes.empty();
  while (!done) {
    std::vector<LatticePolytope> all_cells;
    for (size_t k = 0; k < classes.size(); ++k)
      for (const auto& cell : class_covers[k][pick[k]])
        for (int w = 0; w < rs.weyl_order(); ++w) all_cells.push_back(transform(cell, rs.weyl_elements[w]));
    WComplex cand = embedded_complex(support.rs, all_cells, true);
    bool valid = check_wcomplex(cand).empty() && subdivides(cand, support);
    if (valid) {
      // markings: orbits of optional (non-vertex) marks
      std::set<IntVec> vertex_marks;
      for (const auto& cell : cand.cells)
        for (const auto& v : cell.poly.vertices) vertex_marks.insert(qvec_to_int(v));
      std::set<IntVec> optional;
      for (const auto& m : max_marks)
        if (!vertex_marks.count(m)) optional.insert(m);
      std::vector<std::vector<IntVec>> orbits;
      {
        std::set<IntVec> seen;
        for (const auto& m : optional) {
          if (seen.count(m)) continue;
          std::set<IntVec> orb;
          for (int w = 0; w < rs.weyl_order(); ++w) {
            IntVec im = rs.act_int(w, m);
            if (optional.count(im)) orb.insert(im);
          }
          for (const auto& x : orb) seen.insert(x);
          orbits.push_back(std::vector<IntVec>(orb.begin(), orb.end()));
        }
      }
      long norb = static_cast<long>(orbits.size());
      if (norb > 20) throw CapError("too many optional mark orbits");
      for (long mask = 0; mask < (1L << norb); ++mask) {
        std::vector<IntVec> marks(vertex_marks.begin(), vertex_marks.end());
        for (long o = 0; o < norb; ++o)
          if (mask & (1L << o)) marks.insert(marks.end(), orbits[o].begin(), orbits[o].end());
        std::sort(marks.begin(), marks.end());
        MarkedType mt;
        try {
          mt = check_marking(cand, marks);
        } catch (const ValidationError&) {
          continue;
        }
        StrataLP lp = strata_coherent(rs, sup_type, cand, marks);
        if (!lp.coherent) continue;
        StratumRecord rec;
        rec.type = mt;
        PairCohomology pc = pair_moduli_cohomology(mt);
        rec.dim_ci = pc.iso_chars.free_rank;
        rec.dim_general = stratum_dimension_general(rs, marks);
        rec.aut_order = pc.aut_chars.torsion_order();
        rec.witness_heights = lp.witness.cell_heights.empty() ? std::map<IntVec, Rat>{}
                                                              : lp.witness.cell_heights.begin()->second;
        out.records.push_back(rec);
      }
    }
    size_t k = 0;
    while (k < classes.size()) {
      if (++pick[k] < class_covers[k].size()) break;
      pick[k] = 0;
      ++k;
    }
    if (k == classes.size()) done = true;
  }

  // canonical record order, then the partial order
  std::sort(out.records.begin(), out.records.end(), [](const StratumRecord& x, const StratumRecord& y) {
    std::string kx, ky;
    for (const auto& cell : x.type.complex.cells) kx += cell.poly.key() + ";";
    for (const auto& cell : y.type.complex.cells) ky += cell.poly.key() + ";";
    if (kx != ky) return kx < ky;
    return x.type.marks < y.type.marks;
  });
  for (size_t i = 0; i < out.records.size(); ++i)
    for (size_t j = 0; j < out.records.size(); ++j) {
      if (i == j) continue;
      if (type_leq(out.records[i].type, out.records[j].type))
        out.leq_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return out;
}

}  // namespace redvar
