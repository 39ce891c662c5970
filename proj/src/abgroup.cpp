#include "redvar/abgroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace redvar {

namespace {

void swap_rows(IntMat& m, int i, int j) {
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void swap_cols(IntMat& m, int i, int j) {
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

// row[i] += f * row[j]
void add_row(IntMat& m, int i, int j, const Int& f) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) += f * m.at(j, c);
}

void add_col(IntMat& m, int i, int j, const Int& f) {
  for (int r = 0; r < m.rows; ++r) m.at(r, i) += f * m.at(r, j);
}

void negate_row(IntMat& m, int i) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}

}  // namespace

SNF smith_normal_form(const IntMat& m) {
  SNF s;
  s.d = m;
  s.u = IntMat::identity(m.rows);
  s.v = IntMat::identity(m.cols);
  IntMat& d = s.d;
  int t = 0;
  int lim = std::min(m.rows, m.cols);
  while (t < lim) {
    // smallest-absolute-value pivot in the trailing block, ties by position
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < d.rows; ++i)
      for (int j = t; j < d.cols; ++j) {
        if (d.at(i, j) == 0) continue;
        Int v = abs(d.at(i, j));
        if (pi < 0 || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero
    if (pi != t) { swap_rows(d, t, pi); swap_rows(s.u, t, pi); }
    if (pj != t) { swap_cols(d, t, pj); swap_cols(s.v, t, pj); }

    bool clean = true;
    for (int i = t + 1; i < d.rows; ++i) {
      if (d.at(i, t) == 0) continue;
      Int q = d.at(i, t) / d.at(t, t);
      add_row(d, i, t, -q);
      add_row(s.u, i, t, -q);
      if (d.at(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < d.cols; ++j) {
      if (d.at(t, j) == 0) continue;
      Int q = d.at(t, j) / d.at(t, t);
      add_col(d, j, t, -q);
      add_col(s.v, j, t, -q);
      if (d.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared; repick pivot

    // pivot must divide the rest of the block for the divisibility chain
    bool divides = true;
    for (int i = t + 1; i < d.rows && divides; ++i)
      for (int j = t + 1; j < d.cols; ++j)
        if (d.at(i, j) % d.at(t, t) != 0) {
          add_row(d, t, i, Int(1));
          add_row(s.u, t, i, Int(1));
          divides = false;
          break;
        }
    if (!divides) continue;

    if (d.at(t, t) < 0) { negate_row(d, t); negate_row(s.u, t); }
    ++t;
  }
  s.rank = t;
  return s;
}

std::vector<IntVec> integer_kernel(const IntMat& m) {
  SNF s = smith_normal_form(m);
  std::vector<IntVec> basis;
  for (int j = s.rank; j < m.cols; ++j) basis.push_back(s.v.col(j));
  return basis;
}

bool lattice_contains(const IntMat& m, const IntVec& x, IntVec* sol) {
  if (m.rows != static_cast<int>(x.size())) throw std::invalid_argument("lattice_contains: shape");
  SNF s = smith_normal_form(m);
  IntVec ux = mat_apply(s.u, x);
  IntVec z(m.cols, Int(0));
  for (int i = 0; i < m.rows; ++i) {
    if (i < s.rank) {
      if (ux[i] % s.d.at(i, i) != 0) return false;
      z[i] = ux[i] / s.d.at(i, i);
    } else if (ux[i] != 0) {
      return false;
    }
  }
  if (sol) *sol = mat_apply(s.v, z);
  return true;
}

std::vector<IntVec> lattice_of_subspace(const std::vector<QVec>& span_vectors, int n) {
  // forms vanishing on the span; their integer kernel is the saturated lattice
  QMat rows = qmat_from_rows(std::vector<QVec>(span_vectors.begin(), span_vectors.end()));
  if (rows.rows == 0) return {};
  std::vector<IntVec> forms = nullspace_int(rows);
  if (forms.empty()) {
    std::vector<IntVec> basis;
    for (int i = 0; i < n; ++i) {
      IntVec e(n, Int(0));
      e[i] = 1;
      basis.push_back(e);
    }
    return basis;
  }
  IntMat c = imat_from_rows(forms);
  return integer_kernel(c);
}

std::vector<IntVec> lattice_intersect_subspace(const std::vector<IntVec>& gens,
                                               const std::vector<QVec>& span_vectors) {
  if (gens.empty()) return {};
  int n = static_cast<int>(gens[0].size());
  QMat rows = qmat_from_rows(span_vectors);
  std::vector<IntVec> forms = rows.rows == 0 ? std::vector<IntVec>{} : nullspace_int(rows);
  if (span_vectors.empty()) {
    // span is zero: forms = all of (Z^n)^*, intersection is 0
    forms.clear();
    for (int i = 0; i < n; ++i) {
      IntVec e(n, Int(0));
      e[i] = 1;
      forms.push_back(e);
    }
  }
  if (forms.empty()) return gens;  // span is everything
  IntMat a = imat_from_columns(gens);
  IntMat c = imat_from_rows(forms);
  IntMat ca = mat_mul(c, a);
  std::vector<IntVec> ys = integer_kernel(ca);
  std::vector<IntVec> out;
  for (const auto& y : ys) out.push_back(mat_apply(a, y));
  return out;
}

std::string FGAbelianGroup::to_string() const {
  std::string s;
  if (free_rank > 0) s += "Z^" + std::to_string(free_rank);
  for (const auto& d : invariant_factors) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.str();
  }
  if (s.empty()) s = "0";
  return s;
}

FGAbelianGroup group_from_presentation(int ngens, const IntMat& relations) {
  FGAbelianGroup g;
  g.ngens = ngens;
  g.relations = relations.rows == 0 && relations.cols == 0 ? IntMat(ngens, 0) : relations;
  if (g.relations.rows != ngens) throw std::invalid_argument("presentation: relation shape");
  SNF s = smith_normal_form(g.relations);
  g.free_rank = ngens - s.rank;
  for (int i = 0; i < s.rank; ++i)
    if (s.d.at(i, i) >= 2) g.invariant_factors.push_back(s.d.at(i, i));
  return g;
}

FGAbelianGroup free_group(int rank) { return group_from_presentation(rank, IntMat(rank, 0)); }

void check_hom(const GroupHom& f) {
  if (f.matrix.rows != f.target.ngens || f.matrix.cols != f.source.ngens)
    throw std::invalid_argument("hom: matrix shape");
  for (int j = 0; j < f.source.relations.cols; ++j) {
    IntVec img = mat_apply(f.matrix, f.source.relations.col(j));
    if (!lattice_contains(f.target.relations, img))
      throw std::invalid_argument("hom: relations not respected");
  }
}

namespace {

// Lattice {g : M g lies in the column lattice of R}, as generator columns.
std::vector<IntVec> preimage_lattice(const IntMat& m, const IntMat& r) {
  // kernel of [M | R] projected to the first block, plus nothing else:
  // (g, h) with M g + R h = 0  =>  g with M g in im(R) (h ranges freely).
  IntMat w(m.rows, m.cols + r.cols);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) w.at(i, j) = m.at(i, j);
    for (int j = 0; j < r.cols; ++j) w.at(i, m.cols + j) = r.at(i, j);
  }
  std::vector<IntVec> full = integer_kernel(w);
  std::vector<IntVec> out;
  for (const auto& v : full) out.push_back(IntVec(v.begin(), v.begin() + m.cols));
  return out;
}

// Present the subgroup of Z^n/im(RA) generated by the columns G, i.e.
// (lattice G + im RA)/im RA, on the generators G.
FGAbelianGroup present_on_generators(const IntMat& g, const IntMat& ra) {
  IntMat w(g.rows, g.cols + ra.cols);
  for (int i = 0; i < g.rows; ++i) {
    for (int j = 0; j < g.cols; ++j) w.at(i, j) = g.at(i, j);
    for (int j = 0; j < ra.cols; ++j) w.at(i, g.cols + j) = ra.at(i, j);
  }
  std::vector<IntVec> rels_full = integer_kernel(w);
  std::vector<IntVec> rels;
  for (const auto& v : rels_full) rels.push_back(IntVec(v.begin(), v.begin() + g.cols));
  IntMat rel = rels.empty() ? IntMat(g.cols, 0) : imat_from_columns(rels);
  return group_from_presentation(g.cols, rel);
}

}  // namespace

SubgroupResult kernel(const GroupHom& f) {
  check_hom(f);
  std::vector<IntVec> gens = preimage_lattice(f.matrix, f.target.relations);
  SubgroupResult res;
  res.embedding = gens.empty() ? IntMat(f.source.ngens, 0) : imat_from_columns(gens);
  res.group = present_on_generators(res.embedding, f.source.relations);
  return res;
}

QuotientResult cokernel(const GroupHom& f) {
  check_hom(f);
  IntMat rel(f.target.ngens, f.matrix.cols + f.target.relations.cols);
  for (int i = 0; i < f.target.ngens; ++i) {
    for (int j = 0; j < f.matrix.cols; ++j) rel.at(i, j) = f.matrix.at(i, j);
    for (int j = 0; j < f.target.relations.cols; ++j)
      rel.at(i, f.matrix.cols + j) = f.target.relations.at(i, j);
  }
  QuotientResult res;
  res.group = group_from_presentation(f.target.ngens, rel);
  return res;
}

void check_complex(const IntComplex& k) {
  if (k.diffs.size() + 1 != k.terms.size()) throw std::invalid_argument("complex: size mismatch");
  for (size_t i = 0; i < k.diffs.size(); ++i) {
    GroupHom f{k.terms[i], k.terms[i + 1], k.diffs[i]};
    check_hom(f);
    if (i + 1 < k.diffs.size()) {
      IntMat comp = mat_mul(k.diffs[i + 1], k.diffs[i]);
      for (int j = 0; j < comp.cols; ++j)
        if (!lattice_contains(k.terms[i + 2].relations, comp.col(j)))
          throw std::invalid_argument("complex: d^2 != 0 at position " + std::to_string(i));
    }
  }
}

FGAbelianGroup homology(const IntComplex& k, int pos) {
  check_complex(k);
  if (pos < 0 || pos >= static_cast<int>(k.terms.size())) throw std::invalid_argument("homology: position");
  const FGAbelianGroup& term = k.terms[pos];
  // cycles
  std::vector<IntVec> cyc;
  if (pos + 1 < static_cast<int>(k.terms.size())) {
    cyc = preimage_lattice(k.diffs[pos], k.terms[pos + 1].relations);
  } else {
    for (int i = 0; i < term.ngens; ++i) {
      IntVec e(term.ngens, Int(0));
      e[i] = 1;
      cyc.push_back(e);
    }
  }
  IntMat g = cyc.empty() ? IntMat(term.ngens, 0) : imat_from_columns(cyc);
  // boundaries + relations of the term
  IntMat prev = pos > 0 ? k.diffs[pos - 1] : IntMat(term.ngens, 0);
  IntMat denom(term.ngens, prev.cols + term.relations.cols);
  for (int i = 0; i < term.ngens; ++i) {
    for (int j = 0; j < prev.cols; ++j) denom.at(i, j) = prev.at(i, j);
    for (int j = 0; j < term.relations.cols; ++j) denom.at(i, prev.cols + j) = term.relations.at(i, j);
  }
  return present_on_generators(g, denom);
}

IntMat free_quotient_projection(const FGAbelianGroup& g) {
  SNF s = smith_normal_form(g.relations);
  IntMat proj(static_cast<int>(g.free_rank), g.ngens);
  for (int i = 0; i < proj.rows; ++i)
    for (int j = 0; j < g.ngens; ++j) proj.at(i, j) = s.u.at(s.rank + i, j);
  return proj;
}

}  // namespace redvar
