#include "redvar/rootsys.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace redvar {

namespace {

IntMat cartan_matrix(const std::string& series, int rank) {
  auto chain = [&](IntMat& c) {
    for (int i = 0; i + 1 < rank; ++i) {
      c.at(i, i + 1) = -1;
      c.at(i + 1, i) = -1;
    }
  };
  IntMat c(rank, rank);
  for (int i = 0; i < rank; ++i) c.at(i, i) = 2;
  if (series == "A") {
    if (rank < 1) throw std::invalid_argument("A requires rank >= 1");
    chain(c);
  } else if (series == "B") {
    if (rank < 2) throw std::invalid_argument("B requires rank >= 2");
    chain(c);
    c.at(rank - 2, rank - 1) = -2;  // alpha_{n-1} long, alpha_n short
  } else if (series == "C") {
    if (rank < 2) throw std::invalid_argument("C requires rank >= 2");
    chain(c);
    c.at(rank - 1, rank - 2) = -2;
  } else if (series == "D") {
    if (rank < 3) throw std::invalid_argument("D requires rank >= 3");
    for (int i = 0; i + 1 < rank - 1; ++i) {
      c.at(i, i + 1) = -1;
      c.at(i + 1, i) = -1;
    }
    c.at(rank - 3, rank - 1) = -1;
    c.at(rank - 1, rank - 3) = -1;
  } else if (series == "G") {
    if (rank != 2) throw std::invalid_argument("G requires rank == 2");
    c.at(0, 1) = -1;
    c.at(1, 0) = -3;
  } else {
    throw std::invalid_argument("unsupported series '" + series + "'");
  }
  return c;
}

IntVec symmetrizer_of(const IntMat& c) {
  // d_j * C_ij = d_i * C_ji; solve over the Dynkin graph
  int n = c.rows;
  std::vector<Rat> d(n, Rat(0));
  d[0] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j || c.at(i, j) == 0) continue;
        if (d[i] != 0 && d[j] == 0) {
          // d_j = d_i * C_ji / C_ij
          d[j] = d[i] * Rat(c.at(j, i)) / Rat(c.at(i, j));
          changed = true;
        }
      }
  }
  for (int i = 0; i < n; ++i)
    if (d[i] == 0) d[i] = 1;  // disconnected component normalization
  Int l = 1;
  for (auto& q : d) l = lcm_int(l, rat_den(q));
  IntVec out(n);
  for (int i = 0; i < n; ++i) out[i] = rat_num(d[i] * Rat(l));
  // normalize so the minimum is as small as possible
  Int g = 0;
  for (auto& x : out) g = gcd_int(g, x);
  for (auto& x : out) x /= g;
  return out;
}

// Matrix of the simple reflection s_i acting on fw coordinates:
// (s_i x)_j = x_j - x_i * C_ij.
IntMat reflection_matrix(const IntMat& cartan, int i) {
  int n = cartan.rows;
  IntMat m = IntMat::identity(n);
  for (int j = 0; j < n; ++j) m.at(j, i) -= cartan.at(i, j);
  return m;
}

bool mat_less(const IntMat& a, const IntMat& b) { return a.a < b.a; }

}  // namespace

const IntMat& RootSystem::identity_element() const { return weyl_elements[identity_idx_]; }

WeightVector RootSystem::act(int w, const WeightVector& v) const {
  return mat_apply_q(weyl_elements[w], v);
}

IntVec RootSystem::act_int(int w, const IntVec& v) const { return mat_apply(weyl_elements[w], v); }

int RootSystem::compose(int w2, int w1) const {
  IntMat m = mat_mul(weyl_elements[w2], weyl_elements[w1]);
  int idx = element_index(m);
  if (idx < 0) throw std::logic_error("Weyl composition escaped the element list");
  return idx;
}

int RootSystem::inverse(int w) const { return inverse_idx_[w]; }

int RootSystem::element_index(const IntMat& m) const {
  auto it = std::lower_bound(weyl_elements.begin(), weyl_elements.end(), m,
                             [](const IntMat& a, const IntMat& b) { return mat_less(a, b); });
  if (it != weyl_elements.end() && *it == m) return static_cast<int>(it - weyl_elements.begin());
  return -1;
}

Rat RootSystem::weight_form(const WeightVector& a, const WeightVector& b) const {
  QVec ma = root_coordinates(a), mb = root_coordinates(b);
  Rat s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      s += ma[i] * mb[j] * Rat(symmetrizer[j] * cartan.at(i, j));
  return s;
}

QVec RootSystem::root_coordinates(const WeightVector& v) const {
  auto sol = solve_q(root_coord_solver_, v);
  if (!sol) throw std::logic_error("Cartan matrix singular");
  return *sol;
}

RootSystem build_root_system(const std::string& series, int rank, int weyl_cap) {
  RootSystem rs;
  rs.series = series;
  rs.rank = rank;
  rs.cartan = cartan_matrix(series, rank);
  rs.symmetrizer = symmetrizer_of(rs.cartan);
  for (int i = 0; i < rank; ++i) rs.simple_roots.push_back(rs.cartan.row(i));
  for (int i = 0; i < rank; ++i) {
    IntVec e(rank, Int(0));
    e[i] = 1;
    rs.fundamental_weights.push_back(e);
  }

  // close the simple reflections into the full Weyl group
  std::vector<IntMat> gens;
  for (int i = 0; i < rank; ++i) gens.push_back(reflection_matrix(rs.cartan, i));
  std::set<IntVec> seen;
  std::vector<IntMat> elems;
  std::vector<IntMat> frontier{IntMat::identity(rank)};
  seen.insert(frontier[0].a);
  elems.push_back(frontier[0]);
  while (!frontier.empty()) {
    std::vector<IntMat> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        IntMat m = mat_mul(g, w);
        if (seen.insert(m.a).second) {
          elems.push_back(m);
          next.push_back(m);
          if (static_cast<int>(elems.size()) > weyl_cap)
            throw CapError("Weyl order exceeds cap " + std::to_string(weyl_cap));
        }
      }
    frontier = std::move(next);
  }
  std::sort(elems.begin(), elems.end(), mat_less);
  rs.weyl_elements = std::move(elems);
  rs.identity_idx_ = rs.element_index(IntMat::identity(rank));
  for (int i = 0; i < rank; ++i) rs.simple_reflection_idx_.push_back(rs.element_index(gens[i]));

  rs.inverse_idx_.resize(rs.weyl_elements.size());
  for (size_t i = 0; i < rs.weyl_elements.size(); ++i) {
    // unimodular, so the rational inverse is integral
    const IntMat& w = rs.weyl_elements[i];
    QMat wq(rank, rank);
    for (int r = 0; r < rank; ++r)
      for (int c = 0; c < rank; ++c) wq.at(r, c) = Rat(w.at(r, c));
    IntMat inv(rank, rank);
    for (int c = 0; c < rank; ++c) {
      QVec e(rank, Rat(0));
      e[c] = 1;
      auto sol = solve_q(wq, e);
      if (!sol) throw std::logic_error("Weyl element not invertible");
      for (int r = 0; r < rank; ++r) inv.at(r, c) = rat_num((*sol)[r]);
    }
    int idx = rs.element_index(inv);
    if (idx < 0) throw std::logic_error("Weyl inverse escaped the element list");
    rs.inverse_idx_[i] = idx;
  }

  {
    QMat ct(rank, rank);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) ct.at(i, j) = Rat(rs.cartan.at(j, i));
    rs.root_coord_solver_ = ct;
  }

  // roots = W-orbit of the simple roots; positive = nonnegative root coords
  std::set<IntVec> roots;
  for (const auto& a : rs.simple_roots)
    for (const auto& w : rs.weyl_elements) roots.insert(mat_apply(w, a));
  for (const auto& r : roots) {
    QVec rc = rs.root_coordinates(to_qvec(r));
    bool pos = true;
    for (const auto& c : rc)
      if (c < 0) { pos = false; break; }
    if (!pos) continue;
    rs.positive_roots.push_back(r);
    // coroot coefficients: n_i = 2 m_i d_i / (beta, beta)
    Rat norm = rs.weight_form(to_qvec(r), to_qvec(r));
    IntVec n(rank);
    for (int i = 0; i < rank; ++i) {
      Rat ni = Rat(2) * rc[i] * Rat(rs.symmetrizer[i]) / norm;
      if (!is_integer(ni)) throw std::logic_error("non-integral coroot");
      n[i] = rat_num(ni);
    }
    rs.positive_coroots.push_back(n);
  }
  return rs;
}

bool is_dominant(const RootSystem& rs, const WeightVector& v) {
  if (static_cast<int>(v.size()) != rs.rank) throw std::invalid_argument("dominance: dimension mismatch");
  for (const auto& c : v)
    if (c < 0) return false;
  return true;
}

DominantRep dominant_representative(const RootSystem& rs, const WeightVector& v) {
  if (static_cast<int>(v.size()) != rs.rank) throw std::invalid_argument("dominant_representative: dimension mismatch");
  if (is_dominant(rs, v)) return {rs.identity_index(), v};
  for (int w = 0; w < rs.weyl_order(); ++w) {
    WeightVector img = rs.act(w, v);
    if (is_dominant(rs, img)) return {w, img};
  }
  throw std::logic_error("no dominant representative found");
}

std::vector<int> stabilizer_of_vertices(const RootSystem& rs, const std::vector<WeightVector>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("stabilizer: empty vertex set");
  std::set<QVec> vs(vertices.begin(), vertices.end());
  std::vector<int> out;
  for (int w = 0; w < rs.weyl_order(); ++w) {
    bool ok = true;
    for (const auto& v : vs)
      if (!vs.count(rs.act(w, v))) { ok = false; break; }
    if (ok) out.push_back(w);
  }
  return out;
}

}  // namespace redvar
