#include "redvar/reps.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace redvar {

namespace {

void require_dominant_lattice(const RootSystem& rs, const IntVec& lambda) {
  if (static_cast<int>(lambda.size()) != rs.rank) throw ValidationError({"weight dimension mismatch"});
  for (const auto& c : lambda)
    if (c < 0) throw ValidationError({"weight is not dominant"});
}

Int orbit_size(const RootSystem& rs, const IntVec& v) {
  std::set<IntVec> orbit;
  for (int w = 0; w < rs.weyl_order(); ++w) orbit.insert(rs.act_int(w, v));
  return Int(static_cast<long>(orbit.size()));
}

// mu in conv(W lambda) with lambda - mu in the root lattice, both dominant:
// the root coordinates of lambda - mu are nonnegative integers-free rationals.
bool dominates(const RootSystem& rs, const IntVec& lambda, const IntVec& mu) {
  QVec diff(rs.rank);
  for (int i = 0; i < rs.rank; ++i) diff[i] = Rat(lambda[i] - mu[i]);
  QVec rc = rs.root_coordinates(diff);
  for (const auto& c : rc)
    if (c < 0) return false;
  return true;
}

}  // namespace

std::map<IntVec, Int> Character::expand(const RootSystem& rs) const {
  std::map<IntVec, Int> out;
  for (const auto& [mu, m] : dominant_multiplicities)
    for (int w = 0; w < rs.weyl_order(); ++w) out[rs.act_int(w, mu)] = m;
  return out;
}

Int Character::total_multiplicity(const RootSystem& rs) const {
  Int t = 0;
  for (const auto& [mu, m] : dominant_multiplicities) t += m * orbit_size(rs, mu);
  return t;
}

Int weyl_dim(const RootSystem& rs, const IntVec& lambda) {
  require_dominant_lattice(rs, lambda);
  Int num = 1, den = 1;
  for (const auto& coroot : rs.positive_coroots) {
    Int a = 0, b = 0;
    for (int i = 0; i < rs.rank; ++i) {
      a += coroot[i] * (lambda[i] + 1);
      b += coroot[i];
    }
    num *= a;
    den *= b;
  }
  if (num % den != 0) throw std::logic_error("Weyl dimension not integral");
  return num / den;
}

Character character(const RootSystem& rs, const IntVec& lambda) {
  require_dominant_lattice(rs, lambda);

  // dominant weights below lambda
  std::vector<IntVec> layer;
  {
    std::set<IntVec> seen;
    std::queue<IntVec> todo;
    todo.push(lambda);
    seen.insert(lambda);
    while (!todo.empty()) {
      IntVec mu = todo.front();
      todo.pop();
      for (const auto& alpha : rs.simple_roots) {
        IntVec nu(rs.rank);
        for (int i = 0; i < rs.rank; ++i) nu[i] = mu[i] - alpha[i];
        if (seen.count(nu)) continue;
        // keep only weights under lambda in the dominance order (their
        // dominant representative is, equivalently, in conv(W lambda))
        IntVec rep = qvec_to_int(dominant_representative(rs, to_qvec(nu)).dominant);
        if (!dominates(rs, lambda, rep)) continue;
        seen.insert(nu);
        todo.push(nu);
      }
    }
    for (const auto& mu : seen) {
      bool dom = true;
      for (const auto& c : mu)
        if (c < 0) { dom = false; break; }
      if (dom && dominates(rs, lambda, mu)) layer.push_back(mu);
    }
  }
  // sort by decreasing height of lambda - mu
  QVec lam_q = to_qvec(lambda);
  auto height = [&](const IntVec& mu) {
    QVec diff(rs.rank);
    for (int i = 0; i < rs.rank; ++i) diff[i] = Rat(lambda[i] - mu[i]);
    QVec rc = rs.root_coordinates(diff);
    Rat h = 0;
    for (const auto& c : rc) h += c;
    return h;
  };
  std::sort(layer.begin(), layer.end(), [&](const IntVec& a, const IntVec& b) {
    Rat ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });

  Character ch;
  ch.dominant_multiplicities[lambda] = 1;
  QVec rho(rs.rank, Rat(1));
  Rat lam_norm = rs.weight_form(qvec_add(lam_q, rho), qvec_add(lam_q, rho));

  auto mult_of = [&](const IntVec& nu) -> Int {
    IntVec rep = qvec_to_int(dominant_representative(rs, to_qvec(nu)).dominant);
    auto it = ch.dominant_multiplicities.find(rep);
    return it == ch.dominant_multiplicities.end() ? Int(0) : it->second;
  };

  for (const auto& mu : layer) {
    if (mu == lambda) continue;
    QVec mu_q = to_qvec(mu);
    Rat mu_norm = rs.weight_form(qvec_add(mu_q, rho), qvec_add(mu_q, rho));
    Rat denom = lam_norm - mu_norm;
    Rat acc = 0;
    for (const auto& alpha : rs.positive_roots) {
      QVec alpha_q = to_qvec(alpha);
      for (Int k = 1;; ++k) {
        IntVec nu(rs.rank);
        for (int i = 0; i < rs.rank; ++i) nu[i] = mu[i] + k * alpha[i];
        IntVec rep = qvec_to_int(dominant_representative(rs, to_qvec(nu)).dominant);
        if (!dominates(rs, lambda, rep)) break;
        Int m = mult_of(nu);
        if (m != 0) acc += Rat(m) * rs.weight_form(to_qvec(nu), alpha_q);
      }
    }
    Rat mult = Rat(2) * acc / denom;
    if (!is_integer(mult)) throw std::logic_error("Freudenthal multiplicity not integral");
    if (rat_num(mult) != 0) ch.dominant_multiplicities[mu] = rat_num(mult);
  }
  return ch;
}

std::map<IntVec, Int> tensor_decompose(const RootSystem& rs, const IntVec& lambda, const IntVec& mu) {
  require_dominant_lattice(rs, lambda);
  require_dominant_lattice(rs, mu);
  std::map<IntVec, Int> prod;
  {
    auto a = character(rs, lambda).expand(rs);
    auto b = character(rs, mu).expand(rs);
    for (const auto& [x, mx] : a)
      for (const auto& [y, my] : b) {
        IntVec z(rs.rank);
        for (int i = 0; i < rs.rank; ++i) z[i] = x[i] + y[i];
        prod[z] += mx * my;
      }
  }
  // iterated extraction of the dominant leading term
  std::map<IntVec, Int> out;
  auto height = [&](const IntVec& v) {
    QVec rc = rs.root_coordinates(to_qvec(v));
    Rat h = 0;
    for (const auto& c : rc) h += c;
    return h;
  };
  while (true) {
    // pick a dominant weight of maximal height (ties: lexicographically last)
    const IntVec* best = nullptr;
    Rat best_h;
    for (const auto& [v, m] : prod) {
      if (m == 0) continue;
      bool dom = true;
      for (const auto& c : v)
        if (c < 0) { dom = false; break; }
      if (!dom) continue;
      Rat h = height(v);
      if (!best || h > best_h || (h == best_h && v > *best)) {
        best = &v;
        best_h = h;
      }
    }
    if (!best) break;
    IntVec hw = *best;
    Int m = prod[hw];
    if (m < 0) throw std::logic_error("tensor extraction went negative");
    out[hw] += m;
    for (const auto& [v, mv] : character(rs, hw).expand(rs)) {
      IntVec key = v;
      prod[key] -= m * mv;
    }
    // drop zeros
    for (auto it = prod.begin(); it != prod.end();) {
      if (it->second == 0)
        it = prod.erase(it);
      else
        ++it;
    }
  }
  for (const auto& [v, m] : prod)
    if (m != 0) throw std::logic_error("tensor extraction left residue");
  return out;
}

bool tensor_power_contains(const RootSystem& rs, const IntVec& lambda, const Int& n, const IntVec& target) {
  require_dominant_lattice(rs, lambda);
  require_dominant_lattice(rs, target);
  // iterate V_lambda (x) current, keeping the decomposition
  std::map<IntVec, Int> current;
  IntVec zero(rs.rank, Int(0));
  current[zero] = 1;
  std::map<IntVec, std::map<IntVec, Int>> cache;
  for (Int step = 0; step < n; ++step) {
    std::map<IntVec, Int> next;
    for (const auto& [hw, m] : current) {
      auto it = cache.find(hw);
      if (it == cache.end()) it = cache.emplace(hw, tensor_decompose(rs, lambda, hw)).first;
      for (const auto& [nu, mn] : it->second) next[nu] += m * mn;
    }
    current = std::move(next);
  }
  auto it = current.find(target);
  return it != current.end() && it->second > 0;
}

TensorPowerReport verify_tensor_power_lemma(const RootSystem& rs, const IntVec& lambda,
                                            const LatticePolytope& face, const Int& n_max) {
  require_dominant_lattice(rs, lambda);
  if (!contains(face, to_qvec(lambda))) throw ValidationError({"lambda does not lie on the face"});
  TensorPowerReport rep;
  rep.mu = centroid(face);

  auto works = [&](const Int& n0) -> bool {
    bool any = false;
    std::vector<Int> tested, skipped;
    for (Int n = n0; n <= n_max; n += n0) {
      QVec target = qvec_scale(Rat(n), rep.mu);
      if (!qvec_is_integral(target)) {
        skipped.push_back(n);
        continue;
      }
      any = true;
      if (!tensor_power_contains(rs, lambda, n, qvec_to_int(target))) return false;
      tested.push_back(n);
    }
    if (!any) return false;
    rep.tested = tested;
    rep.skipped = skipped;
    return true;
  };

  for (Int n0 = 1; n0 <= n_max; ++n0) {
    if (works(n0)) {
      rep.found = true;
      rep.n0 = n0;
      return rep;
    }
  }
  return rep;
}

Int hilbert_function(const RootSystem& rs, const WComplex& complex, const Int& n, const Int& cap) {
  if (n < 0) throw ValidationError({"negative dilation"});
  if (n > cap) throw CapError("dilation exceeds cap");
  if (!is_multiplicity_free(complex)) throw ValidationError({"support is not multiplicity-free"});
  if (n == 0) return 1;
  std::set<IntVec> pts;
  for (int i : complex.maximal_cells())
    for (const auto& p : lattice_points(dilate(complex.cells[i].poly, n))) {
      bool dom = true;
      for (const auto& c : p)
        if (c < 0) { dom = false; break; }
      if (dom) pts.insert(p);
    }
  Int total = 0;
  for (const auto& p : pts) {
    Int d = weyl_dim(rs, p);
    total += d * d;
  }
  return total;
}

std::vector<CentroidFace> centroid_face_vertices(const RootSystem& rs, const IntVec& lambda) {
  require_dominant_lattice(rs, lambda);
  std::set<QVec> orbit;
  for (int w = 0; w < rs.weyl_order(); ++w) orbit.insert(to_qvec(rs.act_int(w, lambda)));
  LatticePolytope hull = convex_hull(std::vector<QVec>(orbit.begin(), orbit.end()));
  LatticePolytope q = chamber_intersection(rs, hull);

  std::vector<CentroidFace> out;
  QVec lam_q = to_qvec(lambda);
  for (const auto& v : q.vertices) {
    bool matched = false;
    for (const auto& f : all_faces(hull)) {
      if (!contains(f, lam_q)) continue;
      if (centroid(f) == v) {
        out.push_back({f, v});
        matched = true;
        break;
      }
    }
    if (!matched) throw std::logic_error("vertex of the dominant part is not a face centroid");
  }
  return out;
}

}  // namespace redvar
