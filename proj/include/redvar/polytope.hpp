#pragma once

#include "redvar/lp.hpp"
#include "redvar/rootsys.hpp"

#include <optional>
#include <string>
#include <vector>

namespace redvar {

struct Ineq {
  IntVec a;  // primitive integer normal
  Rat b;     // a.x <= b  (or == for equations)
  bool operator==(const Ineq& o) const { return a == o.a && b == o.b; }
  bool operator<(const Ineq& o) const { return a != o.a ? a < o.a : b < o.b; }
};

// Exact rational polytope, possibly lower-dimensional.  Vertices are kept
// lex-sorted; facets are the proper facet inequalities and equations cut out
// the affine hull, so membership = equations + facets and relative interior
// = equations + strict facets.
struct LatticePolytope {
  std::vector<QVec> vertices;
  std::vector<Ineq> facets;
  std::vector<Ineq> equations;
  int ambient = 0;
  int dim = -1;  // -1: empty
  bool is_lattice = false;

  bool empty() const { return vertices.empty(); }
  bool operator==(const LatticePolytope& o) const { return vertices == o.vertices && ambient == o.ambient; }
  bool operator<(const LatticePolytope& o) const {
    if (dim != o.dim) return dim < o.dim;
    return vertices < o.vertices;
  }
  std::string key() const;  // canonical identity string (sorted vertex list)
};

struct DimCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustive facet search: every affinely independent subset spanning a
// candidate hyperplane is tested for one-sidedness.  Exact and simple;
// intended for small inputs (the library caps ambient dimension).
LatticePolytope convex_hull(const std::vector<QVec>& points, int dim_cap = 4);

bool contains(const LatticePolytope& p, const QVec& x);
bool relative_interior_contains(const LatticePolytope& p, const QVec& x);

// Set-theoretic intersection; empty polytope when disjoint.
LatticePolytope intersect(const LatticePolytope& p, const LatticePolytope& q);

// Nonempty iff the relative interiors meet (decided by strict LP).
bool relint_intersects(const LatticePolytope& p, const LatticePolytope& q);

std::vector<IntVec> lattice_points(const LatticePolytope& p);

LatticePolytope chamber_intersection(const RootSystem& rs, const LatticePolytope& p);

// Image under an integer matrix (re-hulled from mapped vertices).
LatticePolytope transform(const LatticePolytope& p, const IntMat& m);

LatticePolytope dilate(const LatticePolytope& p, const Int& n);

// All faces including p itself, excluding the empty face; canonical order.
std::vector<LatticePolytope> all_faces(const LatticePolytope& p);

// The proper facet polytopes.
std::vector<LatticePolytope> facet_polytopes(const LatticePolytope& p);

bool is_face_of(const LatticePolytope& p, const LatticePolytope& f);

// Volume normalized so a lattice unimodular simplex has volume 1; points
// have volume 1 by convention.
Rat normalized_volume(const LatticePolytope& p);

QVec centroid(const LatticePolytope& p);

// Piecewise affine function given by cells; value = coeffs.x + constant.
struct PLCell {
  LatticePolytope poly;
  QVec coeffs;
  Rat constant;
  Rat value_at(const QVec& x) const { return dot_q(coeffs, x) + constant; }
};

struct PLFunction {
  LatticePolytope domain;
  std::vector<PLCell> cells;
  // Value at a point of the domain (throws outside).
  Rat value_at(const QVec& x) const;
};

struct LowerEnvelope {
  std::vector<LatticePolytope> cells;  // projections of the lower facets
  std::vector<QVec> attained;          // input points on the envelope (sorted)
  PLFunction h;
};

// Lower convex envelope of lifted points (point, height).  Duplicate points
// with different heights are rejected; the all-coplanar case yields the
// trivial subdivision with every point attained.
LowerEnvelope lower_envelope(const std::vector<std::pair<QVec, Rat>>& lifted, int dim_cap = 4);

}  // namespace redvar
