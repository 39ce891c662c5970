#pragma once

#include "redvar/admissible.hpp"

#include <map>
#include <vector>

namespace redvar {

// Weight multiplicities of a W-invariant character, stored on dominant
// representatives.
struct Character {
  std::map<IntVec, Int> dominant_multiplicities;

  // Full multiset over the whole orbit.
  std::map<IntVec, Int> expand(const RootSystem& rs) const;
  Int total_multiplicity(const RootSystem& rs) const;
};

// Weyl dimension formula, exact.
Int weyl_dim(const RootSystem& rs, const IntVec& lambda);

// Freudenthal's recursion.
Character character(const RootSystem& rs, const IntVec& lambda);

// V_lambda (x) V_mu as a multiset of dominant highest weights, by character
// multiplication and iterated leading-term extraction.
std::map<IntVec, Int> tensor_decompose(const RootSystem& rs, const IntVec& lambda, const IntVec& mu);

struct TensorPowerReport {
  QVec mu;                  // centroid of the face
  bool found = false;
  Int n0 = 0;               // least N0 <= n_max that works on all tested multiples
  std::vector<Int> tested;  // the multiples checked for the returned n0
  std::vector<Int> skipped; // multiples skipped because N*mu is not integral
};

// Smallest N0 such that V_{N mu} appears in V_lambda^{(x)N} for every
// multiple N of N0 up to n_max (only multiples with N*mu integral are
// testable); also usable to confirm a prescribed candidate bound.
TensorPowerReport verify_tensor_power_lemma(const RootSystem& rs, const IntVec& lambda,
                                            const LatticePolytope& face, const Int& n_max);

// Does V_{target} appear in V_lambda^{(x) n}?
bool tensor_power_contains(const RootSystem& rs, const IntVec& lambda, const Int& n, const IntVec& target);

// Hilbert function of the classified graded algebra: sum of squared Weyl
// dimensions over the dominant lattice points of the n-th dilation of the
// support.
Int hilbert_function(const RootSystem& rs, const WComplex& complex, const Int& n, const Int& cap = 20);

struct CentroidFace {
  LatticePolytope face;  // face of conv(W lambda) containing lambda
  QVec vertex;           // the vertex of conv(W lambda) cap dominant cone it realizes
};

// Vertices of conv(W lambda) cap dominant chamber, each matched with a face
// of conv(W lambda) through lambda whose centroid it is.
std::vector<CentroidFace> centroid_face_vertices(const RootSystem& rs, const IntVec& lambda);

}  // namespace redvar
