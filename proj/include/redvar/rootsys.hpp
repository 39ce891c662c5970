#pragma once

#include "redvar/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace redvar {

// A weight in the fundamental-weight basis.  Lattice weights have integral
// coordinates; dominance is coordinate-wise non-negativity.
using WeightVector = QVec;

inline bool is_lattice_weight(const WeightVector& v) { return qvec_is_integral(v); }

struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Root datum of a connected reductive group, with the Weyl group fully
// materialized as unimodular matrices on the weight lattice.  Immutable
// after construction.
class RootSystem {
 public:
  std::string series;  // "A", "B", "C", "D", "G"
  int rank = 0;
  IntMat cartan;                        // row i = simple root alpha_i in fw basis
  std::vector<IntVec> simple_roots;     // rows of the Cartan matrix
  std::vector<IntVec> fundamental_weights;
  std::vector<IntVec> positive_roots;   // fw coordinates
  std::vector<IntVec> positive_coroots; // coefficients on simple coroots; pairing = dot with fw coords
  std::vector<IntMat> weyl_elements;    // sorted by lexicographic matrix comparison
  IntVec symmetrizer;                   // d_i with d_j * C_ij symmetric

  int weyl_order() const { return static_cast<int>(weyl_elements.size()); }
  const IntMat& identity_element() const;
  int identity_index() const { return identity_idx_; }
  int simple_reflection(int i) const { return simple_reflection_idx_[i]; }

  WeightVector act(int weyl_index, const WeightVector& v) const;
  IntVec act_int(int weyl_index, const IntVec& v) const;

  // Index of the element w2 * w1 in the canonical order.
  int compose(int w2, int w1) const;
  int inverse(int w) const;

  // (lambda, mu) under the W-invariant form fixed by the symmetrizer.
  Rat weight_form(const WeightVector& a, const WeightVector& b) const;

  // Expansion of a weight in the simple-root basis.
  QVec root_coordinates(const WeightVector& v) const;

  int element_index(const IntMat& m) const;  // -1 if absent

 private:
  friend RootSystem build_root_system(const std::string&, int, int);
  int identity_idx_ = -1;
  std::vector<int> inverse_idx_;
  std::vector<int> simple_reflection_idx_;
  QMat root_coord_solver_;  // cartan^T, cached for root_coordinates
};

// Supported: A (rank>=1), B (>=2), C (>=2), D (>=3), G (==2).  Throws
// std::invalid_argument for unsupported types and CapError when the Weyl
// order would exceed the cap.
RootSystem build_root_system(const std::string& series, int rank, int weyl_cap = 10000);

bool is_dominant(const RootSystem& rs, const WeightVector& v);

// First w in canonical order with w(v) dominant; identity when v already is.
struct DominantRep {
  int weyl_index;
  WeightVector dominant;
};
DominantRep dominant_representative(const RootSystem& rs, const WeightVector& v);

// Elements mapping the vertex set onto itself (setwise stabilizer).
std::vector<int> stabilizer_of_vertices(const RootSystem& rs, const std::vector<WeightVector>& vertices);

}  // namespace redvar
