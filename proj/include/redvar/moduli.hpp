#pragma once

#include "redvar/abgroup.hpp"
#include "redvar/degen.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace redvar {

// Simple roots whose wall hyperplane meets the relative interior of delta.
// In fundamental-weight coordinates wall i is {x_i = 0}, so this is a
// vertex sign test.
std::vector<int> k_delta(const RootSystem& rs, const LatticePolytope& delta);

// Character lattice data of Aut(X_delta): the lattice L0 = Ztilde cap
// lin Cone(delta) presented modulo Z K_delta cap lin Cone(delta).
struct CellCharGroup {
  std::vector<IntVec> lattice_basis;  // basis of L0 inside Z^{1+rank}
  std::vector<IntVec> kprime;         // generators of the quotient sublattice
  IntMat relations;                   // kprime in basis coordinates
  FGAbelianGroup group;
};

CellCharGroup cell_char_group(const RootSystem& rs, const LatticePolytope& delta);

FGAbelianGroup aut_character_group(const RootSystem& rs, const LatticePolytope& delta);

// 0 -> L -> Fun(C+_delta) -> (Ztilde cap lin delta)/ZK_delta -> K -> 0
struct PairSequence {
  std::vector<IntVec> cplus;   // sorted dominant marks of delta indexing Fun
  FGAbelianGroup fun;          // free of rank |C+|
  CellCharGroup target;
  IntMat p_matrix;             // target-basis coords of (1, c) per mark
  FGAbelianGroup l_group;      // the kernel
  IntMat l_embedding;          // Fun coords of the kernel generators
  FGAbelianGroup k_group;      // the cokernel, always finite
};

PairSequence pair_sequence(const RootSystem& rs, const LatticePolytope& delta,
                           const std::vector<IntVec>& marks);

// H^0 / H^1 of the Aut complex over the quotient poset, via homology of the
// dualized character-lattice complex.
struct ComplexCohomology {
  FGAbelianGroup h0;
  FGAbelianGroup h1;
};

ComplexCohomology aut_complex_cohomology(const WComplex& complex);

// H^0 (pair automorphism characters, finite) and H^1 (isomorphism-class
// characters) of the mapping-cone complex.
struct PairCohomology {
  FGAbelianGroup aut_chars;
  FGAbelianGroup iso_chars;
};

PairCohomology pair_moduli_cohomology(const MarkedType& type);

struct FiberPolytopeResult {
  LatticePolytope polytope;          // in kernel-basis coordinates
  std::vector<IntVec> gkz_vertices;  // weight vectors in the Fun basis, sorted
  std::map<IntVec, CoherentSubdivision> vertex_subdivisions;  // keyed by GKZ vector
  int dim = 0;
};

FiberPolytopeResult fiber_polytope(const RootSystem& rs, const LatticePolytope& delta,
                                   const std::vector<IntVec>& marks);

// Product of per-maximal-class fiber polytopes projected to the cokernel of
// the boundary map of the Fun cosheaf.
FiberPolytopeResult global_fiber_polytope(const MarkedType& type);

Int stratum_dimension_general(const RootSystem& rs, const std::vector<IntVec>& marks);

struct StratumRecord {
  MarkedType type;
  long dim_ci = 0;        // rank of the isomorphism-class character group
  Int dim_general = 0;    // sum over C+ of (n_c^2 - 1)
  Int aut_order = 1;      // order of the finite pair automorphism group
  std::map<IntVec, Rat> witness_heights;  // flattened coherence witness (class reps)
};

struct StrataPoset {
  std::vector<StratumRecord> records;          // canonical order
  std::vector<std::pair<int, int>> leq_pairs;  // (i, j) with type_i <= type_j
};

// All W-invariant coherent marked subdivisions of (support, max_marks),
// arranged by the type order.
StrataPoset enumerate_strata(const RootSystem& rs, const WComplex& support,
                             const std::vector<IntVec>& max_marks, long enum_cap = 200000);

// --- point-configuration internals, exposed for tests and the CLI ---

struct PointConfig {
  std::vector<IntVec> points;  // per label (repeats allowed)
  int dim = 0;                 // affine dimension
};

struct LabeledTriangulation {
  std::vector<std::vector<int>> cells;  // sorted label sets, sorted
  bool operator<(const LabeledTriangulation& o) const { return cells < o.cells; }
};

std::vector<LabeledTriangulation> all_triangulations(const PointConfig& config);

struct RegularityResult {
  bool regular = false;
  QVec witness;  // heights per label
};

RegularityResult triangulation_regular(const PointConfig& config, const LabeledTriangulation& t);

IntVec gkz_vector(const PointConfig& config, const LabeledTriangulation& t);

}  // namespace redvar
