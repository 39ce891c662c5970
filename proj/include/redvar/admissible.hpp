#pragma once

#include "redvar/polytope.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace redvar {

struct ValidationError : std::runtime_error {
  std::vector<std::string> entries;
  explicit ValidationError(std::vector<std::string> e)
      : std::runtime_error(e.empty() ? "validation failed" : e.front()), entries(std::move(e)) {}
};

// A W-complex of polytopes.  In the common embedded case the cells are
// subsets of the weight space and face relations / W-action are inferred
// geometrically.  The abstract escape hatch (explicit face relations,
// possibly repeated images) models non-multiplicity-free supports.
struct WComplex {
  struct Cell {
    std::string id;
    LatticePolytope poly;  // the rho-image
  };

  std::shared_ptr<const RootSystem> rs;
  std::vector<Cell> cells;                  // canonical order: (dim, sorted vertices, id)
  std::vector<std::vector<bool>> face_rel;  // face_rel[i][j]: cell i is a face of cell j (reflexive)
  std::vector<std::vector<int>> w_action;   // [weyl index][cell] -> cell, -1 if unresolved
  bool abstract_mode = false;

  int ncells() const { return static_cast<int>(cells.size()); }
  int index_of(const std::string& id) const;
  int index_of_poly(const LatticePolytope& p) const;  // embedded lookup, -1 if absent

  std::vector<int> maximal_cells() const;
  std::vector<std::vector<int>> orbits() const;  // sorted cell index groups
  std::vector<int> orbit_of(int cell) const;
  // Representative whose relative interior meets the dominant chamber
  // (lex-least such, falling back to lex-least overall).
  int canonical_rep(const std::vector<int>& orbit) const;
  int orbit_rep_of(int cell) const;

  // Faces of a given cell (indices, including the cell itself).
  std::vector<int> faces_of(int cell) const;
};

// W-orbit closure of a single polytope: all translates and their faces,
// embedded, with inferred structure.
WComplex orbit_complex(std::shared_ptr<const RootSystem> rs, const LatticePolytope& delta);

// Embedded complex from explicitly given cells; faces of the given cells are
// added automatically when `add_faces` is set.
WComplex embedded_complex(std::shared_ptr<const RootSystem> rs, const std::vector<LatticePolytope>& given,
                          bool add_faces = true);

// Abstract complex: cells with ids, explicit face pairs (face id, cell id),
// and the simple reflections' action on cell ids.
WComplex abstract_complex(std::shared_ptr<const RootSystem> rs,
                          const std::vector<std::pair<std::string, LatticePolytope>>& cells,
                          const std::vector<std::pair<std::string, std::string>>& face_pairs,
                          const std::map<int, std::map<std::string, std::string>>& generator_action);

// Validation report per the four W-complex conditions; empty means valid.
std::vector<std::string> check_wcomplex(const WComplex& c);

// Report for W-admissibility of a single polytope; empty means admissible.
std::vector<std::string> check_admissible(const RootSystem& rs, const LatticePolytope& delta);

// Global injectivity of the reference map: distinct cells have disjoint
// relative interiors.
bool is_multiplicity_free(const WComplex& c);

int orbit_count(const WComplex& c);

struct MarkedType {
  WComplex complex;
  std::vector<IntVec> marks;                  // global point list, sorted
  std::map<int, std::vector<IntVec>> cell_marks;  // per cell, sorted

  std::vector<IntVec> dominant_marks_of(int cell) const;  // C+ of one cell
  std::vector<IntVec> dominant_marks() const;             // global C+
};

// Validates the marking (W-invariance, vertices marked, lattice points of
// cells) and attaches per-cell mark sets; throws ValidationError on failure.
MarkedType check_marking(const WComplex& c, const std::vector<IntVec>& marks);

// a <= b iff b's complex is subdivided by a's and b's marks are contained in
// a's.  Throws ValidationError when the supports differ.
bool type_leq(const MarkedType& a, const MarkedType& b);

// Does `fine` subdivide `coarse` (cell-wise containment plus equal support)?
bool subdivides(const WComplex& fine, const WComplex& coarse);

}  // namespace redvar
