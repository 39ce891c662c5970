#pragma once

#include "redvar/admissible.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace redvar {

// Valuations of section components.  Heights are keyed per maximal cell id;
// keys are lattice marks of that cell (dominant keys suffice for the
// W-symmetric case, the rest are filled by W-transport from the same class).
// Cocycle valuations give, per shared face id, the value of gamma at (1, x)
// for lattice points x of the face, oriented by the canonical order of the
// two maximal cells sharing the face.
struct HeightData {
  std::map<std::string, std::map<IntVec, Rat>> cell_heights;
  std::map<std::string, std::map<IntVec, Rat>> gamma;
};

struct CoherentSubdivision {
  WComplex subdivision;
  MarkedType marking;
  std::map<std::string, PLFunction> envelopes;  // per input maximal cell id
  Int integrality_n = 1;
};

// Least N > 0 with N*h integral on the lattice points of Cone(domain), i.e.
// on Z + Lambda restricted to the cone over each linearity domain.
Int minimal_integrality(const PLFunction& h);

// Lower-envelope degeneration of a single admissible polytope: heights at
// the dominant marks are symmetrized over the stabilizer and fed to the
// envelope; the output is the W-orbit complex of the refinement with the
// attainment marking.
CoherentSubdivision degenerate(const RootSystem& rs, const LatticePolytope& delta,
                               const std::vector<IntVec>& marks, const std::map<IntVec, Rat>& heights);

// Per-cell envelopes over a marked complex with cocycle compatibility
// checked on every shared face at every lattice point.
CoherentSubdivision degenerate_complex(const MarkedType& type, const HeightData& heights);

struct CoherenceResult {
  bool coherent = false;
  std::map<IntVec, Rat> witness;  // heights on the dominant ambient marks
  QVec certificate;               // dual ray over lp.rows when incoherent
  LinearSystem lp{0};             // the strict system that was decided
};

// Is the candidate marked subdivision of delta induced by some W-admissible
// height vector on the ambient marks?  Default ambient marks: all lattice
// points of the orbit complex of delta.
CoherenceResult is_coherent(const RootSystem& rs, const LatticePolytope& delta,
                            const WComplex& candidate, const std::vector<IntVec>& marking,
                            const std::vector<IntVec>& ambient_marks = {});

}  // namespace redvar
