#pragma once

#include "redvar/moduli.hpp"
#include "redvar/reps.hpp"

#include "json.hpp"

#include <memory>
#include <string>

namespace redvar {

using json = nlohmann::json;

// Rationals print as integers when integral (as numbers when they fit in
// 64 bits, strings otherwise) and as "p/q" strings otherwise; both forms
// parse back.
json rat_to_json(const Rat& q);
Rat rat_from_json(const json& j);
json int_to_json(const Int& n);
Int int_from_json(const json& j);

json intvec_to_json(const IntVec& v);
IntVec intvec_from_json(const json& j);
json qvec_to_json(const QVec& v);
QVec qvec_from_json(const json& j);

// {"type":"A","rank":2}
RootSystem rootsystem_from_json(const json& j, int weyl_cap = 10000);

// {"free_rank":2,"torsion":[2]}
json group_to_json(const FGAbelianGroup& g);

json polytope_to_json(const LatticePolytope& p);
LatticePolytope polytope_from_json(const json& j, int dim_cap = 4);

// {"cells":[{"id":"c1","vertices":[[ -2],[0]]},...],
//  "face_relations": optional [["face","cell"],...],
//  "w_action": optional {"s1":{"c1":"c2",...},...}}
WComplex complex_from_json(std::shared_ptr<const RootSystem> rs, const json& j, int dim_cap = 4);
json complex_to_json(const WComplex& c);

json marked_type_to_json(const MarkedType& t);
json subdivision_to_json(const CoherentSubdivision& s);
json fiber_to_json(const FiberPolytopeResult& f);
json strata_to_json(const StrataPoset& s);
json pair_sequence_to_json(const PairSequence& ps);

// {"cell_heights": {"c1": {"[0]": "-1", ...}, ...}, "gamma": {...}}
HeightData heights_from_json(const json& j);
std::map<IntVec, Rat> height_map_from_json(const json& j);

json report_to_json(const std::vector<std::string>& report);

// Minimal SVG rendering of a 1- or 2-dimensional marked subdivision; exact
// integer pixel coordinates throughout.
std::string svg_of_subdivision(const CoherentSubdivision& s);

}  // namespace redvar
