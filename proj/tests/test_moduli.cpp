#include "redvar/moduli.hpp"

#include "doctest.h"

#include <set>

using namespace redvar;

namespace {

QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

LatticePolytope seg(long a, long b) { return convex_hull({qv({a}), qv({b})}); }

std::vector<IntVec> interval_marks(long a, long b) {
  std::vector<IntVec> out;
  for (long x = a; x <= b; ++x) out.push_back(iv({x}));
  return out;
}

bool group_is(const FGAbelianGroup& g, long rank, std::initializer_list<long> torsion) {
  if (g.free_rank != rank) return false;
  std::vector<Int> t;
  for (long x : torsion) t.push_back(Int(x));
  return g.invariant_factors == t;
}

}  // namespace

TEST_CASE("k_delta on intervals") {
  RootSystem a1 = build_root_system("A", 1);
  CHECK(k_delta(a1, seg(-2, 2)) == std::vector<int>{0});  // 0 lies in (-2,2)
  CHECK(k_delta(a1, seg(0, 2)).empty());                  // 0 is on the boundary
  CHECK(k_delta(a1, seg(1, 2)).empty());
  CHECK_THROWS_AS(k_delta(a1, seg(-1, 2)), ValidationError);  // not admissible
}

TEST_CASE("aut character groups") {
  RootSystem a1 = build_root_system("A", 1);
  CHECK(group_is(aut_character_group(a1, seg(-2, 2)), 1, {2}));  // Z + Z/2
  CHECK(group_is(aut_character_group(a1, seg(0, 2)), 2, {}));    // Z^2

  // full-dimensional A2 cell away from the walls: free of rank 3
  RootSystem a2 = build_root_system("A", 2);
  LatticePolytope tri = convex_hull({qv({1, 1}), qv({5, 1}), qv({1, 5})});
  CHECK(k_delta(a2, tri).empty());
  CHECK(group_is(aut_character_group(a2, tri), 3, {}));

  // the hexagon meets both walls: Z + (weight/root lattice) = Z + Z/3
  std::set<QVec> orbit;
  for (int w = 0; w < a2.weyl_order(); ++w) orbit.insert(a2.act(w, qv({1, 1})));
  LatticePolytope hex = convex_hull(std::vector<QVec>(orbit.begin(), orbit.end()));
  CHECK(k_delta(a2, hex).size() == 2);
  CHECK(group_is(aut_character_group(a2, hex), 1, {3}));
}

TEST_CASE("pair sequences on the reference cells") {
  RootSystem a1 = build_root_system("A", 1);
  SUBCASE("[-2,2] with the full marking") {
    PairSequence ps = pair_sequence(a1, seg(-2, 2), interval_marks(-2, 2));
    CHECK(ps.cplus == std::vector<IntVec>{iv({0}), iv({1}), iv({2})});
    CHECK(group_is(ps.l_group, 2, {}));
    CHECK(ps.k_group.is_trivial());
  }
  SUBCASE("[0,2] with endpoint marks") {
    PairSequence ps = pair_sequence(a1, seg(0, 2), {iv({-2}), iv({0}), iv({2})});
    CHECK(ps.cplus == std::vector<IntVec>{iv({0}), iv({2})});
    CHECK(ps.l_group.is_trivial());
    CHECK(group_is(ps.k_group, 0, {2}));  // determinant 2
  }
  SUBCASE("[0,1]") {
    PairSequence ps = pair_sequence(a1, seg(0, 1), {iv({-1}), iv({0}), iv({1})});
    CHECK(ps.l_group.is_trivial());
    CHECK(ps.k_group.is_trivial());  // determinant 1
  }
}

TEST_CASE("aut complex cohomology of single-cell complexes") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  SUBCASE("stable segment [-2,2]") {
    WComplex c = orbit_complex(rs, seg(-2, 2));
    ComplexCohomology cc = aut_complex_cohomology(c);
    CHECK(group_is(cc.h0, 1, {2}));  // equals the direct Aut computation
    CHECK(cc.h1.is_trivial());
  }
  SUBCASE("unstable segment [0,2]") {
    WComplex c = orbit_complex(rs, seg(0, 2));
    ComplexCohomology cc = aut_complex_cohomology(c);
    CHECK(group_is(cc.h0, 2, {}));  // restriction through the faces keeps Z^2
    CHECK(cc.h1.is_trivial());
  }
}

TEST_CASE("two-cell cohomology matches the hand-assembled oracle") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  WComplex c = embedded_complex(rs, {seg(-2, 0), seg(0, 2)});
  ComplexCohomology cc = aut_complex_cohomology(c);

  // oracle: classes are {segments}, {0}, {+-2} with representatives [0,2],
  // {0}, {2}; characters Z^2, Z(1,0), Z(1,2); two flags give the columns
  // ((1,0),-1,0) and ((1,2),0,-1) in Z^2 + Z + Z
  IntMat d10(4, 2);
  d10.at(0, 0) = 1; d10.at(1, 0) = 0; d10.at(2, 0) = -1; d10.at(3, 0) = 0;
  d10.at(0, 1) = 1; d10.at(1, 1) = 2; d10.at(2, 1) = 0;  d10.at(3, 1) = -1;
  FGAbelianGroup h0_oracle = group_from_presentation(4, d10);
  CHECK(cc.h0.free_rank == h0_oracle.free_rank);
  CHECK(cc.h0.invariant_factors == h0_oracle.invariant_factors);
  CHECK(group_is(cc.h0, 2, {}));
  // the two columns are independent over Z, so H1 = ker/0 = 0
  CHECK(rank_int(d10) == 2);
  CHECK(cc.h1.is_trivial());
}

TEST_CASE("cohomology of a disjoint union splits") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  WComplex one = orbit_complex(rs, seg(0, 2));
  WComplex two = embedded_complex(rs, {seg(-2, 0), seg(0, 2), seg(-6, -4), seg(4, 6)});
  CHECK(check_wcomplex(two).empty());
  ComplexCohomology c1 = aut_complex_cohomology(one);
  ComplexCohomology c2 = aut_complex_cohomology(two);
  ComplexCohomology cs = aut_complex_cohomology(orbit_complex(rs, seg(4, 6)));
  CHECK(c2.h0.free_rank == c1.h0.free_rank + cs.h0.free_rank);
  CHECK(c2.h1.is_trivial());
}

TEST_CASE("pair moduli cohomology") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  SUBCASE("single cell [0,2], endpoint marks: aut = K, iso = L") {
    WComplex c = orbit_complex(rs, seg(0, 2));
    MarkedType t = check_marking(c, {iv({-2}), iv({0}), iv({2})});
    PairCohomology pc = pair_moduli_cohomology(t);
    CHECK(group_is(pc.aut_chars, 0, {2}));
    CHECK(pc.iso_chars.is_trivial());
  }
  SUBCASE("single cell [-2,2], full marks: aut trivial, iso rank 2") {
    WComplex c = orbit_complex(rs, seg(-2, 2));
    MarkedType t = check_marking(c, interval_marks(-2, 2));
    PairCohomology pc = pair_moduli_cohomology(t);
    CHECK(pc.aut_chars.is_trivial());
    CHECK(group_is(pc.iso_chars, 2, {}));
  }
  SUBCASE("two cells, full marks: finite aut, iso rank 1") {
    WComplex c = embedded_complex(rs, {seg(-2, 0), seg(0, 2)});
    MarkedType t = check_marking(c, interval_marks(-2, 2));
    PairCohomology pc = pair_moduli_cohomology(t);
    CHECK(pc.aut_chars.is_finite());
    CHECK(pc.aut_chars.is_trivial());
    CHECK(pc.iso_chars.free_rank == 1);
  }
}

TEST_CASE("point configurations: interval with three points") {
  PointConfig config;
  config.points = {iv({1, 0}), iv({1, 1}), iv({1, 2})};
  config.dim = 1;
  auto tris = all_triangulations(config);
  REQUIRE(tris.size() == 2);
  int regular = 0;
  std::set<IntVec> gkz;
  for (const auto& t : tris) {
    auto reg = triangulation_regular(config, t);
    if (reg.regular) {
      ++regular;
      gkz.insert(gkz_vector(config, t));
    }
  }
  CHECK(regular == 2);
  CHECK(gkz == std::set<IntVec>{iv({2, 0, 2}), iv({1, 2, 1})});
}

TEST_CASE("point configurations: triple point") {
  PointConfig config;
  config.points = {iv({1}), iv({1}), iv({1})};
  config.dim = 0;
  auto tris = all_triangulations(config);
  REQUIRE(tris.size() == 3);
  for (const auto& t : tris) {
    CHECK(triangulation_regular(config, t).regular);
    IntVec phi = gkz_vector(config, t);
    Int total = 0;
    for (const auto& x : phi) total += x;
    CHECK(total == 1);
  }
}

TEST_CASE("point configurations: the pinwheel is enumerated and irregular") {
  PointConfig config;
  config.points = {iv({0, 0}), iv({4, 0}), iv({0, 4}), iv({1, 1}), iv({2, 1}), iv({1, 2})};
  config.dim = 2;
  auto tris = all_triangulations(config);
  CHECK(tris.size() > 2);
  LabeledTriangulation pinwheel;
  pinwheel.cells = {{0, 1, 4}, {0, 4, 3}, {1, 2, 5}, {1, 5, 4}, {2, 0, 3}, {2, 3, 5}, {3, 4, 5}};
  for (auto& cell : pinwheel.cells) std::sort(cell.begin(), cell.end());
  std::sort(pinwheel.cells.begin(), pinwheel.cells.end());
  bool found = false;
  for (const auto& t : tris)
    if (t.cells == pinwheel.cells) found = true;
  CHECK(found);
  CHECK(!triangulation_regular(config, pinwheel).regular);
  // regular ones exist and have pairwise distinct weight vectors
  std::set<IntVec> gkz;
  int regular = 0;
  for (const auto& t : tris)
    if (triangulation_regular(config, t).regular) {
      ++regular;
      gkz.insert(gkz_vector(config, t));
    }
  CHECK(regular > 0);
  CHECK(static_cast<int>(gkz.size()) == regular);
}

TEST_CASE("fiber polytope of ([0,1], vertex marks) is a point") {
  RootSystem a1 = build_root_system("A", 1);
  FiberPolytopeResult f = fiber_polytope(a1, seg(0, 1), {iv({-1}), iv({0}), iv({1})});
  CHECK(f.dim == 0);
  CHECK(f.gkz_vertices.size() == 1);
}

TEST_CASE("fiber polytope of ([0,2], full marks) is the GKZ segment") {
  RootSystem a1 = build_root_system("A", 1);
  FiberPolytopeResult f = fiber_polytope(a1, seg(0, 2), interval_marks(-2, 2));
  CHECK(f.dim == 1);
  REQUIRE(f.gkz_vertices.size() == 2);
  CHECK(f.gkz_vertices[0] == iv({1, 2, 1}));
  CHECK(f.gkz_vertices[1] == iv({2, 0, 2}));
  // lattice length 1 in the kernel basis
  REQUIRE(f.polytope.vertices.size() == 2);
  QVec diff = qvec_sub(f.polytope.vertices[1], f.polytope.vertices[0]);
  CHECK((diff == QVec{Rat(1)} || diff == QVec{Rat(-1)}));
  // certificates attached to both vertices, and they differ
  REQUIRE(f.vertex_subdivisions.size() == 2);
  const auto& coarse = f.vertex_subdivisions.at(iv({2, 0, 2}));
  const auto& fine = f.vertex_subdivisions.at(iv({1, 2, 1}));
  CHECK(coarse.subdivision.maximal_cells().size() == 2);  // [-2,0],[0,2]
  CHECK(fine.subdivision.maximal_cells().size() == 4);    // split at +-1
  CHECK(coarse.marking.marks == std::vector<IntVec>{iv({-2}), iv({0}), iv({2})});
  CHECK(fine.marking.marks.size() == 5);
}

TEST_CASE("fiber polytope of ([-2,2], full marks) is a 2-simplex") {
  RootSystem a1 = build_root_system("A", 1);
  FiberPolytopeResult f = fiber_polytope(a1, seg(-2, 2), interval_marks(-2, 2));
  CHECK(f.dim == 2);
  REQUIRE(f.gkz_vertices.size() == 3);
  CHECK(f.gkz_vertices[0] == iv({0, 0, 1}));
  CHECK(f.gkz_vertices[1] == iv({0, 1, 0}));
  CHECK(f.gkz_vertices[2] == iv({1, 0, 0}));
  // distinct subdivision certificates on distinct vertices
  std::set<std::string> keys;
  for (const auto& [phi, sub] : f.vertex_subdivisions) {
    std::string k;
    for (int i : sub.subdivision.maximal_cells()) k += sub.subdivision.cells[i].poly.key() + "|";
    for (const auto& m : sub.marking.marks) k += "[" + m[0].str() + "]";
    keys.insert(k);
  }
  CHECK(keys.size() == 3);
}

TEST_CASE("fiber polytope dimension equals the kernel rank") {
  RootSystem a1 = build_root_system("A", 1);
  struct Case {
    LatticePolytope delta;
    std::vector<IntVec> marks;
  };
  std::vector<Case> cases = {
      {seg(0, 1), {iv({-1}), iv({0}), iv({1})}},
      {seg(0, 2), interval_marks(-2, 2)},
      {seg(-2, 2), interval_marks(-2, 2)},
      {seg(-2, 2), {iv({-2}), iv({0}), iv({2})}},
      {seg(0, 3), interval_marks(-3, 3)},
  };
  for (const auto& c : cases) {
    PairSequence ps = pair_sequence(a1, c.delta, c.marks);
    FiberPolytopeResult f = fiber_polytope(a1, c.delta, c.marks);
    CHECK(f.dim == ps.l_group.free_rank);
    for (const auto& [phi, sub] : f.vertex_subdivisions) {
      // certificates pass the coherence check by construction: re-derive
      CoherenceResult res =
          is_coherent(a1, c.delta, sub.subdivision, sub.marking.marks, c.marks);
      CHECK(res.coherent);
    }
  }
}

TEST_CASE("global fiber polytope") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  SUBCASE("single-cell type equals the plain fiber polytope") {
    WComplex c = orbit_complex(rs, seg(0, 2));
    MarkedType t = check_marking(c, interval_marks(-2, 2));
    FiberPolytopeResult g = global_fiber_polytope(t);
    FiberPolytopeResult f = fiber_polytope(a1, seg(0, 2), interval_marks(-2, 2));
    CHECK(g.dim == f.dim);
    CHECK(g.gkz_vertices == f.gkz_vertices);
    CHECK(g.polytope == f.polytope);
  }
  SUBCASE("two-cell type: dimension matches the iso character rank") {
    WComplex c = embedded_complex(rs, {seg(-2, 0), seg(0, 2)});
    MarkedType t = check_marking(c, interval_marks(-2, 2));
    FiberPolytopeResult g = global_fiber_polytope(t);
    PairCohomology pc = pair_moduli_cohomology(t);
    CHECK(g.dim == pc.iso_chars.free_rank);
    CHECK(g.dim == 1);
  }
  SUBCASE("vertex-marked injective type is a point") {
    WComplex c = orbit_complex(rs, seg(0, 1));
    MarkedType t = check_marking(c, {iv({-1}), iv({0}), iv({1})});
    FiberPolytopeResult g = global_fiber_polytope(t);
    CHECK(g.dim == 0);
  }
}

TEST_CASE("stratum dimensions") {
  RootSystem a1 = build_root_system("A", 1);
  CHECK(stratum_dimension_general(a1, interval_marks(-2, 2)) == 11);  // 0 + 3 + 8
  CHECK(stratum_dimension_general(a1, {iv({0})}) == 0);
  RootSystem a2 = build_root_system("A", 2);
  CHECK(stratum_dimension_general(a2, {iv({1, 1})}) == 63);  // 8^2 - 1
}

TEST_CASE("strata of the [-1,1] support") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  WComplex support = orbit_complex(rs, seg(-1, 1));
  StrataPoset poset = enumerate_strata(a1, support, interval_marks(-1, 1));
  REQUIRE(poset.records.size() == 3);
  // the three types: (trivial, {+-1}), (trivial, {0,+-1}), (split at 0, {0,+-1})
  int trivial2 = 0, trivial3 = 0, split3 = 0;
  for (const auto& r : poset.records) {
    size_t ncells = r.type.complex.maximal_cells().size();
    if (ncells == 1 && r.type.marks.size() == 2) ++trivial2;
    if (ncells == 1 && r.type.marks.size() == 3) ++trivial3;
    if (ncells == 2 && r.type.marks.size() == 3) ++split3;
  }
  CHECK(trivial2 == 1);
  CHECK(trivial3 == 1);
  CHECK(split3 == 1);
}

TEST_CASE("strata of the two-cell support with vertex-only refinements") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  WComplex support = embedded_complex(rs, {seg(-1, 0), seg(0, 1)});
  StrataPoset poset = enumerate_strata(a1, support, interval_marks(-1, 1));
  CHECK(poset.records.size() == 1);  // no W-invariant refinement exists
}

TEST_CASE("strata of the [-2,2] support") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  WComplex support = orbit_complex(rs, seg(-2, 2));
  StrataPoset poset = enumerate_strata(a1, support, interval_marks(-2, 2));
  CHECK(poset.records.size() == 9);
  // named types from the classification
  int trivial_full = 0, split0_3marks = 0, split1_4marks = 0, full_split = 0;
  for (const auto& r : poset.records) {
    auto maxc = r.type.complex.maximal_cells();
    size_t nmax = maxc.size(), nmarks = r.type.marks.size();
    if (nmax == 1 && nmarks == 5) ++trivial_full;
    if (nmax == 2 && nmarks == 3) ++split0_3marks;
    if (nmax == 3 && nmarks == 4) ++split1_4marks;
    if (nmax == 4 && nmarks == 5) ++full_split;
  }
  CHECK(trivial_full == 1);
  CHECK(split0_3marks == 1);
  CHECK(split1_4marks == 1);
  CHECK(full_split == 1);
  // downward closure under the type order within the enumerated mark set
  for (size_t i = 0; i < poset.records.size(); ++i) {
    // every record's aut group is finite
    CHECK(poset.records[i].dim_general >= 0);
  }
  // the poset relation is consistent with type_leq recomputation
  for (const auto& [i, j] : poset.leq_pairs) CHECK(type_leq(poset.records[i].type, poset.records[j].type));
}

TEST_CASE("strata records carry the general stratum dimension") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  WComplex support = orbit_complex(rs, seg(-1, 1));
  StrataPoset poset = enumerate_strata(a1, support, interval_marks(-1, 1));
  for (const auto& r : poset.records)
    CHECK(r.dim_general == stratum_dimension_general(a1, r.type.marks));
}

TEST_CASE("strata poset relations of the [-1,1] support") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  WComplex support = orbit_complex(rs, seg(-1, 1));
  StrataPoset poset = enumerate_strata(a1, support, interval_marks(-1, 1));
  REQUIRE(poset.records.size() == 3);
  // exactly (trivial,{+-1}) <= (trivial,{0,+-1}) and (split,{0,+-1}) <= (trivial,{0,+-1})
  CHECK(poset.leq_pairs.size() == 2);
  for (const auto& [i, j] : poset.leq_pairs) {
    CHECK(poset.records[j].type.complex.maximal_cells().size() == 1);
    CHECK(poset.records[j].type.marks.size() == 3);
  }
}

TEST_CASE("fiber polytope of the A2 hexagon collapses to a 3-simplex") {
  RootSystem a2 = build_root_system("A", 2);
  std::set<QVec> orbit;
  for (int w = 0; w < a2.weyl_order(); ++w) orbit.insert(a2.act(w, qv({1, 1})));
  LatticePolytope hex = convex_hull(std::vector<QVec>(orbit.begin(), orbit.end()));
  std::vector<IntVec> marks = lattice_points(hex);
  PairSequence ps = pair_sequence(a2, hex, marks);
  // C+ = {(0,0),(0,1),(1,0),(1,1)}; the wall quotient kills the weight
  // directions, so the real image is a point and Sigma is the full simplex
  CHECK(ps.cplus.size() == 4);
  CHECK(ps.l_group.free_rank == 3);
  FiberPolytopeResult f = fiber_polytope(a2, hex, marks);
  CHECK(f.dim == 3);
  CHECK(f.gkz_vertices.size() == 4);
  CHECK(f.vertex_subdivisions.size() == 4);
  // distinct certificates on distinct vertices
  std::set<std::string> keys;
  for (const auto& [phi, sub] : f.vertex_subdivisions) {
    std::string k;
    for (int i : sub.subdivision.maximal_cells()) k += sub.subdivision.cells[i].poly.key() + "|";
    for (const auto& m : sub.marking.marks) {
      k += "[";
      for (const auto& x : m) k += x.str() + ",";
      k += "]";
    }
    keys.insert(k);
  }
  CHECK(keys.size() == 4);
}

TEST_CASE("global fiber polytope of a three-segment complex") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  // two maximal classes: the stable middle segment and the outer pair
  WComplex c = embedded_complex(rs, {seg(-3, -1), seg(-1, 1), seg(1, 3)});
  REQUIRE(check_wcomplex(c).empty());
  MarkedType t = check_marking(c, interval_marks(-3, 3));
  FiberPolytopeResult g = global_fiber_polytope(t);
  PairCohomology pc = pair_moduli_cohomology(t);
  CHECK(g.dim == pc.iso_chars.free_rank);
  CHECK(g.dim == 2);
  // the middle cell meets the wall, so its real image collapses and it
  // contributes a segment, as does the outer class: 2 x 2 product vertices
  CHECK(g.gkz_vertices.size() == 4);
  // glued certificates exist for every vertex (gamma is inferred)
  CHECK(g.vertex_subdivisions.size() == 4);
}

TEST_CASE("hexagon pair cohomology is finite") {
  RootSystem a2 = build_root_system("A", 2);
  auto rs = std::make_shared<RootSystem>(a2);
  std::set<QVec> orbit;
  for (int w = 0; w < a2.weyl_order(); ++w) orbit.insert(a2.act(w, qv({1, 1})));
  LatticePolytope hex = convex_hull(std::vector<QVec>(orbit.begin(), orbit.end()));
  WComplex c = orbit_complex(rs, hex);
  MarkedType t = check_marking(c, lattice_points(hex));
  PairCohomology pc = pair_moduli_cohomology(t);
  CHECK(pc.aut_chars.is_finite());
  ComplexCohomology cc = aut_complex_cohomology(c);
  CHECK(cc.h1.is_trivial());
  // the section torus has rank |C+| = 4 and the Aut action is rank-3
  // effective on it, so three torus directions die: iso rank = 4 - 3 = 1...
  // recorded from the machinery and cross-checked against the global fiber
  FiberPolytopeResult g = global_fiber_polytope(t);
  CHECK(g.dim == pc.iso_chars.free_rank);
}

TEST_CASE("strata of the hexagon support with vertex and center marks") {
  RootSystem a2 = build_root_system("A", 2);
  auto rs = std::make_shared<RootSystem>(a2);
  std::set<QVec> orbit;
  for (int w = 0; w < a2.weyl_order(); ++w) orbit.insert(a2.act(w, qv({1, 1})));
  LatticePolytope hex = convex_hull(std::vector<QVec>(orbit.begin(), orbit.end()));
  WComplex support = orbit_complex(rs, hex);
  std::vector<IntVec> marks;
  for (const auto& v : hex.vertices) marks.push_back(qvec_to_int(v));
  marks.push_back(iv({0, 0}));
  StrataPoset p = enumerate_strata(a2, support, marks);
  REQUIRE(p.records.size() == 3);
  // the six-triangle fan through the center, the trivial subdivision with
  // the center marked, and the trivial subdivision with vertex marks only
  int fan = 0, trivial_center = 0, trivial_plain = 0;
  for (const auto& r : p.records) {
    size_t nmax = r.type.complex.maximal_cells().size();
    if (nmax == 6 && r.type.marks.size() == 7) {
      ++fan;
      CHECK(r.dim_ci == 0);
      CHECK(r.aut_order == 9);
    }
    if (nmax == 1 && r.type.marks.size() == 7) {
      ++trivial_center;
      CHECK(r.dim_ci == 1);  // kernel of 1_0, 1_(1,1) -> Z + Z/3 has rank 1
      CHECK(r.aut_order == 3);
    }
    if (nmax == 1 && r.type.marks.size() == 6) {
      ++trivial_plain;
      CHECK(r.dim_ci == 0);
      CHECK(r.aut_order == 3);
    }
  }
  CHECK(fan == 1);
  CHECK(trivial_center == 1);
  CHECK(trivial_plain == 1);
  CHECK(p.leq_pairs.size() == 2);
}

TEST_CASE("non-multiplicity-free complexes are refused by the cohomology ops") {
  auto rs = std::make_shared<RootSystem>(build_root_system("A", 1));
  LatticePolytope right = seg(0, 2), left = seg(-2, 0);
  LatticePolytope v0 = convex_hull({qv({0})});
  LatticePolytope vp = convex_hull({qv({2})});
  LatticePolytope vm = convex_hull({qv({-2})});
  std::vector<std::pair<std::string, LatticePolytope>> cells = {
      {"r1", right}, {"r2", right}, {"l1", left}, {"l2", left}, {"v0", v0}, {"vp", vp}, {"vm", vm}};
  std::vector<std::pair<std::string, std::string>> faces = {
      {"v0", "r1"}, {"v0", "r2"}, {"v0", "l1"}, {"v0", "l2"},
      {"vp", "r1"}, {"vp", "r2"}, {"vm", "l1"}, {"vm", "l2"}};
  std::map<int, std::map<std::string, std::string>> act;
  act[0] = {{"r1", "l1"}, {"l1", "r1"}, {"r2", "l2"}, {"l2", "r2"},
            {"v0", "v0"}, {"vp", "vm"}, {"vm", "vp"}};
  WComplex c = abstract_complex(rs, cells, faces, act);
  REQUIRE(check_wcomplex(c).empty());
  REQUIRE(!is_multiplicity_free(c));
  CHECK_THROWS_AS(aut_complex_cohomology(c), ValidationError);
}

TEST_CASE("B2 orbit octagon end to end") {
  RootSystem b2 = build_root_system("B", 2);
  auto rs = std::make_shared<RootSystem>(b2);
  std::set<QVec> orbit;
  for (int w = 0; w < b2.weyl_order(); ++w) orbit.insert(b2.act(w, qv({1, 1})));
  LatticePolytope oct = convex_hull(std::vector<QVec>(orbit.begin(), orbit.end()));
  REQUIRE(oct.vertices.size() == 8);
  REQUIRE(check_admissible(b2, oct).empty());

  // the weight lattice has index 2 over the root lattice
  CHECK(group_is(aut_character_group(b2, oct), 1, {2}));

  WComplex c = orbit_complex(rs, oct);
  CHECK(check_wcomplex(c).empty());
  CHECK(orbit_count(c) == 4);
  ComplexCohomology cc = aut_complex_cohomology(c);
  CHECK(group_is(cc.h0, 1, {2}));
  CHECK(cc.h1.is_trivial());

  // five dominant marks; the spinor weight hits the torsion class, so the
  // map to Z + Z/2 is onto and the kernel has rank 4
  std::vector<IntVec> marks = lattice_points(oct);
  PairSequence ps = pair_sequence(b2, oct, marks);
  CHECK(ps.cplus.size() == 5);
  CHECK(group_is(ps.l_group, 4, {}));
  CHECK(ps.k_group.is_trivial());
}

TEST_CASE("hexagon aut cohomology equals the direct computation") {
  RootSystem a2 = build_root_system("A", 2);
  auto rs = std::make_shared<RootSystem>(a2);
  std::set<QVec> orbit;
  for (int w = 0; w < a2.weyl_order(); ++w) orbit.insert(a2.act(w, qv({1, 1})));
  LatticePolytope hex = convex_hull(std::vector<QVec>(orbit.begin(), orbit.end()));
  WComplex c = orbit_complex(rs, hex);
  ComplexCohomology cc = aut_complex_cohomology(c);
  FGAbelianGroup direct = aut_character_group(a2, hex);
  CHECK(cc.h0.free_rank == direct.free_rank);
  CHECK(cc.h0.invariant_factors == direct.invariant_factors);
  CHECK(group_is(cc.h0, 1, {3}));
  CHECK(cc.h1.is_trivial());
}

TEST_CASE("strata of a genuinely two-class support") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  WComplex support = embedded_complex(rs, {seg(-3, -1), seg(-1, 1), seg(1, 3)});
  REQUIRE(check_wcomplex(support).empty());
  StrataPoset p = enumerate_strata(a1, support, interval_marks(-3, 3));
  // middle cell: trivial or split at 0; outer class: trivial or split at
  // +-2; markings add the optional non-vertex orbits
  CHECK(p.records.size() == 9);
  int finest = 0;
  for (const auto& r : p.records) {
    CHECK(r.dim_general == stratum_dimension_general(a1, r.type.marks));
    if (r.type.complex.maximal_cells().size() == 6) ++finest;
  }
  CHECK(finest == 1);
}

TEST_CASE("G2 orbit polytope has a free automorphism character group") {
  RootSystem g2 = build_root_system("G", 2);
  std::set<QVec> orbit;
  for (int w = 0; w < g2.weyl_order(); ++w) orbit.insert(g2.act(w, qv({1, 1})));
  LatticePolytope poly = convex_hull(std::vector<QVec>(orbit.begin(), orbit.end()));
  CHECK(poly.vertices.size() == 12);
  CHECK(check_admissible(g2, poly).empty());
  // the G2 root lattice equals the weight lattice, so nothing survives the
  // wall quotient beyond the degree direction
  CHECK(group_is(aut_character_group(g2, poly), 1, {}));
}

TEST_CASE("global fiber dimension matches dim_ci across all [-2,2] strata") {
  RootSystem a1 = build_root_system("A", 1);
  auto rs = std::make_shared<RootSystem>(a1);
  WComplex support = orbit_complex(rs, seg(-2, 2));
  StrataPoset poset = enumerate_strata(a1, support, interval_marks(-2, 2));
  REQUIRE(poset.records.size() == 9);
  for (const auto& r : poset.records) {
    FiberPolytopeResult g = global_fiber_polytope(r.type);
    CHECK(g.dim == r.dim_ci);
  }
}
