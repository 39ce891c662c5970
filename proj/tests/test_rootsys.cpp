#include "redvar/rootsys.hpp"

#include "doctest.h"

#include <set>

using namespace redvar;

TEST_CASE("orders of small Weyl groups") {
  CHECK(build_root_system("A", 1).weyl_order() == 2);
  CHECK(build_root_system("A", 2).weyl_order() == 6);   // closure of two reflections = S_3
  CHECK(build_root_system("B", 2).weyl_order() == 8);   // closure of the generators
  CHECK(build_root_system("G", 2).weyl_order() == 12);
  CHECK(build_root_system("A", 3).weyl_order() == 24);
  CHECK(build_root_system("C", 3).weyl_order() == 48);
  CHECK(build_root_system("D", 4).weyl_order() == 192);
}

TEST_CASE("invariants of the element list") {
  for (const char* s : {"A", "B", "G"}) {
    RootSystem rs = build_root_system(s, 2);
    // every element permutes the roots and has determinant +-1
    std::set<IntVec> roots;
    for (const auto& r : rs.positive_roots) {
      roots.insert(r);
      IntVec neg(r.size());
      for (size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
      roots.insert(neg);
    }
    CHECK(roots.size() == 2 * rs.positive_roots.size());
    for (const auto& w : rs.weyl_elements) {
      Int d = det_int(w);
      CHECK((d == 1 || d == -1));
      for (const auto& r : roots) CHECK(roots.count(mat_apply(w, r)));
    }
    // Cartan matrix shape
    for (int i = 0; i < rs.rank; ++i)
      for (int j = 0; j < rs.rank; ++j) {
        if (i == j)
          CHECK(rs.cartan.at(i, j) == 2);
        else
          CHECK(rs.cartan.at(i, j) <= 0);
      }
  }
}

TEST_CASE("weyl order cap") {
  CHECK_THROWS_AS(build_root_system("A", 2, 3), CapError);
  CHECK_THROWS_AS(build_root_system("E", 6), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system("D", 2), std::invalid_argument);
}

TEST_CASE("simple root coordinates") {
  RootSystem a1 = build_root_system("A", 1);
  CHECK(a1.simple_roots[0] == IntVec{Int(2)});
  RootSystem a2 = build_root_system("A", 2);
  CHECK(a2.simple_roots[0] == IntVec{Int(2), Int(-1)});
  CHECK(a2.positive_roots.size() == 3);
  RootSystem g2 = build_root_system("G", 2);
  CHECK(g2.positive_roots.size() == 6);
}

TEST_CASE("dominance") {
  RootSystem a1 = build_root_system("A", 1);
  CHECK(is_dominant(a1, {Rat(3)}));
  CHECK(is_dominant(a1, {Rat(0)}));
  RootSystem a2 = build_root_system("A", 2);
  CHECK(!is_dominant(a2, {Rat(1), Rat(-1)}));
  CHECK(is_dominant(a2, {Rat(0), Rat(0)}));
  CHECK_THROWS(is_dominant(a2, {Rat(1)}));
}

TEST_CASE("dominant representative") {
  RootSystem a1 = build_root_system("A", 1);
  auto r = dominant_representative(a1, {Rat(-3)});
  CHECK(r.dominant == WeightVector{Rat(3)});
  CHECK(r.weyl_index != a1.identity_index());

  RootSystem a2 = build_root_system("A", 2);
  // s1(a, b) = (-a, a+b), so (-1, 2) lifts to (1, 1) under s1
  auto r2 = dominant_representative(a2, {Rat(-1), Rat(2)});
  CHECK(r2.dominant == WeightVector{Rat(1), Rat(1)});
  CHECK(r2.weyl_index == a2.simple_reflection(0));

  auto r3 = dominant_representative(a2, {Rat(0), Rat(0)});
  CHECK(r3.weyl_index == a2.identity_index());
  CHECK(r3.dominant == WeightVector{Rat(0), Rat(0)});

  // idempotence
  auto r4 = dominant_representative(a2, r2.dominant);
  CHECK(r4.weyl_index == a2.identity_index());
  CHECK(r4.dominant == r2.dominant);
}

TEST_CASE("stabilizers") {
  RootSystem a1 = build_root_system("A", 1);
  auto s1 = stabilizer_of_vertices(a1, {{Rat(-2)}, {Rat(2)}});
  CHECK(s1.size() == 2);
  auto s2 = stabilizer_of_vertices(a1, {{Rat(0)}, {Rat(2)}});
  REQUIRE(s2.size() == 1);
  CHECK(s2[0] == a1.identity_index());

  // the A2 orbit polytope of (1,1) is stable under all 6 elements
  RootSystem a2 = build_root_system("A", 2);
  std::set<QVec> orbit;
  for (int w = 0; w < a2.weyl_order(); ++w) orbit.insert(a2.act(w, {Rat(1), Rat(1)}));
  CHECK(orbit.size() == 6);
  auto s3 = stabilizer_of_vertices(a2, std::vector<WeightVector>(orbit.begin(), orbit.end()));
  CHECK(s3.size() == 6);
}

TEST_CASE("orbit-stabilizer bookkeeping") {
  RootSystem a2 = build_root_system("A", 2);
  for (const WeightVector& v : {WeightVector{Rat(1), Rat(1)}, WeightVector{Rat(2), Rat(0)}, WeightVector{Rat(0), Rat(0)}}) {
    std::set<QVec> orbit;
    for (int w = 0; w < a2.weyl_order(); ++w) orbit.insert(a2.act(w, v));
    auto stab = stabilizer_of_vertices(a2, {v});
    CHECK(orbit.size() * stab.size() == static_cast<size_t>(a2.weyl_order()));
  }
}

TEST_CASE("integrality is preserved by the action") {
  RootSystem b2 = build_root_system("B", 2);
  for (int w = 0; w < b2.weyl_order(); ++w) {
    IntVec img = b2.act_int(w, IntVec{Int(2), Int(-1)});
    CHECK(img.size() == 2);
  }
}

TEST_CASE("regular orbits have a unique strictly dominant member") {
  RootSystem a2 = build_root_system("A", 2);
  for (const WeightVector& v : {WeightVector{Rat(1), Rat(2)}, WeightVector{Rat(3), Rat(1)}}) {
    int strict = 0;
    std::set<QVec> orbit;
    for (int w = 0; w < a2.weyl_order(); ++w) orbit.insert(a2.act(w, v));
    CHECK(orbit.size() == static_cast<size_t>(a2.weyl_order()));  // regular
    for (const auto& u : orbit) {
      bool s = true;
      for (const auto& c : u)
        if (c <= 0) s = false;
      if (s) ++strict;
    }
    CHECK(strict == 1);
  }
}
