#include "redvar/lp.hpp"

#include "doctest.h"

using namespace redvar;

namespace {

QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

bool satisfies(const LinearSystem& sys, const QVec& x) {
  for (const auto& r : sys.rows) {
    Rat lhs = dot_q(r.coeffs, x);
    switch (r.rel) {
      case Rel::LE:
        if (!(lhs <= r.rhs)) return false;
        break;
      case Rel::LT:
        if (!(lhs < r.rhs)) return false;
        break;
      case Rel::EQ:
        if (!(lhs == r.rhs)) return false;
        break;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("feasible box with witness") {
  LinearSystem sys(2);
  sys.add(qv({1, 0}), Rat(2), Rel::LE);
  sys.add(qv({-1, 0}), Rat(0), Rel::LE);
  sys.add(qv({0, 1}), Rat(1), Rel::LT);
  sys.add(qv({0, -1}), Rat(0), Rel::LT);
  auto r = fm_feasible(sys);
  REQUIRE(r.feasible);
  CHECK(satisfies(sys, r.witness));
}

TEST_CASE("strict infeasibility with certificate") {
  // x < 0 and x > 0
  LinearSystem sys(1);
  sys.add(qv({1}), Rat(0), Rel::LT);
  sys.add(qv({-1}), Rat(0), Rel::LT);
  auto r = fm_feasible(sys);
  REQUIRE(!r.feasible);
  CHECK(check_certificate(sys, r.certificate));
}

TEST_CASE("equalities") {
  LinearSystem sys(2);
  sys.add(qv({1, 1}), Rat(2), Rel::EQ);
  sys.add(qv({1, -1}), Rat(0), Rel::EQ);
  auto r = fm_feasible(sys);
  REQUIRE(r.feasible);
  CHECK(r.witness == QVec{Rat(1), Rat(1)});

  sys.add(qv({1, 0}), Rat(0), Rel::LT);
  auto r2 = fm_feasible(sys);
  REQUIRE(!r2.feasible);
  CHECK(check_certificate(sys, r2.certificate));
}

TEST_CASE("boundary strictness matters") {
  LinearSystem weak(1), strict(1);
  weak.add(qv({1}), Rat(1), Rel::LE);
  weak.add(qv({-1}), Rat(-1), Rel::LE);
  strict.add(qv({1}), Rat(1), Rel::LT);
  strict.add(qv({-1}), Rat(-1), Rel::LE);
  CHECK(fm_feasible(weak).feasible);
  CHECK(!fm_feasible(strict).feasible);
}

TEST_CASE("slack maximization") {
  // x <= 3, x >= 1 strictly on both sides: max slack 1 at x = 2
  LinearSystem sys(1);
  sys.add(qv({1}), Rat(3), Rel::LT);
  sys.add(qv({-1}), Rat(-1), Rel::LT);
  auto r = fm_max_slack(sys);
  REQUIRE(r.system_consistent);
  REQUIRE(r.bounded);
  CHECK(r.max_slack == 1);
  CHECK(r.witness_slack > 0);
  // witness satisfies the strict system
  CHECK(r.witness[0] < 3);
  CHECK(r.witness[0] > 1);
}

TEST_CASE("slack certificate for empty strict interior") {
  // x <= 1 and x >= 1 strictly: slack optimum 0
  LinearSystem sys(1);
  sys.add(qv({1}), Rat(1), Rel::LT);
  sys.add(qv({-1}), Rat(-1), Rel::LT);
  auto r = fm_max_slack(sys);
  REQUIRE(r.system_consistent);
  REQUIRE(r.bounded);
  CHECK(r.max_slack == 0);
  CHECK(!r.certificate.empty());
}

TEST_CASE("unbounded slack") {
  LinearSystem sys(1);
  sys.add(qv({-1}), Rat(0), Rel::LT);  // x > 0
  auto r = fm_max_slack(sys);
  REQUIRE(r.system_consistent);
  CHECK(!r.bounded);
  CHECK(r.witness[0] > 0);
}

TEST_CASE("higher-dimensional feasibility") {
  // simplex interior: x, y, z > 0, x + y + z < 1
  LinearSystem sys(3);
  sys.add(qv({-1, 0, 0}), Rat(0), Rel::LT);
  sys.add(qv({0, -1, 0}), Rat(0), Rel::LT);
  sys.add(qv({0, 0, -1}), Rat(0), Rel::LT);
  sys.add(qv({1, 1, 1}), Rat(1), Rel::LT);
  auto r = fm_feasible(sys);
  REQUIRE(r.feasible);
  CHECK(satisfies(sys, r.witness));
}
