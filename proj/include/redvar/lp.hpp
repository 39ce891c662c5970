#pragma once

#include "redvar/linalg.hpp"

#include <optional>
#include <vector>

namespace redvar {

// Linear constraint systems over exact rationals, decided by Fourier-Motzkin
// elimination.  Scale is small (<= ~12 variables), so the quadratic row
// growth per step is acceptable; rows are deduplicated after normalization.
enum class Rel { LE, LT, EQ };

struct LinRow {
  QVec coeffs;
  Rat rhs;
  Rel rel = Rel::LE;
};

struct LinearSystem {
  int nvars = 0;
  std::vector<LinRow> rows;

  explicit LinearSystem(int n = 0) : nvars(n) {}
  void add(const QVec& coeffs, const Rat& rhs, Rel rel) { rows.push_back({coeffs, rhs, rel}); }
  void add_int(const IntVec& coeffs, const Rat& rhs, Rel rel) { rows.push_back({to_qvec(coeffs), rhs, rel}); }
};

struct FMResult {
  bool feasible = false;
  QVec witness;  // length nvars when feasible
  // When infeasible: multipliers over the original rows combining to a
  // contradictory row (nonnegative on LE/LT rows, any sign on EQ rows).
  QVec certificate;
};

// Feasibility of the system with strict rows honored exactly.
FMResult fm_feasible(const LinearSystem& sys);

struct SlackResult {
  bool system_consistent = false;  // the relaxed (non-strict) system is solvable
  bool bounded = false;            // the slack has a finite upper bound
  Rat max_slack;                   // valid when bounded
  QVec witness;                    // a point with slack = witness_slack when consistent
  Rat witness_slack;
  QVec certificate;                // dual ray when max_slack <= 0 or inconsistent
};

// Replace every strict row c.x < b by c.x + t <= b and maximize t.  The
// strict system is feasible iff the optimum is positive (or unbounded).
SlackResult fm_max_slack(const LinearSystem& sys);

// Test-side helper: does the multiplier vector really derive a contradiction?
bool check_certificate(const LinearSystem& sys, const QVec& lambda);

}  // namespace redvar
