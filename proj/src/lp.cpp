#include "redvar/lp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace redvar {

namespace {

struct WorkRow {
  QVec coeffs;
  Rat rhs;
  bool strict = false;
  QVec prov;  // multipliers over the original rows
};

struct Engine {
  int nvars = 0;
  size_t norig = 0;
  std::vector<WorkRow> rows;
  std::vector<std::vector<WorkRow>> snapshots;  // rows involving var k, per k

  // contradiction certificate, set on failure
  QVec certificate;

  bool contradictory(const WorkRow& r) const {
    for (const auto& c : r.coeffs)
      if (c != 0) return false;
    return r.strict ? r.rhs <= 0 : r.rhs < 0;
  }

  bool trivially_true(const WorkRow& r) const {
    for (const auto& c : r.coeffs)
      if (c != 0) return false;
    return r.strict ? r.rhs > 0 : r.rhs >= 0;
  }

  // normalize scale for deduplication
  static std::pair<QVec, std::pair<Rat, bool>> key_of(const WorkRow& r) {
    Rat scale = 0;
    for (const auto& c : r.coeffs)
      if (c != 0) { scale = abs(c); break; }
    if (scale == 0) scale = 1;
    QVec k = r.coeffs;
    for (auto& c : k) c /= scale;
    return {k, {r.rhs / scale, r.strict}};
  }

  // returns false on contradiction
  bool eliminate(int var) {
    std::vector<WorkRow> lower, upper, rest;
    for (auto& r : rows) {
      if (r.coeffs[var] > 0)
        upper.push_back(std::move(r));
      else if (r.coeffs[var] < 0)
        lower.push_back(std::move(r));
      else
        rest.push_back(std::move(r));
    }
    snapshots[var].clear();
    for (const auto& r : lower) snapshots[var].push_back(r);
    for (const auto& r : upper) snapshots[var].push_back(r);

    std::map<std::pair<QVec, std::pair<Rat, bool>>, bool> seen;
    std::vector<WorkRow> out;
    for (auto& r : rest) {
      if (contradictory(r)) { certificate = r.prov; return false; }
      if (trivially_true(r)) continue;
      auto k = key_of(r);
      if (seen.emplace(k, true).second) out.push_back(std::move(r));
    }
    for (const auto& lo : lower)
      for (const auto& up : upper) {
        Rat a = -lo.coeffs[var];  // > 0
        Rat b = up.coeffs[var];   // > 0
        WorkRow nr;
        nr.coeffs.resize(nvars, Rat(0));
        for (int j = 0; j < nvars; ++j) nr.coeffs[j] = lo.coeffs[j] / a + up.coeffs[j] / b;
        nr.rhs = lo.rhs / a + up.rhs / b;
        nr.strict = lo.strict || up.strict;
        nr.prov.resize(norig, Rat(0));
        for (size_t j = 0; j < norig; ++j) nr.prov[j] = lo.prov[j] / a + up.prov[j] / b;
        if (contradictory(nr)) { certificate = nr.prov; return false; }
        if (trivially_true(nr)) continue;
        auto k = key_of(nr);
        if (seen.emplace(k, true).second) out.push_back(std::move(nr));
      }
    rows = std::move(out);
    return true;
  }

  // interval for var given values of vars < var, from the snapshot rows
  struct Interval {
    bool has_lo = false, has_hi = false;
    Rat lo, hi;
    bool lo_strict = false, hi_strict = false;
  };

  Interval interval_at(int var, const QVec& partial) const {
    Interval iv;
    for (const auto& r : snapshots[var]) {
      Rat rest = r.rhs;
      for (int j = 0; j < var; ++j) rest -= r.coeffs[j] * partial[j];
      Rat bound = rest / r.coeffs[var];
      if (r.coeffs[var] > 0) {
        if (!iv.has_hi || bound < iv.hi) {
          iv.has_hi = true;
          iv.hi = bound;
          iv.hi_strict = r.strict;
        } else if (bound == iv.hi && r.strict) {
          iv.hi_strict = true;
        }
      } else {
        // coeff < 0: c*x <= b  =>  x >= b/c
        if (!iv.has_lo || bound > iv.lo) {
          iv.has_lo = true;
          iv.lo = bound;
          iv.lo_strict = r.strict;
        } else if (bound == iv.lo && r.strict) {
          iv.lo_strict = true;
        }
      }
    }
    return iv;
  }
};

Engine build_engine(const LinearSystem& sys) {
  Engine e;
  e.nvars = sys.nvars;
  e.norig = sys.rows.size();
  e.snapshots.resize(std::max(sys.nvars, 1));
  for (size_t i = 0; i < sys.rows.size(); ++i) {
    const LinRow& r = sys.rows[i];
    if (static_cast<int>(r.coeffs.size()) != sys.nvars) throw std::invalid_argument("lp: row width");
    auto push = [&](const QVec& c, const Rat& b, bool strict, const Rat& sign) {
      WorkRow w;
      w.coeffs = c;
      w.rhs = b;
      w.strict = strict;
      w.prov.assign(e.norig, Rat(0));
      w.prov[i] = sign;
      e.rows.push_back(std::move(w));
    };
    if (r.rel == Rel::EQ) {
      push(r.coeffs, r.rhs, false, Rat(1));
      QVec neg = r.coeffs;
      for (auto& c : neg) c = -c;
      push(neg, -r.rhs, false, Rat(-1));
    } else {
      push(r.coeffs, r.rhs, r.rel == Rel::LT, Rat(1));
    }
  }
  return e;
}

Rat pick_in_interval(const Engine::Interval& iv) {
  if (!iv.has_lo && !iv.has_hi) return 0;
  if (!iv.has_lo) return iv.hi_strict ? iv.hi - 1 : iv.hi;
  if (!iv.has_hi) return iv.lo_strict ? iv.lo + 1 : iv.lo;
  if (iv.lo == iv.hi) return iv.lo;  // both non-strict here, or upstream caught it
  return (iv.lo + iv.hi) / 2;
}

}  // namespace

FMResult fm_feasible(const LinearSystem& sys) {
  Engine e = build_engine(sys);
  FMResult res;
  for (int v = sys.nvars - 1; v >= 0; --v) {
    if (!e.eliminate(v)) {
      res.feasible = false;
      res.certificate = e.certificate;
      return res;
    }
  }
  for (const auto& r : e.rows) {
    if (e.contradictory(r)) {
      res.feasible = false;
      res.certificate = r.prov;
      return res;
    }
  }
  res.feasible = true;
  res.witness.assign(sys.nvars, Rat(0));
  for (int v = 0; v < sys.nvars; ++v) {
    auto iv = e.interval_at(v, res.witness);
    res.witness[v] = pick_in_interval(iv);
  }
  return res;
}

SlackResult fm_max_slack(const LinearSystem& sys) {
  // variable 0 is the slack; x variables shift up by one
  LinearSystem aug(sys.nvars + 1);
  for (const auto& r : sys.rows) {
    QVec c(sys.nvars + 1, Rat(0));
    for (int j = 0; j < sys.nvars; ++j) c[j + 1] = r.coeffs[j];
    if (r.rel == Rel::LT) {
      c[0] = 1;
      aug.add(c, r.rhs, Rel::LE);
    } else {
      aug.add(c, r.rhs, r.rel);
    }
  }
  Engine e = build_engine(aug);
  SlackResult res;
  for (int v = sys.nvars; v >= 1; --v) {
    if (!e.eliminate(v)) {
      res.system_consistent = false;
      res.certificate = e.certificate;
      return res;
    }
  }
  // remaining rows involve only the slack (or nothing)
  for (const auto& r : e.rows) {
    if (e.contradictory(r)) {
      res.system_consistent = false;
      res.certificate = r.prov;
      return res;
    }
  }
  res.system_consistent = true;
  Rat best_hi;
  bool has_hi = false;
  QVec best_prov;
  for (const auto& r : e.rows) {
    if (r.coeffs[0] > 0) {
      Rat bound = r.rhs / r.coeffs[0];
      if (!has_hi || bound < best_hi) {
        has_hi = true;
        best_hi = bound;
        best_prov = r.prov;
      }
    }
  }
  res.bounded = has_hi;
  if (has_hi) {
    res.max_slack = best_hi;
    if (best_hi <= 0) res.certificate = best_prov;
  }
  // choose a slack value and back-substitute
  Rat t = !has_hi ? Rat(1) : (best_hi > 1 ? Rat(1) : best_hi / 2);
  res.witness_slack = t;
  QVec partial(sys.nvars + 1, Rat(0));
  partial[0] = t;
  for (int v = 1; v <= sys.nvars; ++v) {
    auto iv = e.interval_at(v, partial);
    partial[v] = pick_in_interval(iv);
  }
  res.witness.assign(partial.begin() + 1, partial.end());
  return res;
}

bool check_certificate(const LinearSystem& sys, const QVec& lambda) {
  if (lambda.size() != sys.rows.size()) return false;
  QVec combo(sys.nvars, Rat(0));
  Rat rhs = 0;
  bool strict = false;
  for (size_t i = 0; i < sys.rows.size(); ++i) {
    if (lambda[i] == 0) continue;
    const LinRow& r = sys.rows[i];
    if (r.rel != Rel::EQ && lambda[i] < 0) return false;
    for (int j = 0; j < sys.nvars; ++j) combo[j] += lambda[i] * r.coeffs[j];
    rhs += lambda[i] * r.rhs;
    if (r.rel == Rel::LT && lambda[i] > 0) strict = true;
  }
  for (const auto& c : combo)
    if (c != 0) return false;
  return strict ? rhs <= 0 : rhs < 0;
}

}  // namespace redvar
