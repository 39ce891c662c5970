// redvar: exact combinatorial invariants of polarized stable reductive
// varieties and pairs.  One job per process; deterministic JSON output.

#include "redvar/json_io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace redvar;

namespace {

struct Caps {
  int weyl_order = 10000;
  int hull_dim = 4;
  long long dilation = 20;
  long enum_limit = 200000;
};

void apply_env_caps(Caps& caps) {
  const char* env = std::getenv("REDVAR_CAPS");
  if (!env) return;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    std::string key = item.substr(0, eq);
    long long val = std::stoll(item.substr(eq + 1));
    if (key == "weyl_order") caps.weyl_order = static_cast<int>(val);
    if (key == "hull_dim") caps.hull_dim = static_cast<int>(val);
    if (key == "dilation") caps.dilation = val;
    if (key == "enum") caps.enum_limit = static_cast<long>(val);
  }
}

json load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  json j;
  in >> j;
  return j;
}

int emit(const json& out, const std::string& format) {
  if (format == "table") {
    // flat two-column rendering of the top level
    for (const auto& [k, v] : out.items()) std::cout << k << "\t" << v.dump() << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int fail(const std::vector<std::string>& errors) {
  json out;
  out["errors"] = report_to_json(errors);
  std::cout << out.dump(2) << "\n";
  return 1;
}

std::vector<IntVec> marks_from_json(const json& j) {
  std::vector<IntVec> out;
  for (const auto& m : j) out.push_back(intvec_from_json(m));
  return out;
}

struct Job {
  json input;
  Caps caps;
  std::string format = "json";
  std::string svg_path;

  RootSystem root_system() const { return rootsystem_from_json(input, caps.weyl_order); }

  WComplex complex(std::shared_ptr<const RootSystem> rs) const {
    if (input.contains("cells")) return complex_from_json(rs, input, caps.hull_dim);
    if (input.contains("support") && input.at("support").contains("cells"))
      return complex_from_json(rs, input.at("support"), caps.hull_dim);
    LatticePolytope delta;
    if (input.contains("polytope"))
      delta = polytope_from_json(input.at("polytope"), caps.hull_dim);
    else if (input.contains("support"))
      delta = polytope_from_json(input.at("support"), caps.hull_dim);
    else
      throw std::invalid_argument("input needs cells, polytope, or support");
    return orbit_complex(rs, delta);
  }
};

int run_check(const Job& job) {
  RootSystem rs = job.root_system();
  if (!job.input.contains("cells")) {
    LatticePolytope delta = polytope_from_json(job.input.at("polytope"), job.caps.hull_dim);
    auto report = check_admissible(rs, delta);
    if (!report.empty()) return fail(report);
    json out;
    out["admissible"] = true;
    out["polytope"] = polytope_to_json(delta);
    return emit(out, job.format);
  }
  auto rs_ptr = std::make_shared<RootSystem>(rs);
  WComplex c = complex_from_json(rs_ptr, job.input, job.caps.hull_dim);
  auto report = check_wcomplex(c);
  if (!report.empty()) return fail(report);
  json out;
  out["valid"] = true;
  out["multiplicity_free"] = is_multiplicity_free(c);
  out["orbit_count"] = orbit_count(c);
  if (job.input.contains("marks")) {
    MarkedType t = check_marking(c, marks_from_json(job.input.at("marks")));
    out["marks"] = marked_type_to_json(t)["marks"];
  }
  return emit(out, job.format);
}

int run_aut(const Job& job) {
  RootSystem rs = job.root_system();
  LatticePolytope delta = polytope_from_json(job.input.at("polytope"), job.caps.hull_dim);
  json out;
  json kd = json::array();
  for (int i : k_delta(rs, delta)) kd.push_back("alpha" + std::to_string(i + 1));
  out["k_delta"] = kd;
  out["aut_characters"] = group_to_json(aut_character_group(rs, delta));
  return emit(out, job.format);
}

int run_pair_groups(const Job& job) {
  RootSystem rs = job.root_system();
  LatticePolytope delta = polytope_from_json(job.input.at("polytope"), job.caps.hull_dim);
  PairSequence ps = pair_sequence(rs, delta, marks_from_json(job.input.at("marks")));
  return emit(pair_sequence_to_json(ps), job.format);
}

int run_cohomology(const Job& job) {
  RootSystem rs = job.root_system();
  auto rs_ptr = std::make_shared<RootSystem>(rs);
  WComplex c = job.complex(rs_ptr);
  json out;
  ComplexCohomology cc = aut_complex_cohomology(c);
  out["aut_complex"] = {{"H0", group_to_json(cc.h0)}, {"H1", group_to_json(cc.h1)}};
  if (job.input.contains("marks")) {
    MarkedType t = check_marking(c, marks_from_json(job.input.at("marks")));
    PairCohomology pc = pair_moduli_cohomology(t);
    out["pair"] = {{"aut_characters", group_to_json(pc.aut_chars)},
                   {"iso_characters", group_to_json(pc.iso_chars)}};
  }
  return emit(out, job.format);
}

int run_degenerate(const Job& job) {
  RootSystem rs = job.root_system();
  HeightData heights = heights_from_json(job.input);
  CoherentSubdivision sub;
  if (job.input.contains("cells")) {
    auto rs_ptr = std::make_shared<RootSystem>(rs);
    WComplex c = complex_from_json(rs_ptr, job.input, job.caps.hull_dim);
    MarkedType t = check_marking(c, marks_from_json(job.input.at("marks")));
    sub = degenerate_complex(t, heights);
  } else {
    LatticePolytope delta = polytope_from_json(job.input.at("polytope"), job.caps.hull_dim);
    std::map<IntVec, Rat> plain;
    if (job.input.contains("heights")) {
      plain = height_map_from_json(job.input.at("heights"));
    } else if (heights.cell_heights.size() == 1) {
      plain = heights.cell_heights.begin()->second;
    } else {
      throw std::invalid_argument("degenerate needs heights (or cell_heights with one entry)");
    }
    sub = degenerate(rs, delta, marks_from_json(job.input.at("marks")), plain);
  }
  if (!job.svg_path.empty()) {
    std::ofstream svg(job.svg_path);
    svg << svg_of_subdivision(sub);
  }
  return emit(subdivision_to_json(sub), job.format);
}

int run_coherent(const Job& job) {
  RootSystem rs = job.root_system();
  LatticePolytope delta = polytope_from_json(job.input.at("polytope"), job.caps.hull_dim);
  auto rs_ptr = std::make_shared<RootSystem>(rs);
  WComplex cand = complex_from_json(rs_ptr, job.input.at("candidate"), job.caps.hull_dim);
  std::vector<IntVec> marking = marks_from_json(job.input.at("marking"));
  std::vector<IntVec> ambient;
  if (job.input.contains("ambient_marks")) ambient = marks_from_json(job.input.at("ambient_marks"));
  CoherenceResult res = is_coherent(rs, delta, cand, marking, ambient);
  json out;
  out["coherent"] = res.coherent;
  if (res.coherent) {
    json w;
    for (const auto& [k, v] : res.witness) w[intvec_to_json(k).dump()] = rat_to_json(v);
    out["witness_heights"] = w;
  } else {
    out["certificate"] = qvec_to_json(res.certificate);
  }
  return emit(out, job.format);
}

int run_fiber(const Job& job) {
  RootSystem rs = job.root_system();
  FiberPolytopeResult f;
  if (job.input.contains("cells")) {
    auto rs_ptr = std::make_shared<RootSystem>(rs);
    WComplex c = complex_from_json(rs_ptr, job.input, job.caps.hull_dim);
    MarkedType t = check_marking(c, marks_from_json(job.input.at("marks")));
    f = global_fiber_polytope(t);
  } else {
    LatticePolytope delta = polytope_from_json(job.input.at("polytope"), job.caps.hull_dim);
    f = fiber_polytope(rs, delta, marks_from_json(job.input.at("marks")));
  }
  return emit(fiber_to_json(f), job.format);
}

int run_strata(const Job& job) {
  RootSystem rs = job.root_system();
  auto rs_ptr = std::make_shared<RootSystem>(rs);
  WComplex support = job.complex(rs_ptr);
  std::vector<IntVec> marks;
  if (job.input.contains("marks")) {
    marks = marks_from_json(job.input.at("marks"));
  } else {
    std::set<IntVec> pts;
    for (const auto& cell : support.cells)
      for (const auto& p : lattice_points(cell.poly)) pts.insert(p);
    marks.assign(pts.begin(), pts.end());
  }
  StrataPoset poset = enumerate_strata(rs, support, marks, job.caps.enum_limit);
  return emit(strata_to_json(poset), job.format);
}

int run_hilbert(const Job& job, long long nmax) {
  RootSystem rs = job.root_system();
  auto rs_ptr = std::make_shared<RootSystem>(rs);
  WComplex c = job.complex(rs_ptr);
  json values = json::array();
  for (long long n = 0; n <= nmax; ++n)
    values.push_back(int_to_json(hilbert_function(rs, c, Int(n), Int(job.caps.dilation))));
  json out;
  out["H"] = values;
  return emit(out, job.format);
}

int run_rep(const Job& job, const std::string& sub, long long nmax) {
  RootSystem rs = job.root_system();
  IntVec lambda = intvec_from_json(job.input.at("lambda"));
  json out;
  if (sub == "dim") {
    out["dim"] = int_to_json(weyl_dim(rs, lambda));
  } else if (sub == "char") {
    Character ch = character(rs, lambda);
    json mults;
    for (const auto& [w, m] : ch.dominant_multiplicities) mults[intvec_to_json(w).dump()] = int_to_json(m);
    out["dominant_multiplicities"] = mults;
    out["total"] = int_to_json(ch.total_multiplicity(rs));
  } else if (sub == "tensor") {
    IntVec mu = intvec_from_json(job.input.at("mu"));
    json terms = json::array();
    for (const auto& [nu, m] : tensor_decompose(rs, lambda, mu)) {
      json t;
      t["weight"] = intvec_to_json(nu);
      t["mult"] = int_to_json(m);
      terms.push_back(t);
    }
    out["summands"] = terms;
  } else if (sub == "lemma") {
    LatticePolytope face = polytope_from_json(job.input.at("face"), job.caps.hull_dim);
    TensorPowerReport rep = verify_tensor_power_lemma(rs, lambda, face, Int(nmax));
    out["mu"] = qvec_to_json(rep.mu);
    out["found"] = rep.found;
    if (rep.found) {
      out["N0"] = int_to_json(rep.n0);
      json tested = json::array();
      for (const auto& n : rep.tested) tested.push_back(int_to_json(n));
      out["tested_multiples"] = tested;
      json skipped = json::array();
      for (const auto& n : rep.skipped) skipped.push_back(int_to_json(n));
      out["skipped_multiples"] = skipped;
    }
  } else {
    throw std::invalid_argument("unknown rep subcommand '" + sub + "'");
  }
  return emit(out, job.format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact invariants of polarized stable reductive varieties"};
  app.require_subcommand(1);

  Job job;
  apply_env_caps(job.caps);
  std::string input_path;
  long long nmax = 1;
  std::string rep_sub;
  long long seed = 0;

  app.add_option("--format", job.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", seed, "accepted for harness compatibility; unused");
  app.add_option("--max-weyl-order", job.caps.weyl_order, "Weyl group materialization cap");
  app.add_option("--max-dim", job.caps.hull_dim, "ambient dimension cap");
  app.add_option("--max-dilation", job.caps.dilation, "Hilbert dilation cap");
  app.add_option("--max-enum", job.caps.enum_limit, "enumeration step cap");

  auto add_input = [&](CLI::App* cmd) { cmd->add_option("input", input_path, "JSON input file")->required(); };

  CLI::App* c_check = app.add_subcommand("check", "validate a polytope or complex");
  add_input(c_check);
  CLI::App* c_aut = app.add_subcommand("aut", "automorphism character group of X_delta");
  add_input(c_aut);
  CLI::App* c_pair = app.add_subcommand("pair-groups", "L and K of a marked cell");
  add_input(c_pair);
  CLI::App* c_coh = app.add_subcommand("cohomology", "H0/H1 of the Aut and pair complexes");
  add_input(c_coh);
  CLI::App* c_deg = app.add_subcommand("degenerate", "lower-envelope degeneration");
  add_input(c_deg);
  c_deg->add_option("--svg", job.svg_path, "write an SVG of the subdivision");
  CLI::App* c_cohr = app.add_subcommand("coherent", "height witness for a candidate subdivision");
  add_input(c_cohr);
  CLI::App* c_fib = app.add_subcommand("fiber-polytope", "fiber polytope of a marked type");
  add_input(c_fib);
  CLI::App* c_str = app.add_subcommand("strata", "enumerate coherent marked subdivisions");
  add_input(c_str);
  CLI::App* c_hil = app.add_subcommand("hilbert", "Hilbert function of the support");
  add_input(c_hil);
  c_hil->add_option("--n", nmax, "compute H(0..n)");
  CLI::App* c_rep = app.add_subcommand("rep", "representation-theoretic oracles");
  c_rep->add_option("sub", rep_sub, "dim | char | tensor | lemma")->required();
  add_input(c_rep);
  c_rep->add_option("--n-max", nmax, "multiple cap for the tensor-power lemma");

  CLI11_PARSE(app, argc, argv);

  try {
    job.input = load_input(input_path);
  } catch (const std::exception& e) {
    json out;
    out["errors"] = json::array({e.what()});
    std::cout << out.dump(2) << "\n";
    return 2;
  }

  try {
    if (c_check->parsed()) return run_check(job);
    if (c_aut->parsed()) return run_aut(job);
    if (c_pair->parsed()) return run_pair_groups(job);
    if (c_coh->parsed()) return run_cohomology(job);
    if (c_deg->parsed()) return run_degenerate(job);
    if (c_cohr->parsed()) return run_coherent(job);
    if (c_fib->parsed()) return run_fiber(job);
    if (c_str->parsed()) return run_strata(job);
    if (c_hil->parsed()) return run_hilbert(job, nmax);
    if (c_rep->parsed()) return run_rep(job, rep_sub, nmax);
  } catch (const ValidationError& e) {
    return fail(e.entries);
  } catch (const CapError& e) {
    return fail({e.what()});
  } catch (const DimCapError& e) {
    return fail({e.what()});
  } catch (const json::exception& e) {
    json out;
    out["errors"] = json::array({e.what()});
    std::cout << out.dump(2) << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    json out;
    out["errors"] = json::array({e.what()});
    std::cout << out.dump(2) << "\n";
    return 2;
  }
  return 0;
}
