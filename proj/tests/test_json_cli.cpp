#include "redvar/json_io.hpp"

#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>

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

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args, const json& input) {
  static int counter = 0;
  std::string in_path = "/tmp/redvar_cli_in_" + std::to_string(counter++) + ".json";
  {
    std::ofstream out(in_path);
    out << input.dump(2);
  }
  std::string cmd = std::string(REDVAR_CLI_PATH) + " " + args + " " + in_path + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::remove(in_path.c_str());
  return {code, output};
}

}  // namespace

TEST_CASE("rational json round-trips") {
  for (const Rat& q : {Rat(0), Rat(-3), Rat(7) / 2, Rat(-1) / 3, Rat(Int("123456789012345678901")) / 7}) {
    json j = rat_to_json(q);
    CHECK(rat_from_json(j) == q);
  }
  CHECK(rat_from_json(json("5")) == 5);
  CHECK(rat_from_json(json(-2)) == -2);
  CHECK_THROWS(rat_from_json(json("x/y")));
}

TEST_CASE("polytope json round-trip") {
  LatticePolytope p = convex_hull({qv({-2}), qv({2})});
  json j = polytope_to_json(p);
  LatticePolytope q = polytope_from_json(j);
  CHECK(p == q);
}

TEST_CASE("complex json round-trip") {
  auto rs = std::make_shared<RootSystem>(build_root_system("A", 1));
  json j;
  j["cells"] = json::array({json{{"id", "a"}, {"vertices", json::array({json::array({-2}), json::array({0})})}},
                            json{{"id", "b"}, {"vertices", json::array({json::array({0}), json::array({2})})}}});
  WComplex c = complex_from_json(rs, j);
  CHECK(c.ncells() == 5);
  CHECK(check_wcomplex(c).empty());
  json out = complex_to_json(c);
  WComplex c2 = complex_from_json(rs, out);
  CHECK(c2.ncells() == c.ncells());
}

TEST_CASE("group json shape") {
  FGAbelianGroup g = group_from_presentation(2, [] {
    IntMat m(2, 1);
    m.at(0, 0) = 0;
    m.at(1, 0) = 2;
    return m;
  }());
  json j = group_to_json(g);
  CHECK(j["free_rank"] == 1);
  CHECK(j["torsion"] == json::array({2}));
}

TEST_CASE("cli: admissibility failure exits 1 with a report") {
  json input = {{"type", "A"}, {"rank", 1}, {"polytope", {{"vertices", json::array({json::array({-1}), json::array({2})})}}}};
  RunResult r = run_cli("check", input);
  CHECK(r.exit_code == 1);
  json out = json::parse(r.output);
  REQUIRE(out.contains("errors"));
  bool disjointness = false;
  for (const auto& e : out["errors"])
    if (e.get<std::string>().find("translate") != std::string::npos) disjointness = true;
  CHECK(disjointness);
}

TEST_CASE("cli: hilbert H(0..1) of [0,2]") {
  json input = {{"type", "A"}, {"rank", 1}, {"polytope", {{"vertices", json::array({json::array({0}), json::array({2})})}}}};
  RunResult r = run_cli("hilbert --n 1", input);
  CHECK(r.exit_code == 0);
  json out = json::parse(r.output);
  CHECK(out["H"] == json::array({1, 14}));
}

TEST_CASE("cli: degenerate splits at zero") {
  json input = {{"type", "A"},
                {"rank", 1},
                {"polytope", {{"vertices", json::array({json::array({-2}), json::array({2})})}}},
                {"marks", json::array({json::array({-2}), json::array({-1}), json::array({0}),
                                       json::array({1}), json::array({2})})},
                {"heights", {{"[0]", -1}, {"[1]", 0}, {"[2]", 0}}}};
  RunResult r = run_cli("degenerate", input);
  CHECK(r.exit_code == 0);
  json out = json::parse(r.output);
  CHECK(out["cells"] == json::parse("[[[-2],[0]],[[0],[2]]]"));
  CHECK(out["marking"] == json::parse("[[-2],[0],[2]]"));
  CHECK(out["integrality_N"] == 2);
}

TEST_CASE("cli: deterministic byte-identical output") {
  json input = {{"type", "A"}, {"rank", 1}, {"polytope", {{"vertices", json::array({json::array({-2}), json::array({2})})}}},
                {"marks", json::array({json::array({-2}), json::array({-1}), json::array({0}),
                                       json::array({1}), json::array({2})})}};
  RunResult a = run_cli("fiber-polytope", input);
  RunResult b = run_cli("fiber-polytope", input);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  // emitted JSON re-parses
  json out = json::parse(a.output);
  CHECK(out["dim"] == 2);
}

TEST_CASE("cli: malformed input exits 2") {
  std::string path = "/tmp/redvar_cli_bad.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  std::string cmd = std::string(REDVAR_CLI_PATH) + " check " + path + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
  std::remove(path.c_str());
}

TEST_CASE("cli: rep oracle subcommands") {
  json input = {{"type", "A"}, {"rank", 2}, {"lambda", json::array({1, 1})}};
  RunResult r = run_cli("rep dim", input);
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.output)["dim"] == 8);

  json tin = {{"type", "A"}, {"rank", 2}, {"lambda", json::array({1, 0})}, {"mu", json::array({0, 1})}};
  RunResult t = run_cli("rep tensor", tin);
  CHECK(t.exit_code == 0);
  json tout = json::parse(t.output);
  CHECK(tout["summands"].size() == 2);
}

TEST_CASE("cli: aut and pair-groups") {
  json input = {{"type", "A"}, {"rank", 1}, {"polytope", {{"vertices", json::array({json::array({-2}), json::array({2})})}}}};
  RunResult r = run_cli("aut", input);
  CHECK(r.exit_code == 0);
  json out = json::parse(r.output);
  CHECK(out["aut_characters"]["free_rank"] == 1);
  CHECK(out["aut_characters"]["torsion"] == json::array({2}));
  CHECK(out["k_delta"] == json::array({"alpha1"}));

  json pin = {{"type", "A"}, {"rank", 1}, {"polytope", {{"vertices", json::array({json::array({0}), json::array({2})})}}},
              {"marks", json::array({json::array({-2}), json::array({0}), json::array({2})})}};
  RunResult p = run_cli("pair-groups", pin);
  CHECK(p.exit_code == 0);
  json pout = json::parse(p.output);
  CHECK(pout["L"]["free_rank"] == 0);
  CHECK(pout["K"]["torsion"] == json::array({2}));
}

TEST_CASE("cli: svg output for a subdivision") {
  json input = {{"type", "A"},
                {"rank", 1},
                {"polytope", {{"vertices", json::array({json::array({-2}), json::array({2})})}}},
                {"marks", json::array({json::array({-2}), json::array({-1}), json::array({0}),
                                       json::array({1}), json::array({2})})},
                {"heights", {{"[0]", -1}, {"[1]", 0}, {"[2]", 0}}}};
  std::string in_path = "/tmp/redvar_svg_in.json";
  std::string svg_path = "/tmp/redvar_out.svg";
  {
    std::ofstream out(in_path);
    out << input.dump();
  }
  std::string cmd = std::string(REDVAR_CLI_PATH) + " degenerate --svg " + svg_path + " " + in_path + " >/dev/null";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
  std::ifstream svg(svg_path);
  std::string text((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("<circle") != std::string::npos);
  std::remove(in_path.c_str());
  std::remove(svg_path.c_str());
}

TEST_CASE("height parsing accepts both forms") {
  json j = {{"[0]", "-1/2"}, {"[1]", 0}};
  auto m = height_map_from_json(j);
  CHECK(m[iv({0})] == Rat(-1) / 2);
  CHECK(m[iv({1})] == 0);
}

TEST_CASE("cli: table format renders the top level") {
  json input = {{"type", "A"}, {"rank", 1}, {"polytope", {{"vertices", json::array({json::array({0}), json::array({2})})}}}};
  RunResult r = run_cli("--format table hilbert --n 1", input);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("H\t[1,14]") != std::string::npos);
}

TEST_CASE("cli: strata output is deterministic") {
  json input = {{"type", "A"}, {"rank", 1}, {"polytope", {{"vertices", json::array({json::array({-1}), json::array({1})})}}}};
  RunResult a = run_cli("strata", input);
  RunResult b = run_cli("strata", input);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  json out = json::parse(a.output);
  CHECK(out["strata"].size() == 3);
}
