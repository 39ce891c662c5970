#include "redvar/json_io.hpp"

#include <algorithm>
#include <limits>

namespace redvar {

namespace {

const Int kInt64Max = Int(std::numeric_limits<long long>::max());
const Int kInt64Min = Int(std::numeric_limits<long long>::min());

std::string key_of_point(const IntVec& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(int_to_json(x));
  return j.dump();
}

IntVec point_of_key(const std::string& s) {
  json j = json::parse(s);
  return intvec_from_json(j);
}

}  // namespace

json int_to_json(const Int& n) {
  if (n <= kInt64Max && n >= kInt64Min) return json(static_cast<long long>(n));
  return json(n.str());
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    Rat q = parse_rat(j.get<std::string>());
    if (!is_integer(q)) throw std::invalid_argument("expected an integer");
    return rat_num(q);
  }
  throw std::invalid_argument("expected an integer");
}

json rat_to_json(const Rat& q) {
  if (is_integer(q)) return int_to_json(rat_num(q));
  return json(rat_to_string(q));
}

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw std::invalid_argument("expected a rational (integer or \"p/q\")");
}

json intvec_to_json(const IntVec& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(int_to_json(x));
  return j;
}

IntVec intvec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of integers");
  IntVec v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

json qvec_to_json(const QVec& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(rat_to_json(x));
  return j;
}

QVec qvec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  QVec v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return v;
}

RootSystem rootsystem_from_json(const json& j, int weyl_cap) {
  if (!j.contains("type") || !j.contains("rank")) throw std::invalid_argument("root system needs type and rank");
  return build_root_system(j.at("type").get<std::string>(), j.at("rank").get<int>(), weyl_cap);
}

json group_to_json(const FGAbelianGroup& g) {
  json j;
  j["free_rank"] = g.free_rank;
  json tor = json::array();
  for (const auto& d : g.invariant_factors) tor.push_back(int_to_json(d));
  j["torsion"] = tor;
  return j;
}

json polytope_to_json(const LatticePolytope& p) {
  json j;
  json verts = json::array();
  for (const auto& v : p.vertices) verts.push_back(qvec_to_json(v));
  j["vertices"] = verts;
  j["dim"] = p.dim;
  j["lattice"] = p.is_lattice;
  return j;
}

LatticePolytope polytope_from_json(const json& j, int dim_cap) {
  if (!j.contains("vertices")) throw std::invalid_argument("polytope needs vertices");
  std::vector<QVec> pts;
  for (const auto& v : j.at("vertices")) pts.push_back(qvec_from_json(v));
  if (pts.empty()) throw std::invalid_argument("polytope needs at least one vertex");
  return convex_hull(pts, dim_cap);
}

WComplex complex_from_json(std::shared_ptr<const RootSystem> rs, const json& j, int dim_cap) {
  if (!j.contains("cells")) throw std::invalid_argument("complex needs cells");
  bool has_rel = j.contains("face_relations");
  bool has_act = j.contains("w_action");
  std::vector<std::pair<std::string, LatticePolytope>> cells;
  int auto_id = 0;
  for (const auto& cj : j.at("cells")) {
    std::string id = cj.contains("id") ? cj.at("id").get<std::string>() : ("c" + std::to_string(auto_id));
    ++auto_id;
    std::vector<QVec> pts;
    for (const auto& v : cj.at("vertices")) pts.push_back(qvec_from_json(v));
    cells.emplace_back(id, convex_hull(pts, dim_cap));
  }
  if (!has_rel && !has_act) {
    std::vector<LatticePolytope> polys;
    for (auto& [id, p] : cells) polys.push_back(p);
    return embedded_complex(std::move(rs), polys, true);
  }
  std::vector<std::pair<std::string, std::string>> face_pairs;
  if (has_rel)
    for (const auto& fp : j.at("face_relations"))
      face_pairs.emplace_back(fp.at(0).get<std::string>(), fp.at(1).get<std::string>());
  std::map<int, std::map<std::string, std::string>> gen_action;
  if (has_act) {
    for (const auto& [key, val] : j.at("w_action").items()) {
      if (key.size() < 2 || key[0] != 's') throw std::invalid_argument("w_action keys look like s1, s2, ...");
      int g = std::stoi(key.substr(1)) - 1;
      for (const auto& [cid, target] : val.items()) gen_action[g][cid] = target.get<std::string>();
    }
  }
  return abstract_complex(std::move(rs), cells, face_pairs, gen_action);
}

json complex_to_json(const WComplex& c) {
  json j;
  json cells = json::array();
  for (const auto& cell : c.cells) {
    json cj;
    cj["id"] = cell.id;
    json verts = json::array();
    for (const auto& v : cell.poly.vertices) verts.push_back(qvec_to_json(v));
    cj["vertices"] = verts;
    cj["dim"] = cell.poly.dim;
    cells.push_back(cj);
  }
  j["cells"] = cells;
  return j;
}

json marked_type_to_json(const MarkedType& t) {
  json j = complex_to_json(t.complex);
  json marks = json::array();
  for (const auto& m : t.marks) marks.push_back(intvec_to_json(m));
  j["marks"] = marks;
  return j;
}

json subdivision_to_json(const CoherentSubdivision& s) {
  json j;
  json cells = json::array();
  for (int i : s.subdivision.maximal_cells()) {
    json verts = json::array();
    for (const auto& v : s.subdivision.cells[i].poly.vertices) verts.push_back(qvec_to_json(v));
    cells.push_back(verts);
  }
  j["cells"] = cells;
  json marks = json::array();
  for (const auto& m : s.marking.marks) marks.push_back(intvec_to_json(m));
  j["marking"] = marks;
  j["integrality_N"] = int_to_json(s.integrality_n);
  json envs;
  for (const auto& [id, pl] : s.envelopes) {
    json cellfns = json::array();
    for (const auto& c : pl.cells) {
      json e;
      json verts = json::array();
      for (const auto& v : c.poly.vertices) verts.push_back(qvec_to_json(v));
      e["cell"] = verts;
      e["coeffs"] = qvec_to_json(c.coeffs);
      e["constant"] = rat_to_json(c.constant);
      cellfns.push_back(e);
    }
    envs[id] = cellfns;
  }
  j["envelopes"] = envs;
  return j;
}

json fiber_to_json(const FiberPolytopeResult& f) {
  json j;
  j["dim"] = f.dim;
  json gkz = json::array();
  for (const auto& v : f.gkz_vertices) gkz.push_back(intvec_to_json(v));
  j["gkz_vertices"] = gkz;
  j["polytope"] = polytope_to_json(f.polytope);
  json certs;
  for (const auto& [v, sub] : f.vertex_subdivisions) certs[key_of_point(v)] = subdivision_to_json(sub);
  j["vertex_subdivisions"] = certs;
  return j;
}

json pair_sequence_to_json(const PairSequence& ps) {
  json j;
  json cp = json::array();
  for (const auto& c : ps.cplus) cp.push_back(intvec_to_json(c));
  j["cplus"] = cp;
  j["L"] = group_to_json(ps.l_group);
  j["K"] = group_to_json(ps.k_group);
  j["aut_characters"] = group_to_json(ps.target.group);
  return j;
}

json strata_to_json(const StrataPoset& s) {
  json j;
  json recs = json::array();
  for (const auto& r : s.records) {
    json rj;
    rj["type"] = marked_type_to_json(r.type);
    rj["dim_ci"] = r.dim_ci;
    rj["dim_general"] = int_to_json(r.dim_general);
    rj["aut_order"] = int_to_json(r.aut_order);
    json w;
    for (const auto& [k, v] : r.witness_heights) w[key_of_point(k)] = rat_to_json(v);
    rj["witness_heights"] = w;
    recs.push_back(rj);
  }
  j["strata"] = recs;
  json leq = json::array();
  for (const auto& [a, b] : s.leq_pairs) leq.push_back(json::array({a, b}));
  j["leq"] = leq;
  return j;
}

std::map<IntVec, Rat> height_map_from_json(const json& j) {
  std::map<IntVec, Rat> out;
  for (const auto& [key, val] : j.items()) out[point_of_key(key)] = rat_from_json(val);
  return out;
}

HeightData heights_from_json(const json& j) {
  HeightData h;
  if (j.contains("cell_heights"))
    for (const auto& [cid, hm] : j.at("cell_heights").items()) h.cell_heights[cid] = height_map_from_json(hm);
  if (j.contains("gamma"))
    for (const auto& [fid, gm] : j.at("gamma").items()) h.gamma[fid] = height_map_from_json(gm);
  return h;
}

json report_to_json(const std::vector<std::string>& report) {
  json j = json::array();
  for (const auto& r : report) j.push_back(r);
  return j;
}

namespace {

Int scale_coord(const Rat& x, const Rat& lo, const Rat& hi, Int pixels, Int margin) {
  if (hi == lo) return margin + pixels / 2;
  return margin + floor_rat((x - lo) / (hi - lo) * Rat(pixels));
}

}  // namespace

std::string svg_of_subdivision(const CoherentSubdivision& s) {
  const WComplex& c = s.subdivision;
  int amb = c.cells.empty() ? 0 : c.cells[0].poly.ambient;
  if (amb < 1 || amb > 2) throw ValidationError({"svg rendering supports 1- and 2-dimensional subdivisions"});
  Rat lox, hix, loy, hiy;
  bool first = true;
  for (const auto& cell : c.cells)
    for (const auto& v : cell.poly.vertices) {
      Rat x = v[0], y = amb == 2 ? v[1] : Rat(0);
      if (first || x < lox) lox = x;
      if (first || x > hix) hix = x;
      if (first || y < loy) loy = y;
      if (first || y > hiy) hiy = y;
      first = false;
    }
  const Int w = 560, margin = 20;
  auto px = [&](const QVec& v) {
    Int x = scale_coord(v[0], lox, hix, w, margin);
    Int y = scale_coord(amb == 2 ? v[1] : Rat(0), loy, hiy, w, margin);
    return std::make_pair(x, Int(600) - y);
  };
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"620\">\n";
  for (int i : c.maximal_cells()) {
    const auto& poly = c.cells[i].poly;
    if (poly.dim >= 2) {
      // order the boundary vertices by walking the facets
      svg += "<polygon points=\"";
      std::vector<QVec> ordered = poly.vertices;
      // simple angular sort is unavailable without reals; order by walking
      // facet adjacency instead
      std::vector<QVec> cycle;
      std::vector<LatticePolytope> edges = facet_polytopes(poly);
      QVec cur = poly.vertices[0];
      QVec prev;
      cycle.push_back(cur);
      for (size_t step = 0; step + 1 < poly.vertices.size(); ++step) {
        for (const auto& e : edges) {
          if (e.vertices.size() != 2) continue;
          if (e.vertices[0] == cur && (cycle.size() < 2 || e.vertices[1] != prev)) {
            prev = cur;
            cur = e.vertices[1];
            cycle.push_back(cur);
            break;
          }
          if (e.vertices[1] == cur && (cycle.size() < 2 || e.vertices[0] != prev)) {
            prev = cur;
            cur = e.vertices[0];
            cycle.push_back(cur);
            break;
          }
        }
      }
      for (const auto& v : cycle) {
        auto [x, y] = px(v);
        svg += x.str() + "," + y.str() + " ";
      }
      svg += "\" fill=\"none\" stroke=\"black\"/>\n";
    } else if (poly.dim == 1) {
      auto [x1, y1] = px(poly.vertices[0]);
      auto [x2, y2] = px(poly.vertices[1]);
      svg += "<line x1=\"" + x1.str() + "\" y1=\"" + y1.str() + "\" x2=\"" + x2.str() + "\" y2=\"" +
             y2.str() + "\" stroke=\"black\"/>\n";
    }
  }
  for (const auto& m : s.marking.marks) {
    auto [x, y] = px(to_qvec(m));
    svg += "<circle cx=\"" + x.str() + "\" cy=\"" + y.str() + "\" r=\"4\" fill=\"black\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace redvar
