#include "diskpack/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "diskpack/rigidity.hpp"

namespace diskpack {

namespace {

std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string packing_to_json(const Packing& P, const nlohmann::json& meta) {
  std::ostringstream os;
  os << "{\"container\":";
  if (P.is_torus()) {
    const LatticeBasis& L = P.lattice();
    os << "{\"type\":\"torus\",\"lattice\":[" << fmt17(L.a) << "," << fmt17(L.b) << ","
       << fmt17(L.c) << "]}";
  } else {
    os << "{\"type\":\"tricusp\",\"R\":" << fmt17(P.tricusp().R) << "}";
  }
  os << ",\"centers\":[";
  for (int i = 0; i < P.n(); ++i) {
    if (i) os << ",";
    os << "[" << fmt17(P.centers[i].x) << "," << fmt17(P.centers[i].y) << "]";
  }
  os << "],\"radii\":[";
  for (int i = 0; i < P.n(); ++i) {
    if (i) os << ",";
    os << fmt17(P.radii[i]);
  }
  os << "],\"meta\":" << meta.dump() << "}";
  return os.str();
}

Packing packing_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("container") || !j.contains("centers") ||
      !j.contains("radii")) {
    throw std::invalid_argument("packing json: missing container/centers/radii");
  }
  const auto& cj = j.at("container");
  Container cont;
  double scale = 1.0;
  std::string type = cj.at("type").get<std::string>();
  if (type == "torus") {
    auto lat = cj.at("lattice");
    if (!lat.is_array() || lat.size() != 3) {
      throw std::invalid_argument("packing json: lattice must be [a,b,c]");
    }
    cont = LatticeBasis(lat[0].get<double>(), lat[1].get<double>(), lat[2].get<double>());
  } else if (type == "tricusp") {
    double R = cj.value("R", 1.0);
    if (!(R > 0.0)) throw std::invalid_argument("packing json: tricusp R must be positive");
    scale = 1.0 / R;  // the container is fixed at R = 1 internally
    cont = TricuspContainer{};
  } else {
    throw std::invalid_argument("packing json: unknown container type '" + type + "'");
  }
  std::vector<Vec2> centers;
  for (const auto& c : j.at("centers")) {
    if (!c.is_array() || c.size() != 2) {
      throw std::invalid_argument("packing json: centers must be [x,y] pairs");
    }
    centers.push_back({c[0].get<double>() * scale, c[1].get<double>() * scale});
  }
  std::vector<double> radii;
  for (const auto& r : j.at("radii")) radii.push_back(r.get<double>() * scale);
  return Packing(cont, centers, radii);
}

Packing read_packing_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::json j = nlohmann::json::parse(in);
  return packing_from_json(j);
}

void write_packing_file(const Packing& P, const std::string& path, const nlohmann::json& meta) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << packing_to_json(P, meta) << "\n";
}

nlohmann::json report_to_json(const JammingReport& rep, const ContactGraph& G) {
  nlohmann::json j;
  j["mode"] = jam_mode_name(rep.mode);
  j["n"] = rep.n;
  j["k"] = rep.k;
  j["rank"] = rep.bar_rank;
  j["stress_dim"] = rep.stress_dim;
  j["rattlers"] = rep.rattlers;
  j["jammed"] = rep.jammed;
  j["isostatic"] = rep.isostatic;
  j["tolerances"] = {{"contact_tol", rep.tolerances.contact_tol},
                     {"rank_tol", rep.tolerances.rank_tol},
                     {"guard_band", rep.tolerances.guard_band},
                     {"lp_feasibility", rep.tolerances.lp_feasibility},
                     {"stress_residual", rep.tolerances.stress_residual}};
  nlohmann::json w;
  if (rep.witness_stress) {
    w["type"] = "stress";
    // Contact labels for the spine rows, in row order; strict mode appends
    // one extra value for the area-constraint multiplier.
    std::vector<char> in(G.n, 0);
    for (int v : rep.spine) in[v] = 1;
    nlohmann::json labels = nlohmann::json::array();
    for (const Contact& c : G.contacts) {
      if (!in[c.i] || (!c.is_wall() && !in[c.j])) continue;
      labels.push_back({c.i, c.j, c.lift.z1, c.lift.z2, c.boundary});
    }
    w["contacts"] = labels;
    std::vector<double> vals(rep.witness_stress->data(),
                             rep.witness_stress->data() + rep.witness_stress->size());
    w["values"] = vals;
  } else if (rep.witness_flex) {
    w["type"] = "flex";
    std::vector<double> vals(rep.witness_flex->data(),
                             rep.witness_flex->data() + rep.witness_flex->size());
    w["values"] = vals;
  } else {
    w["type"] = "none";
  }
  j["witness"] = w;
  return j;
}

std::string trajectory_to_csv(const Trajectory& t) {
  std::ostringstream os;
  os << "iter,t,density,contacts\n";
  for (const TrajectoryRow& r : t.rows) {
    os << r.iter << "," << fmt17(r.t) << "," << fmt17(r.density) << "," << r.contacts << "\n";
  }
  return os.str();
}

std::string sweep_to_csv(const SweepResult& s) {
  std::ostringstream os;
  os << "r,density,second_diff\n";
  for (const SweepRow& r : s.rows) {
    os << fmt17(r.r) << "," << fmt17(r.density) << "," << fmt17(r.second_diff) << "\n";
  }
  return os.str();
}

nlohmann::json trial_to_json(const TrialRecord& r) {
  nlohmann::json j;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["ratios"] = r.ratios;
  j["lattice"] = {r.lattice.a, r.lattice.b, r.lattice.c};
  j["jam_success"] = r.jam_success;
  j["ambiguous"] = r.ambiguous;
  j["n_spine"] = r.n_spine;
  j["k_spine"] = r.k_spine;
  j["isostatic"] = r.isostatic;
  return j;
}

std::string experiment_to_jsonl(const ExperimentResult& e) {
  std::ostringstream os;
  for (const TrialRecord& r : e.records) os << trial_to_json(r).dump() << "\n";
  return os.str();
}

nlohmann::json experiment_summary_json(const ExperimentResult& e) {
  nlohmann::json j;
  j["trials"] = e.summary.trials;
  j["jams"] = e.summary.jams;
  j["unambiguous_jams"] = e.summary.unambiguous_jams;
  j["isostatic_count"] = e.summary.isostatic_count;
  j["isostatic_fraction"] = e.summary.isostatic_fraction;
  return j;
}

nlohmann::json triangulation_to_json(const Packing& P, const Triangulation& T,
                                     const std::vector<double>& profile) {
  nlohmann::json j;
  j["n"] = T.n;
  j["container"] = T.tricusp ? "tricusp" : "torus";
  nlohmann::json verts = nlohmann::json::array();
  for (int v = 0; v < T.n_vertices(); ++v) {
    Vec2 p = triangulation_vertex_position(P, T, v);
    verts.push_back({p.x, p.y});
  }
  j["vertices"] = verts;
  nlohmann::json edges = nlohmann::json::array();
  for (const TriEdge& e : T.edges) {
    edges.push_back({e.i, e.j, e.lift.z1, e.lift.z2, e.diagonal ? "diagonal" : "contact"});
  }
  j["edges"] = edges;
  nlohmann::json faces = nlohmann::json::array();
  for (const TriFace& f : T.faces) {
    faces.push_back({{f.a.v, f.a.lift.z1, f.a.lift.z2},
                     {f.b.v, f.b.lift.z1, f.b.lift.z2},
                     {f.c.v, f.c.lift.z1, f.c.lift.z2}});
  }
  j["faces"] = faces;
  j["profile"] = profile;
  j["counts"] = {{"edges", T.edges.size()},
                 {"contacts", T.n_contact_edges},
                 {"diagonals", T.n_diagonals()},
                 {"faces", T.faces.size()}};
  return j;
}

namespace {

struct Box {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

void svg_circle(std::ostringstream& os, const Box& bb, const Vec2& p, double r,
                const std::string& cls) {
  os << "  <circle class=\"" << cls << "\" cx=\"" << fmt6(p.x) << "\" cy=\""
     << fmt6(bb.ymax + bb.ymin - p.y) << "\" r=\"" << fmt6(r) << "\"/>\n";
}

void svg_line(std::ostringstream& os, const Box& bb, const Vec2& p, const Vec2& q,
              const std::string& cls, double width) {
  os << "  <line class=\"" << cls << "\" x1=\"" << fmt6(p.x) << "\" y1=\""
     << fmt6(bb.ymax + bb.ymin - p.y) << "\" x2=\"" << fmt6(q.x) << "\" y2=\""
     << fmt6(bb.ymax + bb.ymin - q.y) << "\"";
  if (width > 0.0) os << " stroke-width=\"" << fmt6(width) << "\"";
  os << "/>\n";
}

}  // namespace

std::string render_svg(const Packing& P, const RenderSpec& spec) {
  if (spec.copies < 1) throw std::invalid_argument("render: copies must be >= 1");
  const int m = P.is_torus() ? spec.copies : 1;

  // Analysis overlays are computed only when requested.
  ContactGraph G;
  const JammingReport* repp = nullptr;
  JammingReport rep;
  if (spec.contacts || spec.stress || spec.triangulate) {
    G = detect_contacts(P, P.default_contact_tol());
  }
  if (spec.stress) {
    if (P.is_torus()) {
      rep = test_collective_jamming(P, G);
    } else {
      rep = test_tricusp_jamming(P, G);
    }
    repp = &rep;
  }
  Triangulation T;
  if (spec.triangulate) T = complete_to_triangulation(P, G);

  Box bb;
  double rmax = 0.0;
  for (double r : P.radii) rmax = std::max(rmax, r);
  if (P.is_torus()) {
    const LatticeBasis& L = P.lattice();
    double xs[4] = {0.0, m * L.a, m * L.b, m * (L.a + L.b)};
    bb.xmin = *std::min_element(xs, xs + 4) - rmax;
    bb.xmax = *std::max_element(xs, xs + 4) + rmax;
    bb.ymin = -rmax;
    bb.ymax = m * L.c + rmax;
  } else {
    const TricuspContainer& T3 = P.tricusp();
    bb.xmin = -T3.R;
    bb.xmax = 3.0 * T3.R;
    bb.ymin = -T3.R;
    bb.ymax = (std::sqrt(3.0) + 1.0) * T3.R;
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt6(bb.xmin) << " "
     << fmt6(bb.ymin) << " " << fmt6(bb.xmax - bb.xmin) << " " << fmt6(bb.ymax - bb.ymin)
     << "\" width=\"" << fmt6(spec.canvas) << "\" height=\""
     << fmt6(spec.canvas * (bb.ymax - bb.ymin) / (bb.xmax - bb.xmin)) << "\">\n";
  double hair = 0.004 * rmax * 2.0;
  os << "  <style>\n"
     << "    .disk{fill:#9ecae1;stroke:#3182bd;stroke-width:" << fmt6(hair) << "}\n"
     << "    .rattler{fill:#fdd0a2;stroke:#e6550d;stroke-width:" << fmt6(hair) << "}\n"
     << "    .boundary{fill:none;stroke:#636363;stroke-width:" << fmt6(2.0 * hair) << "}\n"
     << "    .domain{stroke:#bdbdbd;stroke-width:" << fmt6(hair) << "}\n"
     << "    .contact{stroke:#252525}\n"
     << "    .stress-neg{stroke:#de2d26}\n"
     << "    .diagonal{stroke:#31a354;stroke-dasharray:" << fmt6(6.0 * hair) << "}\n"
     << "  </style>\n";

  std::vector<char> is_rattler(P.n(), 0);
  if (repp) {
    for (int v : repp->rattlers) is_rattler[v] = 1;
  }

  if (!P.is_torus()) {
    for (const Vec2& c : P.tricusp().centers()) {
      svg_circle(os, bb, c, P.tricusp().R, "boundary");
    }
  } else {
    const LatticeBasis& L = P.lattice();
    for (int i = 0; i <= m; ++i) {
      svg_line(os, bb, i * L.v2(), i * L.v2() + m * L.v1(), "domain", 0.0);
      svg_line(os, bb, i * L.v1(), i * L.v1() + m * L.v2(), "domain", 0.0);
    }
  }

  for (int z1 = 0; z1 < m; ++z1) {
    for (int z2 = 0; z2 < m; ++z2) {
      Vec2 off{0.0, 0.0};
      if (P.is_torus()) off = P.lattice().lift_vector({z1, z2});
      for (int i = 0; i < P.n(); ++i) {
        svg_circle(os, bb, P.centers[i] + off, P.radii[i],
                   is_rattler[i] ? "rattler" : "disk");
      }
    }
  }

  if (spec.contacts) {
    double wmax = 0.0;
    const DenseVector* stress = nullptr;
    if (repp && repp->witness_stress) {
      stress = &*repp->witness_stress;
      for (int i = 0; i < stress->size(); ++i) wmax = std::max(wmax, std::abs((*stress)(i)));
    }
    // Map spine row order back to contact ids when a stress is available.
    std::vector<double> width_of(G.contacts.size(), 0.0);
    if (stress && repp) {
      std::vector<char> in(G.n, 0);
      for (int v : repp->spine) in[v] = 1;
      int row = 0;
      for (size_t id = 0; id < G.contacts.size(); ++id) {
        const Contact& c = G.contacts[id];
        if (!in[c.i] || (!c.is_wall() && !in[c.j])) continue;
        if (row < stress->size()) {
          width_of[id] = 0.02 * rmax + 0.14 * rmax * std::abs((*stress)(row)) / (wmax > 0 ? wmax : 1.0);
        }
        ++row;
      }
    }
    for (int z1 = 0; z1 < m; ++z1) {
      for (int z2 = 0; z2 < m; ++z2) {
        Vec2 off{0.0, 0.0};
        if (P.is_torus()) off = P.lattice().lift_vector({z1, z2});
        for (size_t id = 0; id < G.contacts.size(); ++id) {
          const Contact& c = G.contacts[id];
          Vec2 a = P.centers[c.i] + off;
          Vec2 b = a - contact_edge_vector(P, c);
          double w = width_of[id] > 0.0 ? width_of[id] : 0.02 * rmax;
          svg_line(os, bb, a, b, width_of[id] > 0.0 ? "stress-neg" : "contact", w);
        }
      }
    }
  }

  if (spec.triangulate) {
    for (int z1 = 0; z1 < m; ++z1) {
      for (int z2 = 0; z2 < m; ++z2) {
        Vec2 off{0.0, 0.0};
        if (P.is_torus()) off = P.lattice().lift_vector({z1, z2});
        for (const TriEdge& e : T.edges) {
          if (!e.diagonal) continue;
          Vec2 pi = triangulation_vertex_position(P, T, e.i) + off;
          Vec2 pj = triangulation_vertex_position(P, T, e.j) + off;
          if (!T.tricusp) pj = pi - (triangulation_vertex_position(P, T, e.i) -
                                     triangulation_vertex_position(P, T, e.j) +
                                     P.lattice().lift_vector(e.lift));
          svg_line(os, bb, pi, pj, "diagonal", 0.015 * rmax);
        }
      }
    }
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace diskpack
