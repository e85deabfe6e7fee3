#include "diskpack/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "diskpack/io.hpp"

namespace diskpack {

namespace {

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad numeric list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty numeric list");
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

int analyze_exit_code(const JammingReport& rep) {
  if (rep.ambiguous) return 4;
  return rep.jammed ? 0 : 3;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"diskpack: jam, analyze and render disk packings on flat tori and in the tricusp"};
  app.require_subcommand(1);

  // jam
  auto* jam_cmd = app.add_subcommand("jam", "grow a random seed packing until it jams");
  std::string jam_container = "torus", jam_lattice = "1,0,1", jam_ratios, jam_mode = "collective";
  std::string jam_out, jam_traj;
  int jam_n = 0;
  std::uint64_t jam_seed = 0;
  int jam_max_iters = 2000;
  jam_cmd->add_option("--container", jam_container)->check(CLI::IsMember({"torus", "tricusp"}));
  jam_cmd->add_option("--lattice", jam_lattice, "a,b,c of the torus lattice");
  jam_cmd->add_option("--n", jam_n)->required();
  jam_cmd->add_option("--ratios", jam_ratios, "comma separated radius ratios")->required();
  jam_cmd->add_option("--seed", jam_seed)->required();
  jam_cmd->add_option("--mode", jam_mode)->check(CLI::IsMember({"collective", "strict"}));
  jam_cmd->add_option("--out", jam_out)->required();
  jam_cmd->add_option("--traj", jam_traj);
  jam_cmd->add_option("--max-iters", jam_max_iters);

  // analyze
  auto* an_cmd = app.add_subcommand("analyze", "jamming report for a packing file");
  std::string an_file, an_mode = "auto";
  double an_tol = -1.0;
  an_cmd->add_option("file", an_file)->required();
  an_cmd->add_option("--mode", an_mode)
      ->check(CLI::IsMember({"auto", "collective", "strict", "tricusp"}));
  an_cmd->add_option("--tol", an_tol, "contact tolerance override");

  // catalog
  auto* cat_cmd = app.add_subcommand("catalog", "write a named packing from the catalog");
  std::string cat_name, cat_out;
  bool cat_list = false;
  cat_cmd->add_option("name", cat_name);
  cat_cmd->add_option("--out", cat_out);
  cat_cmd->add_flag("--list", cat_list);

  // sweep-binary
  auto* sw_cmd = app.add_subcommand("sweep-binary", "binary density curve");
  double sw_from = 0.0, sw_to = 0.0;
  int sw_steps = 0;
  std::string sw_out;
  sw_cmd->add_option("--from", sw_from)->required();
  sw_cmd->add_option("--to", sw_to)->required();
  sw_cmd->add_option("--steps", sw_steps)->required();
  sw_cmd->add_option("--out", sw_out)->required();

  // experiment
  auto* ex_cmd = app.add_subcommand("experiment", "isostatic trial series");
  int ex_n = 0, ex_trials = 20;
  std::uint64_t ex_seed = 0;
  double ex_spread = 0.1;
  std::string ex_lattice = "generic", ex_out;
  ex_cmd->add_option("--n", ex_n)->required();
  ex_cmd->add_option("--trials", ex_trials);
  ex_cmd->add_option("--seed", ex_seed)->required();
  ex_cmd->add_option("--lattice", ex_lattice)
      ->check(CLI::IsMember({"generic", "square", "rect"}));
  ex_cmd->add_option("--spread", ex_spread);
  ex_cmd->add_option("--out", ex_out)->required();

  // render
  auto* rd_cmd = app.add_subcommand("render", "SVG picture of a packing file");
  std::string rd_file, rd_out;
  int rd_copies = 1;
  bool rd_stress = false, rd_tri = false;
  rd_cmd->add_option("file", rd_file)->required();
  rd_cmd->add_option("--copies", rd_copies);
  rd_cmd->add_option("--out", rd_out)->required();
  rd_cmd->add_flag("--stress", rd_stress);
  rd_cmd->add_flag("--triangulate", rd_tri);

  // inversive
  auto* inv_cmd = app.add_subcommand("inversive", "triangulation and inversive profile");
  std::string inv_file, inv_out;
  inv_cmd->add_option("file", inv_file)->required();
  inv_cmd->add_option("--out", inv_out)->required();

  std::vector<const char*> argv;
  argv.push_back("diskpack");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*jam_cmd) {
      if (jam_n < 1) throw std::invalid_argument("--n must be at least 1");
      auto ratios = parse_csv_doubles(jam_ratios);
      if (static_cast<int>(ratios.size()) != jam_n) {
        throw std::invalid_argument("--ratios must list exactly n values");
      }
      Container cont;
      JamMode mode;
      if (jam_container == "tricusp") {
        if (jam_mode == "strict") throw std::invalid_argument("strict mode needs a torus");
        cont = TricuspContainer{};
        mode = JamMode::Tricusp;
      } else {
        auto abc = parse_csv_doubles(jam_lattice);
        if (abc.size() != 3) throw std::invalid_argument("--lattice must be a,b,c");
        cont = LatticeBasis(abc[0], abc[1], abc[2]);
        mode = (jam_mode == "strict") ? JamMode::Strict : JamMode::Collective;
      }
      Packing seed_pack = seed_random(jam_n, ratios, cont, jam_seed);
      DriverConfig cfg = DriverConfig::defaults_for(seed_pack, mode, jam_seed);
      cfg.max_outer = jam_max_iters;
      JamOutcome res = jam(seed_pack, cfg);
      nlohmann::json meta = {{"tool", "diskpack jam"},
                             {"seed", jam_seed},
                             {"mode", jam_mode},
                             {"jammed", res.success},
                             {"termination", res.trajectory.termination}};
      write_packing_file(res.packing, jam_out, meta);
      if (!jam_traj.empty()) write_text_file(jam_traj, trajectory_to_csv(res.trajectory));
      out << report_to_json(res.report,
                            detect_contacts(res.packing, res.packing.default_contact_tol()))
                 .dump()
          << "\n";
      return res.success ? 0 : 2;
    }

    if (*an_cmd) {
      Packing P = read_packing_file(an_file);
      JamMode mode;
      if (an_mode == "auto") {
        mode = P.is_torus() ? JamMode::Collective : JamMode::Tricusp;
      } else if (an_mode == "collective") {
        mode = JamMode::Collective;
      } else if (an_mode == "strict") {
        mode = JamMode::Strict;
      } else {
        mode = JamMode::Tricusp;
      }
      double tol = an_tol > 0.0 ? an_tol : P.default_contact_tol();
      ContactGraph G = detect_contacts(P, tol);
      JammingReport rep = test_jamming(P, G, mode);
      out << report_to_json(rep, G).dump() << "\n";
      return analyze_exit_code(rep);
    }

    if (*cat_cmd) {
      if (cat_list) {
        for (const auto& n : catalog_names()) out << n << "\n";
        return 0;
      }
      if (cat_name.empty()) throw std::invalid_argument("catalog: name required");
      Packing P = catalog(cat_name);
      nlohmann::json meta = {{"tool", "diskpack catalog"}, {"name", cat_name}};
      if (cat_out.empty()) {
        out << packing_to_json(P, meta) << "\n";
      } else {
        write_packing_file(P, cat_out, meta);
      }
      return 0;
    }

    if (*sw_cmd) {
      SweepResult s = binary_sweep(sw_from, sw_to, sw_steps);
      write_text_file(sw_out, sweep_to_csv(s));
      return 0;
    }

    if (*ex_cmd) {
      LatticeMode lm = ex_lattice == "square"  ? LatticeMode::Square
                       : ex_lattice == "rect" ? LatticeMode::Rect
                                              : LatticeMode::Generic;
      ExperimentResult res = isostatic_experiment(ex_n, ex_trials, ex_spread, lm, ex_seed);
      write_text_file(ex_out, experiment_to_jsonl(res));
      out << experiment_summary_json(res).dump() << "\n";
      return 0;
    }

    if (*rd_cmd) {
      Packing P = read_packing_file(rd_file);
      RenderSpec spec;
      spec.copies = rd_copies;
      spec.stress = rd_stress;
      spec.triangulate = rd_tri;
      write_text_file(rd_out, render_svg(P, spec));
      return 0;
    }

    if (*inv_cmd) {
      Packing P = read_packing_file(inv_file);
      ContactGraph G = detect_contacts(P, P.default_contact_tol());
      Triangulation T = complete_to_triangulation(P, G);
      auto profile = inversive_profile(P, T);
      write_text_file(inv_out, triangulation_to_json(P, T, profile).dump() + "\n");
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace diskpack
