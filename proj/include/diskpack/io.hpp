#pragma once

#include <string>

#include <json.hpp>

#include "diskpack/experiments.hpp"
#include "diskpack/inversive.hpp"

namespace diskpack {

/// Packing files: {"container": {"type":"torus","lattice":[a,b,c]} |
/// {"type":"tricusp","R":1.0}, "centers":[[x,y],...], "radii":[r,...],
/// "meta":{...}}. Writing always emits 17 significant digits per number so
/// read-after-write reproduces every value exactly.
std::string packing_to_json(const Packing& P,
                            const nlohmann::json& meta = nlohmann::json::object());
Packing packing_from_json(const nlohmann::json& j);
Packing read_packing_file(const std::string& path);
void write_packing_file(const Packing& P, const std::string& path,
                        const nlohmann::json& meta = nlohmann::json::object());

nlohmann::json report_to_json(const JammingReport& rep, const ContactGraph& G);

std::string trajectory_to_csv(const Trajectory& t);
std::string sweep_to_csv(const SweepResult& s);
std::string experiment_to_jsonl(const ExperimentResult& e);
nlohmann::json experiment_summary_json(const ExperimentResult& e);
nlohmann::json trial_to_json(const TrialRecord& r);

nlohmann::json triangulation_to_json(const Packing& P, const Triangulation& T,
                                     const std::vector<double>& profile);

struct RenderSpec {
  int copies = 1;           // m x m tiling of the fundamental domain (torus)
  bool contacts = true;
  bool stress = false;      // stress magnitudes as stroke widths + rattler classes
  bool triangulate = false; // dashed diagonals
  double canvas = 800.0;
};

/// Deterministic SVG: disks as one circle element per copy, contacts as
/// lines, fundamental domain outlined by thin lattice lines. Fixed
/// 6-decimal coordinate formatting.
std::string render_svg(const Packing& P, const RenderSpec& spec);

}  // namespace diskpack
