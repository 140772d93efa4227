#pragma once

#include <string>

#include "json.hpp"

#include "hofer/constructions.hpp"
#include "hofer/flow.hpp"
#include "hofer/homology.hpp"
#include "hofer/reeb.hpp"

namespace hofer {

// All JSON reports carry this schema tag.
inline constexpr const char* kSchema = "hofer-spectrum/1";

nlohmann::json bound_report_json(const BoundReport& rep, const H1Class& alpha, double A);
nlohmann::json transport_report_json(const TransportReport& rep, double energy);
nlohmann::json median_json(const MedianPoint& med);

// Contour tree as DOT (nodes labelled with level and atomic measure, arcs
// with their level interval and measure).
std::string tree_dot(const MeasuredReebTree& tree);
// Arc cumulative-measure samples: arc_id,sample_level,cumulative_measure.
std::string arc_measure_csv(const MeasuredReebTree& tree);
// Trajectory samples: t,theta,h.
std::string trajectory_csv(const Trajectory& traj);
// Sweep rows: s2,rho_raw.
std::string sweep_csv(const std::vector<std::pair<double, double>>& rows);

void write_file(const std::string& path, const std::string& content);

}  // namespace hofer
