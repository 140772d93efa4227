#include "hofer/reports.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hofer {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

nlohmann::json bound_report_json(const BoundReport& rep, const H1Class& alpha, double A) {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["kind"] = "bounds";
    j["A"] = A;
    j["class"] = alpha.coeffs;
    j["lower"] = {{"value", rep.lower.value}, {"provenance", rep.lower.provenance}};
    j["upper"] = {{"value", rep.upper.value}, {"provenance", rep.upper.provenance}};
    j["area_scale"] = rep.area_scale;
    return j;
}

nlohmann::json transport_report_json(const TransportReport& rep, double energy) {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["kind"] = "transport";
    j["T"] = rep.time;
    j["sym_diff"] = rep.sym_diff;
    j["sym_diff_frac"] = rep.sym_diff_frac;
    j["area_drift_frac"] = rep.area_drift_frac;
    j["interior_escapes"] = rep.interior_escapes;
    j["used_rk4_fallback"] = rep.used_rk4_fallback;
    j["hofer_energy"] = energy;
    j["pass"] = rep.pass;
    return j;
}

nlohmann::json median_json(const MedianPoint& med) {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["kind"] = "median";
    j["on_arc"] = med.on_arc;
    if (med.on_arc)
        j["arc"] = med.arc;
    else
        j["node"] = med.node;
    j["level"] = med.level;
    j["worst_component"] = med.worst_component;
    return j;
}

std::string tree_dot(const MeasuredReebTree& tree) {
    std::ostringstream out;
    out << "graph reeb_tree {\n";
    for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
        const auto& node = tree.nodes[n];
        out << "  n" << n << " [label=\"level " << fmt(node.level);
        if (node.is_atom()) out << "\\natom " << fmt(node.atom_measure);
        out << "\"];\n";
    }
    for (const auto& a : tree.arcs) {
        out << "  n" << a.node_lo << " -- n" << a.node_hi << " [label=\"[" << fmt(a.level_lo)
            << ", " << fmt(a.level_hi) << "] m=" << fmt(a.measure()) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string arc_measure_csv(const MeasuredReebTree& tree) {
    std::ostringstream out;
    out << "arc_id,sample_level,cumulative_measure\n";
    for (std::size_t a = 0; a < tree.arcs.size(); ++a) {
        const auto& arc = tree.arcs[a];
        const std::size_t n = arc.cumulative.size();
        for (std::size_t k = 0; k < n; ++k) {
            double level = arc.level_lo + (arc.level_hi - arc.level_lo) * k / (n - 1);
            out << a << ',' << fmt(level) << ',' << fmt(arc.cumulative[k]) << '\n';
        }
    }
    return out.str();
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << "t,theta,h\n";
    for (std::size_t k = 0; k < traj.points.size(); ++k)
        out << fmt(traj.times[k]) << ',' << fmt(traj.points[k].x) << ',' << fmt(traj.points[k].y)
            << '\n';
    return out.str();
}

std::string sweep_csv(const std::vector<std::pair<double, double>>& rows) {
    std::ostringstream out;
    out << "s2,rho_raw\n";
    for (auto [s2, rho] : rows) out << fmt(s2) << ',' << fmt(rho) << '\n';
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f) throw ConfigError("cannot open output file: " + path);
    f << content;
}

}  // namespace hofer
