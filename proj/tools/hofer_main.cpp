// hofer-spectrum command line: Hofer-geometry invariants of symplectic
// surfaces. Subcommands: rho, reeb, simulate, construct, bounds, verify.
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"

#include "hofer/acceptance.hpp"
#include "hofer/config.hpp"
#include "hofer/constructions.hpp"
#include "hofer/reports.hpp"

namespace {

using namespace hofer;

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    double grid = -1, slabs = -1, step = -1, seed = -1, A = -1, s1 = -1, s2 = -1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file (key-value tree)");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--grid", grid, "field grid resolution per axis");
        cmd->add_option("--slabs", slabs, "cumulative-measure samples per unit level");
        cmd->add_option("--step", step, "integration step bound");
        cmd->add_option("--seed", seed, "seed for randomized sweeps");
        cmd->add_option("--A", A, "disk area A (normalized surface area 1)");
        cmd->add_option("--s1", s1, "lower gluing parameter");
        cmd->add_option("--s2", s2, "upper gluing parameter");
    }

    RunConfig resolve() const {
        KeyValueTree overrides;
        auto put = [&](const char* key, double v) {
            if (v >= 0) overrides.set(key, std::to_string(v));
        };
        if (!out_dir.empty()) overrides.set("output.dir", out_dir);
        put("field.grid", grid);
        put("field.slabs", slabs);
        put("simulate.step", step);
        put("output.seed", seed);
        put("params.A", A);
        put("params.s1", s1);
        put("params.s2", s2);
        RunConfig cfg = make_run_config(config_path, overrides);
        cfg.validate();
        return cfg;
    }
};

CalabiOptions calabi_options(const RunConfig& cfg) {
    CalabiOptions o;
    o.reeb.slabs_per_unit = cfg.slabs;
    return o;
}

int cmd_rho(const CommonFlags& flags) {
    RunConfig cfg = flags.resolve();
    auto H = cfg.load_field();
    auto opts = calabi_options(cfg);

    nlohmann::json j;
    j["schema"] = kSchema;
    j["kind"] = "rho";
    j["A"] = cfg.A;
    j["s1"] = cfg.s1;
    j["s2"] = cfg.s2;
    j["area_scale"] = cfg.tree.get_number("surface.area", 1.0);
    double raw = rho_raw(H, cfg.A, cfg.s1, cfg.s2, opts);
    j["rho_raw"] = raw;
    j["rho_normalized"] = raw / (2 * cfg.A * (cfg.s2 - cfg.s1));

    if (H.chart().kind == ChartKind::PlanarSquare) {
        auto surface = cfg.surface();
        if (!surface.puncture_positions.empty())
            j["rho_vector"] =
                rho_vector(H, surface.puncture_positions, cfg.A, cfg.s1, cfg.s2, opts);
    }

    auto sweep = cfg.tree.get_numbers("rho.sweep");
    if (!sweep.empty()) {
        std::vector<std::pair<double, double>> rows;
        for (double s2 : sweep) rows.emplace_back(s2, rho_raw(H, cfg.A, cfg.s1, s2, opts));
        write_file(cfg.out_dir + "/rho_sweep.csv", sweep_csv(rows));
        j["sweep_csv"] = "rho_sweep.csv";
    }
    write_file(cfg.out_dir + "/rho.json", j.dump(2) + "\n");
    std::printf("rho_raw = %.9g, rho_normalized = %.9g  (reports in %s)\n", raw,
                raw / (2 * cfg.A * (cfg.s2 - cfg.s1)), cfg.out_dir.c_str());
    return 0;
}

int cmd_reeb(const CommonFlags& flags) {
    RunConfig cfg = flags.resolve();
    auto H = cfg.load_field();
    double s = cfg.tree.get_number("reeb.s", cfg.s1);
    auto sphere = build_sphere(H, s, cfg.A);
    ReebOptions ropts;
    ropts.slabs_per_unit = cfg.slabs;
    auto tree = build_contour_tree(sphere, ropts);
    auto median = find_median(tree);

    write_file(cfg.out_dir + "/reeb_tree.dot", tree_dot(tree));
    write_file(cfg.out_dir + "/arc_measures.csv", arc_measure_csv(tree));
    nlohmann::json j = median_json(median);
    j["total_measure"] = tree.total_measure;
    j["nodes"] = tree.nodes.size();
    j["arcs"] = tree.arcs.size();
    write_file(cfg.out_dir + "/median.json", j.dump(2) + "\n");
    std::printf("tree: %zu nodes, %zu arcs, total measure %.9g; median level %.9g (%s)\n",
                tree.nodes.size(), tree.arcs.size(), tree.total_measure, median.level,
                cfg.out_dir.c_str());
    return 0;
}

int cmd_simulate(const CommonFlags& flags) {
    RunConfig cfg = flags.resolve();
    auto H = cfg.load_field();
    auto x0s = cfg.tree.get_numbers("simulate.x0");
    if (x0s.empty()) x0s = {0.0, 0.5};
    if (x0s.size() % 2 != 0) throw ConfigError("simulate.x0 needs x y pairs");
    double T = cfg.tree.get_number("simulate.T", 1.0);

    nlohmann::json j;
    j["schema"] = kSchema;
    j["kind"] = "simulate";
    j["T"] = T;
    j["hofer_energy"] = hofer_energy(H, T);
    nlohmann::json trajs = nlohmann::json::array();
    for (std::size_t i = 0; i + 1 < x0s.size(); i += 2) {
        Vec2 x0{x0s[i], x0s[i + 1]};
        auto traj = integrate_flow(H, x0, T, cfg.step);
        char name[64];
        std::snprintf(name, sizeof(name), "trajectory_%03zu.csv", i / 2);
        write_file(cfg.out_dir + "/" + name, trajectory_csv(traj));
        nlohmann::json tj;
        tj["file"] = name;
        tj["used_rk4_fallback"] = traj.used_rk4_fallback;

        double closure = cfg.tree.get_number("simulate.closure_radius", 0.0);
        if (closure > 0) {
            auto surface = cfg.surface();
            auto wv = trajectory_class(traj, surface.puncture_positions.empty()
                                                 ? std::vector<Vec2>{}
                                                 : surface.puncture_positions,
                                       x0, closure);
            tj["winding"] = wv.winding;
            tj["residuals"] = wv.residuals;
        }
        trajs.push_back(tj);
    }
    j["trajectories"] = trajs;
    write_file(cfg.out_dir + "/simulate.json", j.dump(2) + "\n");
    std::printf("simulated %zu trajectories to T = %g, energy %.9g (%s)\n", x0s.size() / 2, T,
                hofer_energy(H, T), cfg.out_dir.c_str());
    return 0;
}

int cmd_construct(const CommonFlags& flags) {
    RunConfig cfg = flags.resolve();
    std::string kind = cfg.tree.get_string("construct.kind", "swap");
    double A = cfg.tree.get_number("construct.A", 0.2);
    PipeSpec pipes;
    pipes.width = cfg.tree.get_number("construct.width", pipes.width);
    pipes.smoothing = cfg.tree.get_number("construct.smoothing", pipes.smoothing);

    ChannelField cf;
    Region target;
    if (kind == "swap") {
        cf = make_swap(A, pipes);
        target = cf.disks[1];
    } else if (kind == "loop") {
        int sign = cfg.tree.get_int("construct.sign", 1);
        cf = make_loop_translation(A, sign, pipes);
        target = cf.disks[0];
    } else {
        throw ConfigError("construct.kind must be 'swap' or 'loop'");
    }

    CalibrationOptions copts;
    copts.step = cfg.step;
    double lo = cfg.tree.get_number("construct.window_lo", 0.8 * A);
    double hi = cfg.tree.get_number("construct.window_hi", 1.45 * A);
    auto cal = calibrate_transport_time(cf.field, cf.disks[0], target, lo, hi, copts);
    TransportOptions topts;
    topts.step = cfg.step;
    double tol = cfg.tree.get_number("construct.tolerance", 0.05);
    auto rep = verify_transport(cf.field, cf.disks[0], target, cal.T_star, tol, topts);
    double energy = hofer_energy(cf.field, cal.T_star);

    nlohmann::json j = transport_report_json(rep, energy);
    j["construction"] = kind;
    j["A"] = A;
    j["pipe_width"] = pipes.width;
    j["channel_area"] = cf.channel_area;
    j["support_area"] = cf.support_area;
    write_file(cfg.out_dir + "/transport.json", j.dump(2) + "\n");
    std::printf("%s: T* = %.6g, symdiff %.3g%% of A, energy %.6g, %s (%s)\n", kind.c_str(),
                cal.T_star, 100 * rep.sym_diff_frac, energy, rep.pass ? "pass" : "FAIL",
                cfg.out_dir.c_str());
    return rep.pass ? 0 : 1;
}

int cmd_bounds(const CommonFlags& flags) {
    RunConfig cfg = flags.resolve();
    auto surface = cfg.surface();
    auto groups = cfg.tree.get_int_groups("bounds.classes");
    if (groups.empty()) {
        auto single = cfg.tree.get_int_groups("bounds.class");
        groups = single;
    }
    if (groups.empty()) throw ConfigError("bounds.classes is required (semicolon-separated)");

    nlohmann::json list = nlohmann::json::array();
    for (const auto& coeffs : groups) {
        H1Class alpha;
        if (surface.genus == 0) {
            if (coeffs.size() != static_cast<std::size_t>(surface.punctures))
                throw ConfigError("class length must equal the puncture count");
            alpha = make_genus0_class(coeffs);
        } else if (surface.genus >= 1 && coeffs.size() == 2 && surface.punctures == 0) {
            alpha = make_torus_class(coeffs[0], coeffs[1]);
        } else {
            std::vector<long long> ms(coeffs.begin(), coeffs.end() - 1);
            alpha = make_punctured_torus_class(ms, coeffs.back());
        }
        double A_abs = cfg.A * surface.area;
        auto rep = l_a_bounds(surface.genus, surface.punctures, surface.area, A_abs, alpha);
        list.push_back(bound_report_json(rep, alpha, cfg.A));
    }
    nlohmann::json j;
    j["schema"] = kSchema;
    j["kind"] = "bounds_list";
    j["reports"] = list;
    write_file(cfg.out_dir + "/bounds.json", j.dump(2) + "\n");
    for (const auto& item : list)
        std::printf("class %s: lower %.6g (%s), upper %.6g (%s)\n",
                    item["class"].dump().c_str(), item["lower"]["value"].get<double>(),
                    item["lower"]["provenance"].get<std::string>().c_str(),
                    item["upper"]["value"].get<double>(),
                    item["upper"]["provenance"].get<std::string>().c_str());
    return 0;
}

int cmd_verify(const CommonFlags& flags) {
    std::string out_dir = flags.out_dir.empty() ? "out" : flags.out_dir;
    int failures = 0;
    nlohmann::json list = nlohmann::json::array();
    auto results = acceptance::run_all([](const acceptance::CriterionResult& r) {
        std::printf("%s\n", acceptance::format_line(r).c_str());
        std::fflush(stdout);
    });
    for (const auto& r : results) {
        if (!r.pass) ++failures;
        list.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    nlohmann::json j;
    j["schema"] = kSchema;
    j["kind"] = "verify";
    j["criteria"] = list;
    j["failures"] = failures;
    write_file(out_dir + "/verify.json", j.dump(2) + "\n");
    std::printf("%zu criteria, %d failed\n", results.size(), failures);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hofer-geometry invariants of symplectic surfaces"};
    app.require_subcommand(1);

    CommonFlags flags;
    int (*runner)(const CommonFlags&) = nullptr;

    auto add = [&](const char* name, const char* desc, int (*fn)(const CommonFlags&)) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        flags.attach(cmd);
        cmd->callback([&runner, fn]() { runner = fn; });
        return cmd;
    };
    add("rho", "evaluate the quasimorphisms rho_raw / rho_normalized / rho_vector", cmd_rho);
    add("reeb", "contour tree with measures, DOT + CSV + median", cmd_reeb);
    add("simulate", "integrate the Hamiltonian flow, trajectories + energy + winding", cmd_simulate);
    add("construct", "generate pipe constructions, calibrate and verify transport", cmd_construct);
    add("bounds", "certified lower/upper bounds for the length spectrum", cmd_bounds);
    add("verify", "run the full acceptance suite", cmd_verify);

    CLI11_PARSE(app, argc, argv);

    try {
        return runner(flags);
    } catch (const hofer::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
