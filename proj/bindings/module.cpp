// Python bindings for the main operations: field construction, the
// quasimorphisms, contour trees with measures, flow integration, pipe
// constructions and length-spectrum bounds.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hofer/acceptance.hpp"
#include "hofer/constructions.hpp"
#include "hofer/reeb.hpp"

namespace py = pybind11;
using namespace hofer;

namespace {

Vec2 to_vec(const std::pair<double, double>& p) { return {p.first, p.second}; }

std::vector<Vec2> to_vecs(const std::vector<std::pair<double, double>>& pts) {
    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (auto& p : pts) out.push_back(to_vec(p));
    return out;
}

Chart chart_from_name(const std::string& name) {
    if (name == "annulus") return Chart{ChartKind::Annulus};
    if (name == "square" || name == "planar") return Chart{ChartKind::PlanarSquare};
    throw ConfigError("chart must be 'annulus' or 'square'");
}

ScalarField field_from_expression(const std::string& text, const std::string& chart, int grid,
                                  double collar, int time_knots) {
    FieldOptions opts;
    opts.grid_x = grid;
    opts.grid_y = grid;
    opts.collar = collar;
    opts.time_knots = time_knots;
    return ScalarField::from_expression(chart_from_name(chart), text, opts);
}

ScalarField field_from_callable(const std::function<double(double, double, double)>& fn,
                                const std::string& chart, int grid, double collar,
                                int time_knots) {
    FieldOptions opts;
    opts.grid_x = grid;
    opts.grid_y = grid;
    opts.collar = collar;
    opts.time_knots = time_knots;
    return ScalarField::sample(chart_from_name(chart), fn, opts);
}

py::dict tree_summary(const MeasuredReebTree& tree) {
    py::dict d;
    py::list nodes, arcs;
    for (const auto& n : tree.nodes) {
        py::dict nd;
        nd["level"] = n.level;
        nd["atom_measure"] = n.atom_measure;
        nd["degree"] = n.arcs.size();
        nodes.append(nd);
    }
    for (const auto& a : tree.arcs) {
        py::dict ad;
        ad["node_lo"] = a.node_lo;
        ad["node_hi"] = a.node_hi;
        ad["level_lo"] = a.level_lo;
        ad["level_hi"] = a.level_hi;
        ad["measure"] = a.measure();
        arcs.append(ad);
    }
    d["nodes"] = nodes;
    d["arcs"] = arcs;
    d["total_measure"] = tree.total_measure;
    auto med = find_median(tree);
    py::dict m;
    m["level"] = med.level;
    m["on_arc"] = med.on_arc;
    m["worst_component"] = med.worst_component;
    d["median"] = m;
    return d;
}

H1Class class_from_coeffs(const std::vector<long long>& coeffs) {
    return make_genus0_class(coeffs);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hofer-geometry invariants of symplectic surfaces";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<ScalarField>(m, "ScalarField")
        .def("value",
             [](const ScalarField& f, double x, double y, double t) {
                 return f.value({x, y}, t);
             },
             py::arg("x"), py::arg("y"), py::arg("t") = 0.0)
        .def("integral", &ScalarField::integral, py::arg("t") = 0.0)
        .def("max_value", &ScalarField::max_value, py::arg("t") = 0.0)
        .def("min_value", &ScalarField::min_value, py::arg("t") = 0.0)
        .def("scaled", &ScalarField::scaled)
        .def_property_readonly("grid", &ScalarField::grid_x)
        .def_property_readonly("autonomous", &ScalarField::autonomous);

    m.def("field", &field_from_expression, py::arg("expression"), py::arg("chart") = "annulus",
          py::arg("grid") = 512, py::arg("collar") = 0.02, py::arg("time_knots") = 1,
          "Sample an expression in theta, h, t on a chart grid");
    m.def("field_from_callable", &field_from_callable, py::arg("fn"),
          py::arg("chart") = "annulus", py::arg("grid") = 512, py::arg("collar") = 0.02,
          py::arg("time_knots") = 1);
    m.def("make_shift", &make_shift, py::arg("delta_collar") = 0.02, py::arg("grid") = 512,
          "Ramped height function; its time-1 map is the unit shift");

    m.def("rho_raw",
          [](const ScalarField& H, double A, double s1, double s2, int slabs) {
              CalabiOptions o;
              o.reeb.slabs_per_unit = slabs;
              return rho_raw(H, A, s1, s2, o);
          },
          py::arg("H"), py::arg("A"), py::arg("s1"), py::arg("s2"), py::arg("slabs") = 256);
    m.def("rho_normalized",
          [](const ScalarField& H, double A, double s1, double s2, int slabs) {
              CalabiOptions o;
              o.reeb.slabs_per_unit = slabs;
              return rho_normalized(H, A, s1, s2, o);
          },
          py::arg("H"), py::arg("A"), py::arg("s1"), py::arg("s2"), py::arg("slabs") = 256);
    m.def("rho_vector",
          [](const ScalarField& H, const std::vector<std::pair<double, double>>& punctures,
             double A, double s1, double s2) {
              return rho_vector(H, to_vecs(punctures), A, s1, s2);
          },
          py::arg("H"), py::arg("punctures"), py::arg("A"), py::arg("s1"), py::arg("s2"));
    m.def("cal_j",
          [](const ScalarField& H, double s, double A) { return cal_j(H, s, A); }, py::arg("H"),
          py::arg("s"), py::arg("A"));
    m.def("calabi_disk",
          [](const ScalarField& H, std::pair<double, double> center, double radius) {
              return calabi_disk(H, to_vec(center), radius);
          },
          py::arg("H"), py::arg("disk_center"), py::arg("disk_radius"));

    m.def("contour_tree",
          [](const ScalarField& H, double s, double A, int slabs) {
              ReebOptions o;
              o.slabs_per_unit = slabs;
              return tree_summary(build_contour_tree(build_sphere(H, s, A), o));
          },
          py::arg("H"), py::arg("s"), py::arg("A"), py::arg("slabs") = 256,
          "Contour tree of the sphere obtained by capping the annulus; returns nodes, arcs, "
          "measures and the median");

    m.def("integrate_flow",
          [](const ScalarField& H, std::pair<double, double> x0, double T, double step) {
              auto traj = integrate_flow(H, to_vec(x0), T, step);
              py::list pts;
              for (std::size_t i = 0; i < traj.points.size(); ++i)
                  pts.append(py::make_tuple(traj.times[i], traj.points[i].x, traj.points[i].y));
              return pts;
          },
          py::arg("H"), py::arg("x0"), py::arg("T"), py::arg("step") = 0.0);
    m.def("hofer_energy", &hofer_energy, py::arg("H"), py::arg("T"),
          py::arg("min_subdivisions") = 100);
    m.def("winding_vector",
          [](const ScalarField& H, std::pair<double, double> x0, double T,
             const std::vector<std::pair<double, double>>& punctures, double closure_radius) {
              auto traj = integrate_flow(H, to_vec(x0), T);
              auto wv = trajectory_class(traj, to_vecs(punctures), to_vec(x0), closure_radius);
              py::dict d;
              d["winding"] = wv.winding;
              d["residuals"] = wv.residuals;
              return d;
          },
          py::arg("H"), py::arg("x0"), py::arg("T"), py::arg("punctures"),
          py::arg("closure_radius") = 0.05);
    m.def("flux_through_cut",
          [](const ScalarField& H, const std::vector<std::pair<double, double>>& cut) {
              return flux_through_cut(H, to_vecs(cut));
          },
          py::arg("H"), py::arg("cut"));

    py::class_<ChannelField>(m, "ChannelField")
        .def_property_readonly("field", [](const ChannelField& c) { return c.field; })
        .def_property_readonly("channel_area", [](const ChannelField& c) { return c.channel_area; })
        .def_property_readonly("support_area", [](const ChannelField& c) { return c.support_area; })
        .def("disk_boundary", [](const ChannelField& c, int i) {
            py::list out;
            for (Vec2 p : c.disks.at(i).boundary) out.append(py::make_tuple(p.x, p.y));
            return out;
        });
    m.def("make_swap",
          [](double A, double pipe_width) {
              PipeSpec p;
              if (pipe_width > 0) p.width = pipe_width;
              return make_swap(A, p);
          },
          py::arg("A"), py::arg("pipe_width") = -1.0);
    m.def("make_loop_translation",
          [](double A, int sign, double pipe_width) {
              PipeSpec p;
              if (pipe_width > 0) p.width = pipe_width;
              return make_loop_translation(A, sign, p);
          },
          py::arg("A"), py::arg("sign") = 1, py::arg("pipe_width") = -1.0);
    m.def("calibrate_transport",
          [](const ChannelField& cf, int source, int target, double window_lo, double window_hi) {
              auto cal = calibrate_transport_time(cf.field, cf.disks.at(source),
                                                  cf.disks.at(target), window_lo, window_hi);
              py::dict d;
              d["T_star"] = cal.T_star;
              d["mismatch"] = cal.mismatch;
              d["mismatch_frac"] = cal.mismatch_frac;
              return d;
          },
          py::arg("channel"), py::arg("source"), py::arg("target"), py::arg("window_lo"),
          py::arg("window_hi"));
    m.def("verify_transport",
          [](const ChannelField& cf, int source, int target, double T, double tol) {
              auto rep = verify_transport(cf.field, cf.disks.at(source), cf.disks.at(target), T,
                                          tol);
              py::dict d;
              d["T"] = rep.time;
              d["sym_diff_frac"] = rep.sym_diff_frac;
              d["area_drift_frac"] = rep.area_drift_frac;
              d["pass"] = rep.pass;
              return d;
          },
          py::arg("channel"), py::arg("source"), py::arg("target"), py::arg("T"),
          py::arg("tol") = 0.05);

    m.def("word_length", [](const std::vector<long long>& coeffs) {
        return word_length_genus0(class_from_coeffs(coeffs));
    });
    m.def("word_length_bfs", [](const std::vector<long long>& coeffs) {
        return word_length_genus0_bfs(class_from_coeffs(coeffs));
    });
    m.def("decompose_torus", [](long long n, long long mm) {
        auto [a, b] = decompose_torus(n, mm);
        return py::make_tuple(a.coeffs, b.coeffs);
    });
    m.def("decompose_punctured_torus", [](const std::vector<long long>& ms, long long n) {
        auto [a, b] = decompose_punctured_torus(make_punctured_torus_class(ms, n));
        return py::make_tuple(a.coeffs, b.coeffs);
    });
    m.def("l_a_bounds",
          [](int genus, int punctures, double area, double A, const std::vector<long long>& coeffs) {
              H1Class alpha;
              if (genus == 0)
                  alpha = make_genus0_class(coeffs);
              else if (coeffs.size() == 2 && punctures == 0)
                  alpha = make_torus_class(coeffs[0], coeffs[1]);
              else {
                  std::vector<long long> ms(coeffs.begin(), coeffs.end() - 1);
                  alpha = make_punctured_torus_class(ms, coeffs.back());
              }
              auto rep = l_a_bounds(genus, punctures, area, A, alpha);
              py::dict d;
              d["lower"] = rep.lower.value;
              d["lower_provenance"] = rep.lower.provenance;
              d["upper"] = rep.upper.value;
              d["upper_provenance"] = rep.upper.provenance;
              d["area_scale"] = rep.area_scale;
              return d;
          },
          py::arg("genus"), py::arg("punctures"), py::arg("area"), py::arg("A"),
          py::arg("coeffs"));

    m.def("schedule_for_class",
          [](int punctures, const std::vector<std::pair<double, double>>& positions, double A,
             const std::vector<long long>& coeffs) {
              SurfaceSpec s;
              s.punctures = punctures;
              s.puncture_positions = to_vecs(positions);
              auto sched = schedule_for_class(s, A, make_genus0_class(coeffs));
              py::list stages;
              for (const auto& st : sched.stages) {
                  py::dict d;
                  d["duration"] = st.duration;
                  d["sign"] = st.sign;
                  d["subset"] = st.subset;
                  stages.append(d);
              }
              py::dict out;
              out["stages"] = stages;
              out["total_energy"] = sched.total_energy();
              return out;
          },
          py::arg("punctures"), py::arg("positions"), py::arg("A"), py::arg("coeffs"));

    m.def("run_acceptance", []() {
        py::list out;
        auto results = acceptance::run_all(nullptr);
        for (const auto& r : results) {
            py::dict d;
            d["id"] = r.id;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    });
}
