#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hofer/constructions.hpp"
#include "hofer/reeb.hpp"

using namespace hofer;

TEST_CASE("make_shift: interior values, energy, trajectory class, rho") {
    auto H = make_shift(0.02, 256);
    CHECK(H.value({0.3, 0.5}) == doctest::Approx(0.5));
    CHECK(hofer_energy(H, 1.0) == doctest::Approx(1.0).epsilon(0.05));
    auto traj = integrate_flow(H, {0.25, 0.5}, 1.0);
    auto wv = trajectory_class(traj, {}, {0.25, 0.5}, 0.05);
    CHECK(wv.winding == std::vector<long long>{1});
    CHECK(rho_raw(H, 0.75, 0.1, 0.4) == doctest::Approx(1.5 * 0.3).epsilon(1e-3));
    CHECK_THROWS_AS(make_shift(0.5), ConfigError);
}

TEST_CASE("make_swap: plateau, support, flux") {
    const double A = 0.2;
    auto cf = make_swap(A);
    CHECK(cf.field.max_value() == doctest::Approx(1.0));
    CHECK(cf.field.min_value() == doctest::Approx(0.0).scale(1.0));
    CHECK(cf.disks.size() == 2);
    CHECK(cf.disks[0].area() == doctest::Approx(A).epsilon(1e-3));
    CHECK(cf.disks[1].area() == doctest::Approx(A).epsilon(1e-3));
    // support stays within the declared neighborhood: disks, pipes, and the
    // plateau band over the channel
    CHECK(cf.support_area <= 2 * A + 0.25);
    double measured_support = region_area(cf.field.chart(), [&](Vec2 p) {
        return cf.field.value(p) != 0.0;
    }, 256, 2);
    CHECK(measured_support == doctest::Approx(cf.support_area).epsilon(0.05));
    // flux of a short cut from the plateau to the outside is the plateau value
    double h_plateau = 0.0;
    for (double h = 0.55; h < 0.99; h += 0.001)
        if (cf.field.value({0.25, h}) == 1.0) h_plateau = h;
    REQUIRE(h_plateau > 0.0);
    double f = flux_through_cut(cf.field, {{0.25, h_plateau}, {0.25, 0.998}});
    CHECK(f == doctest::Approx(1.0).epsilon(1e-6));
    double g = flux_through_cut(cf.field, {{0.25, 0.998}, {0.25, h_plateau}});
    CHECK(g == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("make_swap rejects overlapping disks") {
    SwapGeometry geo;
    geo.disk_centers[0] = 0.4;
    geo.disk_centers[1] = 0.6;
    CHECK_THROWS_AS(make_swap(0.2, PipeSpec{}, geo), GeometryError);
}

TEST_CASE("swap transport: calibrated time moves D1 onto D2 within tolerance") {
    const double A = 0.2;
    auto cf = make_swap(A);
    CalibrationOptions copts;
    auto cal = calibrate_transport_time(cf.field, cf.disks[0], cf.disks[1], 0.8 * A, 1.4 * A,
                                        copts);
    CHECK(cal.T_star >= A * 0.97);
    CHECK(cal.T_star <= A + 0.15 * A);
    CHECK(cal.mismatch_frac <= 0.05);

    TransportOptions topts;
    auto rep = verify_transport(cf.field, cf.disks[0], cf.disks[1], cal.T_star, 0.05, topts);
    CHECK(rep.pass);
    CHECK(rep.area_drift_frac <= 0.01);
    CHECK(hofer_energy(cf.field, cal.T_star) <= A + 0.15 * A);
}

TEST_CASE("loop translation: fixed disk and trajectory class") {
    const double A = 0.2;
    auto cf = make_loop_translation(A, +1);
    CHECK(cf.field.max_value() == doctest::Approx(1.0));
    CalibrationOptions copts;
    auto cal = calibrate_transport_time(cf.field, cf.disks[0], cf.disks[0], 0.85 * A, 1.4 * A,
                                        copts);
    CHECK(cal.T_star <= A + 0.15 * A);
    CHECK(cal.mismatch_frac <= 0.05);
    // carried points wind once around the annulus
    Vec2 c = cf.disks[0].centroid();
    auto traj = integrate_flow(cf.field, c, cal.T_star);
    auto wv = trajectory_class(traj, {}, c, 0.21);
    CHECK(wv.winding == std::vector<long long>{1});

    auto cfm = make_loop_translation(A, -1);
    auto trajm = integrate_flow(cfm.field, c, cal.T_star);
    auto wvm = trajectory_class(trajm, {}, c, 0.21);
    CHECK(wvm.winding == std::vector<long long>{-1});
}

TEST_CASE("calibration degenerate case returns the window start") {
    FieldOptions opts;
    opts.grid_x = 64;
    opts.grid_y = 65;
    Chart an{ChartKind::Annulus};
    auto zero = ScalarField::from_expression(an, "0", opts);
    Region D = Region::round_disk({0.5, 0.5}, 0.15);
    CalibrationOptions copts;
    copts.snapshots = 16;
    auto cal = calibrate_transport_time(zero, D, D, 0.1, 0.4, copts);
    CHECK(cal.T_star == doctest::Approx(0.1));
    CHECK(cal.mismatch_frac <= 0.02);
}

TEST_CASE("calibration failure: target unreachable") {
    FieldOptions opts;
    opts.grid_x = 64;
    opts.grid_y = 65;
    Chart an{ChartKind::Annulus};
    auto zero = ScalarField::from_expression(an, "0", opts);
    Region D1 = Region::round_disk({0.3, 0.5}, 0.1);
    Region D2 = Region::round_disk({0.7, 0.5}, 0.1);
    CalibrationOptions copts;
    copts.snapshots = 8;
    CHECK_THROWS_AS(calibrate_transport_time(zero, D1, D2, 0.1, 0.4, copts), NumericalError);
}

TEST_CASE("planar loop: class, fit checks") {
    std::vector<Vec2> enclosed = {{0.5, 0.5}};
    std::vector<Vec2> avoided = {{0.88, 0.88}};
    PlanarLoopGeometry geo;
    geo.center = {0.5, 0.5};
    geo.radius = 0.22;
    auto cf = make_planar_loop(0.05, +1, enclosed, avoided, PipeSpec{}, geo);
    CHECK(cf.field.max_value() == doctest::Approx(1.0));
    CHECK(cf.disks[0].area() == doctest::Approx(0.05).epsilon(1e-3));
    // punctures too close must be rejected
    CHECK_THROWS_AS(make_planar_loop(0.05, +1, enclosed, {{0.72, 0.5}}, PipeSpec{}, geo),
                    GeometryError);
    // carried point winds once around the enclosed puncture only; circle
    // routes are verified at the looser pipe tolerance
    CalibrationOptions copts;
    copts.accept_frac = 0.10;
    auto cal = calibrate_transport_time(cf.field, cf.disks[0], cf.disks[0], 0.85 * cf.channel_area,
                                        1.35 * cf.channel_area, copts);
    CHECK(cal.mismatch_frac <= 0.10);
    Vec2 c = cf.disks[0].centroid();
    auto traj = integrate_flow(cf.field, c, cal.T_star);
    auto wv = trajectory_class(traj, {enclosed[0], avoided[0]}, c, 0.05);
    CHECK(wv.winding == std::vector<long long>{1, 0});
}

TEST_CASE("polyline self intersection") {
    std::vector<Vec2> simple = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK_FALSE(polyline_self_intersects(simple));
    std::vector<Vec2> bowtie = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
    CHECK(polyline_self_intersects(bowtie));
}

TEST_CASE("schedule: zero class is empty") {
    SurfaceSpec surface;
    surface.punctures = 1;
    auto sched = schedule_for_class(surface, 0.3, make_genus0_class({0}));
    CHECK(sched.stages.empty());
    CHECK(sched.total_energy() == 0.0);
}

TEST_CASE("schedule: annulus class n = -2 has two stages with calibrated energy") {
    SurfaceSpec surface;
    surface.punctures = 1;
    const double A = 0.2;
    auto sched = schedule_for_class(surface, A, make_genus0_class({-2}));
    REQUIRE(sched.stages.size() == 2);
    for (const auto& st : sched.stages) CHECK(st.sign == -1);
    CHECK(sched.total_energy() <= 2 * (A + 0.15 * A));
    CHECK(sched.total_energy() >= 2 * A * 0.95);

    // composed trajectory class equals the target class
    Vec2 c = sched.stages[0].disk.centroid();
    Trajectory full;
    full.chart = ChartKind::Annulus;
    Vec2 x = c;
    double t0 = 0.0;
    for (const auto& st : sched.stages) {
        auto traj = integrate_flow(st.field, x, st.duration);
        for (std::size_t i = 1; i < traj.points.size(); ++i) {
            full.times.push_back(t0 + traj.times[i]);
            full.points.push_back(traj.points[i]);
        }
        x = traj.points.back();
        t0 += st.duration;
    }
    full.times.insert(full.times.begin(), 0.0);
    full.points.insert(full.points.begin(), c);
    auto wv = trajectory_class(full, {}, c, 0.21);
    CHECK(wv.winding == std::vector<long long>{-2});
}

TEST_CASE("schedule: two punctures, class (1,1) uses a single two-puncture loop") {
    SurfaceSpec surface;
    surface.punctures = 2;
    surface.puncture_positions = {{0.42, 0.5}, {0.58, 0.5}};
    auto sched = schedule_for_class(surface, 0.035, make_genus0_class({1, 1}));
    REQUIRE(sched.stages.size() == 1);
    CHECK(sched.stages[0].subset == std::vector<int>{0, 1});
    CHECK(sched.stages[0].sign == 1);
}

TEST_CASE("schedule: class (2,-3) over two punctures has 5 stages summing to the class") {
    SurfaceSpec surface;
    surface.punctures = 2;
    surface.puncture_positions = {{0.33, 0.33}, {0.67, 0.67}};
    const double A = 0.035;
    auto sched = schedule_for_class(surface, A, make_genus0_class({2, -3}));
    REQUIRE(sched.stages.size() == 5);
    std::vector<long long> sum(2, 0);
    int pos = 0, neg = 0;
    for (const auto& st : sched.stages) {
        (st.sign > 0 ? pos : neg)++;
        for (int j : st.subset) sum[j] += st.sign;
    }
    CHECK(pos == 2);
    CHECK(neg == 3);
    CHECK(sum == std::vector<long long>{2, -3});
    // circle-route stages carry the long-pipe excess
    CHECK(sched.total_energy() <= 5 * (A + 0.9 * A));
}

TEST_CASE("schedule rejects mismatched input") {
    SurfaceSpec surface;
    surface.punctures = 2;
    surface.puncture_positions = {{0.3, 0.5}, {0.7, 0.5}};
    CHECK_THROWS_AS(schedule_for_class(surface, 0.1, make_genus0_class({1})), ConfigError);
    SurfaceSpec torus;
    torus.genus = 1;
    torus.punctures = 0;
    CHECK_THROWS_AS(schedule_for_class(torus, 0.1, make_torus_class(1, 0)), ConfigError);
}
