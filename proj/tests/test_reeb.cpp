#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hofer/constructions.hpp"
#include "hofer/reeb.hpp"

using namespace hofer;

namespace {

const Chart kAnnulus{ChartKind::Annulus};
const Chart kSquare{ChartKind::PlanarSquare};

ScalarField sample_annulus(const std::function<double(double, double)>& fn, int grid = 192,
                           double collar = 0.02) {
    FieldOptions opts;
    opts.grid_x = grid;
    opts.grid_y = grid + 1;
    opts.collar = collar;
    return ScalarField::sample(
        kAnnulus, [&](double th, double h, double) { return fn(th, h); }, opts);
}

// Cosine bump of the given radius and height centered at c (value-space).
double cos_bump(Vec2 p, Vec2 c, double radius, double height) {
    double d = (p - c).norm();
    if (d >= radius) return 0.0;
    return height * 0.5 * (1 + std::cos(kPi * d / radius));
}

}  // namespace

TEST_CASE("octahedron with distinct values: one arc, exact measure") {
    TriangulatedSphere sph;
    sph.values = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};  // 0 = south, 5 = north
    sph.triangles = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                     {5, 1, 2}, {5, 2, 3}, {5, 3, 4}, {5, 4, 1}};
    sph.areas.assign(8, 0.125);
    sph.validate_sphere();
    auto tree = build_contour_tree(sph);
    CHECK(tree.nodes.size() == 2);
    CHECK(tree.arcs.size() == 1);
    CHECK(tree.total_measure == doctest::Approx(1.0).epsilon(1e-12));
    auto med = find_median(tree);
    CHECK(med.on_arc);
    CHECK(med.worst_component <= 0.5 + 1e-9);
}

TEST_CASE("constant field sphere: a single atom carrying everything") {
    auto H = sample_annulus([](double, double) { return 0.0; }, 48);
    auto sph = build_sphere(H, 0.2, 0.75);
    auto tree = build_contour_tree(sph);
    CHECK(tree.nodes.size() == 1);
    CHECK(tree.arcs.empty());
    CHECK(tree.nodes[0].atom_measure == doctest::Approx(1.5).epsilon(1e-12));
    auto med = find_median(tree);
    CHECK_FALSE(med.on_arc);
    CHECK(med.level == 0.0);
    CHECK(calabi_sphere(sph) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("shift field tree: bottom atom, rising arc, top structure") {
    const double s = 0.2, A = 0.75, delta = 0.02;
    auto H = make_shift(delta, 192);
    auto sph = build_sphere(H, s, A);
    auto tree = build_contour_tree(sph);
    CHECK(tree.total_measure == doctest::Approx(1.5).epsilon(1e-9));
    // bottom atom at level 0 of measure about s + collar flat area
    int bottom = -1;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i)
        if (tree.nodes[i].level == 0.0 && tree.nodes[i].atom_measure > s / 2)
            if (bottom < 0 || tree.nodes[i].atom_measure > tree.nodes[bottom].atom_measure)
                bottom = static_cast<int>(i);
    REQUIRE(bottom >= 0);
    CHECK(tree.nodes[bottom].atom_measure == doctest::Approx(s).epsilon(0.15));
    // path topology: every node has degree <= 2
    for (const auto& n : tree.nodes) CHECK(n.arcs.size() <= 2);

    auto med = find_median(tree);
    CHECK(med.level == doctest::Approx(A - s).epsilon(1e-6));
}

TEST_CASE("cal_j on the shift matches the closed form") {
    const double A = 0.75, delta = 0.02;
    auto H = make_shift(delta, 192);
    double integral = H.integral();
    for (double s : {0.0, 0.2, 0.5}) {
        double got = cal_j(H, s, A);
        CHECK(got == doctest::Approx(integral - 2 * A * (A - s)).epsilon(1e-6));
    }
}

TEST_CASE("rho_raw on the shift equals 2A(s2-s1); rho_normalized is 1") {
    auto H = make_shift(0.02, 192);
    for (double A : {0.6, 0.75}) {
        double s2 = 2 * A - 1;
        double got = rho_raw(H, A, 0.0, s2);
        CHECK(got == doctest::Approx(2 * A * s2).epsilon(1e-4));
        CHECK(rho_normalized(H, A, 0.0, s2) == doctest::Approx(1.0).epsilon(1e-4));
    }
    CHECK_THROWS_AS(rho_raw(H, 0.75, 0.4, 0.2), ConfigError);
}

TEST_CASE("rho_raw on a profile field: 2A(H(A-s1) - H(A-s2))") {
    // ramped h^2: equals h^2 away from the collar
    auto H = sample_annulus([](double, double h) { return h * h; }, 256);
    const double A = 0.75;
    double got = rho_raw(H, A, 0.0, 0.5);
    CHECK(got == doctest::Approx(2 * A * (0.5625 - 0.0625)).epsilon(1e-3));
    CHECK(got == doctest::Approx(0.75).epsilon(1e-3));
}

TEST_CASE("linearity under scaling and sign flip") {
    auto H = sample_annulus([](double th, double h) {
        return cos_bump({th, h}, {0.5, 0.55}, 0.22, 1.0) - 0.4 * cos_bump({th, h}, {0.1, 0.4}, 0.15, 1.0);
    }, 160);
    auto sph1 = build_sphere(H, 0.2, 0.8);
    auto sph3 = build_sphere(H.scaled(3.0), 0.2, 0.8);
    auto sphm = build_sphere(H.scaled(-1.0), 0.2, 0.8);
    double c1 = calabi_sphere(sph1);
    CHECK(calabi_sphere(sph3) == doctest::Approx(3 * c1).epsilon(1e-6));
    CHECK(calabi_sphere(sphm) == doctest::Approx(-c1).epsilon(1e-6));
}

TEST_CASE("disk-supported bump: cal_j equals the integral, rho vanishes") {
    auto H = sample_annulus([](double th, double h) {
        return cos_bump({th, h}, {0.5, 0.45}, 0.2, 0.7);
    }, 192);
    const double A = 0.75;
    double integral = H.integral();
    for (double s : {0.0, 0.25, 0.5})
        CHECK(cal_j(H, s, A) == doctest::Approx(integral).epsilon(1e-9));
    CHECK(rho_raw(H, A, 0.1, 0.45) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("two disjoint bumps: zero atom plus two arcs with the support areas") {
    const double r1 = 0.16, r2 = 0.12;
    auto H = sample_annulus([&](double th, double h) {
        return cos_bump({th, h}, {0.25, 0.5}, r1, 1.0) + cos_bump({th, h}, {0.75, 0.45}, r2, 0.6);
    }, 256);
    auto sph = build_sphere(H, 0.2, 0.75);
    auto tree = build_contour_tree(sph);
    REQUIRE(tree.arcs.size() == 2);
    int atoms = 0;
    for (const auto& n : tree.nodes) atoms += n.is_atom();
    CHECK(atoms == 1);
    std::vector<double> measures = {tree.arcs[0].measure(), tree.arcs[1].measure()};
    std::sort(measures.begin(), measures.end());
    CHECK(measures[1] == doctest::Approx(kPi * r1 * r1).epsilon(0.02));
    CHECK(measures[0] == doctest::Approx(kPi * r2 * r2).epsilon(0.02));
}

TEST_CASE("symmetric double bump: median sits at the zero atom") {
    // bump areas 0.7A each, atom 0.6A, A = total/2
    // pick radii so that pi r^2 = 0.7 * A with 2A = 2 * pi r^2 + atom
    // simpler: two equal bumps, check the median lands on the atom
    const double r = 0.2;
    auto H = sample_annulus([&](double th, double h) {
        return cos_bump({th, h}, {0.25, 0.5}, r, 1.0) + cos_bump({th, h}, {0.75, 0.5}, r, 1.0);
    }, 256);
    // bump area each: pi*0.04 = 0.1257; choose A so bumps are 0.7A: A = 0.1795
    // but cal_j needs A > 1/2; build the sphere directly with caps sized so the
    // zero atom is 0.6 * A_tree of the tree mass: use s to tune.
    auto sph = build_sphere(H, 0.0, 0.51);
    auto tree = build_contour_tree(sph);
    auto med = find_median(tree);
    CHECK_FALSE(med.on_arc);
    CHECK(tree.nodes[med.node].is_atom());
    CHECK(med.level == 0.0);
}

TEST_CASE("calabi_disk: trivial, autonomous, time-dependent") {
    FieldOptions opts;
    opts.grid_x = 128;
    opts.grid_y = 129;
    opts.collar = 0.02;
    auto zero = ScalarField::from_expression(kAnnulus, "0", opts);
    CHECK(calabi_disk(zero, {0.5, 0.5}, 0.3) == 0.0);

    auto bump = ScalarField::sample(
        kAnnulus, [](double th, double h, double) { return cos_bump({th, h}, {0.5, 0.5}, 0.2, 0.5); },
        opts);
    double I = bump.integral();
    CHECK(calabi_disk(bump, {0.5, 0.5}, 0.25) == doctest::Approx(I));
    CHECK_THROWS_AS(calabi_disk(bump, {0.5, 0.5}, 0.1), ConfigError);

    opts.time_knots = 5;
    auto tdep = ScalarField::sample(
        kAnnulus,
        [](double th, double h, double t) {
            return (1 - t) * cos_bump({th, h}, {0.5, 0.5}, 0.2, 0.5);
        },
        opts);
    CHECK(calabi_disk(tdep, {0.5, 0.5}, 0.25) == doctest::Approx(0.5 * I));
}

TEST_CASE("rho is invariant under theta rotation") {
    auto field = [](double th, double h) {
        return cos_bump({th, h}, {0.3, 0.52}, 0.21, 0.8) + 0.3 * cos_bump({th, h}, {0.7, 0.6}, 0.13, 1.0);
    };
    auto H0 = sample_annulus(field, 192);
    auto H1 = sample_annulus([&](double th, double h) { return field(th - 0.37, h); }, 192);
    double a = rho_raw(H0, 0.8, 0.1, 0.5);
    double b = rho_raw(H1, 0.8, 0.1, 0.5);
    CHECK(b == doctest::Approx(a).epsilon(1e-3).scale(1.0));
}

TEST_CASE("Lipschitz bound holds structurally") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 5; ++trial) {
        double cx = 0.8 * u(rng), cy = 0.25 + 0.5 * u(rng), r = 0.08 + 0.2 * u(rng);
        double height = 2 * u(rng) - 1;
        auto H = sample_annulus([&](double th, double h) {
            return cos_bump({th, h}, {cx, cy}, r, height) + 0.2 * std::sin(2 * kPi * th) * h * (1 - h);
        }, 128);
        double A = 0.6 + 0.3 * u(rng);
        double s2 = (2 * A - 1) * (0.5 + 0.5 * u(rng));
        double s1 = s2 * 0.4 * u(rng);
        double val = rho_raw(H, A, s1, s2);
        CHECK(std::abs(val) <= 4 * A * (H.max_value() - H.min_value()) + 1e-12);
    }
}

TEST_CASE("refinement convergence: doubling grid and slabs moves rho < 0.5%") {
    auto field = [](double th, double h) {
        return cos_bump({th, h}, {0.4, 0.5}, 0.25, 1.0) * (1 + 0.3 * std::sin(2 * kPi * th));
    };
    auto Hc = sample_annulus(field, 128);
    auto Hf = sample_annulus(field, 256);
    CalabiOptions copts;
    copts.reeb.slabs_per_unit = 256;
    CalabiOptions fopts;
    fopts.reeb.slabs_per_unit = 512;
    double coarse = rho_raw(Hc, 0.75, 0.1, 0.4, copts);
    double fine = rho_raw(Hf, 0.75, 0.1, 0.4, fopts);
    CHECK(std::abs(fine - coarse) <= 0.005 * std::max(std::abs(fine), 0.05));
}

TEST_CASE("rho_vector: zero field, rotational ramp, and off-puncture bump") {
    std::vector<Vec2> punctures = {{0.5, 0.5}, {0.94, 0.94}};
    FieldOptions opts;
    opts.grid_x = 256;
    opts.grid_y = 256;
    opts.collar = 0.01;
    const double A = 0.75, s1 = 0.05, s2 = 0.2;

    auto zero = ScalarField::from_expression(kSquare, "0", opts);
    auto v0 = rho_vector(zero, punctures, A, s1, s2);
    CHECK(v0[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(v0[1] == doctest::Approx(0.0).scale(1.0));

    // unit drift in the annulus coordinates around p1 (value = area on the
    // boundary side), supported in the disk of area 0.55 around p1
    const double a_core = 0.02, a_max = 0.5, a_supp = 0.55;
    auto ramp = ScalarField::sample(
        kSquare,
        [&](double x, double y, double) {
            double area = kPi * (Vec2{x, y} - punctures[0]).dot(Vec2{x, y} - punctures[0]);
            if (area >= a_supp) return 0.0;
            double v = 1.0 - std::min(area, a_max);
            double up = smooth_ramp(area, a_core / 2, a_core);
            double down = area <= a_max ? 1.0 : (a_supp - area) / (a_supp - a_max);
            return v * up * down;
        },
        opts);
    auto v1 = rho_vector(ramp, punctures, A, s1, s2);
    CHECK(v1[0] == doctest::Approx(1.0).epsilon(0.02));
    CHECK(v1[1] == doctest::Approx(0.0).epsilon(0.02).scale(1.0));

    auto bump = ScalarField::sample(
        kSquare,
        [&](double x, double y, double) { return cos_bump({x, y}, {0.22, 0.78}, 0.12, 1.0); },
        opts);
    auto v2 = rho_vector(bump, punctures, A, s1, s2);
    CHECK(v2[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(v2[1] == doctest::Approx(0.0).scale(1.0));

    CHECK_THROWS_AS(rho_vector(zero, punctures, 0.4, 0.0, 0.2), ConfigError);
}
