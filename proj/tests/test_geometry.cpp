#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hofer/expr.hpp"
#include "hofer/field.hpp"
#include "hofer/sphere.hpp"

using namespace hofer;

namespace {
const Chart kAnnulus{ChartKind::Annulus};
const Chart kSquare{ChartKind::PlanarSquare};
}  // namespace

TEST_CASE("expression parser: values and aliases") {
    auto e = Expression::parse("sin(2*pi*theta)*h");
    CHECK(e.eval(0.25, 0.5, 0.0) == doctest::Approx(0.5));
    auto e2 = Expression::parse("sin(2*pi*θ)*h");  // UTF-8 theta glyph
    CHECK(e2.eval(0.25, 0.5, 0.0) == doctest::Approx(0.5));
    CHECK(Expression::parse("min(h, 1-h)").eval(0.0, 0.7, 0.0) == doctest::Approx(0.3));
    CHECK(Expression::parse("max(0, t)").eval(0.0, 0.0, 0.25) == doctest::Approx(0.25));
    CHECK(Expression::parse("-h + 2").eval(0.0, 0.5, 0.0) == doctest::Approx(1.5));
    CHECK(Expression::parse("exp(0)").eval(0, 0, 0) == doctest::Approx(1.0));
    CHECK_FALSE(Expression::parse("h*h").depends_on_time());
    CHECK(Expression::parse("h*t").depends_on_time());
}

TEST_CASE("expression parser: errors carry positions") {
    CHECK_THROWS_AS(Expression::parse("h + "), ExprError);
    CHECK_THROWS_AS(Expression::parse("bogus(h)"), ExprError);
    CHECK_THROWS_AS(Expression::parse("min(h)"), ExprError);
    CHECK_THROWS_AS(Expression::parse("(h"), ExprError);
    CHECK_THROWS_AS(Expression::parse("h 2"), ExprError);
    try {
        Expression::parse("h + qq");
    } catch (const ExprError& e) {
        CHECK(e.pos == 4);
    }
}

TEST_CASE("zero expression samples to the zero field") {
    FieldOptions opts;
    opts.grid_x = 64;
    opts.grid_y = 64;
    auto f = ScalarField::from_expression(kAnnulus, "0", opts);
    CHECK(f.max_value() == 0.0);
    CHECK(f.min_value() == 0.0);
    CHECK(f.integral() == 0.0);
}

TEST_CASE("non-finite evaluation is rejected") {
    FieldOptions opts;
    opts.grid_x = 16;
    opts.grid_y = 16;
    CHECK_THROWS_AS(ScalarField::from_expression(kAnnulus, "1/(h-h)", opts), NumericalError);
}

TEST_CASE("sampled field matches direct evaluation at interior points") {
    FieldOptions opts;  // default 512x512
    auto expr = Expression::parse("sin(2*pi*theta)*h");
    auto f = ScalarField::from_expression(kAnnulus, expr, opts);
    CHECK(f.value({0.25, 0.5}) == doctest::Approx(0.5).epsilon(1e-3));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (int i = 0; i < 200; ++i) {
        double th = u(rng), h = u(rng);
        CHECK(f.value({th, h}) == doctest::Approx(expr.eval(th, h, 0)).epsilon(2e-5).scale(1.0));
    }
}

TEST_CASE("collar: ramped h field") {
    FieldOptions opts;
    opts.grid_x = 256;
    opts.grid_y = 257;
    opts.collar = 0.05;
    auto f = ScalarField::from_expression(kAnnulus, "h", opts);
    // untouched at distance >= collar from the boundary
    CHECK(f.value({0.3, 0.5}) == doctest::Approx(0.5));
    CHECK(f.value({0.3, 0.0625}) == doctest::Approx(0.0625));
    CHECK(f.value({0.3, 0.9375}) == doctest::Approx(0.9375));
    // exactly zero within collar/2
    CHECK(f.value({0.1, 0.015625}) == 0.0);
    CHECK(f.value({0.1, 1.0 - 0.015625}) == 0.0);
}

TEST_CASE("collar cutoff leaves points beyond 2*delta untouched (property)") {
    FieldOptions opts;
    opts.grid_x = 128;
    opts.grid_y = 129;
    opts.collar = 0.04;
    auto expr = Expression::parse("cos(2*pi*theta)+h*h");
    auto raw = ScalarField::from_expression(kAnnulus, expr, FieldOptions{128, 129, 0.0, 1});
    auto cut = ScalarField::from_expression(kAnnulus, expr, opts);
    for (int j = 0; j < 129; ++j) {
        double h = j / 128.0;
        bool deep = std::min(h, 1 - h) >= 2 * opts.collar;
        for (int i = 0; i < 128; i += 7) {
            if (deep) CHECK(cut.sample_at(i, j) == raw.sample_at(i, j));
        }
    }
}

TEST_CASE("space integral and time interpolation") {
    FieldOptions opts;
    opts.grid_x = 128;
    opts.grid_y = 129;
    opts.collar = 0.0;
    opts.time_knots = 3;
    auto f = ScalarField::from_expression(kAnnulus, "h*(1-t)", opts);
    CHECK(f.integral(0.0) == doctest::Approx(0.5));
    CHECK(f.integral(1.0) == doctest::Approx(0.0).scale(1.0));
    CHECK(f.integral(0.5) == doctest::Approx(0.25));
    CHECK(f.value({0.5, 0.8}, 0.5) == doctest::Approx(0.4));
    CHECK_FALSE(f.autonomous());
}

TEST_CASE("region area: normalization, rectangle, disk") {
    CHECK(region_area(kAnnulus, [](Vec2) { return true; }, 128) == doctest::Approx(1.0));
    CHECK(region_area(kAnnulus, [](Vec2 p) {
              return p.x < 0.5 && p.y > 0.2 && p.y < 0.6;
          }, 256) == doctest::Approx(0.2).epsilon(0.01));
    double r = 0.2;
    double got = region_area(kSquare, [r](Vec2 p) {
        return (p - Vec2{0.5, 0.5}).norm() < r;
    });
    CHECK(got == doctest::Approx(kPi * r * r).epsilon(0.01));
}

TEST_CASE("polygon area and degenerate input") {
    std::vector<Vec2> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(polygon_area(square) == doctest::Approx(1.0));
    CHECK_THROWS_AS(polygon_area({{0, 0}, {1, 1}}), GeometryError);
    CHECK_THROWS_AS(polygon_area({{0, 0}, {1, 1}, {2, 2}}), GeometryError);
}

TEST_CASE("build_sphere: zero field") {
    FieldOptions opts;
    opts.grid_x = 64;
    opts.grid_y = 65;
    auto H = ScalarField::from_expression(kAnnulus, "0", opts);
    auto sph = build_sphere(H, 0.1, 0.75);
    sph.validate_sphere();
    CHECK(sph.total_area() == doctest::Approx(1.5).epsilon(1e-12));
    for (double v : sph.values) CHECK(v == 0.0);
}

TEST_CASE("build_sphere: degenerate bottom cap at s = 0") {
    FieldOptions opts;
    opts.grid_x = 48;
    opts.grid_y = 49;
    auto H = ScalarField::from_expression(kAnnulus, "0", opts);
    auto sph = build_sphere(H, 0.0, 0.8);
    sph.validate_sphere();
    CHECK(sph.total_area() == doctest::Approx(1.6).epsilon(1e-12));
}

TEST_CASE("build_sphere: total area exact for 100 random (s, A)") {
    FieldOptions opts;
    opts.grid_x = 32;
    opts.grid_y = 33;
    opts.collar = 0.05;
    auto H = ScalarField::from_expression(kAnnulus, "h", opts);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 100; ++i) {
        double A = 0.5 + 0.5 * u(rng);
        if (A >= 1.0 || A <= 0.5) continue;
        double s = (2 * A - 1) * u(rng);
        auto sph = build_sphere(H, s, A);
        CHECK(std::abs(sph.total_area() - 2 * A) <= 1e-9 * 2 * A);
        CHECK(sph.euler_characteristic() == 2);
    }
}

TEST_CASE("build_sphere rejects bad input") {
    FieldOptions opts;
    opts.grid_x = 32;
    opts.grid_y = 33;
    opts.collar = 0.0;
    auto H = ScalarField::from_expression(kAnnulus, "h", opts);  // not compactly supported
    CHECK_THROWS_AS(build_sphere(H, 0.1, 0.75), ConfigError);
    opts.collar = 0.05;
    auto Hc = ScalarField::from_expression(kAnnulus, "h", opts);
    CHECK_THROWS_AS(build_sphere(Hc, 0.9, 0.75), ConfigError);   // s > 2A-1
    CHECK_THROWS_AS(build_sphere(Hc, 0.1, 0.4), ConfigError);    // A out of range
    CHECK_THROWS_AS(build_sphere(Hc, -0.1, 0.75), ConfigError);  // s < 0
}

TEST_CASE("surface spec validation") {
    SurfaceSpec s;
    s.genus = 0;
    s.punctures = 2;
    s.area = 1.0;
    s.puncture_positions = {{0.3, 0.5}, {0.7, 0.5}};
    s.validate();
    s.puncture_positions[1] = {0.3, 0.5};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.puncture_positions[1] = {1.2, 0.5};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    SurfaceSpec closed;
    closed.genus = 0;
    closed.punctures = 0;
    CHECK_THROWS_AS(closed.validate(), ConfigError);
}
