#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hofer/common.hpp"
#include "hofer/expr.hpp"

namespace hofer {

// Charts are normalized to total area 1; original areas are carried as a
// scale factor by the callers that need to report them.
//  - Annulus: (theta, h) in S^1 x (0,1), theta periodic of period 1,
//    area form dtheta ^ dh.
//  - PlanarSquare: (x, y) in (0,1)^2 with dx ^ dy; the expression variables
//    theta and h name x and y in this chart.
enum class ChartKind { Annulus, PlanarSquare };

struct Chart {
    ChartKind kind = ChartKind::Annulus;

    bool periodic_x() const { return kind == ChartKind::Annulus; }
    // Distance from a point to the chart boundary (periodic directions
    // contribute nothing).
    double boundary_distance(Vec2 p) const {
        double d = std::min(p.y, 1.0 - p.y);
        if (!periodic_x()) d = std::min(d, std::min(p.x, 1.0 - p.x));
        return d;
    }
    bool contains(Vec2 p) const { return boundary_distance(p) > 0.0; }
};

struct SurfaceSpec {
    int genus = 0;
    int punctures = 1;
    double area = 1.0;
    std::vector<Vec2> puncture_positions;  // genus 0 only, in the unit chart

    void validate() const;
};

struct FieldOptions {
    int grid_x = 512;        // theta/x samples (periodic direction has no duplicate column)
    int grid_y = 512;        // h/y samples, rows at j/(grid_y-1) including both boundaries
    double collar = 0.02;    // compact-support collar width
    int time_knots = 1;      // 1 = autonomous
};

// Multiplicative compact-support cutoff: exactly 0 within collar/2 of the
// boundary, exactly 1 beyond collar, cosine in between. Field values at
// distance >= collar are therefore untouched.
double collar_factor(const Chart& chart, Vec2 p, double collar);

// Time-dependent Hamiltonian sampled on a chart grid; bilinear in space,
// linear in time between knots t_0 = 0 < ... < t_m = 1.
class ScalarField {
public:
    ScalarField() = default;

    // Samples fn (a raw field, before cutoff) on the grid and applies the
    // collar cutoff multiplicatively. fn(theta, h, t).
    static ScalarField sample(const Chart& chart,
                              const std::function<double(double, double, double)>& fn,
                              const FieldOptions& opts);
    static ScalarField from_expression(const Chart& chart, const Expression& expr,
                                       const FieldOptions& opts);
    static ScalarField from_expression(const Chart& chart, const std::string& text,
                                       const FieldOptions& opts);

    const Chart& chart() const { return chart_; }
    int grid_x() const { return nx_; }
    int grid_y() const { return ny_; }
    int time_knots() const { return static_cast<int>(knots_.size()); }
    bool autonomous() const { return knots_.size() == 1; }
    double collar() const { return collar_; }

    double cell_dx() const { return 1.0 / nx_cells_; }
    double cell_dy() const { return 1.0 / (ny_ - 1); }

    // Bilinear interpolation at a point (linear in time). Clamps h to the
    // grid; theta wraps when periodic.
    double value(Vec2 p, double t = 0.0) const;
    // Gradient (dH/dtheta, dH/dh) of the interpolant.
    Vec2 gradient(Vec2 p, double t = 0.0) const;

    double sample_at(int i, int j, int knot = 0) const { return data_[knot][idx(i, j)]; }

    double max_value(double t = 0.0) const;
    double min_value(double t = 0.0) const;
    // Integral over the chart of the bilinear interpolant (exact per cell).
    double integral(double t = 0.0) const;

    // Largest |velocity| of the Hamiltonian vector field over grid cells,
    // used for step-size control.
    double max_speed() const;

    ScalarField scaled(double factor) const;

    const std::vector<double>& knot_times() const { return knots_; }

    // True if all samples within `margin` of the chart boundary vanish.
    bool supported_away_from_boundary(double margin) const;
    // True if all samples at distance > radius from center vanish (all knots).
    bool supported_in_disk(Vec2 center, double radius) const;

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
    double knot_value(const std::vector<double>& grid, Vec2 p) const;
    Vec2 knot_gradient(const std::vector<double>& grid, Vec2 p) const;

    Chart chart_;
    int nx_ = 0, ny_ = 0;
    int nx_cells_ = 0;  // nx for periodic, nx-1 otherwise
    double collar_ = 0.0;
    std::vector<double> knots_;              // times, length m+1
    std::vector<std::vector<double>> data_;  // [knot][j*nx + i]
};

// Area of {p : predicate(p)} under the chart area form, by subsampled grid
// quadrature (deterministic for fixed resolution).
double region_area(const Chart& chart, const std::function<bool(Vec2)>& predicate,
                   int resolution = 512, int subsamples = 4);

// Exact polygon area (shoelace). Throws on degenerate input.
double polygon_area(const std::vector<Vec2>& polygon);

}  // namespace hofer
