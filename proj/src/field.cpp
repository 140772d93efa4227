#include "hofer/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hofer {

void SurfaceSpec::validate() const {
    if (area <= 0) throw ConfigError("surface area must be positive");
    if (genus < 0 || punctures < 0) throw ConfigError("genus and punctures must be nonnegative");
    if (genus == 0 && punctures < 1)
        throw ConfigError("genus-zero surfaces are open: at least one puncture required");
    for (std::size_t i = 0; i < puncture_positions.size(); ++i) {
        Vec2 p = puncture_positions[i];
        if (!(p.x > 0 && p.x < 1 && p.y > 0 && p.y < 1))
            throw ConfigError("puncture position must be interior to the unit chart");
        for (std::size_t j = i + 1; j < puncture_positions.size(); ++j) {
            Vec2 q = puncture_positions[j];
            if ((p - q).norm() < 1e-9) throw ConfigError("puncture positions must be distinct");
        }
    }
}

double collar_factor(const Chart& chart, Vec2 p, double collar) {
    if (collar <= 0) return 1.0;
    double d = chart.boundary_distance(p);
    return smooth_ramp(d, collar / 2.0, collar);
}

ScalarField ScalarField::sample(const Chart& chart,
                                const std::function<double(double, double, double)>& fn,
                                const FieldOptions& opts) {
    if (opts.grid_x < 4 || opts.grid_y < 4) throw ConfigError("field grid too coarse");
    if (opts.time_knots < 1) throw ConfigError("need at least one time knot");
    ScalarField f;
    f.chart_ = chart;
    f.nx_ = opts.grid_x;
    f.ny_ = opts.grid_y;
    f.nx_cells_ = chart.periodic_x() ? opts.grid_x : opts.grid_x - 1;
    f.collar_ = opts.collar;
    f.knots_.resize(opts.time_knots);
    for (int k = 0; k < opts.time_knots; ++k)
        f.knots_[k] = opts.time_knots == 1 ? 0.0 : static_cast<double>(k) / (opts.time_knots - 1);
    f.data_.assign(f.knots_.size(), std::vector<double>(static_cast<std::size_t>(f.nx_) * f.ny_));
    const double dx = f.cell_dx();
    const double dy = f.cell_dy();
    for (std::size_t k = 0; k < f.knots_.size(); ++k) {
        double t = f.knots_[k];
        auto& grid = f.data_[k];
        for (int j = 0; j < f.ny_; ++j) {
            for (int i = 0; i < f.nx_; ++i) {
                Vec2 p{i * dx, j * dy};
                double v = fn(p.x, p.y, t) * collar_factor(chart, p, opts.collar);
                if (!std::isfinite(v))
                    throw NumericalError("field evaluation not finite at (" +
                                         std::to_string(p.x) + ", " + std::to_string(p.y) +
                                         ", t=" + std::to_string(t) + ")");
                grid[f.idx(i, j)] = v;
            }
        }
    }
    return f;
}

ScalarField ScalarField::from_expression(const Chart& chart, const Expression& expr,
                                         const FieldOptions& opts) {
    FieldOptions o = opts;
    if (!expr.depends_on_time()) o.time_knots = 1;
    return sample(
        chart, [&expr](double th, double h, double t) { return expr.eval(th, h, t); }, o);
}

ScalarField ScalarField::from_expression(const Chart& chart, const std::string& text,
                                         const FieldOptions& opts) {
    return from_expression(chart, Expression::parse(text), opts);
}

namespace {

// Locate p in the grid: cell index and in-cell coordinates in [0,1].
struct CellPos {
    int i, j;
    int i1;
    double fx, fy;
};

CellPos locate(const Chart& chart, int nx, int ny, int nx_cells, Vec2 p) {
    CellPos c;
    double x = p.x;
    if (chart.periodic_x()) {
        x -= std::floor(x);
        if (x >= 1.0) x = 0.0;
    } else {
        x = std::clamp(x, 0.0, 1.0);
    }
    double y = std::clamp(p.y, 0.0, 1.0);
    double gx = x * nx_cells;
    double gy = y * (ny - 1);
    c.i = std::min(static_cast<int>(gx), nx_cells - 1);
    c.j = std::min(static_cast<int>(gy), ny - 2);
    c.fx = gx - c.i;
    c.fy = gy - c.j;
    c.i1 = c.i + 1;
    if (c.i1 >= nx) c.i1 = chart.periodic_x() ? 0 : nx - 1;
    return c;
}

}  // namespace

double ScalarField::knot_value(const std::vector<double>& g, Vec2 p) const {
    CellPos c = locate(chart_, nx_, ny_, nx_cells_, p);
    double v00 = g[idx(c.i, c.j)], v10 = g[idx(c.i1, c.j)];
    double v01 = g[idx(c.i, c.j + 1)], v11 = g[idx(c.i1, c.j + 1)];
    return (1 - c.fx) * (1 - c.fy) * v00 + c.fx * (1 - c.fy) * v10 + (1 - c.fx) * c.fy * v01 +
           c.fx * c.fy * v11;
}

Vec2 ScalarField::knot_gradient(const std::vector<double>& g, Vec2 p) const {
    CellPos c = locate(chart_, nx_, ny_, nx_cells_, p);
    double v00 = g[idx(c.i, c.j)], v10 = g[idx(c.i1, c.j)];
    double v01 = g[idx(c.i, c.j + 1)], v11 = g[idx(c.i1, c.j + 1)];
    double ddx = ((1 - c.fy) * (v10 - v00) + c.fy * (v11 - v01)) / cell_dx();
    double ddy = ((1 - c.fx) * (v01 - v00) + c.fx * (v11 - v10)) / cell_dy();
    return {ddx, ddy};
}

namespace {

// Piecewise-linear weight in time over the knot vector.
struct TimeMix {
    std::size_t k0, k1;
    double w1;
};

TimeMix time_mix(const std::vector<double>& knots, double t) {
    if (knots.size() == 1) return {0, 0, 0.0};
    double tc = std::clamp(t, knots.front(), knots.back());
    std::size_t hi = 1;
    while (hi + 1 < knots.size() && knots[hi] < tc) ++hi;
    std::size_t lo = hi - 1;
    double span = knots[hi] - knots[lo];
    double w = span > 0 ? (tc - knots[lo]) / span : 0.0;
    return {lo, hi, w};
}

}  // namespace

double ScalarField::value(Vec2 p, double t) const {
    TimeMix m = time_mix(knots_, t);
    double v = knot_value(data_[m.k0], p);
    if (m.k1 != m.k0) v = (1 - m.w1) * v + m.w1 * knot_value(data_[m.k1], p);
    return v;
}

Vec2 ScalarField::gradient(Vec2 p, double t) const {
    TimeMix m = time_mix(knots_, t);
    Vec2 g = knot_gradient(data_[m.k0], p);
    if (m.k1 != m.k0) {
        Vec2 g1 = knot_gradient(data_[m.k1], p);
        g = {(1 - m.w1) * g.x + m.w1 * g1.x, (1 - m.w1) * g.y + m.w1 * g1.y};
    }
    return g;
}

double ScalarField::max_value(double t) const {
    TimeMix m = time_mix(knots_, t);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < data_[m.k0].size(); ++n) {
        double v = data_[m.k0][n];
        if (m.k1 != m.k0) v = (1 - m.w1) * v + m.w1 * data_[m.k1][n];
        best = std::max(best, v);
    }
    return best;
}

double ScalarField::min_value(double t) const {
    TimeMix m = time_mix(knots_, t);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < data_[m.k0].size(); ++n) {
        double v = data_[m.k0][n];
        if (m.k1 != m.k0) v = (1 - m.w1) * v + m.w1 * data_[m.k1][n];
        best = std::min(best, v);
    }
    return best;
}

double ScalarField::integral(double t) const {
    TimeMix m = time_mix(knots_, t);
    auto cell_sum = [&](const std::vector<double>& g) {
        double s = 0.0;
        for (int j = 0; j + 1 < ny_; ++j) {
            for (int i = 0; i < nx_cells_; ++i) {
                int i1 = (i + 1 < nx_) ? i + 1 : (chart_.periodic_x() ? 0 : nx_ - 1);
                s += 0.25 * (g[idx(i, j)] + g[idx(i1, j)] + g[idx(i, j + 1)] + g[idx(i1, j + 1)]);
            }
        }
        return s * cell_dx() * cell_dy();
    };
    double v = cell_sum(data_[m.k0]);
    if (m.k1 != m.k0) v = (1 - m.w1) * v + m.w1 * cell_sum(data_[m.k1]);
    return v;
}

double ScalarField::max_speed() const {
    double best = 0.0;
    const double dx = cell_dx(), dy = cell_dy();
    for (const auto& g : data_) {
        for (int j = 0; j + 1 < ny_; ++j) {
            for (int i = 0; i < nx_cells_; ++i) {
                int i1 = (i + 1 < nx_) ? i + 1 : (chart_.periodic_x() ? 0 : nx_ - 1);
                double v00 = g[idx(i, j)], v10 = g[idx(i1, j)];
                double v01 = g[idx(i, j + 1)], v11 = g[idx(i1, j + 1)];
                double gx = std::max(std::abs(v10 - v00), std::abs(v11 - v01)) / dx;
                double gy = std::max(std::abs(v01 - v00), std::abs(v11 - v10)) / dy;
                best = std::max(best, std::hypot(gx, gy));
            }
        }
    }
    return best;
}

ScalarField ScalarField::scaled(double factor) const {
    ScalarField f = *this;
    for (auto& g : f.data_)
        for (auto& v : g) v *= factor;
    return f;
}

bool ScalarField::supported_away_from_boundary(double margin) const {
    const double dx = cell_dx(), dy = cell_dy();
    for (const auto& g : data_) {
        for (int j = 0; j < ny_; ++j) {
            for (int i = 0; i < nx_; ++i) {
                Vec2 p{i * dx, j * dy};
                if (chart_.boundary_distance(p) < margin && g[idx(i, j)] != 0.0) return false;
            }
        }
    }
    return true;
}

bool ScalarField::supported_in_disk(Vec2 center, double radius) const {
    const double dx = cell_dx(), dy = cell_dy();
    for (const auto& g : data_) {
        for (int j = 0; j < ny_; ++j) {
            for (int i = 0; i < nx_; ++i) {
                Vec2 p{i * dx, j * dy};
                if ((p - center).norm() > radius && g[idx(i, j)] != 0.0) return false;
            }
        }
    }
    return true;
}

double region_area(const Chart& chart, const std::function<bool(Vec2)>& predicate, int resolution,
                   int subsamples) {
    (void)chart;
    if (resolution < 2 || subsamples < 1) throw ConfigError("bad region_area resolution");
    const int n = resolution * subsamples;
    const double cell = 1.0 / n;
    double area = 0.0;
    for (int j = 0; j < n; ++j) {
        double y = (j + 0.5) * cell;
        for (int i = 0; i < n; ++i) {
            if (predicate({(i + 0.5) * cell, y})) area += cell * cell;
        }
    }
    return area;
}

double polygon_area(const std::vector<Vec2>& polygon) {
    if (polygon.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
    double s = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        Vec2 a = polygon[i];
        Vec2 b = polygon[(i + 1) % polygon.size()];
        s += a.cross(b);
    }
    double area = 0.5 * std::abs(s);
    if (area < 1e-15) throw GeometryError("degenerate polygon");
    return area;
}

}  // namespace hofer
