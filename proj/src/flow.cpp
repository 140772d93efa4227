#include "hofer/flow.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

namespace hofer {

namespace {

bool crossing_parity(const std::vector<Vec2>& poly, Vec2 p) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 a = poly[i], b = poly[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (x > p.x) inside = !inside;
        }
    }
    return inside;
}

}  // namespace

bool Region::contains(Vec2 p) const { return crossing_parity(boundary, p); }

bool Region::contains_mod1(Vec2 p) const {
    for (int k = -2; k <= 2; ++k)
        if (crossing_parity(boundary, {p.x + k, p.y})) return true;
    return false;
}

Vec2 Region::centroid() const {
    Vec2 c{0, 0};
    for (Vec2 p : boundary) c = c + p;
    return c * (1.0 / boundary.size());
}

namespace {

// Flat-top cosine bump: 0 at the ends, amplitude on [ramp, span-ramp],
// cosine ease over the ramps. Integral = amplitude * (span - ramp).
double lens_profile(double x, double span, double ramp, double amplitude) {
    if (x <= 0 || x >= span) return 0.0;
    if (x < ramp) return amplitude * 0.5 * (1 - std::cos(kPi * x / ramp));
    if (x > span - ramp) return amplitude * 0.5 * (1 - std::cos(kPi * (span - x) / ramp));
    return amplitude;
}

}  // namespace

Region Region::lens(double center_x, double y0, double span, double ramp, double amplitude,
                    int samples) {
    Region r;
    r.boundary.reserve(2 * samples);
    double x0 = center_x - span / 2;
    for (int i = 0; i <= samples; ++i) {
        double x = span * i / samples;
        r.boundary.push_back({x0 + x, y0 + lens_profile(x, span, ramp, amplitude)});
    }
    for (int i = samples - 1; i > 0; --i) {
        double x = span * i / samples;
        r.boundary.push_back({x0 + x, y0 - lens_profile(x, span, ramp, amplitude)});
    }
    return r;
}

Region Region::round_disk(Vec2 center, double radius, int samples) {
    Region r;
    r.boundary.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double a = 2 * kPi * i / samples;
        r.boundary.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    return r;
}

Vec2 hamiltonian_velocity(const ScalarField& H, Vec2 p, double t) {
    Vec2 q = p;
    if (H.chart().periodic_x()) q.x -= std::floor(q.x);
    if (!H.chart().contains(q)) throw GeometryError("point outside chart");
    Vec2 g = H.gradient(p, t);
    return {g.y, -g.x};
}

namespace {

struct Stepper {
    const ScalarField& H;
    const FlowOptions& opts;
    double dt;
    bool used_fallback = false;

    Vec2 velocity(Vec2 p, double t) const {
        Vec2 g = H.gradient(p, t);
        return {g.y, -g.x};
    }

    Vec2 advance(Vec2 x, double t) {
        const double tm = t + dt / 2;
        Vec2 mid = x;
        {
            Vec2 v = velocity(x, tm);
            mid = x + (dt / 2) * v;
        }
        bool converged = false;
        for (int it = 0; it < opts.max_fixed_point_iters; ++it) {
            Vec2 v = velocity(mid, tm);
            Vec2 next = x + (dt / 2) * v;
            double delta = (next - mid).norm();
            mid = next;
            if (delta < opts.fixed_point_tol) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            if (!opts.allow_rk4_fallback)
                throw NumericalError("implicit midpoint did not converge and fallback is disabled");
            used_fallback = true;
            Vec2 k1 = velocity(x, t);
            Vec2 k2 = velocity(x + (dt / 2) * k1, tm);
            Vec2 k3 = velocity(x + (dt / 2) * k2, tm);
            Vec2 k4 = velocity(x + dt * k3, t + dt);
            return x + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        }
        return 2 * mid - x;
    }
};

double pick_step(const ScalarField& H, double T, double step, const FlowOptions& opts) {
    double s = step > 0 ? step : std::abs(T) * 1e-3;
    double vmax = H.max_speed();
    if (vmax > 0) {
        double cell = std::min(H.cell_dx(), H.cell_dy());
        s = std::min(s, opts.max_cell_fraction * cell / vmax);
    }
    return std::max(s, 1e-9);
}

void check_inside(Vec2 p, const Chart& chart) {
    if (p.y <= 0.0 || p.y >= 1.0)
        throw NumericalError("trajectory exited the chart (h = " + std::to_string(p.y) + ")");
    if (!chart.periodic_x() && (p.x <= 0.0 || p.x >= 1.0))
        throw NumericalError("trajectory exited the chart (x = " + std::to_string(p.x) + ")");
}

}  // namespace

Trajectory integrate_flow(const ScalarField& H, Vec2 x0, double T, double step,
                          const FlowOptions& opts) {
    check_inside(x0, H.chart());
    Trajectory traj;
    traj.chart = H.chart().kind;
    if (T == 0.0) {
        traj.times = {0.0};
        traj.points = {x0};
        return traj;
    }
    double s = pick_step(H, T, step, opts);
    long long n = std::max<long long>(1, static_cast<long long>(std::ceil(std::abs(T) / s)));
    double dt = T / n;
    Stepper st{H, opts, dt};
    const double jump_cap =
        1.5 * std::hypot(H.cell_dx(), H.cell_dy()) + 2.0 * std::abs(dt) * H.max_speed();
    traj.times.reserve(n + 1);
    traj.points.reserve(n + 1);
    traj.times.push_back(0.0);
    traj.points.push_back(x0);
    Vec2 x = x0;
    for (long long k = 0; k < n; ++k) {
        double t = k * dt;
        Vec2 nx = st.advance(x, t);
        if ((nx - x).norm() > jump_cap)
            throw NumericalError("step-size sanity violated: jump exceeds one grid cell");
        x = nx;
        check_inside(x, H.chart());
        traj.times.push_back((k + 1) * dt);
        traj.points.push_back(x);
    }
    traj.used_rk4_fallback = st.used_fallback;
    return traj;
}

std::vector<std::vector<Vec2>> flow_snapshots(const ScalarField& H, const std::vector<Vec2>& points,
                                              double T, const std::vector<double>& snapshot_times,
                                              double step, const FlowOptions& opts,
                                              bool* used_fallback) {
    for (std::size_t i = 1; i < snapshot_times.size(); ++i)
        if (snapshot_times[i] < snapshot_times[i - 1])
            throw ConfigError("snapshot times must be nondecreasing");
    if (!snapshot_times.empty() && (snapshot_times.front() < 0 || snapshot_times.back() > T))
        throw ConfigError("snapshot times must lie in [0, T]");

    std::vector<std::vector<Vec2>> out(snapshot_times.size(),
                                       std::vector<Vec2>(points.size()));
    if (points.empty() || snapshot_times.empty()) return out;

    double s = pick_step(H, T, step, opts);
    long long n = std::max<long long>(1, static_cast<long long>(std::ceil(T / s)));
    double dt = T / n;

    std::atomic<bool> any_fallback{false};
    parallel_for(points.size(), [&](std::size_t pi) {
        Stepper st{H, opts, dt};
        Vec2 x = points[pi];
        check_inside(x, H.chart());
        std::size_t snap = 0;
        Vec2 prev = x;
        for (long long k = 0; k < n && snap < snapshot_times.size(); ++k) {
            double t0 = k * dt, t1 = (k + 1) * dt;
            prev = x;
            x = st.advance(x, t0);
            check_inside(x, H.chart());
            while (snap < snapshot_times.size() && snapshot_times[snap] <= t1) {
                double f = (snapshot_times[snap] - t0) / dt;
                out[snap][pi] = prev + f * (x - prev);
                ++snap;
            }
        }
        while (snap < snapshot_times.size()) out[snap++][pi] = x;
        if (st.used_fallback) any_fallback.store(true, std::memory_order_relaxed);
    });
    if (used_fallback) *used_fallback = any_fallback.load();
    return out;
}

double hofer_energy_interval(const ScalarField& H, double t0, double t1, int min_subdivisions) {
    if (t1 == t0) return 0.0;
    if (H.autonomous()) return std::abs(t1 - t0) * (H.max_value() - H.min_value());
    int n = std::max(min_subdivisions, 4 * (H.time_knots() - 1));
    double sum = 0.0;
    double prev = H.max_value(t0) - H.min_value(t0);
    for (int k = 1; k <= n; ++k) {
        double t = t0 + (t1 - t0) * k / n;
        double cur = H.max_value(t) - H.min_value(t);
        sum += 0.5 * (prev + cur) * ((t1 - t0) / n);
        prev = cur;
    }
    return std::abs(sum);
}

double hofer_energy(const ScalarField& H, double T, int min_subdivisions) {
    return hofer_energy_interval(H, 0.0, T, min_subdivisions);
}

WindingVector trajectory_class(const Trajectory& traj, const std::vector<Vec2>& punctures,
                               Vec2 closure_center, double closure_radius, double residual_tol) {
    if (traj.points.size() < 1) throw ConfigError("empty trajectory");
    Vec2 start = traj.points.front(), end = traj.points.back();

    WindingVector wv;
    if (traj.chart == ChartKind::Annulus && punctures.empty()) {
        // Single generator: net theta displacement, closed by the chord.
        double turns = end.x - start.x;
        // endpoints must be close after closing up within the disk
        double wrapped = turns - std::round(turns);
        Vec2 end_wrapped{start.x + wrapped, end.y};
        if ((start - closure_center).norm() > closure_radius ||
            (end_wrapped - closure_center).norm() > closure_radius)
            throw GeometryError("trajectory endpoints are not inside the closure disk");
        long long w = static_cast<long long>(std::llround(turns));
        double res = turns - w;
        if (std::abs(res) >= residual_tol)
            throw NumericalError("winding residual too large: " + std::to_string(res));
        wv.winding = {w};
        wv.residuals = {res};
        return wv;
    }

    if ((start - closure_center).norm() > closure_radius ||
        (end - closure_center).norm() > closure_radius)
        throw GeometryError("trajectory endpoints are not inside the closure disk");
    for (Vec2 p : punctures)
        if ((p - closure_center).norm() <= closure_radius)
            throw GeometryError("a puncture lies inside the closure disk");

    for (Vec2 p : punctures) {
        double angle = 0.0;
        for (std::size_t k = 1; k < traj.points.size(); ++k) {
            Vec2 a = traj.points[k - 1] - p;
            Vec2 b = traj.points[k] - p;
            angle += std::atan2(a.cross(b), a.dot(b));
        }
        // chord: end -> start inside the closure disk, swept angle < pi
        Vec2 a = end - p, b = start - p;
        angle += std::atan2(a.cross(b), a.dot(b));
        double turns = angle / (2 * kPi);
        long long w = static_cast<long long>(std::llround(turns));
        double res = turns - w;
        if (std::abs(res) >= residual_tol)
            throw NumericalError("winding residual too large: " + std::to_string(res));
        wv.winding.push_back(w);
        wv.residuals.push_back(res);
    }
    return wv;
}

double flux_through_cut(const ScalarField& H, const std::vector<Vec2>& cut) {
    if (cut.size() < 2) throw GeometryError("degenerate cut");
    if (!H.autonomous()) throw ConfigError("flux is defined for autonomous fields");
    double total = 0.0;
    const double dx = H.cell_dx(), dy = H.cell_dy();
    for (std::size_t s = 0; s + 1 < cut.size(); ++s) {
        Vec2 a = cut[s], b = cut[s + 1];
        if ((b - a).norm() < 1e-15) continue;
        // split the segment at grid lines so the integrand is linear per piece
        std::vector<double> ts = {0.0, 1.0};
        auto add_crossings = [&](double pa, double pb, double cell) {
            double lo = std::min(pa, pb), hi = std::max(pa, pb);
            for (long long k = static_cast<long long>(std::ceil(lo / cell));
                 k * cell < hi; ++k) {
                double t = (k * cell - pa) / (pb - pa);
                if (t > 0 && t < 1) ts.push_back(t);
            }
        };
        add_crossings(a.x, b.x, dx);
        add_crossings(a.y, b.y, dy);
        std::sort(ts.begin(), ts.end());
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            double t0 = ts[i], t1 = ts[i + 1];
            if (t1 - t0 < 1e-15) continue;
            Vec2 mid = a + ((t0 + t1) / 2) * (b - a);
            Vec2 d = (t1 - t0) * (b - a);
            Vec2 v = hamiltonian_velocity(H, mid);
            // left normal of the direction of travel
            total += v.x * (-d.y) + v.y * d.x;
        }
    }
    return total;
}

TransportReport verify_transport(const ScalarField& H, const Region& D1, const Region& D2,
                                 double T, double tol_frac, const TransportOptions& opts) {
    if (opts.boundary_samples < 16) throw ConfigError("too few boundary samples");
    const double area1 = D1.area();

    // resample D1 boundary uniformly by arclength
    std::vector<Vec2> samples;
    {
        const auto& poly = D1.boundary;
        std::vector<double> cum(poly.size() + 1, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i)
            cum[i + 1] = cum[i] + (poly[(i + 1) % poly.size()] - poly[i]).norm();
        double total_len = cum.back();
        samples.reserve(opts.boundary_samples + opts.interior_samples);
        std::size_t seg = 0;
        for (int k = 0; k < opts.boundary_samples; ++k) {
            double target = total_len * k / opts.boundary_samples;
            while (seg + 1 < poly.size() && cum[seg + 1] < target) ++seg;
            double span = cum[seg + 1] - cum[seg];
            double f = span > 0 ? (target - cum[seg]) / span : 0.0;
            Vec2 a = poly[seg], b = poly[(seg + 1) % poly.size()];
            samples.push_back(a + f * (b - a));
        }
    }
    // deterministic interior samples by low-discrepancy rejection
    {
        double minx = 1e30, maxx = -1e30, miny = 1e30, maxy = -1e30;
        for (Vec2 p : D1.boundary) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        uint64_t state = 0x9e3779b97f4a7c15ull;
        auto next01 = [&]() {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            return static_cast<double>(state >> 11) / 9007199254740992.0;
        };
        int placed = 0, guard = 0;
        while (placed < opts.interior_samples && guard < 100000) {
            ++guard;
            Vec2 p{minx + (maxx - minx) * next01(), miny + (maxy - miny) * next01()};
            if (D1.contains(p)) {
                samples.push_back(p);
                ++placed;
            }
        }
    }

    // drift is measured against the resampled polygon so boundary sampling
    // does not masquerade as integrator error
    double area_resampled;
    {
        Region start;
        start.boundary.assign(samples.begin(), samples.begin() + opts.boundary_samples);
        area_resampled = start.area();
    }

    bool fell_back = false;
    auto flowed_all = flow_snapshots(H, samples, T, {T}, opts.step, opts.flow, &fell_back)[0];
    std::vector<Vec2> flowed_boundary(flowed_all.begin(), flowed_all.begin() + opts.boundary_samples);
    std::vector<Vec2> flowed_interior(flowed_all.begin() + opts.boundary_samples, flowed_all.end());

    const bool wrap = H.chart().periodic_x();
    TransportReport rep;
    rep.time = T;
    rep.used_rk4_fallback = fell_back;
    rep.sym_diff = estimate_sym_diff(flowed_boundary, D2, wrap, opts.probe_resolution);
    rep.sym_diff_frac = rep.sym_diff / area1;

    // realign for the drift/containment checks exactly as the estimator does
    Region flowed;
    flowed.boundary = std::move(flowed_boundary);
    if (wrap) {
        double shift = std::round(flowed.centroid().x - D2.centroid().x);
        for (auto& p : flowed.boundary) p.x -= shift;
        for (auto& p : flowed_interior) p.x -= shift;
    }
    rep.area_drift_frac = std::abs(flowed.area() - area_resampled) / area_resampled;
    for (Vec2 p : flowed_interior)
        if (!flowed.contains(p)) ++rep.interior_escapes;

    rep.pass = rep.sym_diff_frac <= tol_frac;
    return rep;
}

double estimate_sym_diff(std::vector<Vec2> flowed_boundary, const Region& target, bool wrap,
                         int probe_resolution) {
    if (wrap) {
        double mean_x = 0.0;
        for (Vec2 p : flowed_boundary) mean_x += p.x;
        mean_x /= flowed_boundary.size();
        double shift = std::round(mean_x - target.centroid().x);
        for (auto& p : flowed_boundary) p.x -= shift;
    }
    Region flowed;
    flowed.boundary = std::move(flowed_boundary);

    double minx = 1e30, maxx = -1e30, miny = 1e30, maxy = -1e30;
    const std::vector<Vec2>* polys[2] = {&flowed.boundary, &target.boundary};
    for (const std::vector<Vec2>* poly : polys) {
        for (Vec2 p : *poly) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
    }
    double pad = 0.02 * std::max(maxx - minx, maxy - miny);
    minx -= pad, maxx += pad, miny -= pad, maxy += pad;
    const int N = probe_resolution;
    const double cw = (maxx - minx) / N, ch = (maxy - miny) / N;
    std::vector<double> row_sym(N, 0.0);
    parallel_for(N, [&](std::size_t j) {
        double y = miny + (j + 0.5) * ch;
        double acc = 0.0;
        for (int i = 0; i < N; ++i) {
            Vec2 p{minx + (i + 0.5) * cw, y};
            bool in1 = flowed.contains(p);
            bool in2 = wrap ? target.contains_mod1(p) : target.contains(p);
            if (in1 != in2) acc += cw * ch;
        }
        row_sym[j] = acc;
    });
    double sym = 0.0;
    for (double v : row_sym) sym += v;
    return sym;
}

}  // namespace hofer
