#include "hofer/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hofer {

ScalarField make_shift(double delta_collar, int grid) {
    if (!(delta_collar > 0 && delta_collar < 0.1))
        throw ConfigError("shift collar must satisfy 0 < delta < 0.1");
    Chart chart{ChartKind::Annulus};
    FieldOptions opts;
    opts.grid_x = grid;
    opts.grid_y = grid;
    opts.collar = delta_collar;
    return ScalarField::sample(
        chart, [](double, double h, double) { return h; }, opts);
}

namespace {

// Flat-top cosine bump of the given angular span; integral = amp*(span-ramp).
double lens_halfwidth(double x, double span, double ramp, double amp) {
    if (x <= 0 || x >= span) return 0.0;
    if (x < ramp) return amp * 0.5 * (1 - std::cos(kPi * x / ramp));
    if (x > span - ramp) return amp * 0.5 * (1 - std::cos(kPi * (span - x) / ramp));
    return amp;
}

// Monotone cross profile with eased corners; the derivative is proportional
// to ease(nu) * (a + b*nu), so circuit transit times are level-independent
// for straight (b = 0) and circular (b > 0) routes alike.
struct CrossProfile {
    std::vector<double> lut;

    static CrossProfile make(double sigma, double a, double b) {
        const int n = 2048;
        CrossProfile p;
        p.lut.resize(n + 1);
        double acc = 0.0;
        p.lut[0] = 0.0;
        for (int i = 1; i <= n; ++i) {
            double nu = (i - 0.5) / n;
            double ease = std::min({1.0, nu / sigma, (1.0 - nu) / sigma});
            ease = std::max(ease, 0.0);
            acc += ease * (a + b * nu);
            p.lut[i] = acc;
        }
        for (auto& v : p.lut) v /= acc;
        return p;
    }

    double operator()(double nu) const {
        if (nu <= 0) return 0.0;
        if (nu >= 1) return 1.0;
        double x = nu * (lut.size() - 1);
        std::size_t k = std::min(static_cast<std::size_t>(x), lut.size() - 2);
        double f = x - k;
        return (1 - f) * lut[k] + f * lut[k + 1];
    }
};

double wrap01(double x) { return x - std::floor(x); }

// theta-periodic channel around h = h0 with sampled half-width u(theta).
struct AnnulusChannel {
    double h0;
    std::vector<double> u;  // sampled on [0,1)
    double plateau_top;     // absolute h where the plateau band ends
    double support_top;     // absolute h where the field reaches 0
    CrossProfile prof;
    double plateau;
    int sign;

    double halfwidth(double theta) const {
        double x = wrap01(theta) * u.size();
        std::size_t k = std::min(static_cast<std::size_t>(x), u.size() - 1);
        std::size_t k1 = (k + 1) % u.size();
        double f = x - k;
        return (1 - f) * u[k] + f * u[k1];
    }

    double value(double theta, double h) const {
        double uu = halfwidth(theta);
        double lo = h0 - uu, hi = h0 + uu;
        double v;
        if (h <= lo)
            v = 0.0;
        else if (h < hi)
            v = prof((h - lo) / (2 * uu));
        else if (h <= plateau_top)
            v = 1.0;
        else if (h < support_top)
            v = 0.5 * (1 + std::cos(kPi * (h - plateau_top) / (support_top - plateau_top)));
        else
            v = 0.0;
        return sign * plateau * v;
    }
};

// Disk carried by a channel: the lens walls offset inward by `gap` so the
// boundary stays clear of the numerically slow wall skins. The channel
// amplitude is solved so the offset disk has area exactly `A`.
struct OffsetLens {
    double amp = 0.0;   // channel wall amplitude
    double gap = 0.0;

    static double disk_area(double amp, double gap, double span, double ramp) {
        const int n = 4096;
        double a = 0.0;
        for (int i = 0; i < n; ++i) {
            double x = span * (i + 0.5) / n;
            a += 2 * std::max(0.0, lens_halfwidth(x, span, ramp, amp) - gap) * span / n;
        }
        return a;
    }

    static OffsetLens solve(double A, double gap, double span, double ramp) {
        OffsetLens lens;
        lens.gap = gap;
        double lo = gap, hi = gap + 4 * (A / (2 * (span - ramp)) + gap);
        for (int it = 0; it < 60; ++it) {
            double mid = (lo + hi) / 2;
            (disk_area(mid, gap, span, ramp) < A ? lo : hi) = mid;
        }
        lens.amp = (lo + hi) / 2;
        return lens;
    }

    double disk_halfwidth(double x, double span, double ramp) const {
        return std::max(0.0, lens_halfwidth(x, span, ramp, amp) - gap);
    }
};

Region offset_lens_region(const OffsetLens& lens, double center, double y0, double span,
                          double ramp, int samples) {
    // boundary of {|h - y0| < max(0, g(x) - gap)} over the positive part
    double x_lo = 0, x_hi = span;
    while (x_hi - x_lo > 1e-9 && lens.disk_halfwidth(x_lo + 1e-9, span, ramp) <= 0) x_lo += span / 4096;
    while (x_hi - x_lo > 1e-9 && lens.disk_halfwidth(x_hi - 1e-9, span, ramp) <= 0) x_hi -= span / 4096;
    Region r;
    double x0 = center - span / 2;
    for (int i = 0; i <= samples; ++i) {
        double x = x_lo + (x_hi - x_lo) * i / samples;
        r.boundary.push_back({x0 + x, y0 + lens.disk_halfwidth(x, span, ramp)});
    }
    for (int i = samples - 1; i > 0; --i) {
        double x = x_lo + (x_hi - x_lo) * i / samples;
        r.boundary.push_back({x0 + x, y0 - lens.disk_halfwidth(x, span, ramp)});
    }
    return r;
}

// Wall clearance of the carried disk: enough grid cells everywhere, past the
// eased profile corner, and wide enough that the clearance level still sits
// `pipe_cells` cells off the wall inside the pipes (levels compress there in
// proportion to the local width). Long pipes need more clearance.
double wall_gap(double amp_estimate, double sigma, double pipe_width, double cell,
                double pipe_cells) {
    return std::max({12.0 * cell, sigma * 2 * amp_estimate + 4 * cell,
                     pipe_cells * cell * 2 * amp_estimate / pipe_width});
}

ChannelField build_annulus_channel(double A, int sign, const PipeSpec& pipes,
                                   const std::vector<double>& centers, double h0, double span,
                                   double ramp, double cutoff_margin, int grid, double collar) {
    pipes.validate();
    if (!(A > 0)) throw ConfigError("disk area must be positive");
    if (span <= ramp * 1.5) throw GeometryError("lens span too small for the end easing");
    const double cell = 1.0 / grid;
    double amp_d0 = A / (2 * (span - ramp));
    const double w_eff = std::min(pipes.width, 1.5 * amp_d0);
    const double w2 = w_eff / 2;
    const double sigma = std::clamp(pipes.smoothing / (2 * amp_d0), 0.006, 0.02);
    double gap = wall_gap(amp_d0, sigma, w_eff, cell, 2.5);
    OffsetLens lens = OffsetLens::solve(A, gap, span, ramp);
    gap = wall_gap(lens.amp, sigma, w_eff, cell, 2.5);
    lens = OffsetLens::solve(A, gap, span, ramp);
    const double amp = lens.amp;
    const double amp_d = amp - gap;  // disk amplitude at the flat top
    if (amp_d <= w2) throw GeometryError("disk thinner than the pipe width");

    // disjointness of the disks and pipes along the route
    for (std::size_t i = 0; i < centers.size(); ++i) {
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
            double d = std::abs(wrap01(centers[i] - centers[j]));
            d = std::min(d, 1 - d);
            if (d < span + 0.02) throw GeometryError("lens disks overlap along the route");
        }
    }

    const double room = std::min(h0, 1 - h0) - amp;
    if (room < 0.015) throw GeometryError("channel does not fit in the chart");
    const double margin = std::min(cutoff_margin, room / 4);
    const double coll = std::min(collar, room / 4);

    AnnulusChannel ch;
    ch.h0 = h0;
    ch.plateau = pipes.plateau;
    ch.sign = sign;
    ch.plateau_top = h0 + amp + margin;
    ch.support_top = ch.plateau_top + margin;
    const int M = 8192;
    ch.u.assign(M, w2);
    for (int i = 0; i < M; ++i) {
        double theta = static_cast<double>(i) / M;
        for (double c : centers) {
            double x = wrap01(theta - (c - span / 2));
            ch.u[i] = std::max(ch.u[i], lens_halfwidth(x, span, ramp, amp));
        }
    }
    ch.prof = CrossProfile::make(sigma, 1.0, 0.0);

    Chart chart{ChartKind::Annulus};
    FieldOptions fopts;
    fopts.grid_x = grid;
    fopts.grid_y = grid;
    fopts.collar = coll;
    ChannelField out;
    out.sign = sign;
    out.field = ScalarField::sample(
        chart, [&ch](double th, double h, double) { return ch.value(th, h); }, fopts);
    for (double c : centers)
        out.disks.push_back(offset_lens_region(lens, c, h0, span, ramp, 384));
    double usum = 0.0, losum = 0.0;
    for (double uu : ch.u) {
        usum += 2 * uu / M;
        losum += (ch.support_top - (h0 - uu)) / M;
    }
    out.channel_area = usum;
    out.support_area = losum;
    return out;
}

}  // namespace

ChannelField make_swap(double A, const PipeSpec& pipes, const SwapGeometry& geo) {
    ChannelField cf = build_annulus_channel(A, +1, pipes,
                                            {geo.disk_centers[0], geo.disk_centers[1]}, geo.h0,
                                            geo.span, geo.ramp, geo.cutoff_margin, geo.grid,
                                            geo.collar);
    return cf;
}

ChannelField make_loop_translation(double A, int sign, const PipeSpec& pipes,
                                   const LoopGeometry& geo) {
    if (sign != 1 && sign != -1) throw ConfigError("loop sign must be +1 or -1");
    LoopGeometry g = geo;
    // large disks need most of the chart height; trade easing for amplitude room
    if (A / (2 * (g.span - g.ramp)) > 0.42) g.ramp = std::min(g.ramp, 0.1);
    // flat lenses waste pipe-floor area under their tails; keep the pipe
    // narrower than the lens
    PipeSpec p = pipes;
    p.width = std::min(p.width, 0.8 * A / (2 * (g.span - g.ramp)));
    p.width = std::max(p.width, 24.0 / g.grid);
    p.smoothing = std::min(p.smoothing, 0.4 * p.width);
    return build_annulus_channel(A, sign, p, {g.disk_center}, g.h0, g.span, g.ramp,
                                 g.cutoff_margin, g.grid, g.collar);
}

namespace {

struct PlanarChannel {
    Vec2 center;
    double R;
    std::vector<double> u;  // half-width sampled over phi in [0, 2pi)
    double cut_hi;          // island plateau extends down to this radius
    double cut_lo;          // field is 0 for rho <= cut_lo
    CrossProfile prof;
    double plateau;
    int sign;

    double halfwidth(double phi) const {
        double x = wrap01(phi / (2 * kPi)) * u.size();
        std::size_t k = std::min(static_cast<std::size_t>(x), u.size() - 1);
        std::size_t k1 = (k + 1) % u.size();
        double f = x - k;
        return (1 - f) * u[k] + f * u[k1];
    }

    double value(double x, double y) const {
        Vec2 d{x - center.x, y - center.y};
        double rho = d.norm();
        double uu = halfwidth(std::atan2(d.y, d.x));
        double in = R - uu, out = R + uu;
        double v;
        if (rho >= out)
            v = 0.0;
        else if (rho > in)
            v = 1.0 - prof((rho - in) / (2 * uu));
        else if (rho >= cut_hi)
            v = 1.0;
        else if (rho > cut_lo)
            v = 0.5 * (1 - std::cos(kPi * (rho - cut_lo) / (cut_hi - cut_lo)));
        else
            v = 0.0;
        return sign * plateau * v;
    }
};

}  // namespace

ChannelField make_planar_loop(double A, int sign, const std::vector<Vec2>& enclosed,
                              const std::vector<Vec2>& avoided, const PipeSpec& pipes,
                              const PlanarLoopGeometry& geo) {
    pipes.validate();
    if (sign != 1 && sign != -1) throw ConfigError("loop sign must be +1 or -1");
    const double R = geo.radius;
    if (!(R > 0.02)) throw GeometryError("route radius too small");
    if (geo.span <= geo.ramp * 1.5 || geo.span > 2 * kPi - 0.3)
        throw GeometryError("lens span out of range");
    const double cell = 1.0 / geo.grid;
    double amp_d0 = A / (2 * R * (geo.span - geo.ramp));
    const double sigma = std::clamp(pipes.smoothing / (2 * amp_d0), 0.006, 0.02);
    // the pipe wraps most of the route, so balance its area against the wall
    // clearance it forces (clearance scales like 1/width)
    double w_eff = geo.pipe_width;
    if (w_eff <= 0) {
        double L_disk = R * (geo.span - geo.ramp), L_pipe = R * (2 * kPi - geo.span);
        w_eff = std::sqrt(2 * L_disk * 6.0 * cell * 2 * amp_d0 / std::max(L_pipe, 1e-6));
        w_eff = std::clamp(w_eff, 12 * cell, pipes.width);
    }
    w_eff = std::min(w_eff, 1.5 * amp_d0);
    const double w2 = w_eff / 2;
    double gap = wall_gap(amp_d0, sigma, w_eff, cell, 6.0);
    // polar band area is exactly R * integral of the width profile
    OffsetLens lens = OffsetLens::solve(A / R, gap, geo.span, geo.ramp);
    gap = wall_gap(lens.amp, sigma, w_eff, cell, 6.0);
    lens = OffsetLens::solve(A / R, gap, geo.span, geo.ramp);
    const double amp = lens.amp;
    const double amp_d = amp - gap;
    if (amp_d <= w2) throw GeometryError("disk thinner than the pipe width");
    if (amp >= R - 2 * geo.cutoff_margin - 0.01)
        throw GeometryError("disk too thick for the route radius");

    PlanarChannel ch;
    ch.center = geo.center;
    ch.R = R;
    ch.plateau = pipes.plateau;
    ch.sign = sign;
    ch.cut_hi = R - amp - geo.cutoff_margin;
    ch.cut_lo = std::max(0.25 * ch.cut_hi, ch.cut_hi - geo.cutoff_margin);
    const int M = 8192;
    ch.u.assign(M, w2);
    for (int i = 0; i < M; ++i) {
        double phi = 2 * kPi * i / M;  // lens spans phi in [0, span], like the disk
        ch.u[i] = std::max(ch.u[i], lens_halfwidth(phi, geo.span, geo.ramp, amp));
    }
    // transit-time compensation coefficients for the circular route
    double a = 0.0, b = 0.0;
    for (double uu : ch.u) {
        a += 2 * uu * (R - uu) * (2 * kPi / M);
        b += 4 * uu * uu * (2 * kPi / M);
    }
    ch.prof = CrossProfile::make(sigma, a, b);

    // geometry checks: chart fit, enclosed punctures in the zero core,
    // avoided punctures outside the support
    const double ext = R + amp + 0.01;
    if (geo.center.x - ext < geo.collar + 0.01 || geo.center.x + ext > 1 - geo.collar - 0.01 ||
        geo.center.y - ext < geo.collar + 0.01 || geo.center.y + ext > 1 - geo.collar - 0.01)
        throw GeometryError("loop channel does not fit in the chart");
    for (Vec2 p : enclosed)
        if ((p - geo.center).norm() > ch.cut_lo - 0.01)
            throw GeometryError("an enclosed puncture is not inside the zero core of the island");
    for (Vec2 p : avoided)
        if ((p - geo.center).norm() < ext + 0.02)
            throw GeometryError("an avoided puncture is too close to the loop support");

    Chart chart{ChartKind::PlanarSquare};
    FieldOptions fopts;
    fopts.grid_x = geo.grid;
    fopts.grid_y = geo.grid;
    fopts.collar = geo.collar;
    ChannelField out;
    out.sign = sign;
    out.field = ScalarField::sample(
        chart, [&ch](double x, double y, double) { return ch.value(x, y); }, fopts);
    // lens disk in polar coordinates around the route
    Region disk;
    const int S = 384;
    for (int i = 0; i <= S; ++i) {
        double phi = geo.span * i / S;
        double g = lens.disk_halfwidth(phi, geo.span, geo.ramp);
        disk.boundary.push_back({geo.center.x + (R + g) * std::cos(phi),
                                 geo.center.y + (R + g) * std::sin(phi)});
    }
    for (int i = S - 1; i > 0; --i) {
        double phi = geo.span * i / S;
        double g = lens.disk_halfwidth(phi, geo.span, geo.ramp);
        disk.boundary.push_back({geo.center.x + (R - g) * std::cos(phi),
                                 geo.center.y + (R - g) * std::sin(phi)});
    }
    out.disks.push_back(std::move(disk));
    out.channel_area = a + b / 2;
    double supp = 0.0;
    for (double uu : ch.u) supp += (sqr(R + uu) - sqr(ch.cut_lo)) / 2 * (2 * kPi / M);
    out.support_area = supp;
    return out;
}

bool polyline_self_intersects(const std::vector<Vec2>& loop) {
    const std::size_t n = loop.size();
    if (n < 4) return false;
    auto orient = [](Vec2 a, Vec2 b, Vec2 c) {
        double v = (b - a).cross(c - a);
        return (v > 0) - (v < 0);
    };
    auto segs_cross = [&](Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
        int o1 = orient(a, b, c), o2 = orient(a, b, d);
        int o3 = orient(c, d, a), o4 = orient(c, d, b);
        return o1 != o2 && o3 != o4;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // adjacent through the wrap
            if (segs_cross(loop[i], loop[(i + 1) % n], loop[j], loop[(j + 1) % n])) return true;
        }
    }
    return false;
}

CalibrationResult calibrate_transport_time(const ScalarField& H, const Region& D_source,
                                           const Region& D_target, double window_lo,
                                           double window_hi, const CalibrationOptions& opts) {
    if (!(window_lo >= 0 && window_lo < window_hi))
        throw ConfigError("calibration window must be increasing and nonnegative");
    const double area1 = D_source.area();
    const bool wrap = H.chart().periodic_x();

    // resample the source boundary
    std::vector<Vec2> samples;
    {
        const auto& poly = D_source.boundary;
        std::vector<double> cum(poly.size() + 1, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i)
            cum[i + 1] = cum[i] + (poly[(i + 1) % poly.size()] - poly[i]).norm();
        std::size_t seg = 0;
        for (int k = 0; k < opts.boundary_samples; ++k) {
            double target = cum.back() * k / opts.boundary_samples;
            while (seg + 1 < poly.size() && cum[seg + 1] < target) ++seg;
            double span = cum[seg + 1] - cum[seg];
            double f = span > 0 ? (target - cum[seg]) / span : 0.0;
            samples.push_back(poly[seg] + f * (poly[(seg + 1) % poly.size()] - poly[seg]));
        }
    }

    std::vector<double> times(opts.snapshots + 1);
    for (int k = 0; k <= opts.snapshots; ++k)
        times[k] = window_lo + (window_hi - window_lo) * k / opts.snapshots;
    FlowOptions fopts;
    auto snaps = flow_snapshots(H, samples, window_hi, times, opts.step, fopts);

    auto mismatch_at = [&](int k, int probe) {
        return estimate_sym_diff(snaps[k], D_target, wrap, probe);
    };

    int best_k = 0;
    double best_v = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= opts.snapshots; k += opts.coarse_stride) {
        double v = mismatch_at(k, opts.probe_resolution);
        if (v < best_v - 1e-12) {
            best_v = v;
            best_k = k;
        }
    }
    int lo = std::max(0, best_k - opts.coarse_stride);
    int hi = std::min(opts.snapshots, best_k + opts.coarse_stride);
    best_v = std::numeric_limits<double>::infinity();
    for (int k = lo; k <= hi; ++k) {
        double v = mismatch_at(k, opts.fine_probe_resolution);
        if (v < best_v - 1e-12) {
            best_v = v;
            best_k = k;
        }
    }

    CalibrationResult res;
    res.T_star = times[best_k];
    res.mismatch = best_v;
    res.mismatch_frac = best_v / area1;
    if (res.mismatch_frac > opts.accept_frac)
        throw NumericalError("calibration failed: best mismatch " +
                             std::to_string(res.mismatch_frac) + " of the disk area exceeds " +
                             std::to_string(opts.accept_frac));
    return res;
}

Schedule schedule_for_class(const SurfaceSpec& surface, double A, const H1Class& alpha,
                            const ScheduleOptions& opts) {
    surface.validate();
    if (surface.genus != 0)
        throw ConfigError("schedules are constructed for genus-zero surfaces only");
    if (alpha.basis != H1Basis::Genus0Punctures ||
        alpha.rank() != static_cast<std::size_t>(surface.punctures))
        throw ConfigError("class basis does not match the surface");
    if (!(A > 0 && A < 1)) throw ConfigError("disk area must satisfy 0 < A < Area(M) = 1");

    Schedule sched;
    if (alpha.is_zero()) return sched;

    auto loops = simple_loop_decomposition_genus0(alpha);

    if (surface.punctures == 1) {
        // annulus: every loop is the generator
        for (const auto& [sign, subset] : loops) {
            ChannelField cf =
                make_loop_translation(A, sign, opts.pipes, opts.annulus_geometry);
            if (sched.stages.empty()) {
                CalibrationOptions copts = opts.calibration;
                auto cal = calibrate_transport_time(cf.field, cf.disks[0], cf.disks[0],
                                                    0.8 * A, std::min(2 * A, 1.45 * A), copts);
                ScheduleStage st{std::move(cf.field), cal.T_star, sign, subset, cf.disks[0]};
                sched.stages.push_back(std::move(st));
            } else {
                ScheduleStage st{std::move(cf.field), sched.stages.front().duration, sign, subset,
                                 cf.disks[0]};
                sched.stages.push_back(std::move(st));
            }
        }
        return sched;
    }

    // planar chart: one circle-route loop per signed puncture subset
    if (surface.puncture_positions.size() != static_cast<std::size_t>(surface.punctures))
        throw ConfigError("puncture positions required for planar schedules");
    std::map<std::vector<int>, std::pair<double, PlanarLoopGeometry>> calibrated;
    for (const auto& [sign, subset] : loops) {
        PlanarLoopGeometry geo;
        auto it = calibrated.find(subset);
        double duration = 0.0;
        if (it != calibrated.end()) {
            duration = it->second.first;
            geo = it->second.second;
        } else {
            std::vector<Vec2> enclosed, avoided;
            for (int j = 0; j < surface.punctures; ++j) {
                if (std::find(subset.begin(), subset.end(), j) != subset.end())
                    enclosed.push_back(surface.puncture_positions[j]);
                else
                    avoided.push_back(surface.puncture_positions[j]);
            }
            Vec2 c{0, 0};
            for (Vec2 p : enclosed) c = c + p;
            c = c * (1.0 / enclosed.size());
            double maxd = 0.0;
            for (Vec2 p : enclosed) maxd = std::max(maxd, (p - c).norm());
            geo.center = c;
            // the route must hold both the enclosed punctures (inside the
            // zero core) and the lens amplitude; the amplitude shrinks as
            // the radius grows, so a few fixed-point rounds settle it
            double base = maxd + opts.planar_clearance + 2 * geo.cutoff_margin + 0.02;
            geo.radius = base + 0.1;
            for (int it2 = 0; it2 < 8; ++it2) {
                double amp = A / (2 * geo.radius * (geo.span - geo.ramp)) / 0.9;
                geo.radius = base + amp;
            }
            ChannelField probe = make_planar_loop(A, sign, enclosed, avoided, opts.pipes, geo);
            CalibrationOptions copts = opts.calibration;
            // circle routes carry long pipes; their transport tolerance is
            // looser than the straight annulus channels
            copts.accept_frac = std::max(copts.accept_frac, 0.10);
            double ca = probe.channel_area;
            auto cal = calibrate_transport_time(probe.field, probe.disks[0], probe.disks[0],
                                                std::max(0.5 * A, 0.85 * ca),
                                                std::min(2 * A, 1.35 * ca), copts);
            duration = cal.T_star;
            calibrated.emplace(subset, std::make_pair(duration, geo));
        }
        std::vector<Vec2> enclosed, avoided;
        for (int j = 0; j < surface.punctures; ++j) {
            if (std::find(subset.begin(), subset.end(), j) != subset.end())
                enclosed.push_back(surface.puncture_positions[j]);
            else
                avoided.push_back(surface.puncture_positions[j]);
        }
        ChannelField cf = make_planar_loop(A, sign, enclosed, avoided, opts.pipes, geo);
        ScheduleStage st{std::move(cf.field), duration, sign, subset, cf.disks[0]};
        sched.stages.push_back(std::move(st));
    }
    return sched;
}

}  // namespace hofer
