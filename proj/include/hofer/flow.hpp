#pragma once

#include <vector>

#include "hofer/field.hpp"

namespace hofer {

// Closed region bounded by a polyline (implicitly closed). Containment is a
// crossing-parity test; for annulus-chart regions given in covering-space
// coordinates the test is applied to the unit translates of the point.
struct Region {
    std::vector<Vec2> boundary;

    double area() const { return polygon_area(boundary); }
    bool contains(Vec2 p) const;
    bool contains_mod1(Vec2 p) const;  // OR over theta translates p + (k, 0), k in -2..2
    Vec2 centroid() const;

    static Region lens(double center_x, double y0, double span, double ramp, double amplitude,
                       int samples = 256);
    static Region round_disk(Vec2 center, double radius, int samples = 256);
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec2> points;  // theta/x unwrapped (covering space) for the annulus
    ChartKind chart = ChartKind::Annulus;
    bool used_rk4_fallback = false;
};

struct FlowOptions {
    int max_fixed_point_iters = 20;
    double fixed_point_tol = 1e-12;
    bool allow_rk4_fallback = true;
    // Step is additionally capped so one step moves at most this fraction of
    // the smaller grid cell side at the field's top speed.
    double max_cell_fraction = 0.5;
};

// Symplectic gradient of H at a point: (dtheta/dt, dh/dt) = (dH/dh, -dH/dtheta).
Vec2 hamiltonian_velocity(const ScalarField& H, Vec2 p, double t = 0.0);

// Implicit-midpoint integration of the Hamiltonian flow from x0 over [0, T]
// (T may be negative). `step` is an upper bound on the step size; pass 0 for
// the default |T|/1000. Non-convergent fixed-point steps fall back to RK4
// and are flagged, unless the fallback is disabled (then they throw).
Trajectory integrate_flow(const ScalarField& H, Vec2 x0, double T, double step = 0.0,
                          const FlowOptions& opts = {});

// Streaming variant for many particles: returns positions of all points at
// each requested snapshot time (snapshots must be increasing, within [0, T]).
// `used_fallback`, when given, reports whether any particle needed RK4 steps.
std::vector<std::vector<Vec2>> flow_snapshots(const ScalarField& H, const std::vector<Vec2>& points,
                                              double T, const std::vector<double>& snapshot_times,
                                              double step = 0.0, const FlowOptions& opts = {},
                                              bool* used_fallback = nullptr);

// Upper-bound witness for the Hofer norm: integral over [0, T] of
// (max H - min H) at fixed times, trapezoid rule with at least
// `min_subdivisions` panels (exact for autonomous fields).
double hofer_energy(const ScalarField& H, double T, int min_subdivisions = 100);

// Energy over a sub-interval [t0, t1]; concatenations over aligned panel
// grids add exactly.
double hofer_energy_interval(const ScalarField& H, double t0, double t1,
                             int min_subdivisions = 100);

struct WindingVector {
    std::vector<long long> winding;
    std::vector<double> residuals;  // pre-rounding remainders, |r| < tolerance
};

// Homology class of the trajectory closed up by the straight chord inside
// the given disk: accumulated angle around each puncture, divided by 2*pi
// and rounded. For the annulus chart pass no punctures; the single winding
// number around the annulus is computed from the unwrapped theta coordinate.
WindingVector trajectory_class(const Trajectory& traj, const std::vector<Vec2>& punctures,
                               Vec2 closure_center, double closure_radius,
                               double residual_tol = 0.05);

// Flux of the Hamiltonian flow of an autonomous H through an oriented
// polyline cut, a -> b. Equals H(a) - H(b) for the interpolated field; the
// line integral here is the independent route (midpoint rule on cell-clipped
// pieces, exact per piece for the bilinear interpolant).
double flux_through_cut(const ScalarField& H, const std::vector<Vec2>& cut);

struct TransportReport {
    double time = 0.0;
    double sym_diff = 0.0;        // area estimate of (flowed D1) symdiff D2
    double sym_diff_frac = 0.0;   // relative to area(D1)
    double area_drift_frac = 0.0; // |area(flowed D1) - area(D1)| / area(D1)
    int interior_escapes = 0;     // interior samples that left the flowed region
    bool used_rk4_fallback = false;
    bool pass = false;
};

struct TransportOptions {
    int boundary_samples = 512;   // >= 256
    int interior_samples = 64;
    int probe_resolution = 256;   // probe grid per axis over the bounding box
    double step = 0.0;
    FlowOptions flow;
};

// Flows boundary and interior samples of D1 to time T and measures the
// symmetric difference against D2 by point-in-region tests on a probe grid.
TransportReport verify_transport(const ScalarField& H, const Region& D1, const Region& D2,
                                 double T, double tol_frac, const TransportOptions& opts = {});

// Probe-grid estimate of area(flowed symdiff target). When wrap is set the
// flowed boundary (covering-space coordinates) is first realigned with the
// target by a whole-curve integer shift.
double estimate_sym_diff(std::vector<Vec2> flowed_boundary, const Region& target, bool wrap,
                         int probe_resolution);

}  // namespace hofer
