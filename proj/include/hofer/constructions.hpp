#pragma once

#include <optional>
#include <vector>

#include "hofer/field.hpp"
#include "hofer/flow.hpp"
#include "hofer/homology.hpp"

namespace hofer {

// Pipes are short and wide by default: the transport excess depends on the
// pipe area only, while wide pipes keep every level line of the carried disk
// several grid cells away from the walls (thin pipes squeeze the disk
// boundary levels below the grid scale and the integration smears there).
struct PipeSpec {
    double width = 0.135;     // pipe width w
    double smoothing = 0.005; // r_s: cross-profile corner rounding, < w/2
    double plateau = 1.0;

    void validate() const {
        if (!(width > 0)) throw ConfigError("pipe width must be positive");
        if (!(smoothing >= 0 && smoothing < width / 2))
            throw ConfigError("smoothing radius must satisfy 0 <= r_s < w/2");
        if (!(plateau > 0)) throw ConfigError("plateau value must be positive");
    }
};

// Ramped height function: exactly h on S^1 x [delta, 1-delta], easing to 0
// at the annulus ends. Its time-1 map is the unit shift.
ScalarField make_shift(double delta_collar = 0.02, int grid = 512);

// A closed circulation channel: plateau on the island side, 0 outside, a
// monotone cross profile across the channel whose width is w/2 in the pipes
// and bulges to inscribe lens-shaped disks of area A. The transit time
// around the circuit is level-independent up to smoothing, so the
// time-(A + pipe area) map carries each inscribed disk to the next.
struct ChannelField {
    ScalarField field;
    std::vector<Region> disks;       // inscribed disks, in route order
    double channel_area = 0.0;       // expected circuit time scale
    double support_area = 0.0;       // measured area of {H != 0}
    int sign = +1;                   // circulation sign (homology orientation)
};

struct SwapGeometry {
    double h0 = 0.5;           // route height in the annulus
    double disk_centers[2] = {0.25, 0.75};  // theta centers, antipodal for symmetry
    double span = 0.44;        // theta extent of each lens disk
    double ramp = 0.16;        // lens end easing width
    double cutoff_margin = 0.02;  // plateau band thickness above the channel
    int grid = 2048;
    double collar = 0.01;
};

// Two disjoint lens disks of area A on the annulus route h = h0, connected
// by the two complementary pipe sections of the route.
ChannelField make_swap(double A, const PipeSpec& pipes = {}, const SwapGeometry& geo = {});

struct LoopGeometry {
    double h0 = 0.5;
    double disk_center = 0.5;  // theta center of the single lens disk
    double span = 0.93;        // wide disk, short pipe: the pipe area is the excess
    double ramp = 0.16;        // shrunk automatically when the disk needs the room
    double cutoff_margin = 0.02;
    int grid = 2048;
    double collar = 0.01;
};

// A single lens disk of area A whose boundary points are joined by the pipe
// going around the annulus; sign +1 circulates in the positive theta
// direction (class +generator), -1 the other way.
ChannelField make_loop_translation(double A, int sign = +1, const PipeSpec& pipes = {},
                                   const LoopGeometry& geo = {});

struct PlanarLoopGeometry {
    Vec2 center{0.5, 0.5};  // route circle center
    double radius = 0.2;
    double span = 2.4;      // angular extent (radians) of the lens disk
    double ramp = 0.5;      // angular easing width
    double cutoff_margin = 0.02;  // radial plateau band inside the inner wall
    double pipe_width = 0.0;      // 0 = balance pipe area against wall clearance
    int grid = 2048;
    double collar = 0.01;
};

// Circle-route channel in the planar square chart around a set of punctures;
// the plateau is inside, so positive sign winds the carried disk once
// counterclockwise around every enclosed puncture. The cross profile
// compensates the route curvature so transit times stay level-independent.
ChannelField make_planar_loop(double A, int sign, const std::vector<Vec2>& enclosed,
                              const std::vector<Vec2>& avoided, const PipeSpec& pipes = {},
                              const PlanarLoopGeometry& geo = {});

// Segment-pair self-intersection test for user-supplied loop polylines.
bool polyline_self_intersects(const std::vector<Vec2>& loop);

struct CalibrationResult {
    double T_star = 0.0;
    double mismatch = 0.0;       // symmetric-difference area at T_star
    double mismatch_frac = 0.0;  // relative to area(D_source)
};

struct CalibrationOptions {
    int snapshots = 256;
    int coarse_stride = 8;
    int boundary_samples = 384;
    int probe_resolution = 192;
    int fine_probe_resolution = 256;
    double step = 0.0;
    double accept_frac = 0.05;  // calibration fails above this mismatch
};

// Minimizes the symmetric difference between the flowed D_source and
// D_target over T in the window (snapshot scan plus local refinement).
CalibrationResult calibrate_transport_time(const ScalarField& H, const Region& D_source,
                                           const Region& D_target, double window_lo,
                                           double window_hi,
                                           const CalibrationOptions& opts = {});

struct ScheduleStage {
    ScalarField field;
    double duration = 0.0;
    int sign = +1;
    std::vector<int> subset;  // punctures encircled (empty for the annulus generator)
    Region disk;
};

struct Schedule {
    std::vector<ScheduleStage> stages;

    double total_energy() const {
        double e = 0.0;
        for (const auto& s : stages)
            e += s.duration * (s.field.max_value() - s.field.min_value());
        return e;
    }
};

struct ScheduleOptions {
    PipeSpec pipes;
    CalibrationOptions calibration;
    LoopGeometry annulus_geometry;
    double planar_clearance = 0.05;  // route clearance around enclosed punctures
};

// Realizes a genus-zero homology class as loop-translation stages, one per
// signed simple loop of the word-length decomposition. Stage durations are
// calibrated transport times, so the total energy is about
// (A + excess) * word length.
Schedule schedule_for_class(const SurfaceSpec& surface, double A, const H1Class& alpha,
                            const ScheduleOptions& opts = {});

}  // namespace hofer
