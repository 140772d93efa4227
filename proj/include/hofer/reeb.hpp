#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hofer/sphere.hpp"

namespace hofer {

class MedianVerificationError : public NumericalError {
public:
    MedianVerificationError(const std::string& msg, double offending)
        : NumericalError(msg), offending_measure(offending) {}
    double offending_measure;
};

// Node of the contour tree. Flat 2-dimensional patches of the input (F
// constant over a connected patch of positive area) are collapsed to atom
// nodes carrying the patch area as an atomic measure.
struct ReebNode {
    double level = 0.0;
    double atom_measure = 0.0;
    std::vector<int> arcs;  // incident arc ids
    int representative_vertex = -1;
    bool is_atom() const { return atom_measure > 0; }
};

// Monotone family of level-set components between two nodes. The measure of
// the slab between two levels is stored as a sampled cumulative function
// (piecewise-quadratic between samples, interpolated linearly).
struct ReebArc {
    int node_lo = -1, node_hi = -1;
    double level_lo = 0.0, level_hi = 0.0;
    std::vector<double> cumulative;  // size = bins+1, cumulative[0] = 0

    double measure() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
    double cumulative_at(double level) const;
    // Smallest level with cumulative_at(level) >= target (monotone inverse).
    double level_at_cumulative(double target) const;
};

struct MeasuredReebTree {
    std::vector<ReebNode> nodes;
    std::vector<ReebArc> arcs;
    double total_measure = 0.0;

    // Mass of the component containing the given endpoint when the arc is
    // cut at an interior point, excluding the arc's own mass.
    std::vector<double> mass_beyond_lo;  // per arc
    std::vector<double> mass_beyond_hi;
};

struct ReebOptions {
    int slabs_per_unit = 256;  // cumulative-measure samples per unit of level range
};

// Contour tree of the PL function on a triangulated sphere via join/split
// tree merge, ties broken by vertex index. Arc measures are attributed per
// triangle: the levels of a triangle trace a monotone path through the tree,
// and the exact area between consecutive levels (quadratic in the level) is
// added along that path.
MeasuredReebTree build_contour_tree(const TriangulatedSphere& sphere,
                                    const ReebOptions& opts = {});

struct MedianPoint {
    bool on_arc = false;
    int arc = -1;   // valid when on_arc
    int node = -1;  // valid when !on_arc
    double level = 0.0;  // F(X)
    double worst_component = 0.0;
};

// The unique point of the tree whose complementary components all have
// measure <= total/2. The defining inequality is re-verified exhaustively
// over all nodes and all arcs at slab resolution before returning.
MedianPoint find_median(const MeasuredReebTree& tree, double level_tol = 1e-6);

// Integral of F over the sphere (per-triangle vertex average times area).
double sphere_integral(const TriangulatedSphere& sphere);

struct CalabiOptions {
    SphereOptions sphere;
    ReebOptions reeb;
};

// Calabi invariant of the time-1 map of an autonomous F on the sphere:
// integral of F minus total area times the value of F on the measure median
// of the contour tree.
double calabi_sphere(const TriangulatedSphere& sphere, const ReebOptions& opts = {});

// Calabi homomorphism for a Hamiltonian supported in a disk: time integral
// of the space integral. Exact for the piecewise-linear time interpolation.
double calabi_disk(const ScalarField& H, Vec2 disk_center, double disk_radius);

// Pullback of the sphere Calabi invariant under the annulus embedding that
// glues disks of area s and 2A-1-s to the two ends.
double cal_j(const ScalarField& H, double s, double A, const CalabiOptions& opts = {});

// rho_{A,s1,s2} = Cal_{j_{s2}} - Cal_{j_{s1}} on autonomous Hamiltonians.
double rho_raw(const ScalarField& H, double A, double s1, double s2,
               const CalabiOptions& opts = {});

// rho_raw normalized by its value 2A(s2-s1) on the unit shift, so the shift
// maps to 1 and disk-supported maps to 0.
double rho_normalized(const ScalarField& H, double A, double s1, double s2,
                      const CalabiOptions& opts = {});

// Per-puncture quasimorphism vector on the k-punctured square chart: for
// each j, all other punctures are filled and rho_normalized is evaluated in
// the annulus structure around puncture j. Coefficients over the basis of
// small positive loops around the punctures.
std::vector<double> rho_vector(const ScalarField& H, const std::vector<Vec2>& punctures,
                               double A, double s1, double s2, const CalabiOptions& opts = {});

}  // namespace hofer
