#pragma once

#include <array>
#include <vector>

#include "hofer/field.hpp"

namespace hofer {

// Abstract triangulated sphere: connectivity plus prescribed per-triangle
// areas and per-vertex scalar values. No embedding is stored; the area
// measure is all downstream computations need.
struct TriangulatedSphere {
    std::vector<double> values;                  // F per vertex
    std::vector<std::array<int, 3>> triangles;   // vertex indices
    std::vector<double> areas;                   // per triangle, >= 0

    int vertex_count() const { return static_cast<int>(values.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }
    double total_area() const;
    // Euler characteristic assuming a closed surface (every edge in two
    // triangles); 2 for a sphere.
    int euler_characteristic() const;
    void validate_sphere() const;
};

struct SphereOptions {
    int cap_rings = 8;  // concentric rings per glued cap
};

// Glue disks of area s and 2A-1-s to the two ends of the unit annulus
// carrying the autonomous field H; F = H on annulus vertices, 0 on caps.
// Cap ring areas are prescribed so the totals are exact. Requires
// 1/2 < A < 1, 0 <= s <= 2A-1, H autonomous and compactly supported.
TriangulatedSphere build_sphere(const ScalarField& H, double s, double A,
                                const SphereOptions& opts = {});

// Sphere for the puncture filling around the given puncture on the planar
// square chart. The annulus coordinate h around a puncture points away from
// it (h measures area on the boundary side), which is the orientation
// preserving identification with the plane: the cap of area s glues along
// the square boundary and the cap of area 2A-1-s replaces the star of the
// puncture vertex (plus the removed star area). All other punctures are
// simply filled (no-op).
TriangulatedSphere build_sphere_at_puncture(const ScalarField& H, Vec2 puncture, double s,
                                            double A, const SphereOptions& opts = {});

}  // namespace hofer
