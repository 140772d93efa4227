#include "hofer/sphere.hpp"

#include <algorithm>
#include <cmath>

namespace hofer {

double TriangulatedSphere::total_area() const {
    double s = 0.0;
    for (double a : areas) s += a;
    return s;
}

int TriangulatedSphere::euler_characteristic() const {
    std::vector<uint64_t> edges;
    edges.reserve(triangles.size() * 3);
    for (const auto& t : triangles) {
        for (int e = 0; e < 3; ++e) {
            uint64_t a = t[e], b = t[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            edges.push_back((a << 32) | b);
        }
    }
    std::sort(edges.begin(), edges.end());
    std::size_t unique_edges = 0;
    for (std::size_t i = 0; i < edges.size();) {
        std::size_t j = i;
        while (j < edges.size() && edges[j] == edges[i]) ++j;
        ++unique_edges;
        i = j;
    }
    return vertex_count() - static_cast<int>(unique_edges) + triangle_count();
}

void TriangulatedSphere::validate_sphere() const {
    if (vertex_count() < 4) throw GeometryError("triangulated sphere needs at least 4 vertices");
    if (values.size() != static_cast<std::size_t>(vertex_count()))
        throw GeometryError("per-vertex value count mismatch");
    if (areas.size() != triangles.size()) throw GeometryError("per-triangle area count mismatch");
    for (double a : areas)
        if (!(a >= 0.0) || !std::isfinite(a)) throw GeometryError("triangle areas must be finite and nonnegative");
    if (euler_characteristic() != 2)
        throw GeometryError("input is not a sphere (Euler characteristic != 2)");
}

namespace {

// Glues a cap of the given total area along a boundary cycle: an apex plus
// rings of cycle-length vertices, ring band areas prescribed as for
// concentric rings of a round disk so the total is exact. F = 0 on all cap
// vertices. A zero cap area yields zero-area triangles (degenerate cap for
// the boundary parameter s = 0).
void append_cap(TriangulatedSphere& s, const std::vector<int>& cycle, double cap_area, int rings) {
    const int L = static_cast<int>(cycle.size());
    if (L < 3) throw GeometryError("cap boundary cycle too short");
    if (cap_area < 0) throw GeometryError("cap area must be nonnegative");
    const int R = std::max(1, rings);
    const double rr = static_cast<double>(R) * R;

    int apex = s.vertex_count();
    s.values.push_back(0.0);
    // ring r = 1..R-1 are new vertices; ring R is the existing cycle.
    auto ring_vertex = [&](int r, int i) -> int {
        if (r == R) return cycle[i % L];
        return apex + 1 + (r - 1) * L + (i % L);
    };
    for (int r = 1; r < R; ++r)
        for (int i = 0; i < L; ++i) s.values.push_back(0.0);

    // innermost fan
    double fan_area = cap_area / rr / L;
    for (int i = 0; i < L; ++i) {
        s.triangles.push_back({apex, ring_vertex(1, i), ring_vertex(1, i + 1)});
        s.areas.push_back(fan_area);
    }
    for (int r = 1; r < R; ++r) {
        double band = cap_area * (2.0 * r + 1.0) / rr;
        double tri = band / (2.0 * L);
        for (int i = 0; i < L; ++i) {
            int a0 = ring_vertex(r, i), a1 = ring_vertex(r, i + 1);
            int b0 = ring_vertex(r + 1, i), b1 = ring_vertex(r + 1, i + 1);
            s.triangles.push_back({a0, b0, b1});
            s.areas.push_back(tri);
            s.triangles.push_back({a0, b1, a1});
            s.areas.push_back(tri);
        }
    }
}

}  // namespace

TriangulatedSphere build_sphere(const ScalarField& H, double s, double A,
                                const SphereOptions& opts) {
    if (!(A > 0.5 && A < 1.0)) throw ConfigError("build_sphere requires 1/2 < A < 1");
    const double slack = 1e-12;
    if (s < -slack || s > 2 * A - 1 + slack)
        throw ConfigError("build_sphere requires 0 <= s <= 2A-1");
    s = std::clamp(s, 0.0, 2 * A - 1);
    if (!H.autonomous()) throw ConfigError("build_sphere requires an autonomous Hamiltonian");
    if (H.chart().kind != ChartKind::Annulus)
        throw ConfigError("build_sphere requires the annulus chart");

    const int nx = H.grid_x(), ny = H.grid_y();
    for (int i = 0; i < nx; ++i) {
        if (H.sample_at(i, 0) != 0.0 || H.sample_at(i, ny - 1) != 0.0)
            throw ConfigError("Hamiltonian is not compactly supported in the annulus interior");
    }

    TriangulatedSphere sph;
    sph.values.resize(static_cast<std::size_t>(nx) * ny);
    auto vid = [&](int i, int j) { return j * nx + (i % nx); };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) sph.values[vid(i, j)] = H.sample_at(i, j);

    const double tri_area = H.cell_dx() * H.cell_dy() / 2.0;
    sph.triangles.reserve(static_cast<std::size_t>(2) * nx * (ny - 1));
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            sph.triangles.push_back({vid(i, j), vid(i + 1, j), vid(i, j + 1)});
            sph.triangles.push_back({vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    }
    sph.areas.assign(sph.triangles.size(), tri_area);

    std::vector<int> bottom(nx), top(nx);
    for (int i = 0; i < nx; ++i) {
        bottom[i] = vid(i, 0);
        top[i] = vid(i, ny - 1);
    }
    append_cap(sph, bottom, s, opts.cap_rings);
    append_cap(sph, top, 2 * A - 1 - s, opts.cap_rings);

    double total = sph.total_area();
    if (std::abs(total - 2 * A) > 1e-9 * 2 * A)
        throw NumericalError("sphere area mismatch: got " + std::to_string(total));
    return sph;
}

TriangulatedSphere build_sphere_at_puncture(const ScalarField& H, Vec2 puncture, double s,
                                            double A, const SphereOptions& opts) {
    if (!(A > 0.5 && A < 1.0)) throw ConfigError("need 1/2 < A < 1 (nondisplaceable disk)");
    const double slack = 1e-12;
    if (s < -slack || s > 2 * A - 1 + slack) throw ConfigError("need 0 <= s <= 2A-1");
    s = std::clamp(s, 0.0, 2 * A - 1);
    if (!H.autonomous()) throw ConfigError("autonomous Hamiltonian required");
    if (H.chart().kind != ChartKind::PlanarSquare)
        throw ConfigError("puncture filling requires the planar square chart");

    const int nx = H.grid_x(), ny = H.grid_y();
    auto vid = [&](int i, int j) { return j * nx + i; };

    // Snap the puncture to the nearest grid vertex, away from the boundary.
    int ip = static_cast<int>(std::lround(puncture.x * (nx - 1)));
    int jp = static_cast<int>(std::lround(puncture.y * (ny - 1)));
    if (ip < 2 || ip > nx - 3 || jp < 2 || jp > ny - 3)
        throw GeometryError("puncture too close to the chart boundary at this resolution");

    // The star of the puncture vertex is removed; the field must vanish there.
    for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di)
            if (H.sample_at(ip + di, jp + dj) != 0.0)
                throw GeometryError("puncture too close to the support of H at this resolution");
    for (int i = 0; i < nx; ++i)
        if (H.sample_at(i, 0) != 0.0 || H.sample_at(i, ny - 1) != 0.0)
            throw ConfigError("Hamiltonian is not compactly supported in the chart interior");
    for (int j = 0; j < ny; ++j)
        if (H.sample_at(0, j) != 0.0 || H.sample_at(nx - 1, j) != 0.0)
            throw ConfigError("Hamiltonian is not compactly supported in the chart interior");

    TriangulatedSphere sph;
    sph.values.resize(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) sph.values[vid(i, j)] = H.sample_at(i, j);

    const double tri_area = H.cell_dx() * H.cell_dy() / 2.0;
    const int P = vid(ip, jp);
    double removed_area = 0.0;
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            std::array<int, 3> a{vid(i, j), vid(i + 1, j), vid(i, j + 1)};
            std::array<int, 3> b{vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)};
            for (auto& tri : {a, b}) {
                if (tri[0] == P || tri[1] == P || tri[2] == P) {
                    removed_area += tri_area;
                    continue;
                }
                sph.triangles.push_back(tri);
                sph.areas.push_back(tri_area);
            }
        }
    }
    // values[P] stays but the vertex is now unused; harmless for the sweep
    // since it has no incident triangles -- drop it from connectivity by
    // leaving it isolated. The contour tree construction works on the
    // triangle-induced graph, so compact the vertex out here.
    // Link cycle of the removed star, counterclockwise.
    std::vector<int> link = {vid(ip + 1, jp),     vid(ip, jp + 1),     vid(ip - 1, jp + 1),
                             vid(ip - 1, jp),     vid(ip, jp - 1),     vid(ip + 1, jp - 1)};

    // Outer boundary cycle of the square.
    std::vector<int> outer;
    for (int i = 0; i + 1 < nx; ++i) outer.push_back(vid(i, 0));
    for (int j = 0; j + 1 < ny; ++j) outer.push_back(vid(nx - 1, j));
    for (int i = nx - 1; i > 0; --i) outer.push_back(vid(i, ny - 1));
    for (int j = ny - 1; j > 0; --j) outer.push_back(vid(0, j));

    append_cap(sph, link, 2 * A - 1 - s + removed_area, opts.cap_rings);
    append_cap(sph, outer, s, opts.cap_rings);

    // Remove the isolated puncture vertex by swapping in the last vertex.
    int last = sph.vertex_count() - 1;
    if (P != last) {
        sph.values[P] = sph.values[last];
        for (auto& tri : sph.triangles)
            for (auto& v : tri)
                if (v == last) v = P;
    }
    sph.values.pop_back();

    double total = sph.total_area();
    if (std::abs(total - 2 * A) > 1e-9 * 2 * A)
        throw NumericalError("sphere area mismatch: got " + std::to_string(total));
    return sph;
}

}  // namespace hofer
