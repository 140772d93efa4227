#include "hofer/reeb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hofer {

double ReebArc::cumulative_at(double level) const {
    if (cumulative.size() < 2) return 0.0;
    if (level <= level_lo) return 0.0;
    if (level >= level_hi) return cumulative.back();
    double span = level_hi - level_lo;
    double x = (level - level_lo) / span * (cumulative.size() - 1);
    std::size_t k = std::min(static_cast<std::size_t>(x), cumulative.size() - 2);
    double f = x - k;
    return (1 - f) * cumulative[k] + f * cumulative[k + 1];
}

double ReebArc::level_at_cumulative(double target) const {
    if (cumulative.size() < 2) return level_lo;
    if (target <= 0) return level_lo;
    if (target >= cumulative.back()) return level_hi;
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (cumulative[mid] < target)
            lo = mid;
        else
            hi = mid;
    }
    double seg = cumulative[hi] - cumulative[lo];
    double f = seg > 0 ? (target - cumulative[lo]) / seg : 0.0;
    double step = (level_hi - level_lo) / (cumulative.size() - 1);
    return level_lo + (lo + f) * step;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // Attach the set of a under root r (caller fixes representatives).
    void attach(int root_from, int root_to) { parent[root_from] = root_to; }
};

// Compressed sparse adjacency over mesh edges.
struct Adjacency {
    std::vector<int> offsets;
    std::vector<int> neighbors;
};

Adjacency build_adjacency(const TriangulatedSphere& sph) {
    std::vector<uint64_t> edges;
    edges.reserve(sph.triangles.size() * 3);
    for (const auto& t : sph.triangles) {
        for (int e = 0; e < 3; ++e) {
            uint64_t a = t[e], b = t[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            edges.push_back((a << 32) | b);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const int n = sph.vertex_count();
    Adjacency adj;
    adj.offsets.assign(n + 1, 0);
    for (uint64_t e : edges) {
        ++adj.offsets[(e >> 32) + 1];
        ++adj.offsets[(e & 0xffffffffu) + 1];
    }
    for (int v = 0; v < n; ++v) adj.offsets[v + 1] += adj.offsets[v];
    adj.neighbors.resize(edges.size() * 2);
    std::vector<int> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
    for (uint64_t e : edges) {
        int a = static_cast<int>(e >> 32), b = static_cast<int>(e & 0xffffffffu);
        adj.neighbors[cursor[a]++] = b;
        adj.neighbors[cursor[b]++] = a;
    }
    return adj;
}

// Area of {F < level} within a triangle with sorted vertex values v0<=v1<=v2
// (not all equal); piecewise quadratic in the level.
double area_below(double v0, double v1, double v2, double total, double level) {
    if (level <= v0) return 0.0;
    if (level >= v2) return total;
    if (level < v1) return total * sqr(level - v0) / ((v1 - v0) * (v2 - v0));
    return total * (1.0 - sqr(v2 - level) / ((v2 - v1) * (v2 - v0)));
}

}  // namespace

MeasuredReebTree build_contour_tree(const TriangulatedSphere& sph, const ReebOptions& opts) {
    sph.validate_sphere();
    const int n = sph.vertex_count();
    const auto& F = sph.values;
    Adjacency adj = build_adjacency(sph);

    // Simulation of simplicity: ties broken by vertex index.
    auto before = [&](int a, int b) { return F[a] < F[b] || (F[a] == F[b] && a < b); };
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), before);
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[order[i]] = i;

    // Join tree: sweep down over superlevel sets. join_parent[c] = the vertex
    // at which the component rooted at c merges (next lower critical in the
    // augmented sense).
    std::vector<int> join_parent(n, -1), split_parent(n, -1);
    std::vector<int> jchild(n, 0), schild(n, 0);
    {
        UnionFind uf(n);
        std::vector<int> head(n, -1);  // current lowest vertex per component root
        std::vector<char> seen(n, 0);
        for (int i = n - 1; i >= 0; --i) {
            int v = order[i];
            seen[v] = 1;
            head[uf.find(v)] = v;
            for (int e = adj.offsets[v]; e < adj.offsets[v + 1]; ++e) {
                int u = adj.neighbors[e];
                if (!seen[u]) continue;
                int ru = uf.find(u), rv = uf.find(v);
                if (ru == rv) continue;
                int hu = head[ru];
                join_parent[hu] = v;
                ++jchild[v];
                uf.attach(ru, rv);
                head[rv] = v;
            }
        }
    }
    // Split tree: sweep up over sublevel sets.
    {
        UnionFind uf(n);
        std::vector<int> head(n, -1);
        std::vector<char> seen(n, 0);
        for (int i = 0; i < n; ++i) {
            int v = order[i];
            seen[v] = 1;
            head[uf.find(v)] = v;
            for (int e = adj.offsets[v]; e < adj.offsets[v + 1]; ++e) {
                int u = adj.neighbors[e];
                if (!seen[u]) continue;
                int ru = uf.find(u), rv = uf.find(v);
                if (ru == rv) continue;
                int hu = head[ru];
                split_parent[hu] = v;
                ++schild[v];
                uf.attach(ru, rv);
                head[rv] = v;
            }
        }
    }

    // Merge the join and split trees into the augmented contour tree.
    // Doubly linked split/join structures that support leaf pruning and
    // splicing a regular vertex out.
    std::vector<std::vector<int>> jkids(n), skids(n);
    for (int v = 0; v < n; ++v) {
        if (join_parent[v] >= 0) jkids[join_parent[v]].push_back(v);
        if (split_parent[v] >= 0) skids[split_parent[v]].push_back(v);
    }
    std::vector<std::pair<int, int>> ct_edges;
    ct_edges.reserve(n - 1);
    std::vector<char> removed(n, 0);
    auto drop_kid = [](std::vector<int>& kids, int v) {
        kids.erase(std::find(kids.begin(), kids.end(), v));
    };

    std::vector<int> queue;
    queue.reserve(n);
    auto is_upper_leaf = [&](int v) { return jkids[v].empty() && skids[v].size() <= 1; };
    auto is_lower_leaf = [&](int v) { return skids[v].empty() && jkids[v].size() <= 1; };
    for (int v = 0; v < n; ++v)
        if (is_upper_leaf(v) || is_lower_leaf(v)) queue.push_back(v);

    int processed = 0;
    std::size_t qhead = 0;
    while (qhead < queue.size() && processed < n - 1) {
        int v = queue[qhead++];
        if (removed[v]) continue;
        bool upper = is_upper_leaf(v) && join_parent[v] >= 0;
        bool lower = is_lower_leaf(v) && split_parent[v] >= 0;
        if (!upper && !lower) continue;
        removed[v] = 1;
        ++processed;
        int touched[2] = {-1, -1};
        if (upper) {
            int p = join_parent[v];
            ct_edges.emplace_back(v, p);
            drop_kid(jkids[p], v);
            // splice v out of the split tree
            int sp = split_parent[v];
            if (skids[v].empty()) {
                if (sp >= 0) drop_kid(skids[sp], v);
            } else {
                int c = skids[v][0];
                split_parent[c] = sp;
                if (sp >= 0) {
                    drop_kid(skids[sp], v);
                    skids[sp].push_back(c);
                }
                touched[1] = c;
            }
            touched[0] = p;
            if (sp >= 0 && touched[1] < 0) touched[1] = sp;
        } else {
            int p = split_parent[v];
            ct_edges.emplace_back(v, p);
            drop_kid(skids[p], v);
            int jp = join_parent[v];
            if (jkids[v].empty()) {
                if (jp >= 0) drop_kid(jkids[jp], v);
            } else {
                int c = jkids[v][0];
                join_parent[c] = jp;
                if (jp >= 0) {
                    drop_kid(jkids[jp], v);
                    jkids[jp].push_back(c);
                }
                touched[1] = c;
            }
            touched[0] = p;
            if (jp >= 0 && touched[1] < 0) touched[1] = jp;
        }
        for (int t : touched)
            if (t >= 0 && !removed[t] && (is_upper_leaf(t) || is_lower_leaf(t))) queue.push_back(t);
    }
    if (processed != n - 1)
        throw NumericalError("contour tree merge did not consume all vertices");

    // Collapse contour-tree edges between exactly equal values: such an edge
    // is a zero-persistence pair inside one level-set component (a tie under
    // the index perturbation), so both endpoints are the same point of the
    // underlying tree. Groups are connected subtrees by construction, so the
    // quotient is again a tree. Flat 2-dimensional pieces become atoms.
    UnionFind flat(n);
    for (auto [a, b] : ct_edges) {
        if (F[a] != F[b]) continue;
        int ra = flat.find(a), rb = flat.find(b);
        if (ra != rb) flat.attach(ra, rb);
    }
    std::vector<int> group_id(n, -1);
    std::vector<int> group_rep;
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        int r = flat.find(v);
        if (group_id[r] < 0) {
            group_id[r] = static_cast<int>(group_rep.size());
            group_rep.push_back(v);
        }
        group_id[v] = group_id[r];
    }
    const int ng = static_cast<int>(group_rep.size());

    // Quotient tree over groups.
    std::vector<std::vector<int>> gadj(ng);
    int quotient_edges = 0;
    for (auto [a, b] : ct_edges) {
        int ga = group_id[a], gb = group_id[b];
        if (ga == gb) continue;
        gadj[ga].push_back(gb);
        gadj[gb].push_back(ga);
        ++quotient_edges;
    }
    if (quotient_edges != ng - 1)
        throw NumericalError("level-set quotient of the contour tree is not a tree");

    std::vector<double> atom(ng, 0.0);
    for (std::size_t t = 0; t < sph.triangles.size(); ++t) {
        const auto& tri = sph.triangles[t];
        if (F[tri[0]] == F[tri[1]] && F[tri[1]] == F[tri[2]]) {
            int g = group_id[tri[0]];
            if (group_id[tri[1]] != g || group_id[tri[2]] != g)
                throw NumericalError("flat triangle spans several tree points");
            atom[g] += sph.areas[t];
        }
    }

    auto glevel = [&](int g) { return F[group_rep[g]]; };

    // Final nodes: groups that are not regular (regular = exactly one
    // neighbor above, one below, no atomic measure).
    std::vector<int> node_of_group(ng, -1);
    MeasuredReebTree tree;
    for (int g = 0; g < ng; ++g) {
        int up = 0, down = 0;
        for (int h : gadj[g]) (glevel(h) > glevel(g) ? up : down)++;
        bool regular = (up == 1 && down == 1 && atom[g] == 0.0);
        if (!regular) {
            node_of_group[g] = static_cast<int>(tree.nodes.size());
            ReebNode node;
            node.level = glevel(g);
            node.atom_measure = atom[g];
            node.representative_vertex = group_rep[g];
            tree.nodes.push_back(std::move(node));
        }
    }
    if (tree.nodes.empty()) throw NumericalError("no critical points found");

    // Arcs: walk monotone chains of regular groups between final nodes.
    std::vector<int> arc_of_group(ng, -1);
    for (int g = 0; g < ng; ++g) {
        if (node_of_group[g] < 0) continue;
        for (int h : gadj[g]) {
            if (glevel(h) < glevel(g) || (glevel(h) == glevel(g) && h < g)) continue;
            // walk upward from g through h
            int prev = g, cur = h;
            while (node_of_group[cur] < 0) {
                int nxt = -1;
                for (int w : gadj[cur])
                    if (w != prev) nxt = w;
                prev = cur;
                cur = nxt;
            }
            ReebArc arc;
            arc.node_lo = node_of_group[g];
            arc.node_hi = node_of_group[cur];
            arc.level_lo = glevel(g);
            arc.level_hi = glevel(cur);
            if (!(arc.level_lo < arc.level_hi))
                throw NumericalError("degenerate arc with nonpositive level span");
            int id = static_cast<int>(tree.arcs.size());
            // tag interior groups
            int p2 = g, c2 = h;
            while (node_of_group[c2] < 0) {
                arc_of_group[c2] = id;
                int nxt = -1;
                for (int w : gadj[c2])
                    if (w != p2) nxt = w;
                p2 = c2;
                c2 = nxt;
            }
            int bins = std::max(2, static_cast<int>(std::ceil(
                                       opts.slabs_per_unit * (arc.level_hi - arc.level_lo))));
            arc.cumulative.assign(bins + 1, 0.0);
            tree.nodes[arc.node_lo].arcs.push_back(id);
            tree.nodes[arc.node_hi].arcs.push_back(id);
            tree.arcs.push_back(std::move(arc));
        }
    }

    // Root the final tree for path queries.
    const int nn = static_cast<int>(tree.nodes.size());
    std::vector<int> parent_node(nn, -1), parent_arc(nn, -1), depth(nn, 0), dfs_order;
    dfs_order.reserve(nn);
    {
        std::vector<int> stack = {0};
        std::vector<char> vis(nn, 0);
        vis[0] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            dfs_order.push_back(x);
            for (int aid : tree.nodes[x].arcs) {
                const auto& a = tree.arcs[aid];
                int y = a.node_lo == x ? a.node_hi : a.node_lo;
                if (vis[y]) continue;
                vis[y] = 1;
                parent_node[y] = x;
                parent_arc[y] = aid;
                depth[y] = depth[x] + 1;
                stack.push_back(y);
            }
        }
    }

    // Arc path between two nodes (via naive LCA; the final tree is small).
    auto collect_path = [&](int a, int b, std::vector<int>& out) {
        out.clear();
        int x = a, y = b;
        std::vector<int> right;
        while (x != y) {
            if (depth[x] >= depth[y]) {
                out.push_back(parent_arc[x]);
                x = parent_node[x];
            } else {
                right.push_back(parent_arc[y]);
                y = parent_node[y];
            }
        }
        out.insert(out.end(), right.rbegin(), right.rend());
    };

    // Attribute each non-flat triangle's area along the monotone tree path
    // traced by its level cross-sections.
    auto bin_add = [&](int arc_id, double lo, double hi, double v0, double v1, double v2,
                       double total) {
        ReebArc& a = tree.arcs[arc_id];
        double clo = std::max(lo, a.level_lo), chi = std::min(hi, a.level_hi);
        if (!(chi > clo)) return;
        const int bins = static_cast<int>(a.cumulative.size()) - 1;
        const double step = (a.level_hi - a.level_lo) / bins;
        int k0 = std::clamp(static_cast<int>((clo - a.level_lo) / step), 0, bins - 1);
        int k1 = std::clamp(static_cast<int>((chi - a.level_lo) / step), 0, bins - 1);
        double prev = area_below(v0, v1, v2, total, clo);
        for (int k = k0; k <= k1; ++k) {
            double top = std::min(chi, a.level_lo + (k + 1) * step);
            double cur = area_below(v0, v1, v2, total, top);
            a.cumulative[k + 1] += cur - prev;  // mass per bin, prefix-summed later
            prev = cur;
        }
    };

    std::vector<int> path;
    for (std::size_t t = 0; t < sph.triangles.size(); ++t) {
        const auto& tri = sph.triangles[t];
        double a = F[tri[0]], b = F[tri[1]], c = F[tri[2]];
        if (a == b && b == c) continue;
        double v0 = std::min({a, b, c}), v2 = std::max({a, b, c});
        double v1 = a + b + c - v0 - v2;
        int p_lo = tri[0], p_hi = tri[0];
        for (int k = 1; k < 3; ++k) {
            if (before(tri[k], p_lo)) p_lo = tri[k];
            if (before(p_hi, tri[k])) p_hi = tri[k];
        }
        int g_lo = group_id[p_lo], g_hi = group_id[p_hi];
        double area = sph.areas[t];
        if (area == 0.0) continue;

        int lo_arc = arc_of_group[g_lo], hi_arc = arc_of_group[g_hi];
        if (lo_arc >= 0 && lo_arc == hi_arc) {
            bin_add(lo_arc, v0, v2, v0, v1, v2, area);
            continue;
        }
        // Entry/exit nodes: a monotone path leaves an interior point of an
        // arc through its upper endpoint and enters through a lower one.
        int s_node = lo_arc >= 0 ? tree.arcs[lo_arc].node_hi : node_of_group[g_lo];
        int e_node = hi_arc >= 0 ? tree.arcs[hi_arc].node_lo : node_of_group[g_hi];
        if (lo_arc >= 0) bin_add(lo_arc, v0, v2, v0, v1, v2, area);
        if (hi_arc >= 0 && hi_arc != lo_arc) bin_add(hi_arc, v0, v2, v0, v1, v2, area);
        if (s_node != e_node) {
            collect_path(s_node, e_node, path);
            for (int aid : path)
                if (aid != lo_arc && aid != hi_arc) bin_add(aid, v0, v2, v0, v1, v2, area);
        }
    }

    for (auto& a : tree.arcs)
        for (std::size_t k = 1; k < a.cumulative.size(); ++k) a.cumulative[k] += a.cumulative[k - 1];

    double total = 0.0;
    for (const auto& nd : tree.nodes) total += nd.atom_measure;
    for (const auto& a : tree.arcs) total += a.measure();
    tree.total_measure = total;
    double area_total = sph.total_area();
    if (std::abs(total - area_total) > 0.02 * area_total)
        throw NumericalError("tree measure deviates from surface area by more than 2%");

    // Mass beyond each arc endpoint (component mass when the arc is cut),
    // by leaf pruning on the final tree.
    tree.mass_beyond_lo.assign(tree.arcs.size(), 0.0);
    tree.mass_beyond_hi.assign(tree.arcs.size(), 0.0);
    {
        std::vector<double> sub(nn, 0.0);
        for (int i = nn - 1; i >= 0; --i) {
            int x = dfs_order[i];
            sub[x] += tree.nodes[x].atom_measure;
            if (parent_node[x] >= 0) {
                sub[parent_node[x]] += sub[x] + tree.arcs[parent_arc[x]].measure();
            }
        }
        for (int x = 0; x < nn; ++x) {
            if (parent_node[x] < 0) continue;
            int aid = parent_arc[x];
            const auto& a = tree.arcs[aid];
            double child_side = sub[x];
            double other = total - child_side - a.measure();
            if (a.node_lo == x) {
                tree.mass_beyond_lo[aid] = child_side;
                tree.mass_beyond_hi[aid] = other;
            } else {
                tree.mass_beyond_hi[aid] = child_side;
                tree.mass_beyond_lo[aid] = other;
            }
        }
    }
    return tree;
}

namespace {

double node_worst_component(const MeasuredReebTree& tree, int node) {
    double worst = 0.0;
    for (int aid : tree.nodes[node].arcs) {
        const auto& a = tree.arcs[aid];
        double beyond =
            (a.node_lo == node ? tree.mass_beyond_hi[aid] : tree.mass_beyond_lo[aid]) + a.measure();
        worst = std::max(worst, beyond);
    }
    return worst;
}

}  // namespace

MedianPoint find_median(const MeasuredReebTree& tree, double level_tol) {
    if (tree.total_measure <= 0) throw ConfigError("median requires positive total measure");
    const double W = tree.total_measure;
    const double half = W / 2;
    const double mass_tol = 1e-9 * W;

    MedianPoint best;
    double best_worst = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
        double w = node_worst_component(tree, static_cast<int>(n));
        if (w < best_worst) {
            best_worst = w;
            best = MedianPoint{false, -1, static_cast<int>(n), tree.nodes[n].level, w};
        }
    }
    for (std::size_t aid = 0; aid < tree.arcs.size(); ++aid) {
        const auto& a = tree.arcs[aid];
        double m = a.measure();
        double lo_end = tree.mass_beyond_lo[aid];        // component below as level -> lo
        double hi_end = tree.mass_beyond_hi[aid] + 0.0;  // component above as level -> hi
        // cut at interior level l: lo side = lo_end + cum(l), hi side = rest
        double target = half - lo_end;
        if (target <= 0 || target >= m) continue;  // optimum sits at an endpoint node
        double level = a.level_at_cumulative(target);
        double lo_side = lo_end + a.cumulative_at(level);
        double hi_side = W - lo_side;
        double w = std::max(lo_side, hi_side);
        (void)hi_end;
        if (w < best_worst - mass_tol) {
            best_worst = w;
            best = MedianPoint{true, static_cast<int>(aid), -1, level, w};
        }
    }

    if (best_worst > half + std::max(mass_tol, 1e-7 * W))
        throw MedianVerificationError(
            "median verification failed: best point leaves a component of measure " +
                std::to_string(best_worst) + " > half of " + std::to_string(W),
            best_worst);

    // Exhaustive re-verification at slab resolution: no scanned point may be
    // strictly better than the returned one.
    const double slack = 1e-7 * W;
    for (std::size_t aid = 0; aid < tree.arcs.size(); ++aid) {
        const auto& a = tree.arcs[aid];
        for (std::size_t k = 0; k < a.cumulative.size(); ++k) {
            double lo_side = tree.mass_beyond_lo[aid] + a.cumulative[k];
            double w = std::max(lo_side, W - lo_side);
            if (w < best_worst - slack)
                throw MedianVerificationError(
                    "median verification failed: interior arc point beats the median (component " +
                        std::to_string(w) + ")",
                    w);
        }
    }
    (void)level_tol;
    return best;
}

double sphere_integral(const TriangulatedSphere& sph) {
    double s = 0.0;
    for (std::size_t t = 0; t < sph.triangles.size(); ++t) {
        const auto& tri = sph.triangles[t];
        s += sph.areas[t] * (sph.values[tri[0]] + sph.values[tri[1]] + sph.values[tri[2]]) / 3.0;
    }
    return s;
}

double calabi_sphere(const TriangulatedSphere& sph, const ReebOptions& opts) {
    MeasuredReebTree tree = build_contour_tree(sph, opts);
    MedianPoint x = find_median(tree);
    return sphere_integral(sph) - sph.total_area() * x.level;
}

double calabi_disk(const ScalarField& H, Vec2 disk_center, double disk_radius) {
    if (!H.supported_in_disk(disk_center, disk_radius))
        throw ConfigError("Hamiltonian is not supported in the declared disk");
    const auto& knots = H.knot_times();
    if (knots.size() == 1) return H.integral(0.0);
    double s = 0.0;
    double prev = H.integral(knots[0]);
    for (std::size_t k = 1; k < knots.size(); ++k) {
        double cur = H.integral(knots[k]);
        s += (knots[k] - knots[k - 1]) * 0.5 * (prev + cur);
        prev = cur;
    }
    return s;
}

double cal_j(const ScalarField& H, double s, double A, const CalabiOptions& opts) {
    return calabi_sphere(build_sphere(H, s, A, opts.sphere), opts.reeb);
}

double rho_raw(const ScalarField& H, double A, double s1, double s2, const CalabiOptions& opts) {
    if (!(0.0 <= s1 && s1 < s2 && s2 <= 2 * A - 1 + 1e-12))
        throw ConfigError("rho requires 0 <= s1 < s2 <= 2A-1");
    return cal_j(H, s2, A, opts) - cal_j(H, s1, A, opts);
}

double rho_normalized(const ScalarField& H, double A, double s1, double s2,
                      const CalabiOptions& opts) {
    return rho_raw(H, A, s1, s2, opts) / (2 * A * (s2 - s1));
}

std::vector<double> rho_vector(const ScalarField& H, const std::vector<Vec2>& punctures,
                               double A, double s1, double s2, const CalabiOptions& opts) {
    if (A <= 0.5) throw ConfigError("rho_vector requires A > Area/2 (nondisplaceable disk)");
    if (!(0.0 <= s1 && s1 < s2 && s2 <= 2 * A - 1 + 1e-12))
        throw ConfigError("rho_vector requires 0 <= s1 < s2 <= 2A-1");
    std::vector<double> out(punctures.size(), 0.0);
    for (std::size_t j = 0; j < punctures.size(); ++j) {
        double c2 = calabi_sphere(build_sphere_at_puncture(H, punctures[j], s2, A, opts.sphere),
                                  opts.reeb);
        double c1 = calabi_sphere(build_sphere_at_puncture(H, punctures[j], s1, A, opts.sphere),
                                  opts.reeb);
        out[j] = (c2 - c1) / (2 * A * (s2 - s1));
    }
    return out;
}

}  // namespace hofer
