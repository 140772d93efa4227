#include "hofer/homology.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>

namespace hofer {

H1Class make_genus0_class(std::vector<long long> coeffs) {
    H1Class c;
    c.basis = H1Basis::Genus0Punctures;
    c.coeffs = std::move(coeffs);
    return c;
}

H1Class make_torus_class(long long n, long long m) {
    H1Class c;
    c.basis = H1Basis::Torus;
    c.coeffs = {n, m};
    return c;
}

H1Class make_punctured_torus_class(std::vector<long long> meridians, long long beta) {
    H1Class c;
    c.basis = H1Basis::PuncturedTorus;
    c.coeffs = std::move(meridians);
    c.coeffs.push_back(beta);
    return c;
}

H1Class make_genus_sum_class(std::vector<H1Class> blocks) {
    H1Class c;
    c.basis = H1Basis::GenusSum;
    for (const auto& b : blocks) {
        if (b.basis != H1Basis::PuncturedTorus)
            throw ConfigError("genus-sum blocks must be punctured-torus classes");
        c.block_sizes.push_back(static_cast<int>(b.coeffs.size()));
        c.coeffs.insert(c.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
    }
    return c;
}

H1Class add(const H1Class& a, const H1Class& b) {
    if (a.basis != b.basis || a.rank() != b.rank() || a.block_sizes != b.block_sizes)
        throw ConfigError("cannot add H1 classes over different bases");
    H1Class r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    return r;
}

H1Class scale(const H1Class& a, long long n) {
    H1Class r = a;
    for (auto& c : r.coeffs) c *= n;
    return r;
}

long long word_length_genus0(const H1Class& alpha) {
    if (alpha.basis != H1Basis::Genus0Punctures)
        throw ConfigError("word_length_genus0 requires the genus-zero puncture basis");
    long long pos = 0, neg = 0;
    for (long long c : alpha.coeffs) {
        pos = std::max(pos, c);
        neg = std::max(neg, -c);
    }
    return pos + neg;
}

long long word_length_genus0_bfs(const H1Class& alpha) {
    if (alpha.basis != H1Basis::Genus0Punctures)
        throw ConfigError("word_length_genus0_bfs requires the genus-zero puncture basis");
    const std::size_t k = alpha.rank();
    if (k == 0) return 0;
    if (k > 6) throw ConfigError("BFS oracle limited to k <= 6");

    // Generators: +/- indicator of every nonempty puncture subset.
    std::vector<std::vector<long long>> moves;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::vector<long long> v(k, 0);
        for (std::size_t j = 0; j < k; ++j)
            if (mask & (1u << j)) v[j] = 1;
        moves.push_back(v);
        for (auto& x : v) x = -x;
        moves.push_back(v);
    }

    std::map<std::vector<long long>, long long> dist;
    std::vector<long long> start(k, 0);
    dist[start] = 0;
    std::queue<std::vector<long long>> q;
    q.push(start);
    // Moves change coordinates by at most 1, so the closed form bounds the
    // search radius; anything farther cannot be on a shortest path.
    const long long radius = word_length_genus0(alpha);
    long long coord_box = radius;
    for (long long c : alpha.coeffs) coord_box = std::max(coord_box, std::abs(c));
    while (!q.empty()) {
        auto cur = q.front();
        q.pop();
        long long d = dist[cur];
        if (cur == alpha.coeffs) return d;
        if (d >= radius) continue;
        for (const auto& mv : moves) {
            auto nxt = cur;
            bool ok = true;
            for (std::size_t j = 0; j < k; ++j) {
                nxt[j] += mv[j];
                if (std::abs(nxt[j]) > coord_box) ok = false;
            }
            if (!ok) continue;
            if (dist.emplace(nxt, d + 1).second) q.push(nxt);
        }
    }
    throw NumericalError("BFS oracle failed to reach the target class");
}

std::vector<std::pair<int, std::vector<int>>> simple_loop_decomposition_genus0(const H1Class& alpha) {
    if (alpha.basis != H1Basis::Genus0Punctures)
        throw ConfigError("loop decomposition requires the genus-zero puncture basis");
    std::vector<std::pair<int, std::vector<int>>> loops;
    long long pos = 0, neg = 0;
    for (long long c : alpha.coeffs) {
        pos = std::max(pos, c);
        neg = std::max(neg, -c);
    }
    for (long long r = 1; r <= pos; ++r) {
        std::vector<int> subset;
        for (std::size_t j = 0; j < alpha.rank(); ++j)
            if (alpha.coeffs[j] >= r) subset.push_back(static_cast<int>(j));
        loops.emplace_back(+1, std::move(subset));
    }
    for (long long r = 1; r <= neg; ++r) {
        std::vector<int> subset;
        for (std::size_t j = 0; j < alpha.rank(); ++j)
            if (alpha.coeffs[j] <= -r) subset.push_back(static_cast<int>(j));
        loops.emplace_back(-1, std::move(subset));
    }
    return loops;
}

std::pair<H1Class, H1Class> decompose_torus(long long n, long long m) {
    auto first = make_torus_class(n - 1, 1);
    auto second = make_torus_class(1, m - 1);
    return {first, second};
}

namespace {

void check_sum(const H1Class& a, const H1Class& b, const H1Class& expect, const char* what) {
    auto s = add(a, b);
    if (!(s == expect)) throw NumericalError(std::string(what) + ": components do not sum to the input");
}

}  // namespace

std::pair<H1Class, H1Class> decompose_punctured_torus(const H1Class& alpha) {
    if (alpha.basis != H1Basis::PuncturedTorus)
        throw ConfigError("decompose_punctured_torus requires the punctured-torus basis");
    const std::size_t r = alpha.rank();
    if (r < 2) throw ConfigError("punctured-torus basis needs at least one meridian plus beta");
    const long long n = alpha.coeffs.back();
    H1Class first = alpha;
    first.coeffs[0] -= 1;
    first.coeffs.back() = 1;
    H1Class second = alpha;
    for (auto& c : second.coeffs) c = 0;
    second.coeffs[0] = 1;
    second.coeffs.back() = n - 1;
    check_sum(first, second, alpha, "decompose_punctured_torus");
    return {first, second};
}

std::pair<H1Class, H1Class> decompose_genus_sum(const H1Class& alpha) {
    if (alpha.basis != H1Basis::GenusSum)
        throw ConfigError("decompose_genus_sum requires a genus-sum basis");
    H1Class first = alpha, second = alpha;
    std::size_t off = 0;
    for (int bs : alpha.block_sizes) {
        H1Class block;
        block.basis = H1Basis::PuncturedTorus;
        block.coeffs.assign(alpha.coeffs.begin() + off, alpha.coeffs.begin() + off + bs);
        auto [f, s] = decompose_punctured_torus(block);
        std::copy(f.coeffs.begin(), f.coeffs.end(), first.coeffs.begin() + off);
        std::copy(s.coeffs.begin(), s.coeffs.end(), second.coeffs.begin() + off);
        off += bs;
    }
    check_sum(first, second, alpha, "decompose_genus_sum");
    return {first, second};
}

bool simple_representable(const H1Class& alpha) {
    if (alpha.is_zero()) return false;
    if (alpha.basis == H1Basis::Genus0Punctures) {
        long long sign = 0;
        for (long long c : alpha.coeffs) {
            if (c == 0) continue;
            if (std::abs(c) != 1) return false;
            if (sign == 0) sign = c;
            if (c != sign) return false;
        }
        return true;
    }
    if (alpha.basis == H1Basis::Torus) {
        long long g = std::gcd(std::abs(alpha.coeffs[0]), std::abs(alpha.coeffs[1]));
        return g <= 1;
    }
    return false;
}

BoundReport l_a_bounds(int genus, int punctures, double area, double A, const H1Class& alpha,
                       const BoundOptions& opts) {
    if (area <= 0) throw ConfigError("surface area must be positive");
    if (A <= 0 || A >= area) throw ConfigError("disk area A must satisfy 0 < A < Area(M)");
    if (genus == 0 && punctures < 1)
        throw ConfigError("genus-zero surfaces here are open (at least one puncture)");

    BoundReport rep;
    rep.area_scale = area;
    const double a = A / area;  // normalized to Area(M) = 1

    if (alpha.is_zero()) {
        rep.lower = {0.0, "zero class"};
        rep.upper = {0.0, "zero class"};
        return rep;
    }

    // Upper bound: minimum over the applicable translation constructions.
    double upper = std::numeric_limits<double>::infinity();
    std::string up_src;
    auto consider = [&](double v, const char* src) {
        if (v < upper) {
            upper = v;
            up_src = src;
        }
    };
    if (a <= 0.5) consider(2 * a, "double transport (A <= Area/2)");
    if (genus > 0) consider(2 * a, "two simple loops (positive genus)");
    if (simple_representable(alpha)) consider(a, "single simple loop");
    // The annulus refinement improves the word-length bound only in the
    // nondisplaceable range; below half area its coefficient is negative.
    if (genus == 0 && punctures == 1 && a > 0.5)
        consider((2 * a - 1.0) * std::abs(static_cast<double>(alpha.coeffs[0])) + 1.0,
                 "annulus refinement");
    if (genus == 0 && alpha.basis == H1Basis::Genus0Punctures)
        consider(a * static_cast<double>(word_length_genus0(alpha)), "simple-loop word length");
    if (!std::isfinite(upper)) throw ConfigError("no upper-bound route applies to this basis");

    // Lower bound: energy-capacity gives A for any nonzero class; for genus
    // zero with a nondisplaceable disk the quasimorphism Lipschitz constants
    // give max_j |alpha_j| * (s2 - s1) / 2.
    double lower = a;
    std::string lo_src = "energy-capacity inequality";
    if (genus == 0 && a > 0.5 && alpha.basis == H1Basis::Genus0Punctures) {
        double s1 = opts.s1 >= 0 ? opts.s1 : 0.0;
        double s2 = opts.s2 >= 0 ? opts.s2 : 2 * a - 1.0;
        if (!(0.0 <= s1 && s1 < s2 && s2 <= 2 * a - 1.0 + 1e-12))
            throw ConfigError("need 0 <= s1 < s2 <= 2A-1 for the quasimorphism bound");
        long long maxc = 0;
        for (long long c : alpha.coeffs) maxc = std::max(maxc, std::abs(c));
        double qm = static_cast<double>(maxc) * (s2 - s1) / 2.0;
        if (qm > lower) {
            lower = qm;
            lo_src = "quasimorphism Lipschitz bound (derived constant c = 2/(s2-s1))";
        }
    }

    rep.lower = {lower, lo_src};
    rep.upper = {upper, up_src};
    if (rep.lower.value > rep.upper.value + 1e-12)
        throw NumericalError("bound sandwich violated: lower exceeds upper");
    return rep;
}

}  // namespace hofer
