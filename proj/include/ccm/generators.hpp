#pragma once

// Seeded geometry generators behind the verification suites: random fat
// simplices, convex polytope boundaries, retriangulation cycles, equilateral
// polygons and the reference polytopes. Everything is deterministic given
// the caller's Rng state.

#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "ccm/chain.hpp"
#include "ccm/error.hpp"
#include "ccm/linalg.hpp"
#include "ccm/random.hpp"
#include "ccm/simplex.hpp"
#include "ccm/spherical.hpp"
#include "ccm/vec.hpp"

namespace ccm::gen {

inline constexpr int kMaxRejectionRounds = 100000;

[[noreturn]] inline void generation_failed(const char* what) {
    throw Error(std::string("generator failed to produce ") + what);
}

// Gaussian k-simplex in R^n, randomly scaled and translated, rejection
// sampled until (k! Vol)^(1/k) / max_edge clears `min_fatness` so downstream
// linear solves stay well conditioned.
inline Simplex random_simplex(Rng& rng, std::size_t k, std::size_t n, double min_fatness = 0.2) {
    for (int round = 0; round < kMaxRejectionRounds; ++round) {
        const double scale = rng.uniform(0.5, 2.0);
        Vec shift(n);
        for (std::size_t i = 0; i < n; ++i) shift[i] = rng.uniform(-2.0, 2.0);
        std::vector<Point> v;
        v.reserve(k + 1);
        for (std::size_t i = 0; i <= k; ++i) v.push_back(shift + scale * rng.gaussian_vec(n));

        const double vol = gram_measure(v);
        if (vol <= 0.0) continue;
        double max_edge = 0.0;
        for (std::size_t i = 0; i <= k; ++i)
            for (std::size_t j = i + 1; j <= k; ++j)
                max_edge = std::max(max_edge, distance(v[i], v[j]));
        const double fatness =
            std::pow(detail::factorial(k) * vol, 1.0 / static_cast<double>(k)) / max_edge;
        if (fatness < min_fatness) continue;
        return Simplex(std::move(v));
    }
    generation_failed("a nondegenerate simplex");
}

// Orthogonal matrix from Gram-Schmidt on a gaussian matrix (det +-1).
inline Matrix random_orthogonal(Rng& rng, std::size_t n) {
    for (int round = 0; round < kMaxRejectionRounds; ++round) {
        std::vector<Vec> columns;
        for (std::size_t j = 0; j < n; ++j) columns.push_back(rng.gaussian_vec(n));
        const std::vector<Vec> q = orthonormal_basis(columns);
        if (q.size() != n) continue;
        Matrix m(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) m(i, j) = q[j][i];
        return m;
    }
    generation_failed("an orthogonal matrix");
}

// ---------------------------------------------------------------------------
// Convex hulls

// Indices of the convex hull of 2D points in counterclockwise order
// (Andrew's monotone chain).
inline std::vector<std::size_t> convex_hull_2d(const std::vector<Point>& pts) {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return pts[a][0] < pts[b][0] || (pts[a][0] == pts[b][0] && pts[a][1] < pts[b][1]);
    });
    auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
        return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1]) -
               (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0]);
    };
    std::vector<std::size_t> hull(2 * idx.size());
    std::size_t h = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) { // lower
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], idx[i]) <= 0.0) --h;
        hull[h++] = idx[i];
    }
    for (std::size_t i = idx.size() - 1, lower = h + 1; i-- > 0;) { // upper
        while (h >= lower && cross(hull[h - 2], hull[h - 1], idx[i]) <= 0.0) --h;
        hull[h++] = idx[i];
    }
    hull.resize(h - 1);
    return hull;
}

// Outward-oriented triangular facets of the convex hull of 3D points in
// general position. Throws on degenerate input; callers resample.
inline std::vector<std::array<std::size_t, 3>> convex_hull_3d(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    if (n < 4) throw Error("convex_hull_3d: need at least 4 points");

    double scale = 0.0;
    for (const Point& p : pts)
        for (double x : p.coords()) scale = std::max(scale, std::abs(x));
    const double eps = 1e-12 * scale * scale * scale;

    auto orient = [&](std::size_t a, std::size_t b, std::size_t c, const Point& p) {
        const Vec e1 = pts[b] - pts[a];
        const Vec e2 = pts[c] - pts[a];
        const Vec e3 = p - pts[a];
        return e1[0] * (e2[1] * e3[2] - e2[2] * e3[1]) - e1[1] * (e2[0] * e3[2] - e2[2] * e3[0]) +
               e1[2] * (e2[0] * e3[1] - e2[1] * e3[0]);
    };

    // initial tetrahedron: spread-out quadruple
    std::size_t i1 = 1;
    for (std::size_t i = 1; i < n; ++i)
        if (squared_distance(pts[i], pts[0]) > squared_distance(pts[i1], pts[0])) i1 = i;
    std::size_t i2 = 0;
    double best = -1.0;
    const Vec axis = pts[i1] - pts[0];
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 || i == i1) continue;
        Vec r = pts[i] - pts[0];
        r -= (dot(r, axis) / axis.squared_norm()) * axis;
        if (r.squared_norm() > best) {
            best = r.squared_norm();
            i2 = i;
        }
    }
    std::size_t i3 = 0;
    best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 || i == i1 || i == i2) continue;
        const double o = std::abs(orient(0, i1, i2, pts[i]));
        if (o > best) {
            best = o;
            i3 = i;
        }
    }
    if (best <= eps) throw Error("convex_hull_3d: points are coplanar");

    using Face = std::array<std::size_t, 3>;
    std::vector<Face> faces;
    auto add_face = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t opposite) {
        if (orient(a, b, c, pts[opposite]) > 0.0) std::swap(b, c);
        faces.push_back({a, b, c});
    };
    add_face(0, i1, i2, i3);
    add_face(0, i1, i3, i2);
    add_face(0, i2, i3, i1);
    add_face(i1, i2, i3, 0);

    for (std::size_t p = 0; p < n; ++p) {
        if (p == 0 || p == i1 || p == i2 || p == i3) continue;
        std::vector<Face> visible, hidden;
        for (const Face& f : faces)
            (orient(f[0], f[1], f[2], pts[p]) > eps ? visible : hidden).push_back(f);
        if (visible.empty()) continue;

        std::set<std::pair<std::size_t, std::size_t>> visible_edges;
        for (const Face& f : visible)
            for (int e = 0; e < 3; ++e) visible_edges.emplace(f[e], f[(e + 1) % 3]);
        faces = std::move(hidden);
        for (const auto& [u, v] : visible_edges)
            if (!visible_edges.count({v, u})) faces.push_back({u, v, p});
    }
    return faces;
}

namespace detail_gen {

inline Chain chain_from_facets(std::vector<Point> pool,
                               const std::vector<std::array<std::size_t, 3>>& facets) {
    std::vector<ChainTerm> terms;
    terms.reserve(facets.size());
    for (const auto& f : facets)
        terms.push_back({{static_cast<std::uint32_t>(f[0]), static_cast<std::uint32_t>(f[1]),
                          static_cast<std::uint32_t>(f[2])},
                         1});
    return Chain(3, 2, std::move(pool), std::move(terms));
}

} // namespace detail_gen

// Boundary 1-cycle of the convex hull of `npts` random points around
// `center`; radii are r * (1 +- jitter), so jitter 0 gives an inscribed
// polygon.
inline Chain convex_polygon_boundary(Rng& rng, std::size_t npts, const Point& center, double r,
                                     double jitter) {
    for (int round = 0; round < kMaxRejectionRounds; ++round) {
        std::vector<Point> pts;
        pts.reserve(npts);
        for (std::size_t i = 0; i < npts; ++i)
            pts.push_back(center + (r * rng.uniform(1.0 - jitter, 1.0 + jitter)) * rng.unit_vector(2));
        const std::vector<std::size_t> hull = convex_hull_2d(pts);
        if (hull.size() < 3) continue;
        std::vector<ChainTerm> edges;
        for (std::size_t i = 0; i < hull.size(); ++i)
            edges.push_back({{static_cast<std::uint32_t>(hull[i]),
                              static_cast<std::uint32_t>(hull[(i + 1) % hull.size()])},
                             1});
        try {
            return Chain(2, 1, std::move(pts), std::move(edges));
        } catch (const DegenerateSimplex&) {
            continue;
        }
    }
    generation_failed("a convex polygon boundary");
}

// Boundary 2-cycle of the convex hull of `npts` random points around
// `center`; jitter 0 inscribes all points in the sphere of radius r.
inline Chain convex_polytope_boundary_3d(Rng& rng, std::size_t npts, const Point& center, double r,
                                         double jitter) {
    for (int round = 0; round < kMaxRejectionRounds; ++round) {
        std::vector<Point> pts;
        pts.reserve(npts);
        for (std::size_t i = 0; i < npts; ++i)
            pts.push_back(center + (r * rng.uniform(1.0 - jitter, 1.0 + jitter)) * rng.unit_vector(3));
        try {
            Chain c = detail_gen::chain_from_facets(pts, convex_hull_3d(pts));
            if (!is_cycle(c)) continue;
            return c;
        } catch (const Error&) {
            continue;
        }
    }
    generation_failed("a convex polytope boundary");
}

// ---------------------------------------------------------------------------
// Full-dimensional cycles

namespace detail_gen {

// Orientation-corrected coefficient making the pool-order simplex positive.
inline std::int64_t positive_orientation(const std::vector<Point>& pool,
                                         const std::vector<std::uint32_t>& idx) {
    std::vector<Point> v;
    v.reserve(idx.size());
    for (std::uint32_t i : idx) v.push_back(pool[i]);
    return signed_volume(v) >= 0.0 ? 1 : -1;
}

} // namespace detail_gen

// Central triangulation of a random d-simplex minus the simplex itself: the
// cone over the boundary from an interior point, with the whole simplex
// subtracted, is a d-cycle.
inline Chain central_triangulation_cycle(Rng& rng, std::size_t d) {
    for (int round = 0; round < kMaxRejectionRounds; ++round) {
        const Simplex s = random_simplex(rng, d, d);
        std::vector<double> w(d + 1);
        double total = 0.0;
        for (double& x : w) total += (x = 0.15 + rng.next_double());
        Point interior(d);
        for (std::size_t i = 0; i <= d; ++i) interior += (w[i] / total) * s.vertex(i);

        std::vector<std::uint32_t> all(d + 1);
        for (std::size_t i = 0; i <= d; ++i) all[i] = static_cast<std::uint32_t>(i);
        const std::int64_t sign = detail_gen::positive_orientation(s.vertices(), all);

        try {
            const Chain whole(d, d, s.vertices(), {{all, sign}});
            const Chain filled = cone_fill(boundary(whole), interior);
            std::vector<ChainTerm> terms = filled.terms();
            terms.push_back({all, -sign});
            Chain cycle(d, d, filled.pool(), std::move(terms));
            if (!is_cycle(cycle) || cycle.empty()) continue;
            return cycle;
        } catch (const Error&) {
            continue;
        }
    }
    generation_failed("a central triangulation cycle");
}

// Difference of the two diagonal triangulations of a random convex
// quadrilateral (d = 2).
inline Chain retriangulation_cycle_2d(Rng& rng) {
    for (int round = 0; round < kMaxRejectionRounds; ++round) {
        std::vector<Point> pts;
        for (int i = 0; i < 4; ++i)
            pts.push_back(Point{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
        const std::vector<std::size_t> hull = convex_hull_2d(pts);
        if (hull.size() != 4) continue;
        std::vector<Point> pool;
        for (std::size_t i : hull) pool.push_back(pts[i]);

        auto tri = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c,
                       std::int64_t sign) -> ChainTerm {
            return {{a, b, c}, sign * detail_gen::positive_orientation(pool, {a, b, c})};
        };
        try {
            Chain cycle(2, 2, pool,
                        {tri(0, 1, 2, 1), tri(0, 2, 3, 1), tri(0, 1, 3, -1), tri(1, 2, 3, -1)});
            if (!is_cycle(cycle) || cycle.empty()) continue;
            if (cycle.scale() < 0.5) continue;
            return cycle;
        } catch (const Error&) {
            continue;
        }
    }
    generation_failed("a quadrilateral retriangulation cycle");
}

// Difference of the two tetrahedralizations of a triangular bipyramid whose
// apex segment crosses the shared triangle (the 2-3 flip, d = 3).
inline Chain retriangulation_cycle_3d(Rng& rng) {
    for (int round = 0; round < kMaxRejectionRounds; ++round) {
        const Simplex base = random_simplex(rng, 2, 3, 0.3);
        std::vector<double> w(3);
        double total = 0.0;
        for (double& x : w) total += (x = 0.2 + rng.next_double());
        Point crossing(3);
        for (std::size_t i = 0; i < 3; ++i) crossing += (w[i] / total) * base.vertex(i);

        const Vec axis = rng.unit_vector(3);
        std::vector<Point> pool = base.vertices();
        pool.push_back(crossing + rng.uniform(0.4, 1.2) * axis);
        pool.push_back(crossing - rng.uniform(0.4, 1.2) * axis);

        auto tet = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d,
                       std::int64_t sign) -> ChainTerm {
            return {{a, b, c, d}, sign * detail_gen::positive_orientation(pool, {a, b, c, d})};
        };
        try {
            Chain cycle(3, 3, pool,
                        {tet(3, 0, 1, 2, 1), tet(4, 0, 1, 2, 1), tet(3, 4, 0, 1, -1),
                         tet(3, 4, 1, 2, -1), tet(3, 4, 2, 0, -1)});
            if (!is_cycle(cycle) || cycle.empty()) continue;
            return cycle;
        } catch (const Error&) {
            continue;
        }
    }
    generation_failed("a bipyramid retriangulation cycle");
}

// ---------------------------------------------------------------------------
// Equilateral polygons

namespace detail_gen {

inline double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d,
                           double eps) {
    const double d1 = cross2(b - a, c - a);
    const double d2 = cross2(b - a, d - a);
    const double d3 = cross2(d - c, a - c);
    const double d4 = cross2(d - c, b - c);
    if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
        ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)))
        return true;
    // near-collinear overlap counts as a crossing
    auto near_segment = [eps](const Point& p, const Point& q, const Point& x) {
        const Vec pq = q - p;
        const double t = dot(x - p, pq) / pq.squared_norm();
        if (t < -1e-9 || t > 1.0 + 1e-9) return false;
        return distance(p + t * pq, x) < 1e-6;
    };
    if (std::abs(d1) <= eps && near_segment(a, b, c)) return true;
    if (std::abs(d2) <= eps && near_segment(a, b, d)) return true;
    if (std::abs(d3) <= eps && near_segment(c, d, a)) return true;
    if (std::abs(d4) <= eps && near_segment(c, d, b)) return true;
    return false;
}

} // namespace detail_gen

// Closed simple polygon with `nedges` exactly-unit edges: the first n-2
// directions are sampled uniformly and the walk closes through the first of
// the two unit two-link solutions. Rejection keeps the polygon simple, its
// area above 0.5 and its centroid fan well conditioned.
inline Chain equilateral_polygon(Rng& rng, std::size_t nedges) {
    if (nedges < 3) throw Error("equilateral_polygon: need at least 3 edges");
    for (int round = 0; round < kMaxRejectionRounds; ++round) {
        std::vector<Point> p;
        p.reserve(nedges);
        p.push_back(Point{0.0, 0.0});
        for (std::size_t i = 0; i + 2 < nedges; ++i) p.push_back(p.back() + rng.unit_vector(2));

        const Vec gap = p.front() - p.back();
        const double glen = gap.norm();
        if (glen < 0.15 || glen > 1.85) continue;
        const Vec perp = Vec{-gap[1], gap[0]} / glen;
        p.push_back(p.back() + 0.5 * gap + std::sqrt(1.0 - 0.25 * glen * glen) * perp);

        bool ok = true;
        for (std::size_t i = 0; ok && i < nedges; ++i)
            for (std::size_t j = i + 1; ok && j < nedges; ++j) {
                if (j == i + 1 || (i == 0 && j == nedges - 1)) continue; // adjacent
                ok = !detail_gen::segments_cross(p[i], p[(i + 1) % nedges], p[j],
                                                 p[(j + 1) % nedges], 1e-12);
            }
        for (std::size_t i = 0; ok && i < nedges; ++i)
            for (std::size_t j = i + 1; ok && j < nedges; ++j)
                ok = distance(p[i], p[j]) > 1e-6;
        if (!ok) continue;

        Point apex(2);
        for (const Point& q : p) apex += q;
        apex /= static_cast<double>(nedges);
        double area = 0.0;
        double min_fan = 1e30;
        for (std::size_t i = 0; i < nedges; ++i) {
            const double a =
                0.5 * detail_gen::cross2(p[i] - apex, p[(i + 1) % nedges] - apex);
            area += a;
            min_fan = std::min(min_fan, std::abs(a));
        }
        if (std::abs(area) < 0.5 || min_fan < 1e-2) continue;

        std::vector<ChainTerm> edges;
        for (std::size_t i = 0; i < nedges; ++i)
            edges.push_back({{static_cast<std::uint32_t>(i),
                              static_cast<std::uint32_t>((i + 1) % nedges)},
                             1});
        return Chain(2, 1, std::move(p), std::move(edges));
    }
    generation_failed("an equilateral polygon");
}

// ---------------------------------------------------------------------------
// Reference polytopes

// Boundary of the bipyramid over a unit equilateral triangle with all nine
// edges of length 1; every facet is a unit equilateral triangle but the
// vertex set is not transitive and not cospherical.
inline Chain triangular_bipyramid_boundary() {
    const double s3 = std::sqrt(3.0);
    const double h = std::sqrt(2.0 / 3.0);
    std::vector<Point> pool = {
        {0.0, 0.0, 0.0},          {1.0, 0.0, 0.0},          {0.5, 0.5 * s3, 0.0},
        {0.5, s3 / 6.0, h},       {0.5, s3 / 6.0, -h},
    };
    std::vector<ChainTerm> faces = {
        {{0, 1, 3}, 1}, {{1, 2, 3}, 1}, {{2, 0, 3}, 1},
        {{1, 0, 4}, 1}, {{2, 1, 4}, 1}, {{0, 2, 4}, 1},
    };
    return Chain(3, 2, std::move(pool), std::move(faces));
}

// Boundary of the regular octahedron with vertices on the unit sphere.
inline Chain octahedron_boundary() {
    std::vector<Point> pool;
    for (std::size_t axis = 0; axis < 3; ++axis)
        for (double sign : {1.0, -1.0}) {
            Point p(3);
            p[axis] = sign;
            pool.push_back(p);
        }
    return detail_gen::chain_from_facets(pool, convex_hull_3d(pool));
}

// Boundary of the regular icosahedron with vertices on the unit sphere.
inline Chain icosahedron_boundary() {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    const double inv = 1.0 / std::sqrt(1.0 + phi * phi);
    std::vector<Point> pool;
    for (double a : {1.0, -1.0})
        for (double b : {phi, -phi}) {
            pool.push_back(Point{0.0, a * inv, b * inv});
            pool.push_back(Point{a * inv, b * inv, 0.0});
            pool.push_back(Point{b * inv, 0.0, a * inv});
        }
    return detail_gen::chain_from_facets(pool, convex_hull_3d(pool));
}

// Boundary of the unit cube, each square face split into two triangles,
// outward oriented.
inline Chain unit_cube_boundary() {
    std::vector<Point> pool;
    for (int z = 0; z < 2; ++z)
        for (int y = 0; y < 2; ++y)
            for (int x = 0; x < 2; ++x)
                pool.push_back(Point{static_cast<double>(x), static_cast<double>(y),
                                     static_cast<double>(z)});
    const std::array<std::array<std::uint32_t, 4>, 6> quads = {{
        {0, 2, 3, 1}, // z = 0
        {4, 5, 7, 6}, // z = 1
        {0, 1, 5, 4}, // y = 0
        {2, 6, 7, 3}, // y = 1
        {0, 4, 6, 2}, // x = 0
        {1, 3, 7, 5}, // x = 1
    }};
    std::vector<ChainTerm> faces;
    for (const auto& q : quads) {
        faces.push_back({{q[0], q[1], q[2]}, 1});
        faces.push_back({{q[0], q[2], q[3]}, 1});
    }
    return Chain(3, 2, std::move(pool), std::move(faces));
}

// ---------------------------------------------------------------------------
// Spherical inputs

// Random spherical d-simplex; the vertex-matrix determinant is kept above
// `min_det` so the lift stays well conditioned.
inline SphericalSimplex random_spherical_simplex(Rng& rng, std::size_t d, double min_det = 0.05) {
    const std::size_t n = d + 1;
    for (int round = 0; round < kMaxRejectionRounds; ++round) {
        std::vector<SphericalPoint> v;
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec u = rng.unit_vector(n);
            for (std::size_t j = 0; j < n; ++j) m(i, j) = u[j];
            v.emplace_back(u);
        }
        if (std::abs(determinant(m)) < min_det) continue;
        return SphericalSimplex(std::move(v));
    }
    generation_failed("a spherical simplex");
}

// Triangulation of the 2-sphere: the boundary of a random convex polytope
// containing the origin, centrally projected onto the sphere.
inline Chain random_sphere_triangulation(Rng& rng, std::size_t npts) {
    for (int round = 0; round < kMaxRejectionRounds; ++round) {
        std::vector<Point> pts;
        pts.reserve(npts);
        for (std::size_t i = 0; i < npts; ++i)
            pts.push_back(rng.uniform(0.6, 1.5) * rng.unit_vector(3));
        try {
            const auto facets = convex_hull_3d(pts);
            bool origin_inside = true;
            for (const auto& f : facets) {
                // origin strictly on the inner side of every facet plane
                std::vector<Point> tri = {pts[f[0]], pts[f[1]], pts[f[2]]};
                const Vec e1 = tri[1] - tri[0];
                const Vec e2 = tri[2] - tri[0];
                const Vec inward = Point(3) - tri[0];
                const double o = e1[0] * (e2[1] * inward[2] - e2[2] * inward[1]) -
                                 e1[1] * (e2[0] * inward[2] - e2[2] * inward[0]) +
                                 e1[2] * (e2[0] * inward[1] - e2[1] * inward[0]);
                if (o > -1e-6) {
                    origin_inside = false;
                    break;
                }
            }
            if (!origin_inside) continue;

            std::vector<Point> unit_pool;
            unit_pool.reserve(pts.size());
            for (const Point& p : pts) unit_pool.push_back(p / p.norm());
            Chain c = detail_gen::chain_from_facets(std::move(unit_pool), facets);
            if (!is_cycle(c)) continue;
            for (const ChainTerm& t : c.terms()) (void)detail::spherical_term(c, t);
            return c;
        } catch (const Error&) {
            continue;
        }
    }
    generation_failed("a sphere triangulation");
}

} // namespace ccm::gen
