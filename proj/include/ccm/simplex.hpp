#pragma once

// Simplices, circumspheres and the power-of-a-simplex functional.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ccm/error.hpp"
#include "ccm/linalg.hpp"
#include "ccm/random.hpp"
#include "ccm/vec.hpp"

namespace ccm {

class Simplex {
public:
    // k+1 affinely independent points in R^n, k <= n. Throws
    // DimensionMismatch or DegenerateSimplex.
    explicit Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
        detail::check_uniform_dimension(vertices_);
        for (const Point& v : vertices_)
            if (!v.all_finite()) throw ValidationError("simplex vertex has non-finite coordinate");
        const std::size_t k = intrinsic_dim();
        if (k > ambient_dim())
            throw DimensionMismatch("simplex has more vertices than ambient dimension allows");
        if (k > 0 && !detail::gram_nondegenerate(detail::gram_matrix(vertices_)))
            throw DegenerateSimplex("simplex vertices are affinely dependent");
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (std::size_t j = i + 1; j < vertices_.size(); ++j)
                scale_ = std::max(scale_, distance(vertices_[i], vertices_[j]));
    }

    std::size_t ambient_dim() const { return vertices_.front().size(); }
    std::size_t intrinsic_dim() const { return vertices_.size() - 1; }
    const std::vector<Point>& vertices() const { return vertices_; }
    const Point& vertex(std::size_t i) const { return vertices_[i]; }

    // Longest edge; the scale entering tolerance contracts.
    double max_edge_length() const { return scale_; }

private:
    std::vector<Point> vertices_;
    double scale_ = 0.0;
};

// Affine subspace, base point plus orthonormal spanning directions.
struct AffineSubspace {
    Point base;
    std::vector<Vec> axes;

    double distance_to(const Point& x) const {
        Vec r = x - base;
        for (const Vec& q : axes) r -= dot(r, q) * q;
        return r.norm();
    }
};

// Sphere within the affine hull described by `carrier`.
struct Sphere {
    Point center;
    double radius_sq = 0.0;
    AffineSubspace carrier;

    double radius() const { return std::sqrt(radius_sq); }
};

// Monte Carlo estimate of Pow over a simplex.
struct PowEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

inline Point centroid(const Simplex& s) {
    Vec m(s.ambient_dim());
    for (const Point& v : s.vertices()) m += v;
    return m / static_cast<double>(s.vertices().size());
}

// Unique sphere through all vertices within the simplex's affine hull.
// Solves G lambda = b for the center in barycentric edge coordinates,
// with G the edge Gram matrix and b_j = |v_j - v_0|^2 / 2.
inline Sphere circumsphere(const Simplex& s) {
    const std::vector<Point>& v = s.vertices();
    const std::size_t k = s.intrinsic_dim();

    std::vector<Vec> edges;
    edges.reserve(k);
    for (std::size_t i = 1; i <= k; ++i) edges.push_back(v[i] - v[0]);

    Point center = v[0];
    if (k > 0) {
        Vec b(k);
        for (std::size_t i = 0; i < k; ++i) b[i] = 0.5 * edges[i].squared_norm();
        Vec lambda;
        try {
            lambda = solve_linear(detail::gram_matrix(v), b);
        } catch (const SingularMatrix&) {
            throw DegenerateSimplex("circumsphere: Gram system is singular");
        }
        for (std::size_t i = 0; i < k; ++i) center += lambda[i] * edges[i];
    }

    Sphere sphere;
    sphere.center = center;
    sphere.radius_sq = squared_distance(center, v[0]);
    sphere.carrier = AffineSubspace{v[0], orthonormal_basis(edges)};
    return sphere;
}

// |ox|^2 - R^2. The point may lie outside the carrier subspace; the ambient
// distance is the defining quantity either way.
inline double power_of_point(const Sphere& sphere, const Point& x) {
    if (x.size() != sphere.center.size())
        throw DimensionMismatch("power_of_point: ambient dimensions differ");
    return squared_distance(sphere.center, x) - sphere.radius_sq;
}

namespace detail {

inline double sum_of_squared_edges(const Simplex& s) {
    const std::vector<Point>& v = s.vertices();
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) sum += squared_distance(v[i], v[j]);
    return sum;
}

} // namespace detail

// Pow via edge lengths:
//   -Pow = Vol / ((d+1)(d+2)) * sum_{i<j} |v_i v_j|^2.
inline double pow_simplex_edges(const Simplex& s) {
    const double d = static_cast<double>(s.intrinsic_dim());
    const double vol = gram_measure(s.vertices());
    if (vol <= 0.0 && s.intrinsic_dim() > 0) throw DegenerateSimplex("pow_simplex_edges: zero volume");
    return -vol * detail::sum_of_squared_edges(s) / ((d + 1.0) * (d + 2.0));
}

// Pow via the circumsphere:
//   -Pow = (d+1)/(d+2) * Vol * (R^2 - |o m|^2).
inline double pow_simplex_circum(const Simplex& s) {
    const double d = static_cast<double>(s.intrinsic_dim());
    const double vol = gram_measure(s.vertices());
    if (vol <= 0.0 && s.intrinsic_dim() > 0) throw DegenerateSimplex("pow_simplex_circum: zero volume");
    const Sphere sphere = circumsphere(s);
    const double om_sq = squared_distance(sphere.center, centroid(s));
    return -(d + 1.0) / (d + 2.0) * vol * (sphere.radius_sq - om_sq);
}

// Monte Carlo estimate of the Pow integral. Points are drawn uniformly in
// the simplex through sorted-uniform barycentric spacings; samples are
// generated in fixed chunks of 1024 with per-chunk (seed, chunk) streams,
// so the estimate is reproducible bit for bit.
inline PowEstimate pow_simplex_mc(const Simplex& s, std::uint64_t samples, std::uint64_t seed) {
    if (samples < 100) throw std::invalid_argument("pow_simplex_mc: need at least 100 samples");
    constexpr std::uint64_t kChunk = 1024;

    const double vol = gram_measure(s.vertices());
    if (vol <= 0.0 && s.intrinsic_dim() > 0) throw DegenerateSimplex("pow_simplex_mc: zero volume");
    const Sphere sphere = circumsphere(s);
    const std::vector<Point>& v = s.vertices();
    const std::size_t k = s.intrinsic_dim();
    const std::size_t n = s.ambient_dim();

    double mean = 0.0;
    double m2 = 0.0;
    std::uint64_t count = 0;
    std::vector<double> u(k);
    Point x(n);

    for (std::uint64_t chunk = 0; count < samples; ++chunk) {
        Rng rng = Rng::split(seed, chunk);
        const std::uint64_t in_chunk = std::min(kChunk, samples - count);
        for (std::uint64_t t = 0; t < in_chunk; ++t) {
            for (std::size_t i = 0; i < k; ++i) u[i] = rng.next_double();
            std::sort(u.begin(), u.end());
            for (std::size_t c = 0; c < n; ++c) x[c] = 0.0;
            double prev = 0.0;
            for (std::size_t i = 0; i <= k; ++i) {
                const double next = (i < k) ? u[i] : 1.0;
                x += (next - prev) * v[i];
                prev = next;
            }
            const double p = power_of_point(sphere, x);
            ++count;
            const double delta = p - mean;
            mean += delta / static_cast<double>(count);
            m2 += delta * (p - mean);
        }
    }

    PowEstimate est;
    est.samples = samples;
    est.mean = vol * mean;
    est.std_error =
        vol * std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
    return est;
}

// The d+1 hyperfaces of a full-dimensional simplex, each paired with its
// exterior unit normal (face i omits vertex i).
inline std::vector<std::pair<Simplex, Vec>> hyperfaces_with_normals(const Simplex& s) {
    const std::size_t d = s.intrinsic_dim();
    if (d != s.ambient_dim())
        throw DimensionMismatch("hyperfaces_with_normals: simplex must be full-dimensional");
    if (d == 0) throw DimensionMismatch("hyperfaces_with_normals: dimension must be positive");

    std::vector<std::pair<Simplex, Vec>> faces;
    faces.reserve(d + 1);
    for (std::size_t omit = 0; omit <= d; ++omit) {
        std::vector<Point> fv;
        fv.reserve(d);
        for (std::size_t i = 0; i <= d; ++i)
            if (i != omit) fv.push_back(s.vertex(i));

        std::vector<Vec> edges;
        for (std::size_t i = 1; i < fv.size(); ++i) edges.push_back(fv[i] - fv[0]);
        const std::vector<Vec> basis = orthonormal_basis(edges);

        Vec face_centroid(s.ambient_dim());
        for (const Point& p : fv) face_centroid += p;
        face_centroid /= static_cast<double>(fv.size());

        Vec r = s.vertex(omit) - face_centroid;
        for (const Vec& q : basis) r -= dot(r, q) * q;
        const double len = r.norm();
        if (len == 0.0) throw DegenerateSimplex("hyperfaces_with_normals: vanishing altitude");
        faces.emplace_back(Simplex(std::move(fv)), -r / len);
    }
    return faces;
}

// Residual of the flux identity tying facet powers to the displacement from
// circumcenter to centroid:
//   sum_i Pow(face_i) n_i - 2 Vol (m - o).
// Vanishes up to rounding for every nondegenerate full-dimensional simplex.
inline Vec power_flux_residual(const Simplex& s) {
    Vec lhs(s.ambient_dim());
    for (const auto& [face, normal] : hyperfaces_with_normals(s))
        lhs += pow_simplex_edges(face) * normal;
    const double vol = gram_measure(s.vertices());
    const Vec rhs = 2.0 * vol * (centroid(s) - circumsphere(s).center);
    return lhs - rhs;
}

} // namespace ccm
