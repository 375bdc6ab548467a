#pragma once

// Circumcenter of mass on the unit sphere via the lift to one dimension up:
// a spherical d-simplex contributes the circumcenter of the Euclidean
// (d+1)-simplex spanned by the origin and its vertices, weighted by that
// simplex's volume times the circumcenter's length.

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ccm/chain.hpp"
#include "ccm/error.hpp"
#include "ccm/linalg.hpp"
#include "ccm/simplex.hpp"
#include "ccm/vec.hpp"

namespace ccm {

struct SphericalPoint {
    Vec direction; // unit vector in R^(d+1)

    explicit SphericalPoint(Vec dir) : direction(std::move(dir)) {
        if (!direction.all_finite())
            throw ValidationError("spherical point has non-finite coordinate");
        if (std::abs(direction.norm() - 1.0) > 1e-12)
            throw ValidationError("spherical point direction is not unit length");
    }
};

class SphericalSimplex {
public:
    // d+1 unit vectors in R^(d+1), linearly independent.
    explicit SphericalSimplex(std::vector<SphericalPoint> vertices)
        : vertices_(std::move(vertices)) {
        if (vertices_.empty()) throw DimensionMismatch("spherical simplex needs vertices");
        const std::size_t n = vertices_.front().direction.size();
        if (n != vertices_.size())
            throw DimensionMismatch("spherical d-simplex needs d+1 vertices in R^(d+1)");
        for (const SphericalPoint& v : vertices_)
            if (v.direction.size() != n)
                throw DimensionMismatch("spherical simplex vertex dimensions differ");
        // unit vectors make the Gram scale 1, so the determinant test is absolute
        Matrix g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                g(i, j) = dot(vertices_[i].direction, vertices_[j].direction);
        if (determinant(g) <= kDegeneracyThreshold)
            throw DegenerateSimplex("spherical simplex vertices are linearly dependent");
    }

    std::size_t intrinsic_dim() const { return vertices_.size() - 1; }
    std::size_t ambient_dim() const { return vertices_.size(); }
    const std::vector<SphericalPoint>& vertices() const { return vertices_; }

private:
    std::vector<SphericalPoint> vertices_;
};

// A weighted point on the sphere stored as the raw vector mass * direction;
// zero-mass results stay representable without a direction.
struct SphericalMass {
    Vec vector;
    double mass = 0.0;
    std::optional<SphericalPoint> center;

    static SphericalMass from_vector(Vec v) {
        SphericalMass out;
        out.mass = v.norm();
        out.vector = std::move(v);
        if (out.mass > 1e-12) out.center = SphericalPoint(out.vector / out.mass);
        return out;
    }
};

// Euclidean (d+1)-simplex spanned by the origin and the spherical vertices.
inline Simplex lift(const SphericalSimplex& s) {
    std::vector<Point> v;
    v.reserve(s.vertices().size() + 1);
    v.emplace_back(s.ambient_dim());
    for (const SphericalPoint& p : s.vertices()) v.push_back(p.direction);
    return Simplex(std::move(v));
}

// Weighted circumcenter of a spherical simplex: direction o'/|o'| with mass
// Vol(lift) * |o'|, returned as the single vector Vol(lift) * o'.
inline SphericalMass spherical_weighted_circumcenter(const SphericalSimplex& s) {
    const Simplex lifted = lift(s);
    const Point o = circumsphere(lifted).center;
    return SphericalMass::from_vector(gram_measure(lifted.vertices()) * o);
}

namespace detail {

// Orientation-aware weighted-circumcenter vector: the lift volume is signed
// by the vertex order, so coefficient * contribution is invariant under
// re-permuting a term's vertices.
inline Vec oriented_circumcenter_moment(const SphericalSimplex& s) {
    const Simplex lifted = lift(s);
    return signed_volume(lifted.vertices()) * circumsphere(lifted).center;
}

} // namespace detail

inline SphericalMass spherical_ccm(
    const std::vector<std::pair<SphericalSimplex, std::int64_t>>& chain) {
    if (chain.empty()) throw DimensionMismatch("spherical_ccm: empty chain");
    Vec sum(chain.front().first.ambient_dim());
    for (const auto& [simplex, coefficient] : chain) {
        if (coefficient == 0) throw ValidationError("spherical_ccm: zero coefficient");
        sum += static_cast<double>(coefficient) * detail::oriented_circumcenter_moment(simplex);
    }
    return SphericalMass::from_vector(std::move(sum));
}

namespace detail {

inline SphericalSimplex spherical_term(const Chain& c, const ChainTerm& t) {
    std::vector<SphericalPoint> v;
    v.reserve(t.vertices.size());
    for (std::uint32_t i : t.vertices) v.emplace_back(c.pool()[i]);
    return SphericalSimplex(std::move(v));
}

} // namespace detail

// Chain-level spherical circumcenter of mass; the pool vertices referenced
// by terms must be unit vectors and the chain dimension d with ambient d+1.
inline SphericalMass spherical_ccm(const Chain& c) {
    if (c.intrinsic_dim() + 1 != c.ambient_dim())
        throw DimensionMismatch("spherical_ccm: chain must be a d-chain in R^(d+1)");
    Vec sum(c.ambient_dim());
    for (const ChainTerm& t : c.terms())
        sum += static_cast<double>(t.coefficient) *
               detail::oriented_circumcenter_moment(detail::spherical_term(c, t));
    return SphericalMass::from_vector(std::move(sum));
}

// Raw moment vector of a spherical cycle; vanishes for every d-cycle.
inline Vec spherical_cycle_residual(const Chain& cycle) {
    if (!is_cycle(cycle)) throw std::invalid_argument("spherical_cycle_residual: not a cycle");
    return spherical_ccm(cycle).vector;
}

// The lift mass Vol(lift) * |o'| next to the chordal form
// Vol(chordal simplex) / (2 (d+1)); the two agree identically.
inline std::pair<double, double> chordal_mass_identity(const SphericalSimplex& s) {
    const Simplex lifted = lift(s);
    const double lift_mass =
        gram_measure(lifted.vertices()) * circumsphere(lifted).center.norm();

    std::vector<Point> chordal;
    chordal.reserve(s.vertices().size());
    for (const SphericalPoint& p : s.vertices()) chordal.push_back(p.direction);
    const double d = static_cast<double>(s.intrinsic_dim());
    const double chordal_mass = gram_measure(chordal) / (2.0 * (d + 1.0));
    return {lift_mass, chordal_mass};
}

namespace detail {

inline Vec cross3(const Vec& a, const Vec& b) {
    return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double angle_between(const Vec& a, const Vec& b) {
    // numerically stable for both tiny and near-pi angles
    const Vec diff = a - b;
    const Vec sum = a + b;
    return 2.0 * std::atan2(diff.norm(), sum.norm());
}

} // namespace detail

// Intrinsic spherical volume: arc length for d = 1, Girard's spherical
// excess for d = 2. Higher dimensions are not supported.
inline double spherical_volume(const SphericalSimplex& s) {
    if (s.intrinsic_dim() == 1)
        return detail::angle_between(s.vertices()[0].direction, s.vertices()[1].direction);
    if (s.intrinsic_dim() != 2)
        throw UnsupportedDimension("spherical_volume: only d = 1 and d = 2 are supported");

    double excess = -M_PI;
    for (std::size_t i = 0; i < 3; ++i) {
        const Vec& a = s.vertices()[i].direction;
        const Vec& b = s.vertices()[(i + 1) % 3].direction;
        const Vec& c = s.vertices()[(i + 2) % 3].direction;
        Vec u = b - dot(b, a) * a;
        Vec w = c - dot(c, a) * a;
        excess += std::atan2(detail::cross3(u, w).norm(), dot(u, w));
    }
    return excess;
}

} // namespace ccm
