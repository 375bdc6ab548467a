#pragma once

// Simplicial chains over a shared vertex pool: boundary operator, cone
// fillings, circumcenter of mass and the moment identities of closed
// chains.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ccm/error.hpp"
#include "ccm/linalg.hpp"
#include "ccm/random.hpp"
#include "ccm/simplex.hpp"
#include "ccm/vec.hpp"

namespace ccm {

struct ChainTerm {
    std::vector<std::uint32_t> vertices; // k+1 indices into the pool
    std::int64_t coefficient = 0;

    friend bool operator==(const ChainTerm&, const ChainTerm&) = default;
};

namespace detail {

// Sorts indices ascending and flips the coefficient sign once per
// inversion. Returns false for repeated-vertex terms, which are dropped.
inline bool sort_with_sign(ChainTerm& term) {
    auto& v = term.vertices;
    int inversions = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        std::uint32_t x = v[i];
        std::size_t j = i;
        while (j > 0 && v[j - 1] > x) {
            v[j] = v[j - 1];
            --j;
            ++inversions;
        }
        v[j] = x;
    }
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] == v[i - 1]) return false;
    if (inversions % 2 != 0) term.coefficient = -term.coefficient;
    return true;
}

inline std::vector<ChainTerm> canonical_terms(std::vector<ChainTerm> terms) {
    std::vector<ChainTerm> kept;
    kept.reserve(terms.size());
    for (ChainTerm& t : terms)
        if (sort_with_sign(t)) kept.push_back(std::move(t));
    std::sort(kept.begin(), kept.end(),
              [](const ChainTerm& a, const ChainTerm& b) { return a.vertices < b.vertices; });
    std::vector<ChainTerm> merged;
    for (ChainTerm& t : kept) {
        if (!merged.empty() && merged.back().vertices == t.vertices)
            merged.back().coefficient += t.coefficient;
        else
            merged.push_back(std::move(t));
        if (!merged.empty() && merged.back().coefficient == 0) merged.pop_back();
    }
    return merged;
}

} // namespace detail

// Integer combination of oriented k-simplices with indices into a shared
// vertex pool. Construction canonicalizes: indices sorted with the
// permutation sign folded into the coefficient, equal vertex sets merged,
// zero and repeated-vertex terms dropped. Chains flagged combinatorial-only
// skip the metric nondegeneracy check but reject metric operations.
class Chain {
public:
    Chain(std::size_t ambient_dim, std::size_t intrinsic_dim, std::vector<Point> pool,
          std::vector<ChainTerm> terms, bool combinatorial_only = false)
        : ambient_dim_(ambient_dim),
          intrinsic_dim_(intrinsic_dim),
          pool_(std::move(pool)),
          terms_(detail::canonical_terms(std::move(terms))),
          combinatorial_only_(combinatorial_only) {
        if (ambient_dim_ == 0) throw DimensionMismatch("chain ambient dimension must be at least 1");
        for (const Point& p : pool_) {
            if (p.size() != ambient_dim_)
                throw DimensionMismatch("chain pool vertex has wrong dimension");
            if (!p.all_finite()) throw ValidationError("chain pool vertex has non-finite coordinate");
        }
        for (const ChainTerm& t : terms_) {
            if (t.vertices.size() != intrinsic_dim_ + 1)
                throw ValidationError("chain term has wrong number of vertices");
            for (std::uint32_t i : t.vertices)
                if (i >= pool_.size()) throw ValidationError("chain term index out of range");
        }
        if (!combinatorial_only_)
            for (const ChainTerm& t : terms_) (void)term_simplex(t); // throws if degenerate
        for (const ChainTerm& t : terms_)
            for (std::size_t i = 0; i < t.vertices.size(); ++i)
                for (std::size_t j = i + 1; j < t.vertices.size(); ++j)
                    scale_ = std::max(scale_, distance(pool_[t.vertices[i]], pool_[t.vertices[j]]));
    }

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t intrinsic_dim() const { return intrinsic_dim_; }
    const std::vector<Point>& pool() const { return pool_; }
    const std::vector<ChainTerm>& terms() const { return terms_; }
    bool combinatorial_only() const { return combinatorial_only_; }
    bool empty() const { return terms_.empty(); }

    // Longest edge over all terms; 0 for the empty chain.
    double scale() const { return scale_; }

    Simplex term_simplex(const ChainTerm& t) const {
        std::vector<Point> v;
        v.reserve(t.vertices.size());
        for (std::uint32_t i : t.vertices) v.push_back(pool_[i]);
        return Simplex(std::move(v));
    }

    friend bool operator==(const Chain& a, const Chain& b) {
        return a.ambient_dim_ == b.ambient_dim_ && a.intrinsic_dim_ == b.intrinsic_dim_ &&
               a.pool_ == b.pool_ && a.terms_ == b.terms_ &&
               a.combinatorial_only_ == b.combinatorial_only_;
    }

private:
    std::size_t ambient_dim_;
    std::size_t intrinsic_dim_;
    std::vector<Point> pool_;
    std::vector<ChainTerm> terms_;
    bool combinatorial_only_;
    double scale_ = 0.0;
};

// Result of a center-of-mass style aggregation: signed total weight, the
// weighted moment vector, and the normalized point when the weight clears
// the scale-relative threshold.
struct WeightedCenter {
    double weight = 0.0;
    Vec moment;
    std::optional<Point> point;
};

inline Chain canonicalize(Chain c) { return c; } // chains are canonical on construction

// Alternating-sign face sum, extended linearly over terms.
inline Chain boundary(const Chain& c) {
    if (c.intrinsic_dim() == 0)
        throw DimensionMismatch("boundary: chain dimension must be at least 1");
    std::vector<ChainTerm> faces;
    faces.reserve(c.terms().size() * (c.intrinsic_dim() + 1));
    for (const ChainTerm& t : c.terms()) {
        for (std::size_t omit = 0; omit < t.vertices.size(); ++omit) {
            ChainTerm face;
            face.coefficient = (omit % 2 == 0) ? t.coefficient : -t.coefficient;
            for (std::size_t i = 0; i < t.vertices.size(); ++i)
                if (i != omit) face.vertices.push_back(t.vertices[i]);
            faces.push_back(std::move(face));
        }
    }
    return Chain(c.ambient_dim(), c.intrinsic_dim() - 1, c.pool(), std::move(faces),
                 c.combinatorial_only());
}

inline bool is_cycle(const Chain& c) {
    if (c.intrinsic_dim() == 0) return true;
    return boundary(c).empty();
}

// Fills a cycle by coning every term from `apex`. The apex reuses a pool
// index when it coincides with an existing vertex, in which case the terms
// through that vertex drop as repeated-vertex terms (fan triangulation).
// Guarantees boundary(result) == cycle.
inline Chain cone_fill(const Chain& cycle, const Point& apex) {
    if (!is_cycle(cycle)) throw std::invalid_argument("cone_fill: chain is not a cycle");
    if (apex.size() != cycle.ambient_dim())
        throw DimensionMismatch("cone_fill: apex dimension mismatch");
    if (!apex.all_finite()) throw ValidationError("cone_fill: apex has non-finite coordinate");

    std::vector<Point> pool = cycle.pool();
    std::uint32_t apex_index = static_cast<std::uint32_t>(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (pool[i] == apex) {
            apex_index = static_cast<std::uint32_t>(i);
            break;
        }
    if (apex_index == pool.size()) pool.push_back(apex);

    std::vector<ChainTerm> terms;
    terms.reserve(cycle.terms().size());
    for (const ChainTerm& t : cycle.terms()) {
        ChainTerm cone;
        cone.coefficient = t.coefficient;
        cone.vertices.push_back(apex_index);
        cone.vertices.insert(cone.vertices.end(), t.vertices.begin(), t.vertices.end());
        const bool drops =
            std::find(t.vertices.begin(), t.vertices.end(), apex_index) != t.vertices.end();
        if (!drops) {
            std::vector<Point> v;
            v.reserve(cone.vertices.size());
            for (std::uint32_t i : cone.vertices) v.push_back(pool[i]);
            try {
                (void)Simplex(std::move(v));
            } catch (const DegenerateSimplex&) {
                throw DegenerateCone("cone_fill: apex yields a degenerate simplex");
            }
        }
        terms.push_back(std::move(cone));
    }
    return Chain(cycle.ambient_dim(), cycle.intrinsic_dim() + 1, std::move(pool), std::move(terms),
                 cycle.combinatorial_only());
}

namespace detail {

template <typename PointOfSimplex>
WeightedCenter aggregate_centers(const Chain& c, PointOfSimplex&& point_of) {
    if (c.combinatorial_only())
        throw ValidationError("metric operation on a combinatorial-only chain");
    if (c.intrinsic_dim() != c.ambient_dim())
        throw DimensionMismatch("center of mass requires a full-dimensional chain");

    WeightedCenter out;
    out.moment = Vec(c.ambient_dim());
    for (const ChainTerm& t : c.terms()) {
        const Simplex s = c.term_simplex(t);
        const double w = static_cast<double>(t.coefficient) * signed_volume(s.vertices());
        out.weight += w;
        out.moment += w * point_of(s);
    }
    const double threshold =
        1e-12 * std::pow(c.scale(), static_cast<double>(c.intrinsic_dim()));
    if (std::abs(out.weight) > threshold) out.point = out.moment / out.weight;
    return out;
}

} // namespace detail

// Center of mass of circumcenters weighted by signed volumes.
inline WeightedCenter circumcenter_of_mass(const Chain& c) {
    return detail::aggregate_centers(c, [](const Simplex& s) { return circumsphere(s).center; });
}

// Same aggregation over centroids; for a positively weighted chain this is
// the center of mass of the underlying solid region.
inline WeightedCenter centroid_of_mass(const Chain& c) {
    return detail::aggregate_centers(c, [](const Simplex& s) { return centroid(s); });
}

// Aggregation over the affine combination (1-t) o + t m on each simplex's
// Euler line; t = 0 gives circumcenter_of_mass, t = 1 centroid_of_mass.
inline WeightedCenter euler_point(const Chain& c, double t) {
    return detail::aggregate_centers(c, [t](const Simplex& s) {
        return (1.0 - t) * circumsphere(s).center + t * centroid(s);
    });
}

namespace detail {

inline Point default_cone_apex(const Chain& cycle) {
    Vec apex(cycle.ambient_dim());
    for (const Point& p : cycle.pool()) apex += p;
    if (!cycle.pool().empty()) apex /= static_cast<double>(cycle.pool().size());
    return apex;
}

} // namespace detail

// Fills a cycle from the pool centroid; if that cone degenerates, retries
// once with a deterministic offset of 1e-3 * scale along a direction derived
// from the pool hash.
inline Chain cone_fill_default(const Chain& cycle) {
    const Point base = detail::default_cone_apex(cycle);
    try {
        return cone_fill(cycle, base);
    } catch (const DegenerateCone&) {
        Rng rng(hash_coordinates(cycle.pool()));
        const Point retry = base + (1e-3 * cycle.scale()) * rng.unit_vector(cycle.ambient_dim());
        return cone_fill(cycle, retry);
    }
}

// Circumcenter of mass of a (n-1)-cycle, defined through a cone filling;
// the apex choice provably does not matter.
inline WeightedCenter cycle_circumcenter_of_mass(const Chain& cycle,
                                                 const std::optional<Point>& apex = std::nullopt) {
    if (!is_cycle(cycle)) throw std::invalid_argument("cycle_circumcenter_of_mass: not a cycle");
    if (cycle.intrinsic_dim() + 1 != cycle.ambient_dim())
        throw DimensionMismatch("cycle_circumcenter_of_mass: cycle dimension must be n-1");
    if (apex) return circumcenter_of_mass(cone_fill(cycle, *apex));
    return circumcenter_of_mass(cone_fill_default(cycle));
}

// Moment residuals of a full-dimensional cycle: the volume-weighted
// circumcenter sum and the volume-weighted circumcenter-to-centroid sum.
// Both vanish up to rounding for every cycle.
inline std::pair<Vec, Vec> cycle_moment_residuals(const Chain& cycle) {
    if (!is_cycle(cycle)) throw std::invalid_argument("cycle_moment_residuals: not a cycle");
    if (cycle.combinatorial_only())
        throw ValidationError("metric operation on a combinatorial-only chain");
    if (cycle.intrinsic_dim() != cycle.ambient_dim())
        throw DimensionMismatch("cycle_moment_residuals: cycle must be full-dimensional");

    Vec center_sum(cycle.ambient_dim());
    Vec displacement_sum(cycle.ambient_dim());
    for (const ChainTerm& t : cycle.terms()) {
        const Simplex s = cycle.term_simplex(t);
        const double w = static_cast<double>(t.coefficient) * signed_volume(s.vertices());
        const Point o = circumsphere(s).center;
        center_sum += w * o;
        displacement_sum += w * (centroid(s) - o);
    }
    return {center_sum, displacement_sum};
}

// Per-term sum of squared edge lengths, in canonical term order.
inline std::vector<double> facet_edge_square_sums(const Chain& c) {
    std::vector<double> sums;
    sums.reserve(c.terms().size());
    for (const ChainTerm& t : c.terms()) {
        double sum = 0.0;
        for (std::size_t i = 0; i < t.vertices.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                sum += squared_distance(c.pool()[t.vertices[i]], c.pool()[t.vertices[j]]);
        sums.push_back(sum);
    }
    return sums;
}

// Per-term R^2 - |o m|^2 of the facet circumsphere, in canonical term order.
inline std::vector<double> facet_radius_form(const Chain& c) {
    if (c.combinatorial_only())
        throw ValidationError("metric operation on a combinatorial-only chain");
    std::vector<double> values;
    values.reserve(c.terms().size());
    for (const ChainTerm& t : c.terms()) {
        const Simplex s = c.term_simplex(t);
        const Sphere sphere = circumsphere(s);
        values.push_back(sphere.radius_sq - squared_distance(sphere.center, centroid(s)));
    }
    return values;
}

// Area-weighted sum of outward unit normals of a closed (n-1)-chain.
// The outward direction of each facet is inferred from the term's
// orientation sign: n is the unit normal with sign(c) det[n | edges] > 0.
inline Vec minkowski_residual(const Chain& c) {
    if (c.combinatorial_only())
        throw ValidationError("metric operation on a combinatorial-only chain");
    if (c.intrinsic_dim() + 1 != c.ambient_dim())
        throw DimensionMismatch("minkowski_residual: chain dimension must be n-1");
    if (!is_cycle(c))
        throw OrientationError("minkowski_residual: chain is not a closed, consistently oriented cycle");

    const std::size_t n = c.ambient_dim();
    Vec residual(n);
    for (const ChainTerm& t : c.terms()) {
        const Simplex s = c.term_simplex(t);
        std::vector<Vec> edges;
        for (std::size_t i = 1; i < s.vertices().size(); ++i)
            edges.push_back(s.vertex(i) - s.vertex(0));
        const std::vector<Vec> basis = orthonormal_basis(edges);
        if (basis.size() + 1 != n)
            throw DegenerateSimplex("minkowski_residual: facet does not span a hyperplane");
        const Vec u = orthonormal_complement_direction(basis, n);

        Matrix m(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            m(r, 0) = u[r];
            for (std::size_t e = 0; e < edges.size(); ++e) m(r, e + 1) = edges[e][r];
        }
        const double det = determinant(m);
        if (det == 0.0) throw DegenerateSimplex("minkowski_residual: ambiguous facet orientation");
        const double side = (det > 0.0) ? 1.0 : -1.0;
        residual += static_cast<double>(t.coefficient) * side * gram_measure(s.vertices()) * u;
    }
    return residual;
}

} // namespace ccm
