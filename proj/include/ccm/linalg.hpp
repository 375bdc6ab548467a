#pragma once

// Pivoted elimination, Gram determinants and simplex measures.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ccm/error.hpp"
#include "ccm/vec.hpp"

namespace ccm {

// Scale-relative threshold below which pivots and Gram determinants are
// treated as zero.
inline constexpr double kDegeneracyThreshold = 1e-12;

// Solves a k x k system by Gaussian elimination with partial pivoting.
// Throws SingularMatrix when a pivot falls below the threshold relative to
// the largest entry of the input matrix.
inline Vec solve_linear(Matrix a, Vec rhs) {
    if (a.rows() != a.cols()) throw DimensionMismatch("solve_linear: matrix not square");
    if (a.rows() != rhs.size()) throw DimensionMismatch("solve_linear: rhs size mismatch");
    const std::size_t k = a.rows();
    if (k == 0) throw DimensionMismatch("solve_linear: empty system");

    const double scale = a.max_abs();
    if (scale == 0.0) throw SingularMatrix("solve_linear: zero matrix");

    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) < kDegeneracyThreshold * scale)
            throw SingularMatrix("solve_linear: pivot below threshold");
        if (pivot != col) {
            std::swap_ranges(a.row(col).begin(), a.row(col).end(), a.row(pivot).begin());
            std::swap(rhs[col], rhs[pivot]);
        }
        for (std::size_t r = col + 1; r < k; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c < k; ++c) a(r, c) -= f * a(col, c);
            rhs[r] -= f * rhs[col];
        }
    }

    Vec x(k);
    for (std::size_t i = k; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t j = i + 1; j < k; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

inline double determinant(Matrix a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("determinant: matrix not square");
    const std::size_t k = a.rows();
    if (k == 0) return 1.0;

    double det = 1.0;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (a(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            std::swap_ranges(a.row(col).begin(), a.row(col).end(), a.row(pivot).begin());
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < k; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c < k; ++c) a(r, c) -= f * a(col, c);
        }
    }
    return det;
}

namespace detail {

inline void check_uniform_dimension(std::span<const Point> vertices) {
    if (vertices.empty()) throw DimensionMismatch("no vertices");
    const std::size_t n = vertices.front().size();
    if (n == 0) throw DimensionMismatch("ambient dimension must be at least 1");
    for (const Point& v : vertices)
        if (v.size() != n) throw DimensionMismatch("vertex coordinate lengths differ");
}

// Gram matrix of the edge vectors v_i - v_0.
inline Matrix gram_matrix(std::span<const Point> vertices) {
    const std::size_t k = vertices.size() - 1;
    std::vector<Vec> edges;
    edges.reserve(k);
    for (std::size_t i = 1; i <= k; ++i) edges.push_back(vertices[i] - vertices[0]);
    Matrix g(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) g(i, j) = g(j, i) = dot(edges[i], edges[j]);
    return g;
}

inline double factorial(std::size_t k) {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return f;
}

// Nondegeneracy in the Gram sense: det G above the threshold relative to
// the matrix scale raised to the matrix size.
inline bool gram_nondegenerate(const Matrix& g) {
    const std::size_t k = g.rows();
    if (k == 0) return true;
    const double scale = g.max_abs();
    if (scale == 0.0) return false;
    return determinant(g) > kDegeneracyThreshold * std::pow(scale, static_cast<double>(k));
}

} // namespace detail

// k-dimensional measure of the simplex spanned by k+1 points in R^n,
// sqrt(det G) / k! with G the Gram matrix of edge vectors. Degenerate
// inputs give 0.
inline double gram_measure(std::span<const Point> vertices) {
    detail::check_uniform_dimension(vertices);
    const std::size_t k = vertices.size() - 1;
    const std::size_t n = vertices.front().size();
    if (k > n) throw DimensionMismatch("gram_measure: more vertices than ambient dimension allows");
    if (k == 0) return 1.0;
    const double g = determinant(detail::gram_matrix(vertices));
    if (g <= 0.0) return 0.0;
    return std::sqrt(g) / detail::factorial(k);
}

// Signed d-volume of d+1 points in R^d: det of edge vectors over d!.
inline double signed_volume(std::span<const Point> vertices) {
    detail::check_uniform_dimension(vertices);
    const std::size_t n = vertices.front().size();
    if (vertices.size() != n + 1)
        throw DimensionMismatch("signed_volume: need exactly d+1 vertices in R^d");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec e = vertices[i + 1] - vertices[0];
        for (std::size_t j = 0; j < n; ++j) m(i, j) = e[j];
    }
    return determinant(m) / detail::factorial(n);
}

// Orthonormal basis of span{vectors} by modified Gram-Schmidt; directions
// whose residual drops below the threshold relative to their input length
// are skipped.
inline std::vector<Vec> orthonormal_basis(std::span<const Vec> vectors) {
    std::vector<Vec> basis;
    for (const Vec& v : vectors) {
        Vec r = v;
        for (const Vec& q : basis) r -= dot(r, q) * q;
        // second pass keeps the basis orthogonal for ill-conditioned inputs
        for (const Vec& q : basis) r -= dot(r, q) * q;
        const double len = r.norm();
        if (len > 1e-9 * (v.norm() + 1e-300)) basis.push_back(r / len);
    }
    return basis;
}

// Unit vector orthogonal to all of `basis` (assumed orthonormal) in R^n.
// Picks the coordinate direction with the largest residual.
inline Vec orthonormal_complement_direction(std::span<const Vec> basis, std::size_t n) {
    Vec best(n);
    double best_len = -1.0;
    for (std::size_t a = 0; a < n; ++a) {
        Vec r(n);
        r[a] = 1.0;
        for (const Vec& q : basis) r -= dot(r, q) * q;
        const double len = r.norm();
        if (len > best_len) {
            best_len = len;
            best = r;
        }
    }
    if (best_len <= 0.0) throw DegenerateSimplex("no orthogonal complement direction");
    Vec r = best;
    for (const Vec& q : basis) r -= dot(r, q) * q; // re-project for accuracy
    return r / r.norm();
}

} // namespace ccm
