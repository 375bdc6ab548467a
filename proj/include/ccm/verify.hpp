#pragma once

// Seeded verification suites. Each suite samples its inputs
// deterministically, checks the relevant identity at the stated tolerance
// and returns a machine-readable report; the CLI maps one subcommand onto
// each suite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "ccm/chain.hpp"
#include "ccm/generators.hpp"
#include "ccm/io.hpp"
#include "ccm/random.hpp"
#include "ccm/simplex.hpp"
#include "ccm/spherical.hpp"

namespace ccm::verify {

namespace detail_verify {

inline io::Report make_report(std::string command, io::json inputs, io::json results,
                              io::json tolerances, bool pass) {
    io::Report r;
    r.command = std::move(command);
    r.inputs = std::move(inputs);
    r.results = std::move(results);
    r.tolerances = std::move(tolerances);
    r.status = pass ? "pass" : "fail";
    return r;
}

inline double pow_scale(double scale, std::size_t exponent) {
    return std::pow(scale, static_cast<double>(exponent));
}

} // namespace detail_verify

// Facet powers against the circumcenter-to-centroid displacement:
// |sum Pow(face_i) n_i - 2 Vol (m - o)| <= tol * scale^(d+1).
inline io::Report lemma_suite(std::size_t dim, std::size_t trials, std::uint64_t seed,
                              double tol = 1e-9) {
    Rng rng(seed);
    double max_ratio = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const Simplex s = gen::random_simplex(rng, dim, dim);
        const double ratio = power_flux_residual(s).norm() /
                             detail_verify::pow_scale(s.max_edge_length(), dim + 1);
        max_ratio = std::max(max_ratio, ratio);
    }
    return detail_verify::make_report(
        "verify lemma", {{"dim", dim}, {"seed", seed}, {"trials", trials}},
        {{"max_residual_over_scale", max_ratio}}, {{"max_residual_over_scale", tol}},
        max_ratio <= tol);
}

// Volume-weighted circumcenter and circumcenter-to-centroid sums of random
// full-dimensional cycles, built from central triangulations and
// retriangulation differences.
inline io::Report cycle_moments_suite(std::size_t dim, std::size_t trials, std::uint64_t seed,
                                      double tol = 1e-9) {
    if (dim < 2) throw UnsupportedDimension("cycle moments need dimension >= 2");
    Rng rng(seed);
    double max_ratio = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Chain cycle = [&] {
            if (t % 2 == 1 && dim == 2) return gen::retriangulation_cycle_2d(rng);
            if (t % 2 == 1 && dim == 3) return gen::retriangulation_cycle_3d(rng);
            return gen::central_triangulation_cycle(rng, dim);
        }();
        const auto [centers, displacements] = cycle_moment_residuals(cycle);
        const double ratio = std::max(centers.norm(), displacements.norm()) /
                             detail_verify::pow_scale(cycle.scale(), dim + 1);
        max_ratio = std::max(max_ratio, ratio);
    }
    return detail_verify::make_report(
        "verify cycle-moments", {{"dim", dim}, {"seed", seed}, {"trials", trials}},
        {{"max_residual_over_scale", max_ratio}}, {{"max_residual_over_scale", tol}},
        max_ratio <= tol);
}

// Circumcenter of mass of a (d-1)-cycle from two distinct cone apexes.
inline io::Report filling_independence_suite(std::size_t dim, std::size_t trials,
                                             std::uint64_t seed, double tol = 1e-9) {
    if (dim != 2 && dim != 3)
        throw UnsupportedDimension("filling independence suite supports dimensions 2 and 3");
    Rng rng(seed);
    double max_ratio = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Point center(dim);
        for (std::size_t i = 0; i < dim; ++i) center[i] = rng.uniform(-1.0, 1.0);
        const double radius = rng.uniform(0.5, 2.0);
        const Chain cycle = dim == 2
                                ? gen::convex_polygon_boundary(rng, 10, center, radius, 0.35)
                                : gen::convex_polytope_boundary_3d(rng, 20, center, radius, 0.35);
        const Point apex_a = center + (0.4 * radius) * rng.unit_vector(dim);
        const Point apex_b = center + (0.4 * radius) * rng.unit_vector(dim);
        const WeightedCenter a = cycle_circumcenter_of_mass(cycle, apex_a);
        const WeightedCenter b = cycle_circumcenter_of_mass(cycle, apex_b);
        const double ratio = distance(*a.point, *b.point) / cycle.scale();
        max_ratio = std::max(max_ratio, ratio);
    }
    return detail_verify::make_report(
        "verify filling-independence", {{"dim", dim}, {"seed", seed}, {"trials", trials}},
        {{"max_point_distance_over_scale", max_ratio}},
        {{"max_point_distance_over_scale", tol}}, max_ratio <= tol);
}

// Circumcenter of mass of random equilateral simple polygons against the
// centroid of the polygonal lamina.
inline io::Report equilateral_polygon_suite(std::size_t trials, std::uint64_t seed,
                                            double tol = 1e-9) {
    Rng rng(seed);
    double max_deviation = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t nedges = 6 + t % 7; // 6..12 unit edges
        const Chain polygon = gen::equilateral_polygon(rng, nedges);
        const Chain fill = cone_fill_default(polygon);
        const WeightedCenter ccm = circumcenter_of_mass(fill);
        const WeightedCenter lamina = centroid_of_mass(fill);
        max_deviation = std::max(max_deviation, distance(*ccm.point, *lamina.point));
    }
    return detail_verify::make_report(
        "verify equilateral-polygon", {{"seed", seed}, {"trials", trials}},
        {{"max_point_distance", max_deviation}}, {{"max_point_distance", tol}},
        max_deviation <= tol);
}

// Polytopes whose facets share a common sum of squared edge lengths:
// circumcenter of mass against the solid centroid.
inline io::Report equilateral_polytope_suite(double tol = 1e-9) {
    io::json results = io::json::object();
    bool pass = true;
    const std::pair<const char*, Chain> cases[] = {
        {"triangular_bipyramid", gen::triangular_bipyramid_boundary()},
        {"octahedron", gen::octahedron_boundary()},
        {"icosahedron", gen::icosahedron_boundary()},
    };
    for (const auto& [name, chain] : cases) {
        const std::vector<double> sums = facet_edge_square_sums(chain);
        const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
        const double sum_spread = (*hi - *lo) / (chain.scale() * chain.scale());

        const WeightedCenter ccm = cycle_circumcenter_of_mass(chain);
        const WeightedCenter solid = centroid_of_mass(cone_fill_default(chain));
        const double deviation = distance(*ccm.point, *solid.point);

        results[std::string(name) + "_edge_square_spread"] = sum_spread;
        results[std::string(name) + "_point_distance"] = deviation;
        pass = pass && sum_spread <= tol && deviation <= tol;
    }
    return detail_verify::make_report("verify equilateral-polytope", io::json::object(),
                                      std::move(results), {{"max_point_distance", tol}}, pass);
}

// Area-weighted outward normals of random convex simplicial polytopes.
inline io::Report minkowski_suite(std::size_t trials, std::uint64_t seed, double tol = 1e-9) {
    Rng rng(seed);
    double max_ratio = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Point center(3);
        for (std::size_t i = 0; i < 3; ++i) center[i] = rng.uniform(-1.0, 1.0);
        const Chain boundary =
            gen::convex_polytope_boundary_3d(rng, 30, center, rng.uniform(0.5, 2.0), 0.0);
        const double ratio =
            minkowski_residual(boundary).norm() / (boundary.scale() * boundary.scale());
        max_ratio = std::max(max_ratio, ratio);
    }
    return detail_verify::make_report(
        "verify minkowski", {{"seed", seed}, {"trials", trials}},
        {{"max_residual_over_scale", max_ratio}}, {{"max_residual_over_scale", tol}},
        max_ratio <= tol);
}

// Boundaries inscribed in a sphere: the circumcenter of mass lands on the
// sphere center.
inline io::Report inscribed_suite(std::size_t trials, std::uint64_t seed, double tol = 1e-9) {
    Rng rng(seed);
    double max_ratio = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Point center(3);
        for (std::size_t i = 0; i < 3; ++i) center[i] = rng.uniform(-2.0, 2.0);
        const double radius = rng.uniform(0.5, 2.0);
        const Chain boundary = gen::convex_polytope_boundary_3d(rng, 20, center, radius, 0.0);
        const WeightedCenter ccm = cycle_circumcenter_of_mass(boundary);
        max_ratio = std::max(max_ratio, distance(*ccm.point, center) / radius);
    }
    return detail_verify::make_report(
        "verify inscribed", {{"seed", seed}, {"trials", trials}},
        {{"max_center_distance_over_radius", max_ratio}},
        {{"max_center_distance_over_radius", tol}}, max_ratio <= tol);
}

// Spherical circumcenter of mass of 2-cycles on the unit sphere: symmetric
// triangulations vanish to near machine precision, random ones to tol.
inline io::Report spherical_cycle_suite(std::size_t trials, std::uint64_t seed, double tol = 1e-9,
                                        double symmetric_tol = 1e-12) {
    Rng rng(seed);
    const double octa = spherical_cycle_residual(gen::octahedron_boundary()).norm();
    const double icosa = spherical_cycle_residual(gen::icosahedron_boundary()).norm();
    double max_random = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const Chain cycle = gen::random_sphere_triangulation(rng, 14);
        max_random = std::max(max_random, spherical_cycle_residual(cycle).norm());
    }
    const bool pass = octa <= symmetric_tol && icosa <= symmetric_tol && max_random <= tol;
    return detail_verify::make_report(
        "verify spherical-cycle", {{"seed", seed}, {"trials", trials}},
        {{"icosahedron_residual", icosa},
         {"max_random_residual", max_random},
         {"octahedron_residual", octa}},
        {{"residual", tol}, {"symmetric_residual", symmetric_tol}}, pass);
}

} // namespace ccm::verify
