#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ccm/chain.hpp"
#include "ccm/generators.hpp"

using namespace ccm;

namespace {

std::vector<Point> square_pool() {
    return {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{1.0, 1.0}, Point{0.0, 1.0}};
}

Chain square_boundary() {
    return Chain(2, 1, square_pool(), {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1}, {{3, 0}, 1}});
}

std::vector<Point> quad_pool() {
    return {Point{0.0, 0.0}, Point{2.0, 0.0}, Point{2.0, 1.0}, Point{0.0, 3.0}};
}

Chain tetrahedron_chain() {
    return Chain(3, 3,
                 {Point{0, 0, 0}, Point{1, 0, 0}, Point{0, 1, 0}, Point{0, 0, 1}},
                 {{{0, 1, 2, 3}, 1}});
}

} // namespace

TEST_CASE("construction canonicalizes terms") {
    // transposition folds into the coefficient sign
    const Chain swapped(2, 1, square_pool(), {{{1, 0}, 1}});
    REQUIRE(swapped.terms().size() == 1);
    REQUIRE(swapped.terms()[0].vertices == std::vector<std::uint32_t>{0, 1});
    REQUIRE(swapped.terms()[0].coefficient == -1);

    // equal vertex sets merge
    const Chain merged(2, 1, square_pool(), {{{0, 1}, 1}, {{0, 1}, 1}});
    REQUIRE(merged.terms().size() == 1);
    REQUIRE(merged.terms()[0].coefficient == 2);

    // cancellation leaves the empty chain
    const Chain cancelled(2, 1, square_pool(), {{{0, 1}, 1}, {{1, 0}, 1}});
    REQUIRE(cancelled.empty());

    // repeated-vertex terms drop
    const Chain degenerate(2, 1, square_pool(), {{{2, 2}, 5}, {{0, 1}, 1}});
    REQUIRE(degenerate.terms().size() == 1);

    REQUIRE_THROWS_AS(Chain(2, 1, square_pool(), {{{0, 7}, 1}}), ValidationError);
    REQUIRE_THROWS_AS(Chain(2, 1, square_pool(), {{{0, 1, 2}, 1}}), ValidationError);
}

TEST_CASE("combinatorial-only chains skip metric validation but reject metric operations") {
    std::vector<Point> collinear = {Point{0.0, 0.0}, Point{1.0, 1.0}, Point{2.0, 2.0}};
    REQUIRE_THROWS_AS(Chain(2, 2, collinear, {{{0, 1, 2}, 1}}), DegenerateSimplex);
    const Chain combinatorial(2, 2, collinear, {{{0, 1, 2}, 1}}, true);
    REQUIRE_FALSE(boundary(combinatorial).empty());
    REQUIRE_THROWS_AS(circumcenter_of_mass(combinatorial), ValidationError);
    REQUIRE_THROWS_AS(centroid_of_mass(combinatorial), ValidationError);
}

TEST_CASE("boundary of a triangle is the textbook alternating sum") {
    const Chain triangle(2, 2, {Point{0, 0}, Point{1, 0}, Point{0, 1}}, {{{0, 1, 2}, 1}});
    const Chain b = boundary(triangle);
    REQUIRE(b.terms().size() == 3);
    REQUIRE(b.terms()[0].vertices == std::vector<std::uint32_t>{0, 1});
    REQUIRE(b.terms()[0].coefficient == 1);
    REQUIRE(b.terms()[1].vertices == std::vector<std::uint32_t>{0, 2});
    REQUIRE(b.terms()[1].coefficient == -1);
    REQUIRE(b.terms()[2].vertices == std::vector<std::uint32_t>{1, 2});
    REQUIRE(b.terms()[2].coefficient == 1);
}

TEST_CASE("boundary of a boundary vanishes") {
    const Chain faces = boundary(tetrahedron_chain());
    REQUIRE(faces.terms().size() == 4);
    REQUIRE(boundary(faces).empty());

    // random combinatorial chains (k >= 2 so the second boundary is defined)
    Rng rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = 2 + rng.next_below(3);
        const std::size_t pool_size = k + 2 + rng.next_below(6);
        std::vector<Point> pool;
        for (std::size_t i = 0; i < pool_size; ++i) pool.push_back(rng.gaussian_vec(2));
        std::vector<ChainTerm> terms;
        for (int t = 0; t < 6; ++t) {
            ChainTerm term;
            term.coefficient = static_cast<std::int64_t>(rng.next_below(5)) - 2;
            for (std::size_t i = 0; i <= k; ++i)
                term.vertices.push_back(static_cast<std::uint32_t>(rng.next_below(pool_size)));
            terms.push_back(term);
        }
        const Chain c(2, k, pool, terms, true);
        if (c.empty()) continue;
        REQUIRE(boundary(boundary(c)).empty());
    }
}

TEST_CASE("is_cycle recognizes boundaries and rejects open chains") {
    REQUIRE(is_cycle(boundary(tetrahedron_chain())));
    REQUIRE(is_cycle(square_boundary()));
    const Chain open(2, 2, {Point{0, 0}, Point{1, 0}, Point{0, 1}}, {{{0, 1, 2}, 1}});
    REQUIRE_FALSE(is_cycle(open));

    // difference of two fan triangulations of the square is a 2-cycle
    const Chain fan_a = cone_fill(square_boundary(), Point{0.0, 0.0});
    const Chain fan_b = cone_fill(square_boundary(), Point{1.0, 0.0});
    std::vector<ChainTerm> difference = fan_a.terms();
    for (ChainTerm t : fan_b.terms()) {
        t.coefficient = -t.coefficient;
        difference.push_back(t);
    }
    REQUIRE(is_cycle(Chain(2, 2, fan_a.pool(), difference)));
}

TEST_CASE("cone_fill from the center, a vertex, and the centroid") {
    const Chain center_fan = cone_fill(square_boundary(), Point{0.5, 0.5});
    REQUIRE(center_fan.terms().size() == 4);
    REQUIRE(boundary(center_fan).terms() == square_boundary().terms());

    // apex on an existing vertex reuses it and drops the incident terms
    const Chain vertex_fan = cone_fill(square_boundary(), Point{0.0, 0.0});
    REQUIRE(vertex_fan.terms().size() == 2);
    REQUIRE(vertex_fan.pool().size() == 4);
    REQUIRE(boundary(vertex_fan) == square_boundary());

    const Chain sphere = boundary(tetrahedron_chain());
    const Chain cone = cone_fill(sphere, Point{0.25, 0.25, 0.25});
    REQUIRE(cone.terms().size() == 4);
    REQUIRE(boundary(cone).terms() == sphere.terms());

    REQUIRE_THROWS_AS(
        cone_fill(Chain(2, 1, square_pool(), {{{0, 1}, 1}}), Point{0.5, 0.5}),
        std::invalid_argument);
    // apex collinear with one of the edges degenerates the cone
    REQUIRE_THROWS_AS(cone_fill(square_boundary(), Point{0.5, 0.0}), DegenerateCone);
}

TEST_CASE("circumcenter of mass of the unit square, both triangulations") {
    const Chain diag_a(2, 2, square_pool(), {{{0, 1, 2}, 1}, {{0, 2, 3}, 1}});
    const Chain diag_b(2, 2, square_pool(), {{{0, 1, 3}, 1}, {{1, 2, 3}, 1}});
    for (const Chain& c : {diag_a, diag_b}) {
        const WeightedCenter w = circumcenter_of_mass(c);
        REQUIRE_THAT(w.weight, Catch::Matchers::WithinAbs(1.0, 1e-15));
        REQUIRE(w.point.has_value());
        REQUIRE(distance(*w.point, Point{0.5, 0.5}) <= 1e-14);
    }
}

TEST_CASE("circumcenter of mass is triangulation independent on a quadrilateral") {
    const Chain diag_a(2, 2, quad_pool(), {{{0, 1, 2}, 1}, {{0, 2, 3}, 1}});
    const Chain diag_b(2, 2, quad_pool(), {{{0, 1, 3}, 1}, {{1, 2, 3}, 1}});
    const WeightedCenter a = circumcenter_of_mass(diag_a);
    const WeightedCenter b = circumcenter_of_mass(diag_b);
    REQUIRE_THAT(a.weight, Catch::Matchers::WithinAbs(b.weight, 1e-12));
    REQUIRE(distance(*a.point, *b.point) <= 1e-12);

    // Euler points inherit the independence for every t
    for (double t : {0.5, -1.0, 2.0}) {
        const WeightedCenter ea = euler_point(diag_a, t);
        const WeightedCenter eb = euler_point(diag_b, t);
        REQUIRE(distance(*ea.point, *eb.point) <= 1e-12);
    }
}

TEST_CASE("full-dimensional cycles have zero weight and vanishing moment") {
    Rng rng(67);
    for (std::size_t d = 2; d <= 3; ++d) {
        for (int trial = 0; trial < 20; ++trial) {
            const Chain cycle = gen::central_triangulation_cycle(rng, d);
            const double scale_pow = std::pow(cycle.scale(), static_cast<double>(d) + 1.0);

            const WeightedCenter w = circumcenter_of_mass(cycle);
            REQUIRE(std::abs(w.weight) <= 1e-12 * scale_pow);
            REQUIRE_FALSE(w.point.has_value());
            REQUIRE(w.moment.norm() <= 1e-9 * scale_pow);

            const WeightedCenter m = centroid_of_mass(cycle);
            REQUIRE_FALSE(m.point.has_value());
            REQUIRE(m.moment.norm() <= 1e-12 * scale_pow);
        }
    }
}

TEST_CASE("centroid of mass of squares and single simplices") {
    const Chain square(2, 2, square_pool(), {{{0, 1, 2}, 1}, {{0, 2, 3}, 1}});
    const WeightedCenter w = centroid_of_mass(square);
    REQUIRE(distance(*w.point, Point{0.5, 0.5}) <= 1e-15);

    const Chain single(3, 3, tetrahedron_chain().pool(), {{{0, 1, 2, 3}, 1}});
    const WeightedCenter s = centroid_of_mass(single);
    REQUIRE(distance(*s.point, centroid(single.term_simplex(single.terms()[0]))) <= 1e-15);
}

TEST_CASE("euler_point interpolates between circumcenter and centroid of mass") {
    const Chain quad(2, 2, quad_pool(), {{{0, 1, 2}, 1}, {{0, 2, 3}, 1}});
    const WeightedCenter ccm = circumcenter_of_mass(quad);
    const WeightedCenter com = centroid_of_mass(quad);
    REQUIRE(distance(*euler_point(quad, 0.0).point, *ccm.point) <= 1e-15);
    REQUIRE(distance(*euler_point(quad, 1.0).point, *com.point) <= 1e-15);

    // the moment is affine in t
    const double t = 0.3;
    const Vec expected = (1.0 - t) * ccm.moment + t * com.moment;
    REQUIRE((euler_point(quad, t).moment - expected).norm() <= 1e-13);
}

TEST_CASE("cycle circumcenter of mass is independent of the filling apex") {
    const WeightedCenter square_default = cycle_circumcenter_of_mass(square_boundary());
    REQUIRE(distance(*square_default.point, Point{0.5, 0.5}) <= 1e-13);
    for (const Point& apex : {Point{0.2, 0.9}, Point{-1.0, 4.0}, Point{0.0, 0.0}}) {
        const WeightedCenter w = cycle_circumcenter_of_mass(square_boundary(), apex);
        REQUIRE(distance(*w.point, Point{0.5, 0.5}) <= 1e-12);
    }

    const Chain quad_cycle(2, 1, quad_pool(), {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1}, {{3, 0}, 1}});
    const WeightedCenter a = cycle_circumcenter_of_mass(quad_cycle, Point{1.0, 1.0});
    const WeightedCenter b = cycle_circumcenter_of_mass(quad_cycle, Point{0.3, 0.7});
    REQUIRE(distance(*a.point, *b.point) <= 1e-9);

    REQUIRE_THROWS_AS(
        cycle_circumcenter_of_mass(Chain(2, 1, square_pool(), {{{0, 1}, 1}})),
        std::invalid_argument);
}

TEST_CASE("translation moves every weighted center equivariantly") {
    Rng rng(71);
    const Chain quad(2, 2, quad_pool(), {{{0, 1, 2}, 1}, {{0, 2, 3}, 1}});
    const Vec shift{13.5, -2.25};
    std::vector<Point> moved_pool;
    for (const Point& p : quad.pool()) moved_pool.push_back(p + shift);
    const Chain moved(2, 2, moved_pool, quad.terms());

    const WeightedCenter before = circumcenter_of_mass(quad);
    const WeightedCenter after = circumcenter_of_mass(moved);
    REQUIRE_THAT(after.weight, Catch::Matchers::WithinAbs(before.weight, 1e-12));
    REQUIRE(distance(*after.point, *before.point + shift) <= 1e-10 * quad.scale());

    const WeightedCenter cen_before = centroid_of_mass(quad);
    const WeightedCenter cen_after = centroid_of_mass(moved);
    REQUIRE(distance(*cen_after.point, *cen_before.point + shift) <= 1e-10 * quad.scale());
}

TEST_CASE("cycle moment residuals vanish for retriangulation cycles") {
    // triangle split by an interior point into 3 triangles, minus the whole
    Rng rng(73);
    const Chain central = gen::central_triangulation_cycle(rng, 2);
    const auto [centers, displacements] = cycle_moment_residuals(central);
    const double scale3 = std::pow(central.scale(), 3.0);
    REQUIRE(centers.norm() <= 1e-9 * scale3);
    REQUIRE(displacements.norm() <= 1e-9 * scale3);

    // difference of the two diagonal triangulations of a quadrilateral
    std::vector<ChainTerm> diff = {{{0, 1, 2}, 1}, {{0, 2, 3}, 1}, {{0, 1, 3}, -1}, {{1, 2, 3}, -1}};
    const Chain quad_cycle(2, 2, quad_pool(), diff);
    REQUIRE(is_cycle(quad_cycle));
    const auto [qc, qd] = cycle_moment_residuals(quad_cycle);
    const double qscale3 = std::pow(quad_cycle.scale(), 3.0);
    REQUIRE(qc.norm() <= 1e-9 * qscale3);
    REQUIRE(qd.norm() <= 1e-9 * qscale3);

    // the empty chain trivially vanishes
    const Chain empty(2, 2, square_pool(), {});
    const auto [ec, ed] = cycle_moment_residuals(empty);
    REQUIRE(ec.norm() == 0.0);
    REQUIRE(ed.norm() == 0.0);
}

TEST_CASE("facet edge square sums of reference boundaries") {
    const std::vector<double> square_sums = facet_edge_square_sums(square_boundary());
    REQUIRE(square_sums.size() == 4);
    for (double s : square_sums) REQUIRE_THAT(s, Catch::Matchers::WithinAbs(1.0, 1e-15));

    // regular tetrahedron with unit edges: every face sums to 3
    const double q = 1.0 / std::sqrt(8.0);
    const Chain regular(3, 3,
                        {Point{q, q, q}, Point{q, -q, -q}, Point{-q, q, -q}, Point{-q, -q, q}},
                        {{{0, 1, 2, 3}, 1}});
    for (double s : facet_edge_square_sums(boundary(regular)))
        REQUIRE_THAT(s, Catch::Matchers::WithinAbs(3.0, 1e-13));

    for (double s : facet_edge_square_sums(gen::triangular_bipyramid_boundary()))
        REQUIRE_THAT(s, Catch::Matchers::WithinAbs(3.0, 1e-13));
}

TEST_CASE("facet radius form and its relation to the edge square sums") {
    for (double v : facet_radius_form(square_boundary()))
        REQUIRE_THAT(v, Catch::Matchers::WithinAbs(0.25, 1e-15));

    // faces of a unit-edge regular tetrahedron are unit equilateral: R^2 = 1/3
    const double q = 1.0 / std::sqrt(8.0);
    const Chain regular(3, 3,
                        {Point{q, q, q}, Point{q, -q, -q}, Point{-q, q, -q}, Point{-q, -q, q}},
                        {{{0, 1, 2, 3}, 1}});
    for (double v : facet_radius_form(boundary(regular)))
        REQUIRE_THAT(v, Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-13));

    for (double v : facet_radius_form(gen::triangular_bipyramid_boundary()))
        REQUIRE_THAT(v, Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-13));

    // Vol * sum / ((d+1)(d+2)) == (d+1)/(d+2) * Vol * value, i.e.
    // sum == (d+1)^2 * value per facet
    Rng rng(79);
    const Chain boundary3 = gen::convex_polytope_boundary_3d(rng, 16, Point{0, 0, 0}, 1.0, 0.3);
    const std::vector<double> sums = facet_edge_square_sums(boundary3);
    const std::vector<double> values = facet_radius_form(boundary3);
    REQUIRE(sums.size() == values.size());
    for (std::size_t i = 0; i < sums.size(); ++i)
        REQUIRE_THAT(sums[i], Catch::Matchers::WithinRel(9.0 * values[i], 1e-10));
}

TEST_CASE("minkowski residual of closed surfaces") {
    const Chain cube = gen::unit_cube_boundary();
    REQUIRE(is_cycle(cube));
    REQUIRE(minkowski_residual(cube).norm() <= 1e-12);

    const Chain tetra_faces = boundary(tetrahedron_chain());
    REQUIRE(minkowski_residual(tetra_faces).norm() <=
            1e-12 * tetra_faces.scale() * tetra_faces.scale());

    Rng rng(83);
    const Chain hull = gen::convex_polytope_boundary_3d(rng, 30, Point{0, 0, 0}, 1.0, 0.0);
    REQUIRE(minkowski_residual(hull).norm() <= 1e-9 * hull.scale() * hull.scale());

    // open chains cannot be consistently oriented
    const Chain open(3, 2, tetrahedron_chain().pool(), {{{0, 1, 2}, 1}});
    REQUIRE_THROWS_AS(minkowski_residual(open), OrientationError);
}
