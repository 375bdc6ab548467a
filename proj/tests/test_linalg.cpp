#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ccm/generators.hpp"
#include "ccm/linalg.hpp"
#include "ccm/random.hpp"
#include "ccm/vec.hpp"

using namespace ccm;

namespace {

// Independent oracle for triangle areas.
double heron_area(double a, double b, double c) {
    const double s = 0.5 * (a + b + c);
    return std::sqrt(s * (s - a) * (s - b) * (s - c));
}

std::vector<Point> random_vertices(Rng& rng, std::size_t count, std::size_t dim) {
    std::vector<Point> v;
    for (std::size_t i = 0; i < count; ++i) v.push_back(rng.gaussian_vec(dim));
    return v;
}

} // namespace

TEST_CASE("solve_linear identity and diagonal systems") {
    Matrix id = Matrix::identity(2);
    const Vec x = solve_linear(id, Vec{3.0, 4.0});
    REQUIRE(x[0] == 3.0);
    REQUIRE(x[1] == 4.0);

    Matrix diag(2, 2);
    diag(0, 0) = 2.0;
    diag(1, 1) = 4.0;
    const Vec y = solve_linear(diag, Vec{2.0, 8.0});
    REQUIRE_THAT(y[0], Catch::Matchers::WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(y[1], Catch::Matchers::WithinAbs(2.0, 1e-15));
}

TEST_CASE("solve_linear rejects rank-deficient systems") {
    Matrix m(2, 2);
    m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 1.0;
    REQUIRE_THROWS_AS(solve_linear(m, Vec{1.0, 2.0}), SingularMatrix);

    Matrix zero(3, 3);
    REQUIRE_THROWS_AS(solve_linear(zero, Vec{0.0, 0.0, 0.0}), SingularMatrix);
}

TEST_CASE("solve_linear recovers random well-conditioned solutions") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = 1 + rng.next_below(6);
        Matrix m(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
            m(i, i) += 3.0; // diagonally dominant
        }
        const Vec expected = rng.gaussian_vec(k);
        const Vec solved = solve_linear(m, m * expected);
        REQUIRE((solved - expected).norm() < 1e-12 * (1.0 + expected.norm()));
    }
}

TEST_CASE("gram_measure matches textbook volumes") {
    REQUIRE(gram_measure(std::vector<Point>{Point{0.0}, Point{1.0}}) == 1.0);
    REQUIRE_THAT(gram_measure(std::vector<Point>{Point{0, 0, 0}, Point{1, 0, 0}, Point{0, 1, 0}}),
                 Catch::Matchers::WithinAbs(0.5, 1e-15));

    // unit equilateral triangle, checked against Heron's formula
    const std::vector<Point> equilateral = {Point{0.0, 0.0}, Point{1.0, 0.0},
                                            Point{0.5, std::sqrt(3.0) / 2.0}};
    REQUIRE_THAT(gram_measure(equilateral),
                 Catch::Matchers::WithinAbs(heron_area(1.0, 1.0, 1.0), 1e-14));
}

TEST_CASE("gram_measure handles degenerate and invalid input") {
    // collinear points
    REQUIRE(gram_measure(std::vector<Point>{Point{0.0, 0.0}, Point{1.0, 1.0}, Point{2.0, 2.0}}) ==
            0.0);
    // k > n
    REQUIRE_THROWS_AS(gram_measure(std::vector<Point>{Point{0.0}, Point{1.0}, Point{2.0}}),
                      DimensionMismatch);
    // mixed coordinate lengths
    REQUIRE_THROWS_AS(gram_measure(std::vector<Point>{Point{0.0, 0.0}, Point{1.0}}),
                      DimensionMismatch);
    // single vertex has measure 1 by convention
    REQUIRE(gram_measure(std::vector<Point>{Point{2.0, 3.0}}) == 1.0);
}

TEST_CASE("signed_volume orientation") {
    REQUIRE_THAT(signed_volume(std::vector<Point>{Point{0, 0}, Point{1, 0}, Point{0, 1}}),
                 Catch::Matchers::WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(signed_volume(std::vector<Point>{Point{0, 0}, Point{0, 1}, Point{1, 0}}),
                 Catch::Matchers::WithinAbs(-0.5, 1e-15));
    REQUIRE_THAT(signed_volume(std::vector<Point>{Point{0, 0, 0}, Point{1, 0, 0}, Point{0, 1, 0},
                                                  Point{0, 0, 1}}),
                 Catch::Matchers::WithinAbs(1.0 / 6.0, 1e-16));
    REQUIRE_THROWS_AS(signed_volume(std::vector<Point>{Point{0, 0}, Point{1, 0}}),
                      DimensionMismatch);
}

TEST_CASE("gram_measure equals |signed_volume| for full-dimensional simplices") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + rng.next_below(6);
        const Simplex s = gen::random_simplex(rng, d, d);
        const std::vector<Point>& v = s.vertices();
        const double sv = signed_volume(v);
        const double gm = gram_measure(v);
        REQUIRE(std::abs(gm - std::abs(sv)) <= 1e-12 * gm);
    }
}

TEST_CASE("gram_measure is invariant under permutations and rigid motions") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 1 + rng.next_below(4);
        const std::size_t n = k + rng.next_below(3);
        std::vector<Point> v = random_vertices(rng, k + 1, n);
        const double reference = gram_measure(v);
        if (reference < 1e-6) continue;

        std::vector<Point> shuffled = v;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.next_below(i)]);
        REQUIRE(std::abs(gram_measure(shuffled) - reference) <= 1e-10 * reference);

        // random rotation plus translation
        std::vector<Vec> columns;
        for (std::size_t j = 0; j < n; ++j) columns.push_back(rng.gaussian_vec(n));
        const std::vector<Vec> q = orthonormal_basis(columns);
        if (q.size() != n) continue;
        const Vec shift = rng.gaussian_vec(n);
        std::vector<Point> moved;
        for (const Point& p : v) {
            Vec image = shift;
            for (std::size_t j = 0; j < n; ++j) image += p[j] * q[j];
            moved.push_back(image);
        }
        REQUIRE(std::abs(gram_measure(moved) - reference) <= 1e-10 * reference);
    }
}

TEST_CASE("signed_volume flips sign under vertex transpositions") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 1 + rng.next_below(5);
        std::vector<Point> v = random_vertices(rng, d + 1, d);
        const double sv = signed_volume(v);
        const std::size_t i = rng.next_below(d + 1);
        std::size_t j = rng.next_below(d + 1);
        if (i == j) j = (j + 1) % (d + 1);
        std::swap(v[i], v[j]);
        REQUIRE_THAT(signed_volume(v),
                     Catch::Matchers::WithinAbs(-sv, 1e-12 * (1.0 + std::abs(sv))));
    }
}

TEST_CASE("orthonormal_basis spans and normalizes") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.next_below(5);
        const std::size_t k = 1 + rng.next_below(n);
        std::vector<Vec> vectors;
        for (std::size_t i = 0; i < k; ++i) vectors.push_back(rng.gaussian_vec(n));
        const std::vector<Vec> basis = orthonormal_basis(vectors);
        REQUIRE(basis.size() == k); // gaussian vectors are independent a.s.
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                const double expected = i == j ? 1.0 : 0.0;
                REQUIRE_THAT(dot(basis[i], basis[j]),
                             Catch::Matchers::WithinAbs(expected, 1e-12));
            }
        if (basis.size() == n) continue; // no complement direction left
        const Vec complement = orthonormal_complement_direction(basis, n);
        for (const Vec& q : basis)
            REQUIRE_THAT(dot(complement, q), Catch::Matchers::WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(complement.norm(), Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("rng streams are deterministic and split-stable") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());

    Rng c1 = Rng::split(9, 4);
    Rng c2 = Rng::split(9, 4);
    Rng other = Rng::split(9, 5);
    bool diverged = false;
    for (int i = 0; i < 16; ++i) {
        const std::uint64_t x = c1.next_u64();
        REQUIRE(x == c2.next_u64());
        diverged = diverged || x != other.next_u64();
    }
    REQUIRE(diverged);
}
