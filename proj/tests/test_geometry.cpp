#include <doctest.h>

#include <random>

#include "uplink/geometry.hpp"

using namespace uplink::geometry;

namespace {

std::vector<Point> random_points(std::size_t n, double half, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-half, half);
    std::vector<Point> pts(n);
    for (auto& p : pts) {
        p = {u(rng), u(rng)};
    }
    return pts;
}

std::size_t brute_nearest(const std::vector<Point>& pts, Point q) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (dist2(pts[i], q) < dist2(pts[best], q)) {
            best = i;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("grid nearest and range queries agree with brute force") {
    const auto pts = random_points(500, 10.0, 3);
    const PointGrid grid(pts, 10.0, 1.0);
    const auto queries = random_points(300, 12.0, 4);
    std::vector<std::size_t> found;
    for (const Point& q : queries) {
        CHECK(grid.nearest(q) == brute_nearest(pts, q));
        grid.within(q, 2.0, found);
        std::size_t expected = 0;
        for (const Point& p : pts) {
            expected += dist(p, q) <= 2.0;
        }
        CHECK(found.size() == expected);
    }
}

TEST_CASE("Voronoi cells tile the clip box") {
    const double half = 8.0;
    const auto pts = random_points(200, half, 5);
    const PointGrid grid(pts, half, 1.0);
    const Box box{-half, -half, half, half};
    VoronoiCell cell;
    double total = 0.0;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        voronoi_cell(grid, i, box, cell);
        total += polygon_area(cell.polygon);
        // Every vertex is as close to the owner as to any other point.
        for (const Point& v : cell.polygon) {
            CHECK(dist(v, pts[i]) <= dist(v, pts[brute_nearest(pts, v)]) + 1e-9);
        }
        // Ownership through the candidate list matches brute force inside the circumcircle.
        for (int k = 0; k < 20; ++k) {
            const double a = 2 * M_PI * u(rng);
            const double r = cell.circumradius * std::sqrt(u(rng));
            const Point q{pts[i].x + r * std::cos(a), pts[i].y + r * std::sin(a)};
            CHECK(owner_is_nearest(pts, i, cell.candidates, q) ==
                  (dist2(q, pts[i]) <= dist2(q, pts[brute_nearest(pts, q)])));
        }
    }
    CHECK(total == doctest::Approx(4 * half * half).epsilon(1e-9));
}

TEST_CASE("polygon area") {
    const std::vector<Point> square{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    CHECK(polygon_area(square) == doctest::Approx(4.0));
    CHECK(polygon_area(std::vector<Point>{}) == 0.0);
}

TEST_CASE("midpoint adjacency") {
    const std::vector<Point> pts{{0, 0}, {2, 0}, {1, 0.1}, {10, 10}};
    const PointGrid grid(pts, 12.0, 2.0);
    std::vector<std::size_t> scratch;
    CHECK_FALSE(midpoint_adjacent(grid, 0, 1, scratch));  // (1, 0.1) sits in the way
    CHECK(midpoint_adjacent(grid, 0, 2, scratch));
    CHECK(midpoint_adjacent(grid, 2, 0, scratch) == midpoint_adjacent(grid, 0, 2, scratch));
}
