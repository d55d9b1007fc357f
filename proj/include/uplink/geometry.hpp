#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace uplink::geometry {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double norm2(Point p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point p) { return std::sqrt(norm2(p)); }
inline double dist2(Point a, Point b) { return norm2({a.x - b.x, a.y - b.y}); }
inline double dist(Point a, Point b) { return std::sqrt(dist2(a, b)); }

struct Box {
    double x0;
    double y0;
    double x1;
    double y1;
};

/// Uniform bucket grid over a square [-half_width, half_width]^2 for
/// nearest-neighbour and range queries. Points outside the square are
/// clamped into the border buckets.
class PointGrid {
public:
    PointGrid(std::span<const Point> points, double half_width, double cell_size);

    /// Index of the point closest to q. Requires a non-empty point set.
    std::size_t nearest(Point q) const;

    /// Indices of all points with |p - q| <= radius, unordered.
    void within(Point q, double radius, std::vector<std::size_t>& out) const;

    std::span<const Point> points() const { return points_; }

private:
    std::size_t column(double x) const;
    std::size_t row(double y) const;

    std::span<const Point> points_;
    double half_width_;
    double cell_size_;
    std::size_t cells_;
    std::vector<std::size_t> start_;  // CSR offsets per bucket
    std::vector<std::size_t> items_;
};

/// Voronoi cell of one point clipped to a box, built by half-plane clipping
/// with neighbours taken in order of distance until none can cut the cell.
struct VoronoiCell {
    std::vector<Point> polygon;              // convex, counter-clockwise
    std::vector<std::size_t> candidates;     // every point within 2 * circumradius
    double circumradius = 0.0;               // max vertex distance from the owner
};

void voronoi_cell(const PointGrid& grid, std::size_t owner, const Box& clip, VoronoiCell& cell);

/// True when no candidate is strictly closer to q than the owner. With the
/// candidate list from voronoi_cell this equals a test against all points for
/// any q inside the cell's circumcircle.
bool owner_is_nearest(std::span<const Point> points, std::size_t owner,
                      std::span<const std::size_t> candidates, Point q);

double polygon_area(std::span<const Point> polygon);

/// Gabriel test: the disk with diameter [a, b] holds no other point, so the
/// midpoint's two nearest points are a and b and the cells share an edge.
bool midpoint_adjacent(const PointGrid& grid, std::size_t a, std::size_t b,
                       std::vector<std::size_t>& scratch);

}  // namespace uplink::geometry
