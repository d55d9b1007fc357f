#include "uplink/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

namespace uplink::geometry {

PointGrid::PointGrid(std::span<const Point> points, double half_width, double cell_size)
    : points_(points), half_width_(half_width), cell_size_(cell_size) {
    if (!(half_width > 0.0) || !(cell_size > 0.0)) {
        throw std::invalid_argument("grid extent and cell size must be positive");
    }
    cells_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2.0 * half_width / cell_size)));
    std::vector<std::size_t> bucket(points.size());
    start_.assign(cells_ * cells_ + 1, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        bucket[i] = row(points[i].y) * cells_ + column(points[i].x);
        ++start_[bucket[i] + 1];
    }
    for (std::size_t b = 0; b < cells_ * cells_; ++b) {
        start_[b + 1] += start_[b];
    }
    items_.resize(points.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) {
        items_[fill[bucket[i]]++] = i;
    }
}

std::size_t PointGrid::column(double x) const {
    const double c = std::floor((x + half_width_) / cell_size_);
    return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(cells_ - 1)));
}

std::size_t PointGrid::row(double y) const { return column(y); }

std::size_t PointGrid::nearest(Point q) const {
    if (points_.empty()) {
        throw std::logic_error("nearest() on an empty point set");
    }
    const auto cx = static_cast<long>(column(q.x));
    const auto cy = static_cast<long>(row(q.y));
    const auto n = static_cast<long>(cells_);
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (long ring = 0; ring < n; ++ring) {
        // Any point in ring k is at least (k - 1) cells away from q.
        const double bound = (ring - 1) * cell_size_;
        if (ring > 0 && bound > 0.0 && bound * bound > best_d2) {
            break;
        }
        for (long y = cy - ring; y <= cy + ring; ++y) {
            if (y < 0 || y >= n) {
                continue;
            }
            const bool edge_row = (y == cy - ring || y == cy + ring);
            const long step = edge_row ? 1 : 2 * ring;
            for (long x = cx - ring; x <= cx + ring; x += (step == 0 ? 1 : step)) {
                if (x < 0 || x >= n) {
                    continue;
                }
                const std::size_t b = static_cast<std::size_t>(y * n + x);
                for (std::size_t k = start_[b]; k < start_[b + 1]; ++k) {
                    const double d2 = dist2(points_[items_[k]], q);
                    if (d2 < best_d2) {
                        best_d2 = d2;
                        best = items_[k];
                    }
                }
            }
        }
    }
    return best;
}

void PointGrid::within(Point q, double radius, std::vector<std::size_t>& out) const {
    out.clear();
    const std::size_t x0 = column(q.x - radius);
    const std::size_t x1 = column(q.x + radius);
    const std::size_t y0 = row(q.y - radius);
    const std::size_t y1 = row(q.y + radius);
    const double r2 = radius * radius;
    for (std::size_t y = y0; y <= y1; ++y) {
        for (std::size_t x = x0; x <= x1; ++x) {
            const std::size_t b = y * cells_ + x;
            for (std::size_t k = start_[b]; k < start_[b + 1]; ++k) {
                if (dist2(points_[items_[k]], q) <= r2) {
                    out.push_back(items_[k]);
                }
            }
        }
    }
}

namespace {

// Keeps the part of `poly` closer to p than to q.
void clip_half_plane(std::vector<Point>& poly, std::vector<Point>& scratch, Point p, Point q) {
    const Point normal{q.x - p.x, q.y - p.y};
    const double offset = 0.5 * (norm2(q) - norm2(p));
    auto side = [&](Point v) { return v.x * normal.x + v.y * normal.y - offset; };
    scratch.clear();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % n];
        const double sa = side(a);
        const double sb = side(b);
        if (sa <= 0.0) {
            scratch.push_back(a);
        }
        if ((sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0)) {
            const double t = sa / (sa - sb);
            scratch.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    poly.swap(scratch);
}

double max_vertex_distance(const std::vector<Point>& poly, Point p) {
    double best = 0.0;
    for (const Point& v : poly) {
        best = std::max(best, dist2(v, p));
    }
    return std::sqrt(best);
}

}  // namespace

void voronoi_cell(const PointGrid& grid, std::size_t owner, const Box& clip, VoronoiCell& cell) {
    const auto points = grid.points();
    const Point p = points[owner];
    cell.polygon.assign({{clip.x0, clip.y0}, {clip.x1, clip.y0}, {clip.x1, clip.y1}, {clip.x0, clip.y1}});
    cell.candidates.clear();
    cell.circumradius = max_vertex_distance(cell.polygon, p);

    thread_local std::vector<Point> scratch;
    thread_local std::vector<std::size_t> found;
    thread_local std::vector<std::pair<double, std::size_t>> ordered;

    double covered = 0.0;
    // Mean spacing; a first ring of a few neighbours usually closes the cell.
    double search = 2.5 / std::sqrt(std::max<double>(1.0, static_cast<double>(points.size())) /
                                    ((clip.x1 - clip.x0) * (clip.y1 - clip.y0)));
    for (;;) {
        search = std::min(search, 2.0 * cell.circumradius);
        grid.within(p, search, found);
        ordered.clear();
        for (std::size_t j : found) {
            if (j == owner) {
                continue;
            }
            const double d = dist(points[j], p);
            if (d > covered) {
                ordered.emplace_back(d, j);
            }
        }
        std::sort(ordered.begin(), ordered.end());
        bool done = false;
        for (const auto& [d, j] : ordered) {
            if (d > 2.0 * cell.circumradius) {
                done = true;
                break;
            }
            clip_half_plane(cell.polygon, scratch, p, points[j]);
            cell.candidates.push_back(j);
            cell.circumradius = max_vertex_distance(cell.polygon, p);
        }
        covered = search;
        if (done || 2.0 * cell.circumradius <= covered) {
            break;
        }
        search = std::max(2.0 * cell.circumradius, 1.5 * covered);
    }
}

bool owner_is_nearest(std::span<const Point> points, std::size_t owner,
                      std::span<const std::size_t> candidates, Point q) {
    const double own = dist2(points[owner], q);
    for (std::size_t j : candidates) {
        if (dist2(points[j], q) < own) {
            return false;
        }
    }
    return true;
}

double polygon_area(std::span<const Point> polygon) {
    double twice = 0.0;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = polygon[i];
        const Point b = polygon[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::abs(twice);
}

bool midpoint_adjacent(const PointGrid& grid, std::size_t a, std::size_t b,
                       std::vector<std::size_t>& scratch) {
    const auto points = grid.points();
    const Point mid{0.5 * (points[a].x + points[b].x), 0.5 * (points[a].y + points[b].y)};
    const double radius = 0.5 * dist(points[a], points[b]);
    grid.within(mid, radius, scratch);
    const double r2 = radius * radius;
    for (std::size_t k : scratch) {
        if (k != a && k != b && dist2(points[k], mid) < r2) {
            return false;
        }
    }
    return true;
}

}  // namespace uplink::geometry
