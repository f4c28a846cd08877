#pragma once

#include <array>
#include <string>
#include <vector>

namespace mixedp {

// Discrete domain description: 1-D intervals and unions of two intervals,
// 2-D rectangles, disks and unions of two disks. `resolution` is the number
// of cells across the smallest extent of the shape.
struct ShapeSpec {
    enum class Kind { interval, rectangle, disk, two_disks };

    Kind kind = Kind::interval;
    double a = 0.0, b = 1.0;                    // interval
    std::array<double, 4> bounds{0, 1, 0, 1};   // rectangle: x0,x1,y0,y1
    std::array<double, 2> center{0.0, 0.0};     // disk / first ball
    std::array<double, 2> center2{0.0, 0.0};    // second ball
    double radius = 1.0;
    int resolution = 64;
    int dim_override = 0;  // two_disks only: 1 selects the two-interval analogue

    int dim() const;
    double min_extent() const;                        // smallest axis span
    std::array<double, 4> bounding_box() const;       // x0,x1,y0,y1 (y unused in 1-D)
    std::array<double, 2> centroid() const;
    bool contains(double x, double y) const;          // open containment
    ShapeSpec translated(double dx, double dy) const;
    bool overlapping_balls() const;                   // two_disks with |c1-c2| < 2r

    // Throws std::invalid_argument on a violated invariant
    // (a < b, radius > 0, resolution >= 4).
    void validate() const;

    // Sorted, merged list of parameter intervals (t0,t1) along the ray
    // origin + t*dir, t > 0, that lie inside the shape. dir must be unit.
    std::vector<std::array<double, 2>> ray_inside(const std::array<double, 2>& origin,
                                                  const std::array<double, 2>& dir) const;

    static ShapeSpec make_interval(double a, double b, int resolution);
    static ShapeSpec make_rectangle(double x0, double x1, double y0, double y1, int resolution);
    static ShapeSpec make_disk(double cx, double cy, double r, int resolution);
    static ShapeSpec make_two_disks(std::array<double, 2> c1, std::array<double, 2> c2, double r,
                                    int resolution, int dim = 2);

    std::string describe() const;
};

}  // namespace mixedp
