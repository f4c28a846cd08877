#include "mixedp/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mixedp {

namespace {

double dist2(double ax, double ay, double bx, double by) {
    double dx = ax - bx, dy = ay - by;
    return dx * dx + dy * dy;
}

// entry/exit of the ray o + t*dir through the ball (c, r); empty if missed
bool ray_ball(const std::array<double, 2>& o, const std::array<double, 2>& dir,
              const std::array<double, 2>& c, double r, std::array<double, 2>& seg) {
    double ox = o[0] - c[0], oy = o[1] - c[1];
    double b = ox * dir[0] + oy * dir[1];
    double q = ox * ox + oy * oy - r * r;
    double disc = b * b - q;
    if (disc <= 0.0) return false;
    double sq = std::sqrt(disc);
    double t0 = -b - sq, t1 = -b + sq;
    if (t1 <= 0.0) return false;
    seg = {std::max(0.0, t0), t1};
    return true;
}

}  // namespace

int ShapeSpec::dim() const {
    switch (kind) {
        case Kind::interval: return 1;
        case Kind::two_disks: return dim_override == 1 ? 1 : 2;
        default: return 2;
    }
}

double ShapeSpec::min_extent() const {
    switch (kind) {
        case Kind::interval: return b - a;
        case Kind::rectangle:
            return std::min(bounds[1] - bounds[0], bounds[3] - bounds[2]);
        case Kind::disk:
        case Kind::two_disks: return 2.0 * radius;
    }
    return 0.0;
}

std::array<double, 4> ShapeSpec::bounding_box() const {
    switch (kind) {
        case Kind::interval: return {a, b, 0.0, 0.0};
        case Kind::rectangle: return bounds;
        case Kind::disk:
            return {center[0] - radius, center[0] + radius, center[1] - radius,
                    center[1] + radius};
        case Kind::two_disks: {
            double x0 = std::min(center[0], center2[0]) - radius;
            double x1 = std::max(center[0], center2[0]) + radius;
            if (dim() == 1) return {x0, x1, 0.0, 0.0};
            double y0 = std::min(center[1], center2[1]) - radius;
            double y1 = std::max(center[1], center2[1]) + radius;
            return {x0, x1, y0, y1};
        }
    }
    return {0, 0, 0, 0};
}

std::array<double, 2> ShapeSpec::centroid() const {
    switch (kind) {
        case Kind::interval: return {0.5 * (a + b), 0.0};
        case Kind::rectangle:
            return {0.5 * (bounds[0] + bounds[1]), 0.5 * (bounds[2] + bounds[3])};
        case Kind::disk: return center;
        case Kind::two_disks:
            return {0.5 * (center[0] + center2[0]), 0.5 * (center[1] + center2[1])};
    }
    return {0, 0};
}

bool ShapeSpec::contains(double x, double y) const {
    switch (kind) {
        case Kind::interval: return x > a && x < b;
        case Kind::rectangle:
            return x > bounds[0] && x < bounds[1] && y > bounds[2] && y < bounds[3];
        case Kind::disk: return dist2(x, y, center[0], center[1]) < radius * radius;
        case Kind::two_disks:
            if (dim() == 1)
                return std::abs(x - center[0]) < radius || std::abs(x - center2[0]) < radius;
            return dist2(x, y, center[0], center[1]) < radius * radius ||
                   dist2(x, y, center2[0], center2[1]) < radius * radius;
    }
    return false;
}

ShapeSpec ShapeSpec::translated(double dx, double dy) const {
    ShapeSpec t = *this;
    t.a += dx;
    t.b += dx;
    t.bounds = {bounds[0] + dx, bounds[1] + dx, bounds[2] + dy, bounds[3] + dy};
    t.center = {center[0] + dx, center[1] + dy};
    t.center2 = {center2[0] + dx, center2[1] + dy};
    return t;
}

bool ShapeSpec::overlapping_balls() const {
    if (kind != Kind::two_disks) return false;
    double d = std::sqrt(dist2(center[0], center[1], center2[0], center2[1]));
    return d < 2.0 * radius;
}

void ShapeSpec::validate() const {
    if (resolution < 4) throw std::invalid_argument("shape: resolution must be at least 4");
    switch (kind) {
        case Kind::interval:
            if (!(a < b)) throw std::invalid_argument("shape: interval requires a < b");
            break;
        case Kind::rectangle:
            if (!(bounds[0] < bounds[1] && bounds[2] < bounds[3]))
                throw std::invalid_argument("shape: rectangle bounds must be increasing");
            break;
        case Kind::disk:
        case Kind::two_disks:
            if (!(radius > 0.0)) throw std::invalid_argument("shape: radius must be positive");
            break;
    }
}

std::vector<std::array<double, 2>> ShapeSpec::ray_inside(const std::array<double, 2>& origin,
                                                         const std::array<double, 2>& dir) const {
    std::vector<std::array<double, 2>> segs;
    switch (kind) {
        case Kind::interval: throw std::logic_error("ray_inside: not used for 1-D shapes");
        case Kind::rectangle: {
            double t0 = 0.0, t1 = std::numeric_limits<double>::infinity();
            for (int axis = 0; axis < 2; ++axis) {
                double o = axis == 0 ? origin[0] : origin[1];
                double d = axis == 0 ? dir[0] : dir[1];
                double lo = bounds[2 * axis], hi = bounds[2 * axis + 1];
                if (std::abs(d) < 1e-300) {
                    if (o <= lo || o >= hi) return segs;
                } else {
                    double ta = (lo - o) / d, tb = (hi - o) / d;
                    if (ta > tb) std::swap(ta, tb);
                    t0 = std::max(t0, ta);
                    t1 = std::min(t1, tb);
                }
            }
            if (t1 > t0) segs.push_back({t0, t1});
            return segs;
        }
        case Kind::disk: {
            std::array<double, 2> seg;
            if (ray_ball(origin, dir, center, radius, seg)) segs.push_back(seg);
            return segs;
        }
        case Kind::two_disks: {
            std::array<double, 2> seg;
            if (ray_ball(origin, dir, center, radius, seg)) segs.push_back(seg);
            if (ray_ball(origin, dir, center2, radius, seg)) segs.push_back(seg);
            std::sort(segs.begin(), segs.end());
            // merge overlaps
            std::vector<std::array<double, 2>> merged;
            for (const auto& s : segs) {
                if (!merged.empty() && s[0] <= merged.back()[1])
                    merged.back()[1] = std::max(merged.back()[1], s[1]);
                else
                    merged.push_back(s);
            }
            return merged;
        }
    }
    return segs;
}

ShapeSpec ShapeSpec::make_interval(double a, double b, int resolution) {
    ShapeSpec s;
    s.kind = Kind::interval;
    s.a = a;
    s.b = b;
    s.resolution = resolution;
    return s;
}

ShapeSpec ShapeSpec::make_rectangle(double x0, double x1, double y0, double y1, int resolution) {
    ShapeSpec s;
    s.kind = Kind::rectangle;
    s.bounds = {x0, x1, y0, y1};
    s.resolution = resolution;
    return s;
}

ShapeSpec ShapeSpec::make_disk(double cx, double cy, double r, int resolution) {
    ShapeSpec s;
    s.kind = Kind::disk;
    s.center = {cx, cy};
    s.radius = r;
    s.resolution = resolution;
    return s;
}

ShapeSpec ShapeSpec::make_two_disks(std::array<double, 2> c1, std::array<double, 2> c2, double r,
                                    int resolution, int dim) {
    ShapeSpec s;
    s.kind = Kind::two_disks;
    s.center = c1;
    s.center2 = c2;
    s.radius = r;
    s.resolution = resolution;
    s.dim_override = dim == 1 ? 1 : 0;
    return s;
}

std::string ShapeSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::interval: os << "interval(" << a << "," << b << ")"; break;
        case Kind::rectangle:
            os << "rectangle(" << bounds[0] << "," << bounds[1] << "," << bounds[2] << ","
               << bounds[3] << ")";
            break;
        case Kind::disk:
            os << "disk(" << center[0] << "," << center[1] << ";r=" << radius << ")";
            break;
        case Kind::two_disks:
            os << "two_disks(" << center[0] << "," << center[1] << "|" << center2[0] << ","
               << center2[1] << ";r=" << radius << ")";
            break;
    }
    os << "@" << resolution;
    return os.str();
}

}  // namespace mixedp
