#include "mixedp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "mixedp/quad.hpp"
#include "mixedp/util.hpp"

namespace mixedp {

namespace {

// |d|^e for the kernel exponent e = N + p*s, with cheap paths for the
// common half-integer exponents.
struct PowExp {
    double e;
    int mode;  // 0 general, 1 e=2, 2 e=3, 3 e=2.5, 4 e=3.5
    explicit PowExp(double expnt) : e(expnt) {
        if (expnt == 2.0) mode = 1;
        else if (expnt == 3.0) mode = 2;
        else if (expnt == 2.5) mode = 3;
        else if (expnt == 3.5) mode = 4;
        else mode = 0;
    }
    // input: squared distance
    double of_sq(double d2) const {
        switch (mode) {
            case 1: return d2;
            case 2: return d2 * std::sqrt(d2);
            case 3: return d2 * std::sqrt(std::sqrt(d2));
            case 4: return d2 * std::sqrt(d2 * std::sqrt(d2));
            default: return std::pow(d2, 0.5 * e);
        }
    }
};

bool cell_fully_inside(const ShapeSpec& spec, double x0, double y0, double h) {
    const double tol = 1e-9 * h;
    switch (spec.kind) {
        case ShapeSpec::Kind::interval:
            return x0 >= spec.a - tol && x0 + h <= spec.b + tol;
        case ShapeSpec::Kind::rectangle:
            return x0 >= spec.bounds[0] - tol && x0 + h <= spec.bounds[1] + tol &&
                   y0 >= spec.bounds[2] - tol && y0 + h <= spec.bounds[3] + tol;
        case ShapeSpec::Kind::disk:
        case ShapeSpec::Kind::two_disks: {
            if (spec.dim() == 1) {
                auto in_seg = [&](double c) {
                    return x0 >= c - spec.radius - tol && x0 + h <= c + spec.radius + tol;
                };
                return in_seg(spec.center[0]) ||
                       (spec.kind == ShapeSpec::Kind::two_disks && in_seg(spec.center2[0]));
            }
            auto in_ball = [&](const std::array<double, 2>& c) {
                const double r2 = spec.radius * spec.radius * (1.0 - 1e-12);
                for (int k = 0; k < 4; ++k) {
                    double cx = x0 + (k & 1 ? h : 0.0) - c[0];
                    double cy = y0 + (k & 2 ? h : 0.0) - c[1];
                    if (cx * cx + cy * cy > r2) return false;
                }
                return true;
            };
            if (in_ball(spec.center)) return true;
            return spec.kind == ShapeSpec::Kind::two_disks && in_ball(spec.center2);
        }
    }
    return false;
}

// merged inside intervals of a 1-D shape
std::vector<std::array<double, 2>> inside_intervals_1d(const ShapeSpec& spec) {
    std::vector<std::array<double, 2>> segs;
    if (spec.kind == ShapeSpec::Kind::interval) {
        segs.push_back({spec.a, spec.b});
    } else {
        segs.push_back({spec.center[0] - spec.radius, spec.center[0] + spec.radius});
        segs.push_back({spec.center2[0] - spec.radius, spec.center2[0] + spec.radius});
        std::sort(segs.begin(), segs.end());
        if (segs[0][1] >= segs[1][0]) {
            segs[0][1] = std::max(segs[0][1], segs[1][1]);
            segs.pop_back();
        }
    }
    return segs;
}

double tail_1d(double x, const ShapeSpec& spec, double sigma) {
    auto segs = inside_intervals_1d(spec);
    bool inside = false;
    for (const auto& s : segs) inside = inside || (x > s[0] && x < s[1]);
    if (!inside) throw std::invalid_argument("tail_weight_at: point not strictly inside the shape");

    // exterior gaps: (-inf, first), between segments, (last, +inf)
    double acc = 0.0;
    auto piece_right = [&](double y0, double y1) {  // y0 > x
        double a = std::pow(y0 - x, -sigma);
        double b = std::isinf(y1) ? 0.0 : std::pow(y1 - x, -sigma);
        return (a - b) / sigma;
    };
    auto piece_left = [&](double y0, double y1) {  // y1 < x
        double a = std::pow(x - y1, -sigma);
        double b = std::isinf(y0) ? 0.0 : std::pow(x - y0, -sigma);
        return (a - b) / sigma;
    };
    const double inf = std::numeric_limits<double>::infinity();
    if (x > segs.front()[0]) acc += piece_left(-inf, segs.front()[0]);
    if (x < segs.back()[1]) acc += piece_right(segs.back()[1], inf);
    for (std::size_t k = 0; k + 1 < segs.size(); ++k) {
        double g0 = segs[k][1], g1 = segs[k + 1][0];
        if (g1 <= g0) continue;
        if (x <= g0) acc += piece_right(g0, g1);
        else if (x >= g1) acc += piece_left(g0, g1);
        else throw std::invalid_argument("tail_weight_at: point lies in an exterior gap");
    }
    return acc;
}

constexpr int kTailRays = 2048;

double tail_2d(const std::array<double, 2>& x, const ShapeSpec& spec, double sigma) {
    if (!spec.contains(x[0], x[1]))
        throw std::invalid_argument("tail_weight_at: point not strictly inside the shape");
    auto bb = spec.bounding_box();
    double rout = 0.0;
    for (int k = 0; k < 4; ++k) {
        double cx = (k & 1 ? bb[1] : bb[0]) - x[0];
        double cy = (k & 2 ? bb[3] : bb[2]) - x[1];
        rout = std::max(rout, std::hypot(cx, cy));
    }
    rout *= 1.0 + 1e-12;
    const double far = 2.0 * M_PI * std::pow(rout, -sigma) / sigma;
    const double rout_pow = std::pow(rout, -sigma);

    // per-ray closed-form radial integral over Omega^c within the bounding disk
    double near = 0.0;
    const double dtheta = 2.0 * M_PI / kTailRays;
    for (int k = 0; k < kTailRays; ++k) {
        double th = (k + 0.5) * dtheta;
        std::array<double, 2> dir{std::cos(th), std::sin(th)};
        auto segs = spec.ray_inside(x, dir);
        // complement of the inside segments in (0, rout)
        double acc = 0.0, cursor = 0.0;
        bool at_start = true;
        for (const auto& s : segs) {
            double g0 = cursor, g1 = std::min(s[0], rout);
            if (g1 > g0) {
                if (at_start && g0 <= 0.0)
                    throw std::invalid_argument("tail_weight_at: point on the boundary");
                acc += (std::pow(g0, -sigma) - std::pow(g1, -sigma)) / sigma;
            }
            cursor = std::max(cursor, s[1]);
            at_start = false;
            if (cursor >= rout) break;
        }
        if (cursor < rout) {
            if (at_start || cursor <= 0.0)
                throw std::invalid_argument("tail_weight_at: point on the boundary");
            acc += (std::pow(cursor, -sigma) - rout_pow) / sigma;
        }
        near += acc;
    }
    return far + near * dtheta;
}

// 1-D antiderivative of t^{-q} on (0, inf)
double power_antideriv(double t, double q) {
    if (q == 1.0) return std::log(t);
    return std::pow(t, 1.0 - q) / (1.0 - q);
}

double hardy_cell_2d(double cx, double cy, double half, double q, int depth);

double hardy_cell_2d_smooth(double cx, double cy, double half, double q) {
    const GaussRule& g = gauss_legendre(8);
    double acc = 0.0;
    for (int i = 0; i < 8; ++i) {
        double yx = cx + half * g.x[i];
        for (int j = 0; j < 8; ++j) {
            double yy = cy + half * g.x[j];
            acc += g.w[i] * g.w[j] * std::pow(yx * yx + yy * yy, -0.5 * q);
        }
    }
    return acc * half * half;
}

double hardy_cell_2d(double cx, double cy, double half, double q, int depth) {
    double dx = std::max(0.0, std::abs(cx) - half);
    double dy = std::max(0.0, std::abs(cy) - half);
    double dmin = std::hypot(dx, dy);
    if (dmin >= 4.0 * half) return hardy_cell_2d_smooth(cx, cy, half, q);
    if (depth >= 60) return 0.0;  // remaining singular square contributes O(side^{2-q})
    double acc = 0.0;
    const double hh = 0.5 * half;
    acc += hardy_cell_2d(cx - hh, cy - hh, hh, q, depth + 1);
    acc += hardy_cell_2d(cx + hh, cy - hh, hh, q, depth + 1);
    acc += hardy_cell_2d(cx - hh, cy + hh, hh, q, depth + 1);
    acc += hardy_cell_2d(cx + hh, cy + hh, hh, q, depth + 1);
    return acc;
}

}  // namespace

double hardy_weight_at(const std::array<double, 2>& x, double h, double p, double theta, int N,
                       int dim) {
    const double q = p * theta;
    if (q == 0.0) return 1.0;
    const double half = 0.5 * h;
    const double eps = 1e-12 * h;

    if (dim == 1) {
        double l = x[0] - half, r = x[0] + half;
        if (l < -eps && r > eps) {  // origin strictly inside
            if (q >= static_cast<double>(N))
                throw std::invalid_argument(
                    "hardy_weight_at: cell average diverges (origin in cell, p*theta >= N)");
            return (std::pow(-l, 1.0 - q) + std::pow(r, 1.0 - q)) / ((1.0 - q) * h);
        }
        if (l < 0.0) {  // cell on the negative side; reflect
            std::swap(l, r);
            l = -l;
            r = -r;
        }
        if (l <= eps) {  // origin touches the closure
            if (q >= 1.0) return std::pow(std::abs(x[0]), -q);  // midpoint fallback
            return std::pow(r, 1.0 - q) / ((1.0 - q) * h);
        }
        return (power_antideriv(r, q) - power_antideriv(l, q)) / h;
    }

    // 2-D
    bool strict_inside = std::abs(x[0]) < half - eps && std::abs(x[1]) < half - eps;
    bool touches = std::abs(x[0]) <= half + eps && std::abs(x[1]) <= half + eps;
    if (q >= static_cast<double>(N)) {
        if (strict_inside)
            throw std::invalid_argument(
                "hardy_weight_at: cell average diverges (origin in cell, p*theta >= N)");
        if (touches) return std::pow(std::hypot(x[0], x[1]), -q);
    }
    return hardy_cell_2d(x[0], x[1], half, q, 0) / (h * h);
}

double tail_weight_at(const std::array<double, 2>& x, const ShapeSpec& spec, double s, double p,
                      int N) {
    const double sigma = p * s;
    if (!(sigma > 0.0)) throw std::invalid_argument("tail_weight_at: p*s must be positive");
    if (spec.dim() == 1) {
        (void)N;
        return tail_1d(x[0], spec, sigma);
    }
    return tail_2d(x, spec, sigma);
}

Mesh build_mesh(const ShapeSpec& spec, const OperatorParams& params) {
    spec.validate();
    params.validate();
    if (spec.dim() != params.N)
        throw std::invalid_argument("build_mesh: shape dimension must equal params.N");

    Mesh m;
    m.dim = spec.dim();
    m.h = spec.min_extent() / spec.resolution;
    m.cell_volume = m.dim == 1 ? m.h : m.h * m.h;

    auto bb = spec.bounding_box();
    const double tol = 1e-9 * m.h;
    const int nx = static_cast<int>(std::ceil((bb[1] - bb[0]) / m.h - 1e-9));
    const int ny = m.dim == 1 ? 1 : static_cast<int>(std::ceil((bb[3] - bb[2]) / m.h - 1e-9));

    std::unordered_map<long long, int> index_of;
    auto key = [&](int ix, int iy) { return static_cast<long long>(iy) * (nx + 2) + ix; };

    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            double x0 = bb[0] + ix * m.h;
            double y0 = m.dim == 1 ? 0.0 : bb[2] + iy * m.h;
            if (!cell_fully_inside(spec, x0, y0, m.h)) continue;
            index_of[key(ix, iy)] = static_cast<int>(m.nodes.size());
            m.cells.push_back({ix, iy});
            m.nodes.push_back({x0 + 0.5 * m.h, m.dim == 1 ? 0.0 : y0 + 0.5 * m.h});
        }
    }
    const int M = m.size();
    if (M == 0) throw std::invalid_argument("build_mesh: empty interior (shape below one cell)");

    for (const auto& nd : m.nodes)
        if (std::abs(nd[0]) < tol && std::abs(nd[1]) < tol)
            throw std::invalid_argument(
                "build_mesh: a node coincides with the origin; change the resolution parity");

    m.neighbors.assign(M, {-1, -1, -1, -1});
    for (int i = 0; i < M; ++i) {
        int ix = m.cells[i][0], iy = m.cells[i][1];
        const int off[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
        int ndirs = m.dim == 1 ? 2 : 4;
        for (int d = 0; d < ndirs; ++d) {
            auto it = index_of.find(key(ix + off[d][0], iy + off[d][1]));
            if (it != index_of.end()) m.neighbors[i][d] = it->second;
        }
    }

    // nonlocal kernel  K_ij = vol^2 / |x_i - x_j|^{N + ps}
    const PowExp pe(params.N + params.p * params.s);
    const double v2 = m.cell_volume * m.cell_volume;
    m.kernel_weights.assign(static_cast<std::size_t>(M) * M, 0.0);
    block_for(static_cast<std::size_t>(M), [&](std::size_t i0, std::size_t i1) {
        for (std::size_t i = i0; i < i1; ++i) {
            const double xi = m.nodes[i][0], yi = m.nodes[i][1];
            double* row = m.kernel_weights.data() + i * M;
            for (int j = 0; j < M; ++j) {
                if (static_cast<int>(i) == j) continue;
                double dx = xi - m.nodes[j][0], dy = yi - m.nodes[j][1];
                row[j] = v2 / pe.of_sq(dx * dx + dy * dy);
            }
        }
    });
    m.kernel_rowsum.assign(M, 0.0);
    for (int i = 0; i < M; ++i) {
        const double* row = m.kernel_weights.data() + static_cast<std::size_t>(i) * M;
        double acc = 0.0;
        for (int j = 0; j < M; ++j) acc += row[j];
        m.kernel_rowsum[i] = acc;
    }

    m.tail_weights.resize(M);
    block_for(static_cast<std::size_t>(M), [&](std::size_t i0, std::size_t i1) {
        for (std::size_t i = i0; i < i1; ++i)
            m.tail_weights[i] = tail_weight_at(m.nodes[i], spec, params.s, params.p, params.N);
    });

    m.hardy_weights.resize(M);
    for (int i = 0; i < M; ++i)
        m.hardy_weights[i] =
            hardy_weight_at(m.nodes[i], m.h, params.p, params.theta, params.N, m.dim);

    m.volume = M * m.cell_volume;
    return m;
}

int Mesh::components(const std::vector<std::uint8_t>& mask, std::vector<int>* labels) const {
    const int M = size();
    std::vector<int> lab(M, -1);
    int count = 0;
    std::deque<int> queue;
    for (int start = 0; start < M; ++start) {
        if (!mask[start] || lab[start] >= 0) continue;
        lab[start] = count;
        queue.push_back(start);
        while (!queue.empty()) {
            int i = queue.front();
            queue.pop_front();
            for (int d = 0; d < (dim == 1 ? 2 : 4); ++d) {
                int j = neighbors[i][d];
                if (j >= 0 && mask[j] && lab[j] < 0) {
                    lab[j] = count;
                    queue.push_back(j);
                }
            }
        }
        ++count;
    }
    if (labels) *labels = std::move(lab);
    return count;
}

Mesh build_submesh(const Mesh& parent, const std::vector<std::uint8_t>& keep) {
    const int M = parent.size();
    std::vector<int> newidx(M, -1);
    int count = 0;
    for (int i = 0; i < M; ++i)
        if (keep[i]) newidx[i] = count++;
    if (count < 2) throw std::invalid_argument("build_submesh: fewer than 2 nodes survive");

    Mesh m;
    m.dim = parent.dim;
    m.h = parent.h;
    m.cell_volume = parent.cell_volume;
    m.nodes.reserve(count);
    m.cells.reserve(count);
    for (int i = 0; i < M; ++i) {
        if (!keep[i]) continue;
        m.nodes.push_back(parent.nodes[i]);
        m.cells.push_back(parent.cells[i]);
        m.hardy_weights.push_back(parent.hardy_weights[i]);
    }
    m.neighbors.assign(count, {-1, -1, -1, -1});
    for (int i = 0; i < M; ++i) {
        if (!keep[i]) continue;
        for (int d = 0; d < (m.dim == 1 ? 2 : 4); ++d) {
            int j = parent.neighbors[i][d];
            if (j >= 0 && keep[j]) m.neighbors[newidx[i]][d] = newidx[j];
        }
    }
    // removed cells become exterior: their kernel mass moves to the tail
    m.kernel_weights.assign(static_cast<std::size_t>(count) * count, 0.0);
    m.kernel_rowsum.assign(count, 0.0);
    m.tail_weights.assign(count, 0.0);
    for (int i = 0; i < M; ++i) {
        if (!keep[i]) continue;
        const double* row = parent.kernel_weights.data() + static_cast<std::size_t>(i) * M;
        double* nrow = m.kernel_weights.data() + static_cast<std::size_t>(newidx[i]) * count;
        double removed = 0.0, kept_sum = 0.0;
        for (int j = 0; j < M; ++j) {
            if (keep[j]) {
                nrow[newidx[j]] = row[j];
                kept_sum += row[j];
            } else {
                removed += row[j];
            }
        }
        m.kernel_rowsum[newidx[i]] = kept_sum;
        m.tail_weights[newidx[i]] = parent.tail_weights[i] + removed / m.cell_volume;
    }
    m.volume = count * m.cell_volume;
    return m;
}

}  // namespace mixedp
