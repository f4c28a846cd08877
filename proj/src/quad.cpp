#include "mixedp/quad.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace mixedp {

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");

    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussRule& g = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += g.w[i] * f(mid + half * g.x[i]);
    return acc * half;
}

double integrate_unit_dyadic(const std::function<double(double)>& f, int points_per_panel,
                             int max_levels, double rel_tol) {
    // Middle panel plus dyadic ladders toward 0 and toward 1.
    double total = gauss_panel(f, 0.25, 0.75, points_per_panel);
    double lo = 0.25;
    for (int k = 0; k < max_levels; ++k) {
        double next = lo * 0.5;
        if (!(next > 0.0) || next == lo) break;
        double piece = gauss_panel(f, next, lo, points_per_panel);
        total += piece;
        lo = next;
        if (std::abs(piece) < rel_tol * std::abs(total)) break;
    }
    double hi = 0.25;  // distance from 1
    for (int k = 0; k < max_levels; ++k) {
        double next = hi * 0.5;
        double a = 1.0 - hi, b = 1.0 - next;
        if (!(b > a && b < 1.0)) break;  // panel no longer representable
        double piece = gauss_panel(f, a, b, points_per_panel);
        total += piece;
        hi = next;
        if (std::abs(piece) < rel_tol * std::abs(total)) break;
    }
    return total;
}

}  // namespace mixedp
