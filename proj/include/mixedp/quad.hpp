#pragma once

#include <functional>
#include <vector>

namespace mixedp {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1,1]
    std::vector<double> w;
};

// n-point Gauss-Legendre rule on [-1,1] (Newton iteration on P_n).
const GaussRule& gauss_legendre(int n);

// Gauss-Legendre integral of f over [a,b] with an n-point rule.
double gauss_panel(const std::function<double(double)>& f, double a, double b, int n = 16);

// Integral over (0,1) of an integrand with (possibly) integrable endpoint
// singularities: panels are graded dyadically toward both endpoints and
// extended until a new panel no longer changes the running sum.
double integrate_unit_dyadic(const std::function<double(double)>& f, int points_per_panel = 16,
                             int max_levels = 200, double rel_tol = 1e-15);

}  // namespace mixedp
