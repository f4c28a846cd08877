#pragma once

#include <cmath>
#include <vector>

namespace mixedp {

// Values on the interior mesh nodes, extended by zero outside the domain.
using Field = std::vector<double>;

// |t|^p and F(t) = |t|^{p-2} t with cheap paths for the exponents the
// solvers actually run. F(0) = 0 for every p > 1.
struct PPower {
    double p;
    int mode;  // 0 general, 1 p=2, 2 p=3, 3 p=2.5, 4 p=1.5

    explicit PPower(double pp) : p(pp) {
        if (pp == 2.0) mode = 1;
        else if (pp == 3.0) mode = 2;
        else if (pp == 2.5) mode = 3;
        else if (pp == 1.5) mode = 4;
        else mode = 0;
    }

    double abs_pow(double t) const {  // |t|^p
        switch (mode) {
            case 1: return t * t;
            case 2: { double a = std::abs(t); return a * a * a; }
            case 3: { double a = std::abs(t); return t * t * std::sqrt(a); }
            case 4: { double a = std::abs(t); return a * std::sqrt(a); }
            default: return std::pow(std::abs(t), p);
        }
    }

    double f(double t) const {  // |t|^{p-2} t
        if (t == 0.0) return 0.0;
        switch (mode) {
            case 1: return t;
            case 2: return std::abs(t) * t;
            case 3: return t * std::sqrt(std::abs(t));
            case 4: return t / std::sqrt(std::abs(t));
            default: return std::pow(std::abs(t), p - 2.0) * t;
        }
    }
};

double lp_norm(const Field& u, double p, double cell_volume);
double lp_norm_p(const Field& u, double p, double cell_volume);  // integral of |u|^p

// u / ||u||_p in the cell-volume-weighted norm; throws on a zero field.
Field normalized(const Field& u, double p, double cell_volume);

Field positive_part(const Field& u);  // u+ = max(u, 0)
Field negative_part(const Field& u);  // u- = max(-u, 0), so u = u+ - u-

// L2-type pairing  vol * sum_i a_i b_i
double l2_dot(const Field& a, const Field& b, double cell_volume);

bool all_finite(const Field& u);

}  // namespace mixedp
