#include "mixedp/field.hpp"

#include <stdexcept>

namespace mixedp {

double lp_norm_p(const Field& u, double p, double cell_volume) {
    PPower pk(p);
    double acc = 0.0;
    for (double v : u) acc += pk.abs_pow(v);
    return acc * cell_volume;
}

double lp_norm(const Field& u, double p, double cell_volume) {
    return std::pow(lp_norm_p(u, p, cell_volume), 1.0 / p);
}

Field normalized(const Field& u, double p, double cell_volume) {
    double n = lp_norm(u, p, cell_volume);
    if (!(n > 0.0)) throw std::invalid_argument("normalized: zero field");
    Field v(u.size());
    double inv = 1.0 / n;
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] * inv;
    return v;
}

Field positive_part(const Field& u) {
    Field v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] > 0.0 ? u[i] : 0.0;
    return v;
}

Field negative_part(const Field& u) {
    Field v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] < 0.0 ? -u[i] : 0.0;
    return v;
}

double l2_dot(const Field& a, const Field& b, double cell_volume) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc * cell_volume;
}

bool all_finite(const Field& u) {
    for (double v : u)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace mixedp
