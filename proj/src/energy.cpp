#include "mixedp/energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mixedp/util.hpp"

namespace mixedp {

namespace {

// Local faces: each node owns its +x/+y interior faces plus every ghost face
// toward a missing neighbor, so each face is visited exactly once.
template <class PK>
double local_energy_impl(const Field& u, const Mesh& m, const PK& pk) {
    const int ndirs = m.dim == 1 ? 2 : 4;
    const double inv_h = 1.0 / m.h;
    double acc = 0.0;
    for (int i = 0; i < m.size(); ++i) {
        for (int d = 0; d < ndirs; ++d) {
            int j = m.neighbors[i][d];
            if (j < 0) {
                acc += pk.abs_pow(u[i] * inv_h);  // ghost face, zero outside
            } else if (d == 1 || d == 3) {        // +x / +y faces counted once
                acc += pk.abs_pow((u[j] - u[i]) * inv_h);
            }
        }
    }
    return acc * m.cell_volume;
}

template <class PK>
void local_grad_accum(const Field& u, const Mesh& m, const PK& pk, Field& g) {
    // difference-adjoint of F(D_h u): g_i += (1/h) sum_faces F((u_i - u_nbr)/h)
    const int ndirs = m.dim == 1 ? 2 : 4;
    const double inv_h = 1.0 / m.h;
    for (int i = 0; i < m.size(); ++i) {
        double acc = 0.0;
        for (int d = 0; d < ndirs; ++d) {
            int j = m.neighbors[i][d];
            acc += pk.f((u[i] - (j < 0 ? 0.0 : u[j])) * inv_h);
        }
        g[i] += acc * inv_h;
    }
}

// Upper-triangle pass in a fixed sequential order: half the pair work and a
// thread-count-independent reduction.
template <class PK>
double nonlocal_energy_impl(const Field& u, const Mesh& m, const PK& pk) {
    const int M = m.size();
    double pairs = 0.0;
    for (int i = 0; i < M; ++i) {
        const double* row = m.kernel_weights.data() + static_cast<std::size_t>(i) * M;
        const double ui = u[i];
        double racc = 0.0;
        for (int j = i + 1; j < M; ++j) racc += row[j] * pk.abs_pow(ui - u[j]);
        pairs += racc;
    }
    double tail = 0.0;
    for (int i = 0; i < M; ++i) tail += m.tail_weights[i] * pk.abs_pow(u[i]);
    return 2.0 * pairs + 2.0 * tail * m.cell_volume;
}

// fused energy + gradient of the nonlocal term; grad part is
// 2 sum_j K_ij F(u_i-u_j)/vol + 2 w_i F(u_i)
template <class PK>
double nonlocal_energy_grad_impl(const Field& u, const Mesh& m, const PK& pk, Field& g,
                                 double weight) {
    const int M = m.size();
    const double inv_vol = 1.0 / m.cell_volume;
    std::vector<double> rowg(M, 0.0);
    double pairs = 0.0;
    for (int i = 0; i < M; ++i) {
        const double* row = m.kernel_weights.data() + static_cast<std::size_t>(i) * M;
        const double ui = u[i];
        double eacc = 0.0, gacc = 0.0;
        for (int j = i + 1; j < M; ++j) {
            const double t = ui - u[j];
            const double k = row[j];
            eacc += k * pk.abs_pow(t);
            const double kf = k * pk.f(t);
            gacc += kf;
            rowg[j] -= kf;
        }
        pairs += eacc;
        rowg[i] += gacc;
    }
    double tail = 0.0;
    for (int i = 0; i < M; ++i) {
        tail += m.tail_weights[i] * pk.abs_pow(u[i]);
        g[i] += weight * (2.0 * rowg[i] * inv_vol + 2.0 * m.tail_weights[i] * pk.f(u[i]));
    }
    return 2.0 * pairs + 2.0 * tail * m.cell_volume;
}

template <class Fn>
auto dispatch_p(double p, Fn&& fn) {
    // instantiates the hot loops per power mode
    PPower pk(p);
    return fn(pk);
}

}  // namespace

double local_energy(const Field& u, const Mesh& mesh, double p) {
    return dispatch_p(p, [&](const PPower& pk) { return local_energy_impl(u, mesh, pk); });
}

double nonlocal_energy(const Field& u, const Mesh& mesh, double p) {
    return dispatch_p(p, [&](const PPower& pk) { return nonlocal_energy_impl(u, mesh, pk); });
}

EnergyBreakdown j_d(const Field& u, double d, const Mesh& mesh, const OperatorParams& params) {
    PPower pk(params.p);
    EnergyBreakdown e;
    if (params.a_loc != 0.0) e.local = local_energy_impl(u, mesh, pk);
    if (params.a_nl != 0.0) e.nonlocal = nonlocal_energy_impl(u, mesh, pk);
    double hardy = 0.0, dplus = 0.0;
    for (int i = 0; i < mesh.size(); ++i) {
        hardy += mesh.hardy_weights[i] * pk.abs_pow(u[i]);
        if (u[i] > 0.0) dplus += pk.abs_pow(u[i]);
    }
    e.hardy = hardy * mesh.cell_volume;
    e.dplus = dplus * mesh.cell_volume;
    e.total = params.a_loc * e.local + params.a_nl * e.nonlocal - params.mu * e.hardy - d * e.dplus;
    return e;
}

EnergyBreakdown j_d_and_grad(const Field& u, double d, const Mesh& mesh,
                             const OperatorParams& params, Field& grad) {
    PPower pk(params.p);
    EnergyBreakdown e;
    grad.assign(u.size(), 0.0);
    if (params.a_nl != 0.0) {
        e.nonlocal = nonlocal_energy_grad_impl(u, mesh, pk, grad, params.a_nl);
    }
    if (params.a_loc != 0.0) {
        e.local = local_energy_impl(u, mesh, pk);
        if (params.a_loc == 1.0) {
            local_grad_accum(u, mesh, pk, grad);
        } else {
            Field tmp(u.size(), 0.0);
            local_grad_accum(u, mesh, pk, tmp);
            for (std::size_t i = 0; i < u.size(); ++i) grad[i] += params.a_loc * tmp[i];
        }
    }
    double hardy = 0.0, dplus = 0.0;
    for (int i = 0; i < mesh.size(); ++i) {
        hardy += mesh.hardy_weights[i] * pk.abs_pow(u[i]);
        grad[i] -= params.mu * mesh.hardy_weights[i] * pk.f(u[i]);
        if (u[i] > 0.0) {
            dplus += pk.abs_pow(u[i]);
            grad[i] -= d * pk.abs_pow(u[i]) / u[i];  // (u_i^+)^{p-1}
        }
    }
    e.hardy = hardy * mesh.cell_volume;
    e.dplus = dplus * mesh.cell_volume;
    e.total = params.a_loc * e.local + params.a_nl * e.nonlocal - params.mu * e.hardy - d * e.dplus;
    return e;
}

Field grad_j_d(const Field& u, double d, const Mesh& mesh, const OperatorParams& params) {
    Field g;
    j_d_and_grad(u, d, mesh, params, g);
    return g;
}

double rayleigh(const Field& u, const Mesh& mesh, const OperatorParams& params) {
    double denom = lp_norm_p(u, params.p, mesh.cell_volume);
    if (!(denom > 0.0)) throw std::invalid_argument("rayleigh: zero field");
    return j_d(u, 0.0, mesh, params).total / denom;
}

double check_discrete_picone(const Field& u, const Field& v, const Mesh& mesh, double p) {
    const int M = mesh.size();
    PPower pk(p);
    for (int i = 0; i < M; ++i) {
        if (u[i] < 0.0) throw std::invalid_argument("check_discrete_picone: u must be >= 0");
        if (v[i] <= 0.0) throw std::invalid_argument("check_discrete_picone: v must be > 0");
    }
    std::vector<double> ratio(M);  // u_i^p / v_i^{p-1}
    for (int i = 0; i < M; ++i) ratio[i] = pk.abs_pow(u[i]) / (pk.abs_pow(v[i]) / v[i]);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            if (i == j) continue;
            double L = pk.abs_pow(u[i] - u[j]) - pk.f(v[i] - v[j]) * (ratio[i] - ratio[j]);
            best = std::min(best, L);
        }
    }
    return best;
}

double sigma_path_energy_check(const Field& u, const Field& v, const Mesh& mesh, double p,
                               const std::vector<double>& t_grid) {
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] < 0.0 || v[i] < 0.0)
            throw std::invalid_argument("sigma_path_energy_check: inputs must be nonnegative");
    PPower pk(p);
    const double eu = nonlocal_energy(u, mesh, p);
    const double ev = nonlocal_energy(v, mesh, p);
    double worst = -std::numeric_limits<double>::infinity();
    Field sigma(u.size());
    for (double t : t_grid) {
        for (std::size_t i = 0; i < u.size(); ++i)
            sigma[i] = std::pow((1.0 - t) * pk.abs_pow(v[i]) + t * pk.abs_pow(u[i]), 1.0 / p);
        worst = std::max(worst, nonlocal_energy(sigma, mesh, p) - ((1.0 - t) * ev + t * eu));
    }
    return worst;
}

}  // namespace mixedp
