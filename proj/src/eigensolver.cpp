#include "mixedp/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mixedp/fucik.hpp"
#include "mixedp/util.hpp"

namespace mixedp {

double euler_lagrange_residual(const Field& phi, double lambda, const Mesh& mesh,
                               const OperatorParams& params) {
    Field g = grad_j_d(phi, 0.0, mesh, params);
    PPower pk(params.p);
    double worst = 0.0;
    for (int i = 0; i < mesh.size(); ++i)
        worst = std::max(worst, std::abs(g[i] - lambda * pk.f(phi[i])));
    return worst;
}

EigenResult solve_first_eigenpair(const Mesh& mesh, const OperatorParams& params,
                                  const SolveOptions& opts, const std::optional<Field>& initial) {
    params.validate();
    opts.validate();
    const int M = mesh.size();
    PPower pk(params.p);

    Field u;
    if (initial) {
        if (static_cast<int>(initial->size()) != M)
            throw std::invalid_argument("solve_first_eigenpair: initial field size mismatch");
        u = *initial;
    } else {
        Rng rng(opts.seed);
        u.resize(M);
        for (double& v : u) v = rng.uniform(0.5, 1.5);
    }
    for (double& v : u) v = std::abs(v);
    u = normalized(u, params.p, mesh.cell_volume);

    Field g;
    EnergyBreakdown e = j_d_and_grad(u, 0.0, mesh, params, g);
    double lam = e.total;  // = rayleigh on the sphere

    auto defect = [&](const Field& uu, const Field& gg, double ll, Field& out) {
        out.resize(M);
        double worst = 0.0;
        for (int i = 0; i < M; ++i) {
            out[i] = gg[i] - ll * pk.f(uu[i]);
            worst = std::max(worst, std::abs(out[i]));
        }
        return worst;
    };

    Field gt, gt_prev, u_prev;
    double res = defect(u, g, lam, gt);

    EigenResult result;
    double alpha = opts.step0;
    int k = 0;
    for (; k < opts.max_iters; ++k) {
        if (res <= opts.tol_residual) {
            result.converged = true;
            break;
        }
        // Barzilai-Borwein trial step from the previous tangential defect
        if (!u_prev.empty()) {
            double num = 0.0, den = 0.0;
            for (int i = 0; i < M; ++i) {
                double du = u[i] - u_prev[i];
                double dg = gt[i] - gt_prev[i];
                num += du * du;
                den += du * dg;
            }
            if (den > 0.0 && num > 0.0) alpha = std::clamp(num / den, 1e-14, 1e10);
        }
        double gnorm2 = l2_dot(gt, gt, mesh.cell_volume);
        // Near the minimum the true energy decrease drops below the float
        // granularity of J, so the Armijo test cannot pass; any step inside
        // the 1e-12 monotone slack is then admissible and the bare
        // Barzilai-Borwein dynamics drive the residual the rest of the way.
        bool accepted = false;
        Field trial(M);
        EnergyBreakdown etrial;
        for (int bt = 0; bt < 60; ++bt) {
            for (int i = 0; i < M; ++i) trial[i] = std::abs(u[i] - alpha * gt[i]);
            double n = lp_norm(trial, params.p, mesh.cell_volume);
            if (n > 0.0) {
                double inv = 1.0 / n;
                for (double& v : trial) v *= inv;
                etrial = j_d(trial, 0.0, mesh, params);
                if (etrial.total <= lam - opts.armijo * alpha * gnorm2 ||
                    etrial.total <= lam + 1e-12) {
                    accepted = true;
                    break;
                }
            }
            alpha *= opts.shrink;
        }
        if (!accepted) {
            result.converged = res <= opts.tol_residual;
            break;
        }
        u_prev = u;
        gt_prev = gt;
        u = trial;
        e = j_d_and_grad(u, 0.0, mesh, params, g);
        lam = e.total;
        res = defect(u, g, lam, gt);
    }

    result.lambda = lam;
    result.phi = std::move(u);
    result.residual = res;
    result.iterations = k;
    result.energy = e;
    result.min_value = *std::min_element(result.phi.begin(), result.phi.end());
    return result;
}

NodalDomains nodal_domains(const Field& phi, const Mesh& mesh) {
    NodalDomains nd;
    const int M = mesh.size();
    nd.mask_pos.assign(M, 0);
    nd.mask_neg.assign(M, 0);
    for (int i = 0; i < M; ++i) {
        if (phi[i] > 0.0) nd.mask_pos[i] = 1;
        else if (phi[i] < 0.0) nd.mask_neg[i] = 1;
    }
    nd.components_pos = mesh.components(nd.mask_pos);
    nd.components_neg = mesh.components(nd.mask_neg);
    return nd;
}

NodalEigenvalues nodal_first_eigenvalues(const Field& phi, const Mesh& mesh,
                                         const OperatorParams& params, const SolveOptions& opts) {
    NodalDomains nd = nodal_domains(phi, mesh);
    NodalEigenvalues out;
    auto count = [](const std::vector<std::uint8_t>& m) {
        int c = 0;
        for (auto v : m) c += v;
        return c;
    };
    if (count(nd.mask_pos) < 2) {
        out.skipped_plus = true;
    } else {
        Mesh sub = build_submesh(mesh, nd.mask_pos);
        out.lambda_plus = solve_first_eigenpair(sub, params, opts).lambda;
    }
    if (count(nd.mask_neg) < 2) {
        out.skipped_minus = true;
    } else {
        Mesh sub = build_submesh(mesh, nd.mask_neg);
        out.lambda_minus = solve_first_eigenpair(sub, params, opts).lambda;
    }
    return out;
}

SecondEigenResult solve_second_eigenvalue(const Mesh& mesh, const OperatorParams& params,
                                          const SolveOptions& opts, const PathOptions& path_opts) {
    EigenResult first = solve_first_eigenpair(mesh, params, opts);
    if (!first.converged)
        throw std::runtime_error("solve_second_eigenvalue: first eigenpair did not converge");

    PathState path = mountain_pass_level(0.0, mesh, params, first.phi, path_opts);

    SecondEigenResult out;
    out.lambda1 = first.lambda;
    out.lambda2 = path.level;
    out.margin = path.level - first.lambda;
    out.psi = path.points[path.max_index];
    out.defect = path.defect;
    out.converged = path.converged;
    out.sweeps = path.sweeps;
    out.pos_mass = lp_norm_p(positive_part(out.psi), params.p, mesh.cell_volume);
    out.neg_mass = lp_norm_p(negative_part(out.psi), params.p, mesh.cell_volume);
    out.nodal = nodal_first_eigenvalues(out.psi, mesh, params, opts);
    double worst_nodal = std::max(out.nodal.skipped_plus ? 0.0 : out.nodal.lambda_plus,
                                  out.nodal.skipped_minus ? 0.0 : out.nodal.lambda_minus);
    out.nodal_margin = out.lambda2 - worst_nodal;
    return out;
}

}  // namespace mixedp
