#include "mixedp/fucik.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mixedp/eigensolver.hpp"
#include "mixedp/util.hpp"

namespace mixedp {

void PathOptions::validate() const {
    if (points < 5) throw std::invalid_argument("path: need at least 5 path points");
    if (max_sweeps <= 0) throw std::invalid_argument("path: max_sweeps must be positive");
    if (!(tol_defect > 0.0)) throw std::invalid_argument("path: tol_defect must be positive");
    if (!(perturb > 0.0)) throw std::invalid_argument("path: perturbation must be positive");
    if (seeds < 1) throw std::invalid_argument("path: need at least one seed");
    if (reparam_every < 1) throw std::invalid_argument("path: reparam_every must be positive");
}

double verify_fucik_point(double alpha, double beta, const Field& u, const Mesh& mesh,
                          const OperatorParams& params) {
    Field g = grad_j_d(u, 0.0, mesh, params);
    PPower pk(params.p);
    double worst = 0.0;
    for (int i = 0; i < mesh.size(); ++i) {
        double up = u[i] > 0.0 ? pk.abs_pow(u[i]) / u[i] : 0.0;    // (u+)^{p-1}
        double um = u[i] < 0.0 ? pk.abs_pow(u[i]) / (-u[i]) : 0.0;  // (u-)^{p-1}
        worst = std::max(worst, std::abs(g[i] - alpha * up + beta * um));
    }
    return worst;
}

Field path_family(const Field& u, int which, double t, const Mesh& mesh, double p) {
    Field up = positive_part(u), um = negative_part(u);
    if (!(lp_norm_p(up, p, mesh.cell_volume) > 0.0) || !(lp_norm_p(um, p, mesh.cell_volume) > 0.0))
        throw std::invalid_argument("path_family: u must change sign");
    Field v(u.size());
    PPower pk(p);
    switch (which) {
        case 1:
            for (std::size_t i = 0; i < u.size(); ++i) v[i] = up[i] - (1.0 - t) * um[i];
            break;
        case 2:
            for (std::size_t i = 0; i < u.size(); ++i)
                v[i] = std::pow((1.0 - t) * pk.abs_pow(up[i]) + t * pk.abs_pow(um[i]), 1.0 / p);
            break;
        case 3:
            for (std::size_t i = 0; i < u.size(); ++i) v[i] = t * up[i] - um[i];
            break;
        default: throw std::invalid_argument("path_family: which must be 1, 2 or 3");
    }
    return normalized(v, p, mesh.cell_volume);
}

TrivialLines trivial_lines(double lambda1, const std::vector<double>& d_grid) {
    TrivialLines out;
    for (double d : d_grid) {
        if (d < 0.0) throw std::invalid_argument("trivial_lines: d must be nonnegative");
        out.vertical.push_back({lambda1, lambda1 - d});
        out.horizontal.push_back({lambda1 + d, lambda1});
    }
    return out;
}

namespace {

// state of one discretized path during relaxation
struct StringWork {
    std::vector<Field> pts;
    std::vector<double> level;   // J_d per point
    std::vector<double> alpha;   // per-point step size
    std::vector<int> cooldown;   // sweeps to skip after a stalled backtrack
    std::vector<Field> prev_u, prev_gt;
    int n = 0;
};

Field lp_interp(const Field& a, const Field& b, double w) {
    Field v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = (1.0 - w) * a[i] + w * b[i];
    return v;
}

void reset_history(StringWork& w) {
    for (auto& f : w.prev_u) f.clear();
    for (auto& f : w.prev_gt) f.clear();
}

// equal L^p arc length between the two fixed indices; interior points are
// linearly interpolated in field space and renormalized
void redistribute(StringWork& w, int lo, int hi, double p, double vol, double collapse_tol) {
    const int n = hi - lo;
    if (n < 2) return;
    std::vector<double> len(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        Field d(w.pts[lo].size());
        for (std::size_t k = 0; k < d.size(); ++k)
            d[k] = w.pts[lo + i][k] - w.pts[lo + i - 1][k];
        len[i] = len[i - 1] + lp_norm(d, p, vol);
    }
    if (len[n] < collapse_tol)
        throw std::runtime_error("mountain_pass_level: path collapsed; increase path points");
    std::vector<Field> fresh(n - 1);
    int seg = 1;
    for (int k = 1; k < n; ++k) {
        double target = len[n] * k / n;
        while (seg < n && len[seg] < target) ++seg;
        double w01 = (target - len[seg - 1]) / std::max(len[seg] - len[seg - 1], 1e-300);
        fresh[k - 1] = normalized(lp_interp(w.pts[lo + seg - 1], w.pts[lo + seg], w01), p, vol);
    }
    for (int k = 1; k < n; ++k) w.pts[lo + k] = std::move(fresh[k - 1]);
}

PathState relax_one(double d, const Mesh& mesh, const OperatorParams& params, const Field& phi1,
                    const PathOptions& opts, std::uint64_t seed, int seed_index) {
    const int n = opts.points;
    const int M = mesh.size();
    const double p = params.p;
    const double vol = mesh.cell_volume;
    PPower pk(p);

    Field e0 = phi1, e1 = phi1;
    for (double& v : e0) v = -v;
    if (opts.reversed) std::swap(e0, e1);

    StringWork w;
    w.n = n;
    w.pts.resize(n);
    w.level.assign(n, 0.0);
    w.alpha.assign(n, opts.step0);
    w.cooldown.assign(n, 0);
    w.prev_u.resize(n);
    w.prev_gt.resize(n);
    w.pts[0] = e0;
    w.pts[n - 1] = e1;

    if (opts.midpoint_hint && seed_index == 0) {
        // route the initial path through the supplied interior anchor
        Field mid = normalized(*opts.midpoint_hint, p, vol);
        for (int i = 1; i < n - 1; ++i) {
            double t = static_cast<double>(i) / (n - 1);
            Field raw = t <= 0.5 ? lp_interp(e0, mid, 2.0 * t) : lp_interp(mid, e1, 2.0 * t - 1.0);
            w.pts[i] = normalized(raw, p, vol);
        }
    } else {
        // straight interpolation plus a perpendicular midpoint bump
        Field zeta(M);
        if (seed_index == 0 || (opts.midpoint_hint && seed_index == 1)) {
            // deterministic sign-odd profile along the longest mesh extent
            double cx = 0.0, cy = 0.0;
            for (const auto& nd : mesh.nodes) { cx += nd[0]; cy += nd[1]; }
            cx /= M; cy /= M;
            double ex = 0.0, ey = 0.0;
            for (const auto& nd : mesh.nodes) {
                ex = std::max(ex, std::abs(nd[0] - cx));
                ey = std::max(ey, std::abs(nd[1] - cy));
            }
            const bool use_x = ex >= ey;
            for (int i = 0; i < M; ++i)
                zeta[i] = use_x ? mesh.nodes[i][0] - cx : mesh.nodes[i][1] - cy;
        } else {
            Rng rng(seed);
            for (int i = 0; i < M; ++i) zeta[i] = rng.uniform(-1.0, 1.0);
        }
        double proj = l2_dot(zeta, phi1, vol) / l2_dot(phi1, phi1, vol);
        for (int i = 0; i < M; ++i) zeta[i] -= proj * phi1[i];
        zeta = normalized(zeta, p, vol);
        for (int i = 1; i < n - 1; ++i) {
            double t = static_cast<double>(i) / (n - 1);
            Field raw = lp_interp(e0, e1, t);
            double bump = opts.perturb * std::sin(M_PI * t);
            for (int k = 0; k < M; ++k) raw[k] += bump * zeta[k];
            w.pts[i] = normalized(raw, p, vol);
        }
    }

    // With g = grad J_d, the Fucik defect at (d + t, t) collapses to
    // |g - t F(u)|: the d-term is already inside the gradient.
    auto fucik_defect = [&](const Field& u, const Field& g, double t) {
        double worst = 0.0;
        for (int i = 0; i < M; ++i)
            worst = std::max(worst, std::abs(g[i] - t * pk.f(u[i])));
        return worst;
    };

    // Saddle polish: freeze the path tangent and iterate only this point
    // with the reflected-gradient force until the defect meets tolerance.
    auto polish_saddle = [&](Field& u, const Field& tau_fixed, double& level_out) {
        Field tloc = tau_fixed;
        double tn = l2_dot(tloc, tloc, vol);
        if (!(tn > 0.0)) return false;
        for (double& v : tloc) v /= std::sqrt(tn);
        Field gg(M), dir(M), trial(M), u_prev, dir_prev;
        double step = opts.step0;
        EnergyBreakdown eb = j_d_and_grad(u, d, mesh, params, gg);
        double def_now = fucik_defect(u, gg, eb.total);
        for (int it = 0; it < 4000; ++it) {
            if (def_now <= opts.tol_defect) {
                level_out = eb.total;
                return true;
            }
            for (int k = 0; k < M; ++k) dir[k] = gg[k] - eb.total * pk.f(u[k]);
            double c = 2.0 * l2_dot(dir, tloc, vol);  // tloc is L2-normalized
            for (int k = 0; k < M; ++k) dir[k] -= c * tloc[k] / vol;
            if (!u_prev.empty()) {
                double num = 0.0, den = 0.0;
                for (int k = 0; k < M; ++k) {
                    double du = u[k] - u_prev[k];
                    double dd = dir[k] - dir_prev[k];
                    num += du * du;
                    den += du * dd;
                }
                if (num > 0.0 && std::abs(den) > 0.0)
                    step = std::clamp(num / std::abs(den), 1e-14, 1e10);
            }
            u_prev = u;
            dir_prev = dir;
            bool ok = false;
            for (int bt = 0; bt < 30; ++bt) {
                for (int k = 0; k < M; ++k) trial[k] = u[k] - step * dir[k];
                double nrm = lp_norm(trial, p, vol);
                if (nrm > 0.0) {
                    double inv = 1.0 / nrm;
                    for (double& v : trial) v *= inv;
                    Field gtr(M);
                    EnergyBreakdown et = j_d_and_grad(trial, d, mesh, params, gtr);
                    double deft = fucik_defect(trial, gtr, et.total);
                    if (deft < def_now) {
                        u = trial;
                        gg = gtr;
                        eb = et;
                        def_now = deft;
                        ok = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if (!ok) break;
        }
        level_out = eb.total;
        return def_now <= opts.tol_defect;
    };

    PathState out;
    Field g(M), gt(M), trial(M), tau(M);
    bool climbing = false;
    int climb_idx = -1;
    double last_level = std::numeric_limits<double>::infinity();
    int stable = 0;

    int sweep = 1;
    for (; sweep <= opts.max_sweeps; ++sweep) {
        // refresh which interior point carries the maximum
        double level = -std::numeric_limits<double>::infinity();
        int maxi = 1;
        for (int i = 1; i < n - 1; ++i) {
            w.level[i] = j_d(w.pts[i], d, mesh, params).total;
            if (w.level[i] > level) { level = w.level[i]; maxi = i; }
        }
        if (climbing) climb_idx = maxi;

        for (int i = 1; i < n - 1; ++i) {
            if (w.cooldown[i] > 0 && !(climbing && i == climb_idx)) {
                --w.cooldown[i];
                continue;
            }
            Field& u = w.pts[i];
            EnergyBreakdown eb = j_d_and_grad(u, d, mesh, params, g);
            double lam = eb.total;
            for (int k = 0; k < M; ++k) gt[k] = g[k] - lam * pk.f(u[k]);

            if (climbing && i == climb_idx) {
                // reverse the tangential force so the point ascends the path
                for (int k = 0; k < M; ++k) tau[k] = w.pts[i + 1][k] - w.pts[i - 1][k];
                double tn = l2_dot(tau, tau, vol);
                if (tn > 0.0) {
                    double c = 2.0 * l2_dot(gt, tau, vol) / tn;
                    for (int k = 0; k < M; ++k) gt[k] -= c * tau[k];
                }
                double def0 = fucik_defect(u, g, lam);
                bool ok = false;
                for (int bt = 0; bt < 25; ++bt) {
                    for (int k = 0; k < M; ++k) trial[k] = u[k] - w.alpha[i] * gt[k];
                    trial = normalized(trial, p, vol);
                    Field gtrial;
                    EnergyBreakdown et = j_d_and_grad(trial, d, mesh, params, gtrial);
                    double deft = fucik_defect(trial, gtrial, et.total);
                    if (deft <= def0) {
                        u = trial;
                        w.level[i] = et.total;
                        ok = true;
                        break;
                    }
                    w.alpha[i] *= 0.5;
                }
                if (ok) w.alpha[i] *= 1.5;
                continue;
            }

            // Barzilai-Borwein trial step, then Armijo backtracking
            if (!w.prev_u[i].empty()) {
                double num = 0.0, den = 0.0;
                for (int k = 0; k < M; ++k) {
                    double du = u[k] - w.prev_u[i][k];
                    double dg = gt[k] - w.prev_gt[i][k];
                    num += du * du;
                    den += du * dg;
                }
                if (den > 0.0 && num > 0.0) w.alpha[i] = std::clamp(num / den, 1e-14, 1e10);
            }
            double gnorm2 = l2_dot(gt, gt, vol);
            w.prev_u[i] = u;
            w.prev_gt[i] = gt;
            bool moved = false;
            for (int bt = 0; bt < 12; ++bt) {
                for (int k = 0; k < M; ++k) trial[k] = u[k] - w.alpha[i] * gt[k];
                double nrm = lp_norm(trial, p, vol);
                if (nrm > 0.0) {
                    double inv = 1.0 / nrm;
                    for (double& v : trial) v *= inv;
                    double lt = j_d(trial, d, mesh, params).total;
                    if (lt <= lam - 1e-4 * w.alpha[i] * gnorm2) {
                        u = trial;
                        w.level[i] = lt;
                        moved = true;
                        break;
                    }
                }
                w.alpha[i] *= 0.5;
            }
            if (!moved) w.cooldown[i] = 8;  // stalled at the energy floor
        }

        // convergence: Fucik defect of the maximal point
        level = -std::numeric_limits<double>::infinity();
        for (int i = 1; i < n - 1; ++i)
            if (w.level[i] > level) { level = w.level[i]; maxi = i; }
        EnergyBreakdown em = j_d_and_grad(w.pts[maxi], d, mesh, params, g);
        double defect = fucik_defect(w.pts[maxi], g, em.total);
        out.level = em.total;
        out.max_index = maxi;
        out.defect = defect;
        if (defect <= opts.tol_defect) {
            out.converged = true;
            break;
        }

        if (std::abs(em.total - last_level) <= 1e-6 * std::abs(em.total)) ++stable;
        else stable = 0;
        last_level = em.total;
        if (opts.climb && !climbing && (stable >= 10 || sweep >= opts.max_sweeps / 3)) {
            climbing = true;
            climb_idx = maxi;
        }
        if (climbing && (stable >= 20 || sweep % 100 == 0)) {
            // frozen-tangent polish of the maximal point
            for (int k = 0; k < M; ++k)
                tau[k] = w.pts[maxi + 1][k] - w.pts[maxi - 1][k];
            Field cand = w.pts[maxi];
            double lvl = 0.0;
            if (polish_saddle(cand, tau, lvl)) {
                w.pts[maxi] = cand;
                EnergyBreakdown ep = j_d_and_grad(cand, d, mesh, params, g);
                out.level = ep.total;
                out.max_index = maxi;
                out.defect = fucik_defect(cand, g, ep.total);
                out.converged = out.defect <= opts.tol_defect;
                if (out.converged) break;
            }
        }

        if (sweep % opts.reparam_every == 0) {
            if (climbing) {
                redistribute(w, 0, climb_idx, p, vol, opts.collapse_tol);
                redistribute(w, climb_idx, n - 1, p, vol, opts.collapse_tol);
            } else {
                redistribute(w, 0, n - 1, p, vol, opts.collapse_tol);
            }
            reset_history(w);
            std::fill(w.cooldown.begin(), w.cooldown.end(), 0);
        }
    }

    out.points = std::move(w.pts);
    out.sweeps = std::min(sweep, opts.max_sweeps);
    return out;
}

}  // namespace

PathState mountain_pass_level(double d, const Mesh& mesh, const OperatorParams& params,
                              const Field& phi1, const PathOptions& opts) {
    opts.validate();
    if (d < 0.0) throw std::invalid_argument("mountain_pass_level: d must be nonnegative");

    PathState best;
    bool have = false;
    for (int sidx = 0; sidx < opts.seeds; ++sidx) {
        PathState st = relax_one(d, mesh, params, phi1, opts, opts.seed + 977 * sidx, sidx);
        bool better = !have || (st.converged && !best.converged) ||
                      (st.converged == best.converged && st.level < best.level);
        if (better) { best = std::move(st); have = true; }
    }
    return best;
}

FucikCurve fucik_curve(const std::vector<double>& d_grid, const Mesh& mesh,
                       const OperatorParams& params, const SolveOptions& opts,
                       const PathOptions& path_opts) {
    for (std::size_t i = 0; i + 1 < d_grid.size(); ++i)
        if (d_grid[i] > d_grid[i + 1])
            throw std::invalid_argument("fucik_curve: d_grid must be sorted ascending");
    if (!d_grid.empty() && d_grid.front() < 0.0)
        throw std::invalid_argument("fucik_curve: d must be nonnegative");

    EigenResult first = solve_first_eigenpair(mesh, params, opts);
    FucikCurve curve;
    curve.lambda1 = first.lambda;
    curve.solver_tol = 1e-3 * std::abs(first.lambda);

    for (double d : d_grid) {
        FucikPoint pt;
        pt.d = d;
        try {
            PathState st = mountain_pass_level(d, mesh, params, first.phi, path_opts);
            pt.c = st.level;
            pt.alpha = d + st.level;
            pt.beta = st.level;
            pt.residual = st.defect;
            pt.converged = st.converged;
        } catch (const std::exception&) {
            pt.c = std::numeric_limits<double>::quiet_NaN();
            pt.alpha = pt.beta = pt.c;
            pt.residual = std::numeric_limits<double>::quiet_NaN();
            pt.converged = false;
        }
        curve.points.push_back(pt);
        FucikPoint refl = pt;
        std::swap(refl.alpha, refl.beta);
        curve.reflected.push_back(refl);
    }

    for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
        const FucikPoint& a = curve.points[i];
        const FucikPoint& b = curve.points[i + 1];
        if (!a.converged || !b.converged) continue;
        if (b.c > a.c + curve.solver_tol) curve.monotone_c = false;
        if (b.alpha < a.alpha - curve.solver_tol) curve.monotone_alpha = false;
        if (std::abs(a.c - b.c) > (b.d - a.d) + 2.0 * curve.solver_tol) curve.lipschitz_ok = false;
    }
    return curve;
}

}  // namespace mixedp
