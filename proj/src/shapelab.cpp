#include "mixedp/shapelab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mixedp {

namespace {
constexpr double kVolumeTol = 0.02;
const double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

ShapeSpec calibrated_disk(double target_volume, int resolution,
                          const std::array<double, 2>& center) {
    double r = std::sqrt(target_volume / M_PI);
    ShapeSpec spec = ShapeSpec::make_disk(center[0], center[1], r, resolution);
    for (int iter = 0; iter < 40; ++iter) {
        // count cells only; full weight assembly is not needed here
        double h = spec.min_extent() / spec.resolution;
        auto bb = spec.bounding_box();
        int nx = static_cast<int>(std::ceil((bb[1] - bb[0]) / h - 1e-9));
        int ny = static_cast<int>(std::ceil((bb[3] - bb[2]) / h - 1e-9));
        int count = 0;
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                double x0 = bb[0] + ix * h, y0 = bb[2] + iy * h;
                const double r2 = spec.radius * spec.radius * (1.0 - 1e-12);
                bool inside = true;
                for (int k = 0; k < 4 && inside; ++k) {
                    double cx = x0 + (k & 1 ? h : 0.0) - spec.center[0];
                    double cy = y0 + (k & 2 ? h : 0.0) - spec.center[1];
                    inside = cx * cx + cy * cy <= r2;
                }
                count += inside;
            }
        double vol = count * h * h;
        if (std::abs(vol - target_volume) <= 0.5 * kVolumeTol * target_volume) break;
        spec.radius *= std::pow(target_volume / std::max(vol, 1e-12), 0.5);
    }
    return spec;
}

ExperimentReport faber_krahn_experiment(double volume, const std::vector<ShapeSpec>& shapes,
                                        const OperatorParams& params, const SolveOptions& opts) {
    ExperimentReport report;
    report.claim = "lambda1(disk) minimal among equal-volume shapes";
    report.tolerance = 2.0 * opts.tol_residual;

    double disk_lambda = kNaN;
    double best_other = std::numeric_limits<double>::infinity();
    for (const ShapeSpec& spec : shapes) {
        Mesh mesh = build_mesh(spec, params);
        if (std::abs(mesh.volume - volume) > kVolumeTol * volume)
            throw std::invalid_argument("faber_krahn: shape volume " + std::to_string(mesh.volume) +
                                        " deviates more than 2% from the target");
        EigenResult eig = solve_first_eigenpair(mesh, params, opts);
        ExperimentRow row;
        row.label = spec.describe();
        row.volume = mesh.volume;
        row.lambda1 = eig.lambda;
        row.lambda2 = kNaN;
        row.residual = eig.residual;
        row.converged = eig.converged;
        report.rows.push_back(row);
        if (spec.kind == ShapeSpec::Kind::disk) disk_lambda = eig.lambda;
        else best_other = std::min(best_other, eig.lambda);
    }
    if (std::isnan(disk_lambda)) throw std::invalid_argument("faber_krahn: no disk among shapes");
    if (report.rows.size() == 1) {
        report.verdict = true;  // vacuous with a single shape
        report.margin = 0.0;
    } else {
        report.margin = best_other - disk_lambda;
        report.verdict = report.margin > report.tolerance;
    }
    return report;
}

double domain_monotonicity_check(const ShapeSpec& inner, const ShapeSpec& outer,
                                 const OperatorParams& params, const SolveOptions& opts) {
    Mesh mi = build_mesh(inner, params);
    Mesh mo = build_mesh(outer, params);
    if (std::abs(mi.h - mo.h) > 1e-9 * mi.h)
        throw std::invalid_argument("domain_monotonicity: meshes must share the cell size");
    // node-set containment at matched h
    const double tol = 1e-6 * mi.h;
    for (const auto& nd : mi.nodes) {
        bool found = false;
        for (const auto& on : mo.nodes) {
            if (std::abs(nd[0] - on[0]) < tol && std::abs(nd[1] - on[1]) < tol) {
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument(
                "domain_monotonicity: inner node set is not contained in the outer one");
    }
    EigenResult ei = solve_first_eigenpair(mi, params, opts);
    EigenResult eo = solve_first_eigenpair(mo, params, opts);
    return ei.lambda - eo.lambda;
}

ExperimentReport hong_krahn_szego_experiment(double r, const std::vector<double>& separations,
                                             int resolution, const OperatorParams& params,
                                             const SolveOptions& opts,
                                             const PathOptions& path_opts) {
    for (std::size_t i = 0; i + 1 < separations.size(); ++i)
        if (separations[i] > separations[i + 1])
            throw std::invalid_argument("hong_krahn_szego: separations must ascend");
    for (double sep : separations)
        if (!(sep > 2.0 * r))
            throw std::invalid_argument("hong_krahn_szego: balls must be disjoint (sep > 2r)");

    ExperimentReport report;
    report.claim = "lambda2(two balls) > lambda1(one ball), approaching it";
    report.tolerance = 2.0 * opts.tol_residual;

    const int dim = params.N;
    ShapeSpec ball = dim == 1
                         ? ShapeSpec::make_interval(-r, r, resolution)
                         : ShapeSpec::make_disk(0.0, 0.0, r, resolution);
    Mesh ball_mesh = build_mesh(ball, params);
    EigenResult ball_eig = solve_first_eigenpair(ball_mesh, params, opts);
    {
        ExperimentRow row;
        row.label = "single:" + ball.describe();
        row.volume = ball_mesh.volume;
        row.lambda1 = ball_eig.lambda;
        row.lambda2 = kNaN;
        row.residual = ball_eig.residual;
        row.converged = ball_eig.converged;
        report.rows.push_back(row);
    }

    report.verdict = true;
    double prev_lambda2 = std::numeric_limits<double>::infinity();
    for (double sep : separations) {
        ShapeSpec two = ShapeSpec::make_two_disks({-0.5 * sep, 0.0}, {0.5 * sep, 0.0}, r,
                                                  resolution, dim);
        Mesh mesh = build_mesh(two, params);
        EigenResult first = solve_first_eigenpair(mesh, params, opts);

        // route the initial path through the sign-split of the ground state:
        // for far balls that is already close to the saddle
        PathOptions popts = path_opts;
        Field hint = first.phi;
        double mid = 0.5 * (two.center[0] + two.center2[0]);
        for (int i = 0; i < mesh.size(); ++i)
            if (mesh.nodes[i][0] > mid) hint[i] = -hint[i];
        popts.midpoint_hint = hint;

        PathState path = mountain_pass_level(0.0, mesh, params, first.phi, popts);
        double lambda2 = path.level;

        ExperimentRow row;
        row.label = two.describe();
        row.volume = mesh.volume;
        row.lambda1 = first.lambda;
        row.lambda2 = lambda2;
        row.residual = path.defect;
        row.converged = path.converged && first.converged;
        row.extra = sep;
        report.rows.push_back(row);

        if (!(lambda2 - ball_eig.lambda > -report.tolerance)) report.verdict = false;
        if (lambda2 > prev_lambda2 + report.tolerance + 1e-3 * std::abs(lambda2))
            report.verdict = false;  // sequence must not increase
        prev_lambda2 = lambda2;
    }
    report.margin = prev_lambda2 - ball_eig.lambda;  // margin at the largest separation
    return report;
}

NodalBoundCheck nodal_domain_bound_check(double lambda, const Field& phi, const Mesh& mesh,
                                         const OperatorParams& params, const SolveOptions& opts) {
    Field up = positive_part(phi), um = negative_part(phi);
    if (!(lp_norm_p(up, params.p, mesh.cell_volume) > 0.0) ||
        !(lp_norm_p(um, params.p, mesh.cell_volume) > 0.0))
        throw std::invalid_argument("nodal_domain_bound_check: phi must change sign");

    NodalBoundCheck out;
    out.lambda = lambda;
    NodalEigenvalues ne = nodal_first_eigenvalues(phi, mesh, params, opts);
    out.lambda_plus = ne.lambda_plus;
    out.lambda_minus = ne.lambda_minus;
    out.skipped_plus = ne.skipped_plus;
    out.skipped_minus = ne.skipped_minus;
    double worst = std::max(ne.skipped_plus ? -std::numeric_limits<double>::infinity()
                                            : ne.lambda_plus,
                            ne.skipped_minus ? -std::numeric_limits<double>::infinity()
                                             : ne.lambda_minus);
    out.margin = lambda - worst;
    out.holds = out.margin > 0.0;
    return out;
}

}  // namespace mixedp
