#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mixedp/energy.hpp"
#include "mixedp/field.hpp"
#include "mixedp/mesh.hpp"
#include "mixedp/params.hpp"

namespace mixedp {

struct PathOptions {
    int points = 33;          // discretized path resolution
    int max_sweeps = 20000;
    double tol_defect = 1e-6;  // Fucik residual at the maximal point
    double perturb = 0.1;      // midpoint perturbation magnitude in L^p
    int seeds = 3;             // perturbation seeds; the minimum level wins
    bool climb = true;         // let the maximal point climb to the saddle
    int reparam_every = 5;     // sweeps between arc-length redistributions
    double step0 = 1e-2;
    std::uint64_t seed = 1;
    double collapse_tol = 1e-10;
    bool reversed = false;     // swap the fixed endpoints
    // optional interior anchor: the initial path is routed through it
    std::optional<Field> midpoint_hint;

    void validate() const;
};

struct PathState {
    std::vector<Field> points;  // on S; endpoints fixed at -phi1 and phi1
    double level = 0.0;         // max over points of J_d
    int max_index = 0;
    double defect = 0.0;        // Fucik residual at the maximal point
    bool converged = false;
    int sweeps = 0;
};

struct FucikPoint {
    double d = 0.0;
    double c = 0.0;      // level c(d)
    double alpha = 0.0;  // d + c
    double beta = 0.0;   // c
    double residual = 0.0;
    bool converged = false;
};

// String method for c(d) = inf over paths from -phi1 to phi1 of the maximal
// J_d value: per-point projected-gradient descent, renormalization to S and
// equal-arc-length reparametrization, followed by a climbing phase for the
// maximal point. Converged when the Fucik defect at the maximal point (with
// alpha = d + level, beta = level) falls below tolerance.
PathState mountain_pass_level(double d, const Mesh& mesh, const OperatorParams& params,
                              const Field& phi1, const PathOptions& opts);

// sup-norm defect of the discrete Fucik equation at (alpha, beta, u).
double verify_fucik_point(double alpha, double beta, const Field& u, const Mesh& mesh,
                          const OperatorParams& params);

// The three explicit paths used to walk around a sign-changing state:
//   1: (u+ - (1-t) u-) / ||.||      2: ((1-t)(u+)^p + t(u-)^p)^{1/p} / ||.||
//   3: (t u+ - u-) / ||.||
Field path_family(const Field& u, int which, double t, const Mesh& mesh, double p);

struct TrivialLines {
    std::vector<std::array<double, 2>> vertical;    // (lambda1, lambda1 - d)
    std::vector<std::array<double, 2>> horizontal;  // (lambda1 + d, lambda1)
};
TrivialLines trivial_lines(double lambda1, const std::vector<double>& d_grid);

struct FucikCurve {
    std::vector<FucikPoint> points;     // (d + c(d), c(d))
    std::vector<FucikPoint> reflected;  // (c(d), d + c(d))
    double lambda1 = 0.0;
    double solver_tol = 0.0;  // level tolerance used by the monotonicity checks
    bool monotone_c = true;       // c nonincreasing along the grid
    bool monotone_alpha = true;   // d + c(d) nondecreasing
    bool lipschitz_ok = true;     // |c(d_i) - c(d_{i+1})| <= delta d + 2 tol
};

// One mountain-pass solve per grid value plus the reflected points.
// Per-point solver failures are recorded in the rows, not thrown.
FucikCurve fucik_curve(const std::vector<double>& d_grid, const Mesh& mesh,
                       const OperatorParams& params, const SolveOptions& opts,
                       const PathOptions& path_opts);

}  // namespace mixedp
