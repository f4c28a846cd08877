#pragma once

#include <string>
#include <vector>

#include "mixedp/eigensolver.hpp"
#include "mixedp/fucik.hpp"
#include "mixedp/mesh.hpp"
#include "mixedp/params.hpp"
#include "mixedp/shape.hpp"

namespace mixedp {

struct ExperimentRow {
    std::string label;
    double volume = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;  // NaN when not computed
    double residual = 0.0;
    bool converged = false;
    double extra = 0.0;  // subcommand-specific value (separation, margin, ...)
};

struct ExperimentReport {
    std::string claim;
    std::vector<ExperimentRow> rows;
    bool verdict = false;
    double margin = 0.0;
    double tolerance = 0.0;
};

// Solves lambda_1 on every shape (volumes must match the target within 2%)
// and checks that the disk attains the minimum. Raw eigenvalues are
// compared; the volume mismatch is reported, not corrected.
ExperimentReport faber_krahn_experiment(double volume, const std::vector<ShapeSpec>& shapes,
                                        const OperatorParams& params, const SolveOptions& opts);

// A disk of approximately the target discrete volume: the radius is
// calibrated so that the counted-cell volume lands within the tolerance.
ShapeSpec calibrated_disk(double target_volume, int resolution,
                          const std::array<double, 2>& center = {0.0, 0.0});

// lambda_1(inner) - lambda_1(outer); requires matched h and the inner node
// set to be contained in the outer one.
double domain_monotonicity_check(const ShapeSpec& inner, const ShapeSpec& outer,
                                 const OperatorParams& params, const SolveOptions& opts);

// Two balls of radius r at each separation: checks lambda_2(union) >
// lambda_1(single ball) and the decay toward it as the balls move apart.
ExperimentReport hong_krahn_szego_experiment(double r, const std::vector<double>& separations,
                                             int resolution, const OperatorParams& params,
                                             const SolveOptions& opts, const PathOptions& path_opts);

struct NodalBoundCheck {
    double lambda = 0.0;
    double lambda_plus = 0.0, lambda_minus = 0.0;
    bool skipped_plus = false, skipped_minus = false;
    bool holds = false;
    double margin = 0.0;
};

// lambda > max{lambda_1(Omega+), lambda_1(Omega-)} on the nodal sub-meshes
// of a sign-changing eigenfunction.
NodalBoundCheck nodal_domain_bound_check(double lambda, const Field& phi, const Mesh& mesh,
                                         const OperatorParams& params, const SolveOptions& opts);

}  // namespace mixedp
