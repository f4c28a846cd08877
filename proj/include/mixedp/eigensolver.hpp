#pragma once

#include <cstdint>
#include <optional>

#include "mixedp/energy.hpp"
#include "mixedp/field.hpp"
#include "mixedp/mesh.hpp"
#include "mixedp/params.hpp"

namespace mixedp {

struct EigenResult {
    double lambda = 0.0;
    Field phi;               // normalized to int |phi|^p = 1
    double residual = 0.0;   // sup-norm Euler-Lagrange defect
    int iterations = 0;
    bool converged = false;
    double min_value = 0.0;  // min_i phi_i, for the strict positivity check
    EnergyBreakdown energy;
};

// Projected gradient descent of J on the L^p sphere with Armijo
// backtracking, Barzilai-Borwein trial steps and renormalization after every
// step. Iterates are replaced by their absolute value, which is itself a
// descent operation for J. Convergence is declared on the Euler-Lagrange
// residual. An explicit initial field overrides the seeded random start.
EigenResult solve_first_eigenpair(const Mesh& mesh, const OperatorParams& params,
                                  const SolveOptions& opts,
                                  const std::optional<Field>& initial = std::nullopt);

// sup_i |grad_J(phi)_i - lambda F(phi_i)|
double euler_lagrange_residual(const Field& phi, double lambda, const Mesh& mesh,
                               const OperatorParams& params);

struct NodalDomains {
    std::vector<std::uint8_t> mask_pos, mask_neg;
    int components_pos = 0, components_neg = 0;
};

// Connected components of {phi > 0} and {phi < 0} under grid adjacency.
NodalDomains nodal_domains(const Field& phi, const Mesh& mesh);

struct NodalEigenvalues {
    double lambda_plus = 0.0, lambda_minus = 0.0;
    bool skipped_plus = false, skipped_minus = false;  // nodal domain below 2 nodes
};

// First eigenvalue on each nodal sub-mesh of phi (complement treated as
// exterior). Used by the second-eigenvalue post-checks and by shapelab.
NodalEigenvalues nodal_first_eigenvalues(const Field& phi, const Mesh& mesh,
                                         const OperatorParams& params, const SolveOptions& opts);

struct PathOptions;  // fucik module

struct SecondEigenResult {
    double lambda2 = 0.0;
    double lambda1 = 0.0;
    double margin = 0.0;        // lambda2 - lambda1
    Field psi;                  // maximizing path point
    double defect = 0.0;        // Fucik residual at psi
    bool converged = false;
    int sweeps = 0;
    double pos_mass = 0.0;      // int (psi+)^p
    double neg_mass = 0.0;      // int (psi-)^p
    NodalEigenvalues nodal;     // lambda_1 on the nodal domains of psi
    double nodal_margin = 0.0;  // lambda2 - max nodal lambda_1
};

// Mountain-pass characterization of lambda_2: the d = 0 level of the string
// engine over paths from -phi_1 to phi_1, plus the sign-change and
// nodal-domain diagnostics.
SecondEigenResult solve_second_eigenvalue(const Mesh& mesh, const OperatorParams& params,
                                          const SolveOptions& opts, const PathOptions& path_opts);

}  // namespace mixedp
