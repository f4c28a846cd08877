#pragma once

#include <cstdint>

namespace mixedp {

// Scalar parameters of the mixed local/nonlocal p-Laplacian with the
// interpolated Hardy potential, plus the validation weights that switch the
// local and nonlocal energy terms on and off.
struct OperatorParams {
    int N = 1;           // spatial dimension of the formulas (1 or 2 for meshes)
    double p = 2.0;      // exponent, > 1
    double s = 0.5;      // fractional order in (0,1)
    double theta = 0.5;  // interpolation parameter in [s,1]
    double mu = 0.0;     // Hardy coefficient, >= 0
    double a_loc = 1.0;  // validation weight of the local term, in {0,1}
    double a_nl = 1.0;   // validation weight of the nonlocal term, in {0,1}

    // Throws std::invalid_argument on any violated invariant. mu > 0 is
    // admitted only when p*theta < N (origin-integrable weight), p*s < N
    // (the fractional Hardy constant exists) and mu < mu_max(theta).
    void validate() const;

    // True when a positive mu is permitted for these (N, p, s, theta).
    bool hardy_admissible() const;
};

// Options shared by all sphere-constrained descent solvers.
struct SolveOptions {
    double tol_residual = 1e-7;  // sup-norm Euler-Lagrange defect
    int max_iters = 50000;
    double step0 = 1e-2;     // initial step before the adaptive rule takes over
    double shrink = 0.5;     // backtracking shrink factor
    double armijo = 1e-4;    // Armijo constant
    std::uint64_t seed = 1;  // random positive initialization
    int restarts = 10;       // used by the simplicity diagnostics

    void validate() const;
};

}  // namespace mixedp
