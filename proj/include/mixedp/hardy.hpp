#pragma once

#include "mixedp/field.hpp"
#include "mixedp/mesh.hpp"
#include "mixedp/params.hpp"

namespace mixedp {

// ((N-p)/p)^p, the sharp constant of the classical Hardy inequality.
// Requires 1 < p < N.
double classical_hardy_constant(int N, double p);

// Kernel of the fractional Hardy constant. For N = 1 this is
// (1-r)^{-1-ps} + (1+r)^{-1-ps}; for N >= 2 the angular integral
// |S^{N-2}| int_{-1}^{1} (1-t^2)^{(N-3)/2} (1-2rt+r^2)^{-(N+ps)/2} dt,
// evaluated after t = cos(phi), which removes the endpoint weight.
// r = 0 is admitted as the continuous extension; r >= 1 is rejected.
double psi_kernel(double r, int N, double s, double p);

// C_{N,p,s} = 2 int_0^1 r^{ps-1} |1 - r^{(N-ps)/p}|^p Psi(r) dr. The unit
// interval is integrated on panels graded dyadically toward both endpoints.
// Requires 1 < p, 0 < s < 1, ps < N.
double fractional_hardy_constant(int N, double p, double s);

// mu_0(theta): C_{N,p,s} at theta = s, ((N-p)/p)^p at theta = 1, and
// min{ C_H (1-s)/(theta-s), C_{N,p,s} (1-s)/(1-theta) } in between.
double mu_max(double theta, int N, double p, double s);

// Same piecewise formula with the two constants already in hand.
double mu_max(double theta, double s, double c_h, double c_nps);

struct HardyConstants {
    double c_h = 0.0;    // ((N-p)/p)^p; |N-p| is used so the N = 1 validation
                         // regime carries the vanishing-at-origin constant
    double c_nps = 0.0;  // fractional constant
    double xi = 0.0;     // (theta - s)/(1 - s)
    double mu0 = 0.0;    // mu_max(theta)

    static HardyConstants compute(const OperatorParams& params);
};

struct HardyCheck {
    double lhs = 0.0;    // discrete  int |u|^p |x|^{-p theta}
    double rhs = 0.0;    // weighted local + nonlocal energies
    double slack = 0.0;  // lhs - rhs
    bool holds = false;
    double tol_rel = 0.0;
};

// Discrete form of the mixed interpolated Hardy inequality. Advisory at
// relative tolerance tol_rel (default 1e-2): the discrete energies carry
// O(h) consistency error against the continuum statement.
HardyCheck check_interpolated_hardy(const Field& u, const Mesh& mesh, const OperatorParams& params,
                                    const HardyConstants& constants, double tol_rel = 1e-2);

}  // namespace mixedp
