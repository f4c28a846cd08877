#include "mixedp/params.hpp"

#include <stdexcept>
#include <string>

#include "mixedp/hardy.hpp"

namespace mixedp {

bool OperatorParams::hardy_admissible() const {
    return p * theta < static_cast<double>(N) && p * s < static_cast<double>(N);
}

void OperatorParams::validate() const {
    if (N != 1 && N != 2) throw std::invalid_argument("params: N must be 1 or 2");
    if (!(p > 1.0)) throw std::invalid_argument("params: p must exceed 1");
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("params: s must lie in (0,1)");
    if (!(theta >= s && theta <= 1.0))
        throw std::invalid_argument("params: theta must lie in [s,1]");
    if (mu < 0.0) throw std::invalid_argument("params: mu must be nonnegative");
    if ((a_loc != 0.0 && a_loc != 1.0) || (a_nl != 0.0 && a_nl != 1.0))
        throw std::invalid_argument("params: a_loc and a_nl must be 0 or 1");
    if (mu > 0.0) {
        if (!hardy_admissible())
            throw std::invalid_argument(
                "params: mu > 0 requires p*theta < N and p*s < N; set mu = 0 for this regime");
        double cap = mu_max(theta, N, p, s);
        if (!(mu < cap))
            throw std::invalid_argument("params: mu = " + std::to_string(mu) +
                                        " must be below mu_max(theta) = " + std::to_string(cap));
    }
}

void SolveOptions::validate() const {
    if (!(tol_residual > 0.0)) throw std::invalid_argument("solver: tol_residual must be positive");
    if (max_iters <= 0) throw std::invalid_argument("solver: max_iters must be positive");
    if (!(step0 > 0.0)) throw std::invalid_argument("solver: step0 must be positive");
    if (!(shrink > 0.0 && shrink < 1.0))
        throw std::invalid_argument("solver: shrink factor must lie in (0,1)");
    if (!(armijo > 0.0)) throw std::invalid_argument("solver: armijo constant must be positive");
    if (restarts < 1) throw std::invalid_argument("solver: restarts must be positive");
}

}  // namespace mixedp
