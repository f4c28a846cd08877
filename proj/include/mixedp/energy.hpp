#pragma once

#include "mixedp/field.hpp"
#include "mixedp/mesh.hpp"
#include "mixedp/params.hpp"

namespace mixedp {

// The four additive terms of J_d, each stored unweighted; total applies the
// validation weights, the Hardy coefficient and the jumping parameter d.
struct EnergyBreakdown {
    double local = 0.0;     // int |grad u|^p  (face differences)
    double nonlocal = 0.0;  // Gagliardo seminorm, interior double sum + tail
    double hardy = 0.0;     // int |u|^p |x|^{-p theta}
    double dplus = 0.0;     // int (u+)^p
    double total = 0.0;     // a_loc*local + a_nl*nonlocal - mu*hardy - d*dplus
};

// Face-based one-sided differences with zero Dirichlet ghost values.
double local_energy(const Field& u, const Mesh& mesh, double p);

// Sum_{i != j} K_ij |u_i - u_j|^p + 2 sum_i w_i |u_i|^p vol. The tail term
// is the exact contribution of the zero exterior.
double nonlocal_energy(const Field& u, const Mesh& mesh, double p);

EnergyBreakdown j_d(const Field& u, double d, const Mesh& mesh, const OperatorParams& params);

// Gradient in the density convention: g_i = (1/p) dJ_d/du_i / cell_volume,
// so l2_dot(g, v) * p * cell_volume matches the directional derivative.
Field grad_j_d(const Field& u, double d, const Mesh& mesh, const OperatorParams& params);

// One fused pass for the solvers: breakdown of J_d plus its gradient.
EnergyBreakdown j_d_and_grad(const Field& u, double d, const Mesh& mesh,
                             const OperatorParams& params, Field& grad);

// J(u) / int |u|^p with J = J_0. Throws on a zero field.
double rayleigh(const Field& u, const Mesh& mesh, const OperatorParams& params);

// Minimum over node pairs of the discrete Picone expression
// |u_i-u_j|^p - F(v_i-v_j) (u_i^p/v_i^{p-1} - u_j^p/v_j^{p-1}).
// Requires u >= 0 and v > 0 entrywise.
double check_discrete_picone(const Field& u, const Field& v, const Mesh& mesh, double p);

// Worst violation (max over the grid of lhs - rhs) of
// [sigma_t]^p <= (1-t) [v]^p + t [u]^p  with sigma_t = ((1-t)v^p + t u^p)^{1/p}.
double sigma_path_energy_check(const Field& u, const Field& v, const Mesh& mesh, double p,
                               const std::vector<double>& t_grid);

}  // namespace mixedp
