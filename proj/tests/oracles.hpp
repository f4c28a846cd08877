// Test-only oracles, independent of the library's solver and quadrature
// paths: dense eigensolves of explicitly assembled quadratic forms and an
// adaptive-Simpson integrator.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mixedp/mesh.hpp"
#include "mixedp/params.hpp"

namespace oracles {

// Tridiagonal (1/h^2) tridiag(-1, 2, -1): the face-difference Dirichlet
// Laplacian on M midpoint cells with zero ghost values.
inline Eigen::MatrixXd local_laplacian_1d(int M, double h) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
    const double w = 1.0 / (h * h);
    for (int i = 0; i < M; ++i) {
        A(i, i) = 2.0 * w;
        if (i > 0) A(i, i - 1) = -w;
        if (i + 1 < M) A(i, i + 1) = -w;
    }
    return A;
}

// Closed-form eigenvalues of the matrix above.
inline double local_laplacian_1d_eig(int M, double h, int k) {
    double t = std::sin(0.5 * k * M_PI / (M + 1));
    return 4.0 / (h * h) * t * t;
}

// Full p = 2 operator matrix A with rayleigh(u) = u^T A u / u^T u and
// density gradient A u, assembled from the mesh weights.
inline Eigen::MatrixXd operator_matrix_p2(const mixedp::Mesh& mesh,
                                          const mixedp::OperatorParams& params) {
    if (params.p != 2.0) throw std::invalid_argument("operator_matrix_p2: p must be 2");
    const int M = mesh.size();
    const double vol = mesh.cell_volume;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
    if (params.a_loc != 0.0) {
        const double w = params.a_loc / (mesh.h * mesh.h);
        const int ndirs = mesh.dim == 1 ? 2 : 4;
        for (int i = 0; i < M; ++i) {
            for (int d = 0; d < ndirs; ++d) {
                int j = mesh.neighbors[i][d];
                A(i, i) += w;  // each face contributes to both sides; ghosts too
                if (j >= 0) A(i, j) -= w;
            }
        }
    }
    if (params.a_nl != 0.0) {
        for (int i = 0; i < M; ++i) {
            double rs = 0.0;
            for (int j = 0; j < M; ++j) {
                double k = mesh.kernel(i, j);
                rs += k;
                A(i, j) -= 2.0 * params.a_nl * k / vol;
            }
            A(i, i) += 2.0 * params.a_nl * (rs / vol + mesh.tail_weights[i]);
        }
    }
    for (int i = 0; i < M; ++i) A(i, i) -= params.mu * mesh.hardy_weights[i];
    return A;
}

// k-th smallest eigenvalue (k is 1-based) of the assembled p = 2 operator.
inline double dense_eigenvalue_p2(const mixedp::Mesh& mesh, const mixedp::OperatorParams& params,
                                  int k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(operator_matrix_p2(mesh, params));
    return es.eigenvalues()(k - 1);
}

inline Eigen::VectorXd dense_eigenvector_p2(const mixedp::Mesh& mesh,
                                            const mixedp::OperatorParams& params, int k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(operator_matrix_p2(mesh, params));
    return es.eigenvectors().col(k - 1);
}

// Recursive adaptive Simpson.
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 48 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

// Independent value of C_{N,p,s}: adaptive Simpson in both the angular and
// the radial variable, with the radial interval pre-split at r = 1 - 2^{-k}
// and r = 2^{-k}.
inline double fractional_hardy_oracle(int N, double p, double s, double tol = 1e-8) {
    const double e = N + p * s;
    auto psi = [&](double r) {
        if (N == 1) return std::pow(1.0 - r, -e) + std::pow(1.0 + r, -e);
        auto ang = [&](double phi) {
            double sh = std::sin(0.5 * phi);
            double base = (1.0 - r) * (1.0 - r) + 4.0 * r * sh * sh;
            double val = std::pow(base, -0.5 * e);
            if (N > 2) val *= std::pow(std::sin(phi), N - 2);
            return val;
        };
        // the integrand peaks at phi = 0 with width ~ (1 - r); composite
        // Simpson on panels graded by the peak width, doubled until the
        // total stabilizes
        std::vector<double> kn{0.0};
        const double width = std::max(1e-13, 1.0 - r);
        for (double t = width; t < M_PI; t *= 4.0) kn.push_back(t);
        kn.push_back(M_PI);
        auto simpson_n = [&](double a, double b, int half) {
            double h2 = (b - a) / (2 * half);
            double acc = ang(a) + ang(b);
            for (int i = 1; i < 2 * half; ++i)
                acc += ang(a + i * h2) * (i % 2 ? 4.0 : 2.0);
            return acc * h2 / 3.0;
        };
        double prev = 0.0, acc = 0.0;
        for (int half = 16; half <= 1024; half *= 2) {
            acc = 0.0;
            for (std::size_t i = 0; i + 1 < kn.size(); ++i)
                acc += simpson_n(kn[i], kn[i + 1], half);
            if (half > 16 && std::abs(acc - prev) <= 1e-11 * std::abs(acc)) break;
            prev = acc;
        }
        double surf = 2.0 * std::pow(M_PI, 0.5 * (N - 1)) / std::tgamma(0.5 * (N - 1));
        return surf * acc;
    };
    const double expo = (N - p * s) / p;
    auto f = [&](double r) {
        if (r <= 0.0 || r >= 1.0) return 0.0;
        double one_minus = -std::expm1(expo * std::log(r));
        return std::pow(r, p * s - 1.0) * std::pow(std::abs(one_minus), p) * psi(r);
    };
    std::vector<double> knots{0.5};
    for (int k = 2; k <= 40; ++k) {
        knots.push_back(std::pow(2.0, -k));
        knots.push_back(1.0 - std::pow(2.0, -k));
    }
    knots.push_back(1e-14);
    knots.push_back(1.0 - 1e-14);
    std::sort(knots.begin(), knots.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        acc += adaptive_simpson(f, knots[i], knots[i + 1], tol);
    // analytic r -> 0 tail: f ~ psi(0) r^{ps-1} below the lowest knot
    acc += psi(0.0) * std::pow(knots.front(), p * s) / (p * s);
    return 2.0 * acc;
}

}  // namespace oracles
