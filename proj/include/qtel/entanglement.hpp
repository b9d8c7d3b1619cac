// Entanglement quantifiers for two-qubit states: concurrence (pure via
// 2*sqrt(det) of a reduction, mixed via the Wootters spectral construction),
// negativity from the partial transpose, and the correlation-matrix nu that
// decides teleportation usefulness (useful iff nu > 1).  Closed forms are
// provided alongside the matrix-based routes so each can audit the other.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eigen.hpp"
#include "matrix.hpp"
#include "states.hpp"

namespace qtel {

inline double concurrence_pure(const StateVector& psi) {
    if (psi.dim() != 4) throw std::invalid_argument("concurrence_pure expects dimension 4");
    if (std::abs(psi.squared_norm() - 1.0) > 1e-9)
        throw std::invalid_argument("state not normalized");
    const ComplexMatrix rho_a = partial_trace(outer(psi), Subsystem::First);
    const double det = rho_a(0, 0).real() * rho_a(1, 1).real() - std::norm(rho_a(0, 1));
    return std::clamp(2.0 * std::sqrt(std::max(det, 0.0)), 0.0, 1.0);
}

inline double concurrence_noes_closed(double r) {
    return (1.0 - r * r) / (1.0 + r * r);
}

inline double concurrence_nmes_closed(double s) {
    const double u = 1.0 - s;
    return u * std::sqrt(2.0 - u * u);
}

inline double concurrence_werner_closed(double p) {
    return std::max(0.0, 1.0 - 1.5 * p);
}

// Wootters construction: the lambda_i are the square roots of the
// eigenvalues of sqrt(rho) * rho_tilde * sqrt(rho), descending, with
// rho_tilde = (sy x sy) conj(rho) (sy x sy).
inline double concurrence_mixed(const ComplexMatrix& rho) {
    validate_density(rho);
    if (rho.dim() != 4) throw std::invalid_argument("concurrence_mixed expects dimension 4");
    const ComplexMatrix yy = kron(sigma_y(), sigma_y());
    const ComplexMatrix rho_tilde = yy * conjugate(rho) * yy;
    const ComplexMatrix root = matrix_sqrt_psd(rho);
    const std::vector<double> lam_sq = hermitian_eigenvalues(root * rho_tilde * root);
    // Ascending eigenvalues; the Wootters difference takes the largest
    // lambda minus the rest.  Eigenvalues that are round-off relative to the
    // largest are treated as exact zeros: sqrt would otherwise inflate
    // O(1e-16) noise to O(1e-8).
    const double floor = 1e-13 * std::max(lam_sq.back(), 0.0);
    double c = 0.0;
    for (size_t i = 0; i < lam_sq.size(); ++i) {
        const double lam = lam_sq[i] <= floor ? 0.0 : std::sqrt(lam_sq[i]);
        c += (i + 1 == lam_sq.size()) ? lam : -lam;
    }
    return std::clamp(c, 0.0, 1.0);
}

inline double negativity(const ComplexMatrix& rho) {
    validate_density(rho);
    if (rho.dim() != 4) throw std::invalid_argument("negativity expects dimension 4");
    const std::vector<double> lam =
        hermitian_eigenvalues(partial_transpose(rho, Subsystem::Second));
    return std::max(0.0, -2.0 * lam.front());
}

inline double negativity_nonorth_closed(double r, double g) {
    const double rr = r * r;
    const double value = (g * (3.0 - rr) - (1.0 + rr)) / (2.0 * (1.0 + rr));
    return std::max(0.0, value);
}

// Sum of the singular values of the 3x3 Pauli correlation matrix
// t_ij = tr(rho * sigma_i x sigma_j).  T is real for a Hermitian rho, so
// the singular values are the square roots of the eigenvalues of T^T T;
// the 3x3 symmetric eigenproblem is embedded in the 4x4 complex solver.
inline double horodecki_nu(const ComplexMatrix& rho) {
    validate_density(rho);
    if (rho.dim() != 4) throw std::invalid_argument("horodecki_nu expects dimension 4");
    const ComplexMatrix paulis[3] = {sigma_x(), sigma_y(), sigma_z()};
    double t[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t[i][j] = (rho * kron(paulis[i], paulis[j])).trace().real();

    ComplexMatrix tt(4);  // T^T T padded with a zero row/column
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double sum = 0.0;
            for (int k = 0; k < 3; ++k) sum += t[k][i] * t[k][j];
            tt(i, j) = sum;
        }
    double nu = 0.0;
    for (double lam : hermitian_eigenvalues(tt)) nu += std::sqrt(std::max(lam, 0.0));
    return nu;
}

inline double nu_nonorth_closed(double r, double eps) {
    const double rr = r * r;
    return 1.0 + (3.0 - rr) * eps / (1.0 + rr);
}

struct EntanglementReport {
    double concurrence = 0.0;
    double negativity = 0.0;
    double nu = 0.0;
    bool useful = false;
};

// All metrics via the matrix-based routes, never the closed forms, so the
// report can serve as an independent cross-check of the formulas.  Pure
// channels take the 2*sqrt(det) route; everything else goes via Wootters.
inline EntanglementReport report(const Channel& ch) {
    EntanglementReport rep;
    rep.concurrence = ch.pure ? concurrence_pure(*ch.pure) : concurrence_mixed(ch.rho);
    rep.negativity = negativity(ch.rho);
    rep.nu = horodecki_nu(ch.rho);
    rep.useful = rep.nu > 1.0 + 1e-12;
    return rep;
}

}  // namespace qtel
