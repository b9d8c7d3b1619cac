// Hermitian eigensolver (cyclic complex Jacobi), PSD matrix square root,
// and density-matrix validation.
//
// Jacobi is used instead of QR/Hessenberg style methods: for dimensions
// up to 8 it is simple, unconditionally stable, and gives eigenvectors
// for free.  Each rotation first strips the phase of the targeted
// off-diagonal entry, then applies a real Givens rotation chosen so the
// entry vanishes exactly.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"

namespace qtel {

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k pairs with values[k]
};

namespace detail {

inline double max_offdiag(const ComplexMatrix& b) {
    double m = 0.0;
    for (int p = 0; p < b.dim(); ++p)
        for (int q = p + 1; q < b.dim(); ++q) m = std::max(m, std::abs(b(p, q)));
    return m;
}

// One rotation in the (p,q) plane that annihilates b(p,q).
inline void jacobi_rotate(ComplexMatrix& b, ComplexMatrix& v, int p, int q) {
    const cplx bpq = b(p, q);
    const double beta = std::abs(bpq);
    if (beta == 0.0) return;

    const cplx u = bpq / beta;  // phase of the pivot entry
    const double app = b(p, p).real();
    const double aqq = b(q, q).real();
    const double tau = (aqq - app) / (2.0 * beta);
    const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // Column update for the unitary G: G(p,p)=c, G(p,q)=s,
    // G(q,p)=-s*conj(u), G(q,q)=c*conj(u); apply B <- G^dag B G, V <- V G.
    const cplx ubar = std::conj(u);
    for (int r = 0; r < b.dim(); ++r) {
        const cplx brp = b(r, p);
        const cplx brq = b(r, q);
        b(r, p) = c * brp - s * ubar * brq;
        b(r, q) = s * brp + c * ubar * brq;

        const cplx vrp = v(r, p);
        const cplx vrq = v(r, q);
        v(r, p) = c * vrp - s * ubar * vrq;
        v(r, q) = s * vrp + c * ubar * vrq;
    }
    for (int col = 0; col < b.dim(); ++col) {
        const cplx bpc = b(p, col);
        const cplx bqc = b(q, col);
        b(p, col) = c * bpc - s * u * bqc;
        b(q, col) = s * bpc + c * u * bqc;
    }
    // Clean the pivot pair: exact zero off-diagonal, real diagonal.
    b(p, q) = 0.0;
    b(q, p) = 0.0;
    b(p, p) = cplx{b(p, p).real(), 0.0};
    b(q, q) = cplx{b(q, q).real(), 0.0};
}

}  // namespace detail

inline EigenSystem hermitian_eigensystem(const ComplexMatrix& a, double herm_tol = 1e-10) {
    if (max_asymmetry(a) > herm_tol) throw std::invalid_argument("hermiticity violated");

    // Work on the exactly Hermitian average so rounding in the input
    // cannot leak into the iteration.
    ComplexMatrix b(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) b(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));

    ComplexMatrix v = ComplexMatrix::identity(a.dim());
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (detail::max_offdiag(b) < 1e-14) break;
        for (int p = 0; p < b.dim() - 1; ++p)
            for (int q = p + 1; q < b.dim(); ++q) detail::jacobi_rotate(b, v, p, q);
    }

    std::vector<int> order(static_cast<size_t>(b.dim()));
    for (int i = 0; i < b.dim(); ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return b(i, i).real() < b(j, j).real(); });

    EigenSystem es{std::vector<double>(static_cast<size_t>(b.dim())), ComplexMatrix(a.dim())};
    for (int k = 0; k < b.dim(); ++k) {
        const int src = order[static_cast<size_t>(k)];
        es.values[static_cast<size_t>(k)] = b(src, src).real();
        for (int r = 0; r < b.dim(); ++r) es.vectors(r, k) = v(r, src);
    }
    return es;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a,
                                                 double herm_tol = 1e-10) {
    return hermitian_eigensystem(a, herm_tol).values;
}

// Square root of a positive semidefinite Hermitian matrix.  Eigenvalues in
// [-tol, 0) are treated as rounding noise and clamped to zero; anything
// below -tol is a genuine violation.
inline ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a, double tol = 1e-10) {
    const EigenSystem es = hermitian_eigensystem(a);
    ComplexMatrix out(a.dim());
    for (size_t k = 0; k < es.values.size(); ++k) {
        const double lam = es.values[k];
        if (lam < -tol) throw std::invalid_argument("not PSD");
        const double root = std::sqrt(std::max(lam, 0.0));
        if (root == 0.0) continue;
        for (int r = 0; r < a.dim(); ++r)
            for (int c = 0; c < a.dim(); ++c)
                out(r, c) += root * es.vectors(r, static_cast<int>(k)) *
                             std::conj(es.vectors(c, static_cast<int>(k)));
    }
    return out;
}

// Checks that rho is a physical density matrix: finite, Hermitian, unit
// trace, positive semidefinite (up to the stated tolerances).
inline void validate_density(const ComplexMatrix& rho) {
    if (!rho.all_finite()) throw std::invalid_argument("density matrix has non-finite entries");
    if (max_asymmetry(rho) > 1e-10) throw std::invalid_argument("density matrix not Hermitian");
    if (std::abs(rho.trace() - cplx{1.0, 0.0}) > 1e-12)
        throw std::invalid_argument("density matrix trace differs from 1");
    const std::vector<double> lam = hermitian_eigenvalues(rho);
    if (lam.front() < -1e-10)
        throw std::invalid_argument("density matrix has a negative eigenvalue");
}

}  // namespace qtel
