// Dense complex matrices and state vectors of dimension 2, 4 or 8 —
// just enough linear algebra for two- and three-qubit work, with
// fixed-size storage and no heap allocation.
//
// Index convention: the leftmost tensor factor owns the most significant
// bit of the row index, so for two qubits the basis order is
// |00>, |01>, |10>, |11>.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qtel {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 8;

inline bool valid_dim(int dim) { return dim == 2 || dim == 4 || dim == 8; }

class ComplexMatrix {
  public:
    explicit ComplexMatrix(int dim) : dim_(dim) {
        if (!valid_dim(dim)) throw std::invalid_argument("unsupported dimension");
        a_.fill(cplx{0.0, 0.0});
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * kMaxDim + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * kMaxDim + c]; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_dim(o);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) (*this)(r, c) += o(r, c);
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_dim(o);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) (*this)(r, c) -= o(r, c);
        return *this;
    }

    ComplexMatrix& operator*=(cplx s) {
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) (*this)(r, c) *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.require_same_dim(b);
        ComplexMatrix p(a.dim_);
        for (int r = 0; r < a.dim_; ++r)
            for (int k = 0; k < a.dim_; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx{0.0, 0.0}) continue;
                for (int c = 0; c < a.dim_; ++c) p(r, c) += ark * b(k, c);
            }
        return p;
    }

    cplx trace() const {
        cplx t{0.0, 0.0};
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    bool all_finite() const {
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) {
                const cplx v = (*this)(r, c);
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
            }
        return true;
    }

  private:
    void require_same_dim(const ComplexMatrix& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
    }

    int dim_;
    std::array<cplx, kMaxDim * kMaxDim> a_;
};

class StateVector {
  public:
    explicit StateVector(int dim) : dim_(dim) {
        if (!valid_dim(dim)) throw std::invalid_argument("unsupported dimension");
        a_.fill(cplx{0.0, 0.0});
    }

    // Computational basis vector |k>.
    static StateVector basis(int dim, int k) {
        StateVector v(dim);
        v[k] = 1.0;
        return v;
    }

    int dim() const { return dim_; }

    cplx& operator[](int i) { return a_[static_cast<size_t>(i)]; }
    const cplx& operator[](int i) const { return a_[static_cast<size_t>(i)]; }

    double squared_norm() const {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += std::norm(a_[static_cast<size_t>(i)]);
        return s;
    }

    double norm() const { return std::sqrt(squared_norm()); }

    StateVector& normalize() {
        const double n = norm();
        if (n < 1e-300) throw std::invalid_argument("cannot normalize zero vector");
        for (int i = 0; i < dim_; ++i) a_[static_cast<size_t>(i)] /= n;
        return *this;
    }

    bool all_finite() const {
        for (int i = 0; i < dim_; ++i) {
            const cplx v = a_[static_cast<size_t>(i)];
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        }
        return true;
    }

  private:
    int dim_;
    std::array<cplx, kMaxDim> a_;
};

// <a|b>
inline cplx inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    cplx s{0.0, 0.0};
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// |a><a|
inline ComplexMatrix outer(const StateVector& a) {
    ComplexMatrix m(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m(r, c) = a[r] * std::conj(a[c]);
    return m;
}

inline StateVector operator*(const ComplexMatrix& m, const StateVector& v) {
    if (m.dim() != v.dim()) throw std::invalid_argument("dimension mismatch");
    StateVector w(v.dim());
    for (int r = 0; r < m.dim(); ++r) {
        cplx s{0.0, 0.0};
        for (int c = 0; c < m.dim(); ++c) s += m(r, c) * v[c];
        w[r] = s;
    }
    return w;
}

inline ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix b(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) b(r, c) = std::conj(a(r, c));
    return b;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix b(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) b(r, c) = std::conj(a(c, r));
    return b;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() * b.dim() > kMaxDim) throw std::invalid_argument("unsupported dimension");
    ComplexMatrix p(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (int r = 0; r < b.dim(); ++r)
                for (int c = 0; c < b.dim(); ++c)
                    p(i * b.dim() + r, j * b.dim() + c) = a(i, j) * b(r, c);
    return p;
}

inline StateVector kron(const StateVector& a, const StateVector& b) {
    if (a.dim() * b.dim() > kMaxDim) throw std::invalid_argument("unsupported dimension");
    StateVector p(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int r = 0; r < b.dim(); ++r) p[i * b.dim() + r] = a[i] * b[r];
    return p;
}

enum class Subsystem { First, Second };

// Reduce a two-qubit density matrix to the chosen qubit.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep) {
    if (rho.dim() != 4) throw std::invalid_argument("partial_trace expects dimension 4");
    ComplexMatrix out(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx s{0.0, 0.0};
            for (int k = 0; k < 2; ++k)
                s += (keep == Subsystem::First) ? rho(2 * i + k, 2 * j + k)
                                                : rho(2 * k + i, 2 * k + j);
            out(i, j) = s;
        }
    return out;
}

// Transpose one tensor factor of a two-qubit operator.
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, Subsystem on) {
    if (rho.dim() != 4) throw std::invalid_argument("partial_transpose expects dimension 4");
    ComplexMatrix out(4);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l) {
                    if (on == Subsystem::Second)
                        out(2 * i + k, 2 * j + l) = rho(2 * i + l, 2 * j + k);
                    else
                        out(2 * i + k, 2 * j + l) = rho(2 * j + k, 2 * i + l);
                }
    return out;
}

// Trace out the least significant qubit of a three-qubit density matrix.
inline ComplexMatrix trace_out_last(const ComplexMatrix& rho) {
    if (rho.dim() != 8) throw std::invalid_argument("trace_out_last expects dimension 8");
    ComplexMatrix out(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s{0.0, 0.0};
            for (int k = 0; k < 2; ++k) s += rho(2 * i + k, 2 * j + k);
            out(i, j) = s;
        }
    return out;
}

inline ComplexMatrix sigma_x() {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline ComplexMatrix sigma_y() {
    ComplexMatrix m(2);
    m(0, 1) = cplx{0.0, -1.0};
    m(1, 0) = cplx{0.0, 1.0};
    return m;
}

inline ComplexMatrix sigma_z() {
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    double m = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

inline double max_asymmetry(const ComplexMatrix& a) {
    double m = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            m = std::max(m, std::abs(a(r, c) - std::conj(a(c, r))));
    return m;
}

}  // namespace qtel
