// Construction of every state used by the lab: the non-orthogonal basis
// pair, the five channel families, and Bloch-sphere input qubits.
//
// Channel families:
//   noes           pure two-qubit state built on a non-orthogonal basis
//                  pair with overlap <a|b> = r e^{i theta}
//   werner         (1-p)|psi-><psi-| + (p/4) I
//   nmes           partially entangled pure state u|01> + v|10>
//   nonorth_mixed  g |noes><noes| + ((1-g)/4) I
//   rho_new        two-qubit reduction of p|GHZ><GHZ| + (1-p)|W><W|

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eigen.hpp"
#include "matrix.hpp"

namespace qtel {

// Non-orthogonal pair |alpha>, |beta> with <alpha|beta> = r e^{i theta}.
// We fix |alpha> = (1,0)^T and put the residual of |beta> on (0,1)^T.
struct NonOrthBasis {
    double r = 0.0;
    double theta = 0.0;
    StateVector alpha{2};
    StateVector beta{2};

    double n_beta() const { return std::sqrt(1.0 - r * r); }       // residual norm
    double n_g() const { return 1.0 / std::sqrt(1.0 - r * r); }    // valid for r < 1
    double n_1() const { return 1.0 / std::sqrt(2.0 * (1.0 + r * r)); }
};

inline NonOrthBasis nonorth_basis(double r, double theta) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("r must lie in [0,1]");
    NonOrthBasis b;
    b.r = r;
    b.theta = theta;
    b.alpha[0] = 1.0;
    b.beta[0] = cplx{r * std::cos(theta), r * std::sin(theta)};
    b.beta[1] = std::sqrt(1.0 - r * r);
    return b;
}

// Orthonormalize {|alpha>, |beta>}: keeps |alpha>, replaces |beta> by its
// normalized component orthogonal to |alpha>.
inline std::pair<StateVector, StateVector> gram_schmidt(const NonOrthBasis& basis) {
    const cplx overlap = inner(basis.alpha, basis.beta);
    StateVector residual(2);
    for (int i = 0; i < 2; ++i) residual[i] = basis.beta[i] - overlap * basis.alpha[i];
    if (residual.norm() < 1e-12) throw std::invalid_argument("degenerate basis");
    residual.normalize();
    return {basis.alpha, residual};
}

enum class ChannelKind { Noes, Werner, Nmes, NonorthMixed, RhoNew };

// Which channel eigenstate the Bell-outcome correction table is tuned to:
// Standard suits channels built around (|01>+|10>), SingletTuned suits the
// singlet (|01>-|10>).  Using the wrong table degrades fidelity without
// making anything invalid, so the channel carries its own choice.
enum class CorrectionTable { Standard, SingletTuned };

struct Channel {
    ChannelKind kind = ChannelKind::Noes;
    // Family parameters; each family reads its own subset.
    double r = 0.0;
    double theta = 0.0;
    double p = 0.0;
    double s = 0.0;
    double g = 1.0;
    ComplexMatrix rho{4};
    std::optional<StateVector> pure;  // present for the pure families
    CorrectionTable table = CorrectionTable::Standard;
};

inline std::string channel_kind_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::Noes: return "noes";
        case ChannelKind::Werner: return "werner";
        case ChannelKind::Nmes: return "nmes";
        case ChannelKind::NonorthMixed: return "nonorth_mixed";
        case ChannelKind::RhoNew: return "rho_new";
    }
    throw std::invalid_argument("unknown channel kind");
}

// Parameters of a channel in display order.
inline std::vector<std::pair<std::string, double>> channel_params(const Channel& ch) {
    switch (ch.kind) {
        case ChannelKind::Noes: return {{"r", ch.r}, {"theta", ch.theta}};
        case ChannelKind::Werner: return {{"p", ch.p}};
        case ChannelKind::Nmes: return {{"s", ch.s}};
        case ChannelKind::NonorthMixed:
            return {{"r", ch.r}, {"theta", ch.theta}, {"g", ch.g}};
        case ChannelKind::RhoNew: return {{"p", ch.p}};
    }
    throw std::invalid_argument("unknown channel kind");
}

namespace detail {

inline StateVector singlet() {
    StateVector v(4);
    v[1] = 1.0 / std::sqrt(2.0);
    v[2] = -1.0 / std::sqrt(2.0);
    return v;
}

inline StateVector noes_vector(double r, double theta) {
    const NonOrthBasis b = nonorth_basis(r, theta);
    const StateVector ab = kron(b.alpha, b.beta);
    const StateVector ba = kron(b.beta, b.alpha);
    StateVector psi(4);
    const double n1 = b.n_1();
    for (int i = 0; i < 4; ++i) psi[i] = n1 * (ab[i] + ba[i]);
    return psi.normalize();
}

inline Channel finish(Channel ch) {
    validate_density(ch.rho);
    return ch;
}

}  // namespace detail

inline Channel noes_pure(double r, double theta) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("r must lie in [0,1]");
    if (r == 1.0) throw std::invalid_argument("channel separable-degenerate");
    Channel ch;
    ch.kind = ChannelKind::Noes;
    ch.r = r;
    ch.theta = theta;
    ch.pure = detail::noes_vector(r, theta);
    ch.rho = outer(*ch.pure);
    return detail::finish(std::move(ch));
}

inline Channel werner(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    Channel ch;
    ch.kind = ChannelKind::Werner;
    ch.p = p;
    ch.rho = (1.0 - p) * outer(detail::singlet()) + (p / 4.0) * ComplexMatrix::identity(4);
    ch.table = CorrectionTable::SingletTuned;
    return detail::finish(std::move(ch));
}

inline Channel nmes(double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("s must lie in [0,1]");
    const double u = (1.0 - s) / std::sqrt(2.0);
    const double v = std::sqrt(1.0 - u * u);
    Channel ch;
    ch.kind = ChannelKind::Nmes;
    ch.s = s;
    StateVector psi(4);
    psi[1] = u;
    psi[2] = v;
    ch.pure = psi;
    ch.rho = outer(psi);
    return detail::finish(std::move(ch));
}

// Threshold value of the mixing weight g at which the nonorth_mixed channel
// stops being useful for teleportation.
inline double nonorth_g_threshold(double r) {
    return (1.0 + r * r) / (3.0 - r * r);
}

// g parameterized as threshold + eps, so eps measures the margin of
// usefulness.  The admissible range is 0 < eps <= (2-2r^2)/(3-r^2).
inline double g_from_epsilon(double r, double eps) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("r must lie in [0,1]");
    if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const double g = nonorth_g_threshold(r) + eps;
    if (g > 1.0 + 1e-12) throw std::invalid_argument("epsilon too large for this r");
    return std::min(g, 1.0);
}

// Margin of usefulness recovered from a channel's stored g.
inline double nonorth_epsilon(const Channel& ch) {
    return ch.g - nonorth_g_threshold(ch.r);
}

inline Channel nonorth_mixed(double r, double theta, double g) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("r must lie in [0,1]");
    if (r == 1.0) throw std::invalid_argument("channel separable-degenerate");
    if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("g must lie in [0,1]");
    Channel ch;
    ch.kind = ChannelKind::NonorthMixed;
    ch.r = r;
    ch.theta = theta;
    ch.g = g;
    const StateVector psi = detail::noes_vector(r, theta);
    ch.rho = g * outer(psi) + ((1.0 - g) / 4.0) * ComplexMatrix::identity(4);
    return detail::finish(std::move(ch));
}

inline Channel rho_new(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    StateVector ghz(8);
    ghz[0] = 1.0 / std::sqrt(2.0);
    ghz[7] = 1.0 / std::sqrt(2.0);
    StateVector w(8);
    w[1] = 1.0 / std::sqrt(3.0);
    w[2] = 1.0 / std::sqrt(3.0);
    w[4] = 1.0 / std::sqrt(3.0);
    const ComplexMatrix rho3 = p * outer(ghz) + (1.0 - p) * outer(w);
    Channel ch;
    ch.kind = ChannelKind::RhoNew;
    ch.p = p;
    ch.rho = trace_out_last(rho3);
    return detail::finish(std::move(ch));
}

// Single-qubit input cos(theta_b/2)|0> + e^{i phi} sin(theta_b/2)|1>.
// Domain: theta_b in [0,pi], phi in [0,2pi); values outside wrap naturally.
struct InputQubit {
    double theta_b = 0.0;
    double phi = 0.0;

    cplx x() const { return cplx{std::cos(0.5 * theta_b), 0.0}; }
    cplx y() const {
        const double s = std::sin(0.5 * theta_b);
        return cplx{s * std::cos(phi), s * std::sin(phi)};
    }
    double ysq() const {
        const double s = std::sin(0.5 * theta_b);
        return s * s;
    }
    StateVector vec() const {
        StateVector v(2);
        v[0] = x();
        v[1] = y();
        return v;
    }
};

inline InputQubit input_state(double theta_b, double phi) { return InputQubit{theta_b, phi}; }

// Declarative channel recipe, as assembled from CLI flags or sweep specs.
// For nonorth_mixed exactly one of g / eps must be set; eps is resolved via
// g_from_epsilon at construction time.
struct ChannelSpec {
    ChannelKind kind = ChannelKind::Noes;
    double r = 0.0;
    double theta = 0.0;
    double p = 0.0;
    double s = 0.0;
    std::optional<double> g;
    std::optional<double> eps;
};

inline Channel make_channel(const ChannelSpec& spec) {
    switch (spec.kind) {
        case ChannelKind::Noes: return noes_pure(spec.r, spec.theta);
        case ChannelKind::Werner: return werner(spec.p);
        case ChannelKind::Nmes: return nmes(spec.s);
        case ChannelKind::NonorthMixed: {
            if (spec.g && spec.eps)
                throw std::invalid_argument("g and eps are mutually exclusive");
            double g;
            if (spec.eps)
                g = g_from_epsilon(spec.r, *spec.eps);
            else if (spec.g)
                g = *spec.g;
            else
                throw std::invalid_argument("nonorth_mixed needs g or eps");
            return nonorth_mixed(spec.r, spec.theta, g);
        }
        case ChannelKind::RhoNew: return rho_new(spec.p);
    }
    throw std::invalid_argument("unknown channel kind");
}

}  // namespace qtel
