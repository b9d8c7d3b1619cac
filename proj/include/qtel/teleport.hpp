// The standard teleportation protocol over a two-qubit channel: Bell
// measurement on (input, channel-qubit-a), a fixed Bell-outcome correction
// on channel qubit b, per-input fidelity, and input-averaged fidelity by
// closed form, quadrature, and Monte Carlo.
//
// Joint systems are ordered (input, a, b), so the joint index is
// 4*q_input + 2*q_a + q_b.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entanglement.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "states.hpp"

namespace qtel {

inline constexpr std::uint64_t kDefaultSeed = 12345;

// Outcomes with probability below this are physically absent (they arise
// as exact zeros of the decomposition, blurred only by round-off).
inline constexpr double kNegligibleProb = 1e-15;

enum class BellOutcome { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus, BellOutcome::PsiMinus};

inline std::string bell_outcome_name(BellOutcome o) {
    switch (o) {
        case BellOutcome::PhiPlus: return "phi_plus";
        case BellOutcome::PhiMinus: return "phi_minus";
        case BellOutcome::PsiPlus: return "psi_plus";
        case BellOutcome::PsiMinus: return "psi_minus";
    }
    throw std::invalid_argument("unknown Bell outcome");
}

inline const StateVector& bell_state(BellOutcome o) {
    static const std::array<StateVector, 4> basis = [] {
        const double h = 1.0 / std::sqrt(2.0);
        std::array<StateVector, 4> b{StateVector(4), StateVector(4), StateVector(4),
                                     StateVector(4)};
        b[0][0] = h;
        b[0][3] = h;  // (|00> + |11>)/sqrt(2)
        b[1][0] = h;
        b[1][3] = -h;  // (|00> - |11>)/sqrt(2)
        b[2][1] = h;
        b[2][2] = h;  // (|01> + |10>)/sqrt(2)
        b[3][1] = h;
        b[3][2] = -h;  // (|01> - |10>)/sqrt(2)
        return b;
    }();
    return basis[static_cast<size_t>(o)];
}

// Correction unitaries. Standard is tuned to channels built on |01>+|10>
// (identity on PsiPlus); SingletTuned shifts the table so the singlet
// channel teleports perfectly (identity on PsiMinus).
inline const ComplexMatrix& correction_unitary(CorrectionTable table, BellOutcome o) {
    static const ComplexMatrix id = ComplexMatrix::identity(2);
    static const ComplexMatrix sx = sigma_x();
    static const ComplexMatrix sy = sigma_y();
    static const ComplexMatrix sz = sigma_z();
    static const std::array<const ComplexMatrix*, 4> standard = {&sx, &sy, &id, &sz};
    static const std::array<const ComplexMatrix*, 4> singlet = {&sy, &sx, &sz, &id};
    const auto& tab = (table == CorrectionTable::Standard) ? standard : singlet;
    return *tab[static_cast<size_t>(o)];
}

inline StateVector apply_correction(CorrectionTable table, BellOutcome o, const StateVector& v) {
    return correction_unitary(table, o) * v;
}

inline ComplexMatrix apply_correction(CorrectionTable table, BellOutcome o,
                                      const ComplexMatrix& rho) {
    const ComplexMatrix& u = correction_unitary(table, o);
    return u * rho * dagger(u);
}

inline StateVector apply_correction(BellOutcome o, const StateVector& v) {
    return apply_correction(CorrectionTable::Standard, o, v);
}

inline ComplexMatrix apply_correction(BellOutcome o, const ComplexMatrix& rho) {
    return apply_correction(CorrectionTable::Standard, o, rho);
}

namespace detail {

// (<bell| x I) |joint>: the unnormalized conditional state of qubit b.
inline StateVector bell_contract(const StateVector& joint, const StateVector& bell) {
    StateVector out(2);
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
            const cplx c = std::conj(bell[2 * m + n]);
            if (c == cplx{0.0, 0.0}) continue;
            for (int k = 0; k < 2; ++k) out[k] += c * joint[4 * m + 2 * n + k];
        }
    return out;
}

// (<bell| x I) rho_joint (|bell> x I): the unnormalized conditional density
// block of qubit b; its trace is the outcome probability.
inline ComplexMatrix conditional_block(const ComplexMatrix& joint, const StateVector& bell) {
    ComplexMatrix out(2);
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
            const cplx left = std::conj(bell[2 * m + n]);
            if (left == cplx{0.0, 0.0}) continue;
            for (int mp = 0; mp < 2; ++mp)
                for (int np = 0; np < 2; ++np) {
                    const cplx c = left * bell[2 * mp + np];
                    if (c == cplx{0.0, 0.0}) continue;
                    for (int k = 0; k < 2; ++k)
                        for (int l = 0; l < 2; ++l)
                            out(k, l) += c * joint(4 * m + 2 * n + k, 4 * mp + 2 * np + l);
                }
        }
    return out;
}

}  // namespace detail

// Bell expansion of |input> x |channel>:
//   |joint> = (1/sqrt(2)) sum_j |bell_j> x w_j
// with the w_j stored unnormalized, so sum_j ||w_j||^2 / 2 = 1 and the
// outcome probabilities are ||w_j||^2 / 2.  For channels with no |11>
// amplitude the vectors take the shape w_{phi+-} = P(+-)|0> + A|1>,
// w_{psi+-} = Q(+-)|0> +- B|1>; the coeff_* accessors name those entries.
struct BellDecomposition {
    std::array<StateVector, 4> vectors{StateVector(2), StateVector(2), StateVector(2),
                                       StateVector(2)};

    const StateVector& vector(BellOutcome o) const { return vectors[static_cast<size_t>(o)]; }
    double probability(BellOutcome o) const { return 0.5 * vector(o).squared_norm(); }

    cplx coeff_a() const { return vector(BellOutcome::PhiPlus)[1]; }
    cplx coeff_b() const { return vector(BellOutcome::PsiPlus)[1]; }
    cplx coeff_p_plus() const { return vector(BellOutcome::PhiPlus)[0]; }
    cplx coeff_p_minus() const { return vector(BellOutcome::PhiMinus)[0]; }
    cplx coeff_q_plus() const { return vector(BellOutcome::PsiPlus)[0]; }
    cplx coeff_q_minus() const { return vector(BellOutcome::PsiMinus)[0]; }
};

inline BellDecomposition bell_project(const InputQubit& input, const Channel& channel) {
    if (!channel.pure) throw std::invalid_argument("use teleport_mixed");
    const StateVector joint = kron(input.vec(), *channel.pure);
    const double root2 = std::sqrt(2.0);
    BellDecomposition d;
    for (BellOutcome o : kBellOutcomes) {
        StateVector v = detail::bell_contract(joint, bell_state(o));
        for (int k = 0; k < 2; ++k) v[k] *= root2;
        d.vectors[static_cast<size_t>(o)] = v;
    }
    return d;
}

struct TeleportOutcome {
    BellOutcome tag = BellOutcome::PhiPlus;
    double prob = 0.0;
    std::optional<StateVector> state;  // pure channels: normalized output
    std::optional<ComplexMatrix> rho;  // mixed channels: normalized 2x2 output
};

struct TeleportResult {
    std::vector<TeleportOutcome> outcomes;  // zero-probability outcomes absent
    double fidelity = 0.0;
};

inline TeleportResult teleport_pure(const InputQubit& input, const Channel& channel) {
    const BellDecomposition d = bell_project(input, channel);
    const StateVector phi = input.vec();
    TeleportResult res;
    for (BellOutcome o : kBellOutcomes) {
        const double p = d.probability(o);
        if (p < kNegligibleProb) continue;
        StateVector out = apply_correction(channel.table, o, d.vector(o));
        out.normalize();
        res.fidelity += p * std::norm(inner(phi, out));
        res.outcomes.push_back({o, p, out, std::nullopt});
    }
    return res;
}

inline TeleportResult teleport_mixed(const InputQubit& input, const Channel& channel) {
    const StateVector phi = input.vec();
    const ComplexMatrix joint = kron(outer(phi), channel.rho);
    TeleportResult res;
    for (BellOutcome o : kBellOutcomes) {
        const ComplexMatrix block = detail::conditional_block(joint, bell_state(o));
        const double p = block.trace().real();
        if (p < kNegligibleProb) continue;
        const ComplexMatrix corrected = apply_correction(channel.table, o, block);
        // <phi| corrected |phi> is p times the outcome fidelity.
        cplx overlap{0.0, 0.0};
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) overlap += std::conj(phi[k]) * corrected(k, l) * phi[l];
        res.fidelity += overlap.real();
        res.outcomes.push_back({o, p, std::nullopt, corrected * cplx{1.0 / p, 0.0}});
    }
    return res;
}

// Per-input protocol fidelity with no bookkeeping: the workhorse of the
// averaging loops.  Matches teleport_pure/teleport_mixed exactly.
inline double simulated_fidelity(const InputQubit& input, const Channel& channel) {
    const StateVector phi = input.vec();
    double fid = 0.0;
    if (channel.pure) {
        const StateVector joint = kron(phi, *channel.pure);
        for (BellOutcome o : kBellOutcomes) {
            const StateVector v = detail::bell_contract(joint, bell_state(o));
            const StateVector w = apply_correction(channel.table, o, v);
            fid += std::norm(inner(phi, w));
        }
    } else {
        const ComplexMatrix joint = kron(outer(phi), channel.rho);
        for (BellOutcome o : kBellOutcomes) {
            const ComplexMatrix block = detail::conditional_block(joint, bell_state(o));
            const ComplexMatrix corrected = apply_correction(channel.table, o, block);
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    fid += (std::conj(phi[k]) * corrected(k, l) * phi[l]).real();
        }
    }
    return fid;
}

inline double fidelity_noes_closed(double r, double ysq) {
    const double w = 1.0 - 2.0 * ysq;
    return (1.0 - r * r * w * w) / (1.0 + r * r);
}

inline double fidelity_nmes_closed(double s, double ysq) {
    return 1.0 - 2.0 * ysq * (1.0 - ysq) * (1.0 - concurrence_nmes_closed(s));
}

// Input-averaged fidelity from the closed forms.  at_bound marks channels
// whose optimum saturates the classical value 2/3 (the formula branch does
// not apply there).
struct AvgFidelity {
    double value = 0.0;
    bool at_bound = false;
};

inline AvgFidelity avg_fidelity_noes_closed(double r) {
    return {(3.0 - r * r) / (3.0 * (1.0 + r * r)), false};
}

inline AvgFidelity avg_fidelity_werner_closed(double p) { return {(2.0 - p) / 2.0, false}; }

inline AvgFidelity avg_fidelity_nmes_closed(double s) {
    return {(2.0 + concurrence_nmes_closed(s)) / 3.0, false};
}

inline AvgFidelity avg_fidelity_nonorth_closed(double r, double eps) {
    if (eps <= 0.0) return {2.0 / 3.0, true};
    const double rr = r * r;
    return {2.0 / 3.0 + (3.0 - rr) * eps / (6.0 * (1.0 + rr)), false};
}

inline AvgFidelity avg_fidelity_rho_new_closed(double p) {
    if (p < 0.25) return {(7.0 - 4.0 * p) / 9.0, false};
    return {2.0 / 3.0, true};
}

inline AvgFidelity avg_fidelity_closed(const Channel& ch) {
    switch (ch.kind) {
        case ChannelKind::Noes: return avg_fidelity_noes_closed(ch.r);
        case ChannelKind::Werner: return avg_fidelity_werner_closed(ch.p);
        case ChannelKind::Nmes: return avg_fidelity_nmes_closed(ch.s);
        case ChannelKind::NonorthMixed:
            return avg_fidelity_nonorth_closed(ch.r, nonorth_epsilon(ch));
        case ChannelKind::RhoNew: return avg_fidelity_rho_new_closed(ch.p);
    }
    throw std::invalid_argument("unknown channel kind");
}

// Closed-form dispatch straight from parameters, without building the
// density matrix (needed at separable-degenerate corners like r = 1).
inline AvgFidelity avg_fidelity_closed(const ChannelSpec& spec) {
    switch (spec.kind) {
        case ChannelKind::Noes:
            if (!(spec.r >= 0.0 && spec.r <= 1.0))
                throw std::invalid_argument("r must lie in [0,1]");
            return avg_fidelity_noes_closed(spec.r);
        case ChannelKind::Werner:
            if (!(spec.p >= 0.0 && spec.p <= 1.0))
                throw std::invalid_argument("p must lie in [0,1]");
            return avg_fidelity_werner_closed(spec.p);
        case ChannelKind::Nmes:
            if (!(spec.s >= 0.0 && spec.s <= 1.0))
                throw std::invalid_argument("s must lie in [0,1]");
            return avg_fidelity_nmes_closed(spec.s);
        case ChannelKind::NonorthMixed: {
            if (!(spec.r >= 0.0 && spec.r <= 1.0))
                throw std::invalid_argument("r must lie in [0,1]");
            if (spec.g && spec.eps)
                throw std::invalid_argument("g and eps are mutually exclusive");
            double eps;
            if (spec.eps)
                eps = *spec.eps;
            else if (spec.g)
                eps = *spec.g - nonorth_g_threshold(spec.r);
            else
                throw std::invalid_argument("nonorth_mixed needs g or eps");
            return avg_fidelity_nonorth_closed(spec.r, eps);
        }
        case ChannelKind::RhoNew:
            if (!(spec.p >= 0.0 && spec.p <= 1.0))
                throw std::invalid_argument("p must lie in [0,1]");
            return avg_fidelity_rho_new_closed(spec.p);
    }
    throw std::invalid_argument("unknown channel kind");
}

enum class AvgMethod { Quadrature, MonteCarlo };

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// Monte Carlo Haar average with a deterministic stream: theta_b =
// arccos(1-2u), phi = 2*pi*v.  Pairwise summation keeps the reduction
// order fixed, so a given seed always produces the same bits.
inline MonteCarloEstimate avg_fidelity_montecarlo(const Channel& ch, int n,
                                                  std::uint64_t seed = kDefaultSeed) {
    if (n < 1000) throw std::invalid_argument("montecarlo requires n >= 1000");
    SplitMix64 rng(seed);
    std::vector<double> f(static_cast<size_t>(n));
    std::vector<double> f2(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_double();
        const double v = rng.next_double();
        const double theta_b = std::acos(1.0 - 2.0 * u);
        const double fid = simulated_fidelity(input_state(theta_b, 2.0 * M_PI * v), ch);
        f[static_cast<size_t>(i)] = fid;
        f2[static_cast<size_t>(i)] = fid * fid;
    }
    const double mean = pairwise_sum(f) / n;
    const double var = std::max(0.0, (pairwise_sum(f2) - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

// Haar average over the Bloch sphere.  Quadrature: Gauss-Legendre in
// cos(theta_b) crossed with n equally spaced phi nodes (exact for the
// periodic direction).
inline double avg_fidelity_numeric(const Channel& ch, AvgMethod method, int n,
                                   std::uint64_t seed = kDefaultSeed) {
    if (method == AvgMethod::MonteCarlo) return avg_fidelity_montecarlo(ch, n, seed).value;
    if (n < 2) throw std::invalid_argument("quadrature requires n >= 2");
    const Quadrature q = gauss_legendre(n);
    std::vector<double> terms;
    terms.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double u = std::clamp(q.nodes[static_cast<size_t>(i)], -1.0, 1.0);
        const double theta_b = std::acos(u);
        for (int k = 0; k < n; ++k) {
            const double phi = 2.0 * M_PI * k / n;
            terms.push_back(q.weights[static_cast<size_t>(i)] *
                            simulated_fidelity(input_state(theta_b, phi), ch));
        }
    }
    // GL weights sum to 2 and the phi nodes carry weight 1/n each.
    return pairwise_sum(terms) / (2.0 * n);
}

inline double avg_fidelity_horodecki(const Channel& ch) {
    return 0.5 * (1.0 + horodecki_nu(ch.rho) / 3.0);
}

}  // namespace qtel
