// Integration acceptance suite.  Run as
//   acceptance_test <path-to-qtel-binary>
// Each numbered criterion prints exactly one [PASS]/[FAIL] line; the exit
// code is nonzero if any criterion fails.  Criteria 1-7 drive the library
// directly; criterion 8 runs the installed binary twice and compares bytes.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <qtel/qtel.hpp>

#include "oracle_helpers.hpp"

namespace {

int failed_criteria = 0;

void report(int id, bool ok, const std::string& label, double worst) {
    if (!ok) ++failed_criteria;
    std::printf("[%s] criterion %d: %s (worst %.3g)\n", ok ? "PASS" : "FAIL", id, label.c_str(),
                worst);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] = a + (b - a) * static_cast<double>(i) / (n - 1);
    return v;
}

std::vector<double> angles(int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = 2.0 * M_PI * i / n;
    return v;
}

// --------------------------------------------------------------------------
// 1. per-input protocol fidelity reproduces the closed forms

void criterion_1() {
    double worst = 0.0;
    for (double r : linspace(0.0, 0.9, 10))
        for (double theta : angles(8)) {
            const qtel::Channel ch = qtel::noes_pure(r, theta);
            for (double tb : linspace(0.0, M_PI, 10))
                for (double phi : angles(8)) {
                    const qtel::InputQubit in = qtel::input_state(tb, phi);
                    const double sim = qtel::teleport_pure(in, ch).fidelity;
                    const double closed = qtel::fidelity_noes_closed(r, in.ysq());
                    worst = std::max(worst, std::abs(sim - closed));
                }
        }
    for (double s : linspace(0.0, 1.0, 10)) {
        const qtel::Channel ch = qtel::nmes(s);
        for (double tb : linspace(0.0, M_PI, 10))
            for (double phi : angles(8)) {
                const qtel::InputQubit in = qtel::input_state(tb, phi);
                const double sim = qtel::teleport_pure(in, ch).fidelity;
                const double closed = qtel::fidelity_nmes_closed(s, in.ysq());
                worst = std::max(worst, std::abs(sim - closed));
            }
    }
    report(1, worst <= 1e-10, "simulated per-input fidelity matches the closed forms", worst);
}

// --------------------------------------------------------------------------
// 2. numerically averaged fidelity: quadrature to 1e-8, monte carlo to 3 SE

void criterion_2() {
    double worst = 0.0;
    for (double r : linspace(0.0, 0.9, 11)) {
        const double q =
            qtel::avg_fidelity_numeric(qtel::noes_pure(r, 0.4), qtel::AvgMethod::Quadrature, 64);
        worst = std::max(worst, std::abs(q - qtel::avg_fidelity_noes_closed(r).value));
    }
    for (double s : linspace(0.0, 1.0, 11)) {
        const double q =
            qtel::avg_fidelity_numeric(qtel::nmes(s), qtel::AvgMethod::Quadrature, 64);
        worst = std::max(worst, std::abs(q - qtel::avg_fidelity_nmes_closed(s).value));
    }
    const bool quad_ok = worst <= 1e-8;

    // one-million-sample monte carlo with pinned seeds, judged in units of
    // its own standard error
    const qtel::MonteCarloEstimate noes_mc =
        qtel::avg_fidelity_montecarlo(qtel::noes_pure(0.5, 0.0), 1000000, qtel::kDefaultSeed);
    const double noes_ratio = std::abs(noes_mc.value - qtel::avg_fidelity_noes_closed(0.5).value) /
                              (3.0 * noes_mc.std_error);
    const qtel::MonteCarloEstimate nmes_mc =
        qtel::avg_fidelity_montecarlo(qtel::nmes(0.3), 1000000, qtel::kDefaultSeed + 1);
    const double nmes_ratio = std::abs(nmes_mc.value - qtel::avg_fidelity_nmes_closed(0.3).value) /
                              (3.0 * nmes_mc.std_error);
    const bool mc_ok = noes_ratio <= 1.0 && nmes_ratio <= 1.0;

    report(2, quad_ok && mc_ok, "quadrature and monte carlo averages match the closed forms",
           std::max({worst, noes_ratio * 1e-8, nmes_ratio * 1e-8}));
}

// --------------------------------------------------------------------------
// 3. entanglement measures against independent oracles

void criterion_3() {
    double worst = 0.0;

    // closed concurrence vs the reduction route on the pure families
    for (double r : linspace(0.0, 0.95, 16))
        for (double theta : angles(4))
            worst = std::max(worst,
                             std::abs(qtel::concurrence_pure(*qtel::noes_pure(r, theta).pure) -
                                      qtel::concurrence_noes_closed(r)));
    for (double s : linspace(0.0, 1.0, 16))
        worst = std::max(worst, std::abs(qtel::concurrence_pure(*qtel::nmes(s).pure) -
                                         qtel::concurrence_nmes_closed(s)));
    const bool conc_ok = worst <= 1e-10;

    // closed negativity of the mixed non-orthogonal family vs an
    // independently computed partial-transpose spectrum, including the
    // separable branch where the closed form clamps to zero
    double neg_worst = 0.0;
    for (double r : linspace(0.0, 0.9, 10))
        for (double theta : angles(4))
            for (double g : linspace(0.0, 1.0, 10)) {
                const qtel::ComplexMatrix rho = qtel::nonorth_mixed(r, theta, g).rho;
                const auto pt_vals = oracle::hermitian_eigenvalues(
                    qtel::partial_transpose(rho, qtel::Subsystem::Second));
                const double expect = std::max(0.0, -2.0 * pt_vals.front());
                neg_worst = std::max(
                    neg_worst, std::abs(qtel::negativity_nonorth_closed(r, g) - expect));
            }
    const bool neg_ok = neg_worst <= 1e-9;

    // closed nu vs the independent Pauli correlation-matrix oracle
    double nu_worst = 0.0;
    for (double r : linspace(0.0, 0.9, 10))
        for (double eps : {0.05, 0.2, 0.4}) {
            if (qtel::nonorth_g_threshold(r) + eps > 1.0) continue;
            const qtel::ComplexMatrix rho =
                qtel::nonorth_mixed(r, 0.0, qtel::g_from_epsilon(r, eps)).rho;
            nu_worst = std::max(nu_worst, std::abs(qtel::nu_nonorth_closed(r, eps) -
                                                   oracle::horodecki_nu(rho)));
        }
    const bool nu_ok = nu_worst <= 1e-9;

    report(3, conc_ok && neg_ok && nu_ok,
           "concurrence, negativity and nu match independent oracles",
           std::max({worst, neg_worst, nu_worst}));
}

// --------------------------------------------------------------------------
// 4. correlation-matrix optimal fidelity reproduces the reference values

void criterion_4() {
    double worst = 0.0;
    auto check = [&](const qtel::Channel& ch, double expect) {
        worst = std::max(worst, std::abs(qtel::avg_fidelity_horodecki(ch) - expect));
    };
    check(qtel::werner(2.0 / 3.0), 2.0 / 3.0);
    check(qtel::nonorth_mixed(0.0, 0.0, qtel::g_from_epsilon(0.0, 0.2)), 23.0 / 30.0);
    check(qtel::rho_new(0.0), 7.0 / 9.0);
    check(qtel::rho_new(0.125), 13.0 / 18.0);
    report(4, worst <= 1e-10, "optimal average fidelities hit the reference values", worst);
}

// --------------------------------------------------------------------------
// 5. usefulness thresholds of the noes family

void criterion_5() {
    const double basis = qtel::find_threshold(
        [](double r) { return qtel::fidelity_noes_closed(r, 0.0); }, 0.0, 1.0);
    const double equator = qtel::find_threshold(
        [](double r) { return qtel::fidelity_noes_closed(r, 0.5); }, 0.0, 1.0);
    const double average = qtel::find_threshold(
        [](double r) { return qtel::avg_fidelity_noes_closed(r).value; }, 0.0, 1.0);
    const double worst = std::max({std::abs(basis - 1.0 / std::sqrt(5.0)),
                                   std::abs(equator - 1.0 / std::sqrt(2.0)),
                                   std::abs(average - 1.0 / std::sqrt(3.0))});
    report(5, worst <= 1e-9, "classical-bound thresholds sit at 1/sqrt(5,2,3)", worst);
}

// --------------------------------------------------------------------------
// 6. figure datasets: endpoints and the linear fidelity-concurrence law

void criterion_6() {
    double worst = 0.0;
    const qtel::FigureTable fig1 = qtel::figure_dataset(1, 101);
    const double f1_start[] = {1.0, 1.0, 1.0};
    const double f1_end[] = {1.0 / 3.0, 0.5, 2.0 / 3.0};
    for (int c = 0; c < 3; ++c) {
        worst = std::max(worst, std::abs(*fig1.rows.front()[c + 1] - f1_start[c]));
        worst = std::max(worst, std::abs(*fig1.rows.back()[c + 1] - f1_end[c]));
    }
    const qtel::FigureTable fig2 = qtel::figure_dataset(2, 101);
    for (int c = 1; c <= 3; ++c) {
        worst = std::max(worst, std::abs(*fig2.rows.front()[c] - 1.0));
        worst = std::max(worst, std::abs(*fig2.rows.back()[c]));
    }
    const bool endpoints_ok = worst <= 1e-10;

    // least-squares line through each (concurrence, fidelity) trace of
    // figure 3; the residuals vanish and the fitted lines are
    // (1 + 2C)/3 and (2 + C)/3
    const qtel::FigureTable fig3 = qtel::figure_dataset(3, 101);
    double fit_worst = 0.0;
    for (int pair = 0; pair < 2; ++pair) {
        const int xc = 2 * pair, yc = 2 * pair + 1;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(fig3.rows.size());
        for (const auto& row : fig3.rows) {
            sx += *row[xc];
            sy += *row[yc];
            sxx += *row[xc] * *row[xc];
            sxy += *row[xc] * *row[yc];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / n;
        for (const auto& row : fig3.rows)
            fit_worst = std::max(fit_worst,
                                 std::abs(*row[yc] - (intercept + slope * *row[xc])));
        const double expect_slope = pair == 0 ? 2.0 / 3.0 : 1.0 / 3.0;
        const double expect_intercept = pair == 0 ? 1.0 / 3.0 : 2.0 / 3.0;
        fit_worst = std::max(fit_worst, std::abs(slope - expect_slope));
        fit_worst = std::max(fit_worst, std::abs(intercept - expect_intercept));
    }
    const bool fit_ok = fit_worst <= 1e-9;

    report(6, endpoints_ok && fit_ok, "figure endpoints and linear fidelity law hold",
           std::max(worst, fit_worst));
}

// --------------------------------------------------------------------------
// 7. structural properties across every family

void criterion_7() {
    double worst = 0.0;
    std::vector<qtel::Channel> channels;
    for (double r : linspace(0.0, 0.9, 5)) channels.push_back(qtel::noes_pure(r, 0.7));
    for (double p : linspace(0.0, 1.0, 5)) channels.push_back(qtel::werner(p));
    for (double s : linspace(0.0, 1.0, 5)) channels.push_back(qtel::nmes(s));
    for (double g : linspace(0.0, 1.0, 5)) channels.push_back(qtel::nonorth_mixed(0.5, 0.3, g));
    for (double p : linspace(0.0, 1.0, 5)) channels.push_back(qtel::rho_new(p));

    bool valid_ok = true;
    for (const qtel::Channel& ch : channels) {
        try {
            qtel::validate_density(ch.rho);
        } catch (const std::exception&) {
            valid_ok = false;
        }
        for (double tb : linspace(0.0, M_PI, 5))
            for (double phi : angles(4)) {
                const qtel::InputQubit in = qtel::input_state(tb, phi);
                const qtel::TeleportResult res = ch.pure ? qtel::teleport_pure(in, ch)
                                                         : qtel::teleport_mixed(in, ch);
                double total = 0.0;
                for (const auto& o : res.outcomes) total += o.prob;
                worst = std::max(worst, std::abs(total - 1.0));
            }
    }
    const bool probs_ok = worst <= 1e-10;

    double pure_worst = 0.0;
    for (double r : linspace(0.0, 0.95, 12)) {
        const qtel::Channel ch = qtel::noes_pure(r, 1.2);
        pure_worst = std::max(pure_worst, std::abs(qtel::negativity(ch.rho) -
                                                   qtel::concurrence_pure(*ch.pure)));
    }
    for (double s : linspace(0.0, 1.0, 12)) {
        const qtel::Channel ch = qtel::nmes(s);
        pure_worst = std::max(pure_worst, std::abs(qtel::negativity(ch.rho) -
                                                   qtel::concurrence_pure(*ch.pure)));
    }
    const bool pure_ok = pure_worst <= 1e-9;

    bool order_ok = true;
    const qtel::FigureTable fig2 = qtel::figure_dataset(2, 101);
    for (const auto& row : fig2.rows)
        order_ok = order_ok && (*row[3] >= *row[1] - 1e-12) && (*row[1] >= *row[2] - 1e-12);

    report(7, valid_ok && probs_ok && pure_ok && order_ok,
           "probabilities, physicality, pure-state identities and ordering hold",
           std::max(worst, pure_worst));
}

// --------------------------------------------------------------------------
// 8. bit-for-bit reproducibility of the command line tool

void criterion_8(const std::string& bin) {
    const std::string verify_cmd = "'" + bin + "' verify 2>&1";
    const oracle::CommandResult v1 = oracle::run_command(verify_cmd);
    const oracle::CommandResult v2 = oracle::run_command(verify_cmd);
    const std::string figure_cmd = "'" + bin + "' figure --id 3 --points 101 2>&1";
    const oracle::CommandResult f1 = oracle::run_command(figure_cmd);
    const oracle::CommandResult f2 = oracle::run_command(figure_cmd);
    const bool ok = v1.exit_code == 0 && v2.exit_code == 0 && v1.output == v2.output &&
                    f1.exit_code == 0 && f2.exit_code == 0 && f1.output == f2.output &&
                    !v1.output.empty() && !f1.output.empty();
    report(8, ok, "verify and figure runs are byte-for-byte reproducible", 0.0);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::printf("usage: acceptance_test <path-to-qtel-binary>\n");
        return 2;
    }
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(argv[1]);
    std::printf("acceptance: %d/8 criteria passed\n", 8 - failed_criteria);
    return failed_criteria == 0 ? 0 : 1;
}
