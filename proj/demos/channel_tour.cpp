// A guided tour of the five channel families: entanglement metrics, average
// teleportation fidelity (closed form vs quadrature), and one worked
// teleportation run.  Build and run with no arguments.

#include <cstdio>

#include <qtel/qtel.hpp>

using namespace qtel;

namespace {

void tour_channel(const Channel& ch) {
    const EntanglementReport rep = report(ch);
    std::printf("%-14s", channel_kind_name(ch.kind).c_str());
    for (const auto& [name, value] : channel_params(ch))
        std::printf(" %s=%-6.3g", name.c_str(), value);
    std::printf("\n");
    std::printf("    concurrence %-10.6g negativity %-10.6g nu %-10.6g useful %s\n",
                rep.concurrence, rep.negativity, rep.nu, rep.useful ? "yes" : "no");
    const AvgFidelity closed = avg_fidelity_closed(ch);
    const double numeric = avg_fidelity_numeric(ch, AvgMethod::Quadrature, 64);
    std::printf("    avg fidelity: closed %-12.9g quadrature %-12.9g%s\n", closed.value,
                numeric, closed.at_bound ? "  (at classical bound)" : "");
}

}  // namespace

int main() {
    std::printf("== channel families ==\n");
    tour_channel(noes_pure(0.4, 0.0));
    tour_channel(werner(0.25));
    tour_channel(nmes(0.3));
    tour_channel(nonorth_mixed(0.3, 0.0, g_from_epsilon(0.3, 0.2)));
    tour_channel(rho_new(0.1));

    std::printf("\n== one teleportation run ==\n");
    const Channel ch = noes_pure(0.5, 0.0);
    const InputQubit input = input_state(M_PI / 3.0, M_PI / 4.0);
    std::printf("channel noes r=0.5 theta=0, input theta_b=pi/3 phi=pi/4\n");
    const TeleportResult res = teleport_pure(input, ch);
    for (const auto& outc : res.outcomes) {
        std::printf("  %-9s prob %.6f", bell_outcome_name(outc.tag).c_str(), outc.prob);
        if (outc.state)
            std::printf("  state (%.4f,%.4f) (%.4f,%.4f)", (*outc.state)[0].real(),
                        (*outc.state)[0].imag(), (*outc.state)[1].real(),
                        (*outc.state)[1].imag());
        std::printf("\n");
    }
    std::printf("  fidelity %.9g (closed form %.9g)\n", res.fidelity,
                fidelity_noes_closed(0.5, input.ysq()));

    std::printf("\n== where the channels stop beating the classical 2/3 ==\n");
    const double ra = find_threshold(
        [](double r) { return avg_fidelity_noes_closed(r).value; }, 0.0, 1.0);
    std::printf("  noes average fidelity crosses 2/3 at r = %.9f (1/sqrt(3) = %.9f)\n", ra,
                1.0 / std::sqrt(3.0));
    const double cross = find_crossing(
        [](double t) { return avg_fidelity_noes_closed(t).value; },
        [](double t) { return avg_fidelity_werner_closed(t).value; }, 0.0, 1.0);
    std::printf("  noes and werner averages cross at t = %.9f\n", cross);
    return 0;
}
