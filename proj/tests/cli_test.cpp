// End-to-end exercise of the qtel command line tool.  Run as
//   cli_test <path-to-qtel-binary>
// Spawns the real binary via the shell and checks output, files and exit
// codes against the documented contract (0 ok, 1 verification failure,
// 2 argument error, 3 i/o error).

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <qtel/sweep.hpp>
#include <qtel/teleport.hpp>

#include "oracle_helpers.hpp"

namespace fs = std::filesystem;

namespace {

int checks = 0;
int failures = 0;
std::string g_bin;
fs::path g_tmp;

void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
        ++failures;
        std::printf("FAIL  %s\n", what.c_str());
    }
}

void expect_contains(const oracle::CommandResult& res, const std::string& needle,
                     const std::string& what) {
    expect(res.output.find(needle) != std::string::npos,
           what + " (missing \"" + needle + "\" in output:\n" + res.output + ")");
}

oracle::CommandResult run(const std::string& args) {
    return oracle::run_command("'" + g_bin + "' " + args + " 2>&1");
}

// Pull the number following `"key": ` out of a json dump.  The json
// serializer keeps full double precision (unlike the %.12g text format), so
// numeric checks must parse rather than match digits.
double json_number(const oracle::CommandResult& res, const std::string& key) {
    const std::string needle = "\"" + key + "\": ";
    const size_t pos = res.output.find(needle);
    if (pos == std::string::npos) return std::nan("");
    return std::strtod(res.output.c_str() + pos + needle.size(), nullptr);
}

std::string tmp_file(const std::string& name) { return (g_tmp / name).string(); }

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// ---------------------------------------------------------------------------

void test_metrics() {
    auto res = run("metrics --channel werner --p 0");
    expect(res.exit_code == 0, "metrics werner exit code");
    expect_contains(res, "channel werner (p 0)", "metrics header");
    expect_contains(res, "concurrence 1\n", "singlet concurrence");
    expect_contains(res, "negativity  1\n", "singlet negativity");
    expect_contains(res, "nu          3\n", "singlet nu");
    expect_contains(res, "useful      yes", "singlet usefulness");

    res = run("metrics --channel noes --r 0.5");
    expect(res.exit_code == 0, "metrics noes exit code");
    expect_contains(res, "channel noes (r 0.5, theta 0)", "noes header");
    expect_contains(res, "concurrence 0.6\n", "noes concurrence is exact");
    expect_contains(res, "nu          2.2\n", "noes nu");

    res = run("metrics --channel rho-new --p 0 --format json");
    expect(res.exit_code == 0, "metrics json exit code");
    expect_contains(res, "\"kind\": \"rho_new\"", "hyphenated channel token accepted");
    expect_contains(res, "\"useful\": true", "rho_new p=0 is useful");
    expect_contains(res, "0.412022659166596", "rho_new negativity value");

    res = run("metrics --channel werner --p 0.5 --format csv");
    expect(res.exit_code == 0, "metrics csv exit code");
    expect_contains(res, "concurrence,negativity,nu,useful\n", "metrics csv header");
    expect_contains(res, "0.25,0.25,1.5,1\n", "metrics csv row");

    res = run("metrics --channel nonorth-mixed --r 0.5 --eps 0.3");
    expect(res.exit_code == 0, "metrics nonorth via eps exit code");
    expect_contains(res, "g 0.754545454545", "eps is resolved to g in the header");

    res = run("metrics --channel nonorth-mixed --r 0.5 --g 0.8 --eps 0.1");
    expect(res.exit_code == 2, "g and eps together is an argument error");

    res = run("metrics --channel bogus --p 0.1");
    expect(res.exit_code == 2, "unknown channel exit code");
    expect_contains(res, "unknown channel", "unknown channel message");
}

void test_teleport() {
    auto res = run("teleport --channel noes --r 0 --input-bloch 0.7,0.3");
    expect(res.exit_code == 0, "teleport perfect channel exit code");
    expect_contains(res, "fidelity 1\n", "perfect channel fidelity");

    res = run("teleport --channel noes --r 0.5 --input-bloch pi,0");
    expect_contains(res, "fidelity 0.6\n", "basis-flip input over r=0.5");

    res = run("teleport --channel noes --r 0.5 --input-bloch 'π,0'");
    expect(res.exit_code == 0, "unicode pi accepted");
    expect_contains(res, "fidelity 0.6\n", "unicode pi same result");

    res = run("teleport --channel noes --r 0.5 --input-bloch pi/3,pi/4 --format json");
    expect(res.exit_code == 0, "teleport json exit code");
    expect_contains(res, "\"fidelity\": 0.75", "worked example fidelity");
    expect_contains(res, "\"tag\": \"psi_plus\"", "outcome tags present");
    expect_contains(res, "\"state\"", "pure outcomes carry state vectors");
    expect(res.output.find("\"rho\"") == std::string::npos,
           "pure outcomes carry no density blocks");

    res = run("teleport --channel werner --p 1 --input-bloch 1.1,0.4 --format json");
    expect(std::abs(json_number(res, "fidelity") - 0.5) < 1e-12,
           "maximally mixed channel fidelity");
    expect_contains(res, "\"rho\"", "mixed outcomes carry density blocks");

    res = run("teleport --channel werner --p 0.5 --input-bloch 0,0 --format csv");
    expect(res.exit_code == 2, "teleport refuses csv");
    expect_contains(res, "teleport supports text or json", "teleport format message");

    res = run("teleport --channel noes --r 0.5 --input-bloch abc,0");
    expect(res.exit_code == 2, "invalid angle exit code");
    expect_contains(res, "invalid angle", "invalid angle message");

    res = run("teleport --channel noes --r 0.5 --theta 2*pi/3 --input-bloch 0.4,0");
    expect(res.exit_code == 0, "angle expression in --theta");

    res = run("teleport --channel noes --r 0.5 --theta 0.5pi --input-bloch 0.4");
    expect(res.exit_code == 0, "coefficient-prefixed pi and bare theta_b");
}

void test_sweep() {
    // stdout sweep must equal the library result rendered as csv
    qtel::SweepSpec spec;
    spec.channel.kind = qtel::ChannelKind::Noes;
    spec.param = "r";
    spec.from = 0.0;
    spec.to = 1.0;
    spec.steps = 11;
    spec.metrics = {qtel::Metric::AvgFidelityClosed};
    const std::string expected = qtel::to_csv(qtel::run_sweep(spec));

    auto res = run("sweep --channel noes --param r --from 0 --to 1 --steps 11 "
                   "--metrics avg_fidelity_closed");
    expect(res.exit_code == 0, "sweep exit code");
    expect(res.output == expected, "sweep stdout equals the library rendering");
    expect_contains(res, "param,avg_fidelity_closed\n", "sweep csv header");
    expect_contains(res, "\n0.1,0.986798679868\n", "sweep row r=0.1");
    expect_contains(res, "\n1,0.333333333333\n", "sweep row r=1");

    // several metrics, comma separated
    res = run("sweep --channel werner --param p --from 0 --to 1 --steps 5 "
              "--metrics concurrence_mixed,negativity,nu");
    expect(res.exit_code == 0, "multi-metric sweep exit code");
    expect_contains(res, "param,concurrence_mixed,negativity,nu\n", "multi-metric header");
    expect_contains(res, "\n1,0,0,0\n", "werner p=1 row");

    // file output plus gnuplot companion
    const std::string csv_path = tmp_file("sweep.csv");
    res = run("sweep --channel nmes --param s --from 0 --to 1 --steps 11 "
              "--metrics avg_fidelity_closed,avg_fidelity_horodecki --out " +
              csv_path + " --emit-gnuplot");
    expect(res.exit_code == 0, "sweep --out exit code");
    expect(fs::exists(csv_path), "sweep csv written");
    const std::string gp_path = tmp_file("sweep.gp");
    expect(fs::exists(gp_path), "gnuplot script written next to the csv");
    if (fs::exists(gp_path)) {
        const std::string script = oracle::read_file(gp_path);
        expect(script.find("plot") != std::string::npos, "gnuplot script has a plot command");
        expect(script.find("sweep.csv") != std::string::npos,
               "gnuplot script references the csv by name");
    }

    // determinism: same command twice gives identical bytes
    const std::string again = tmp_file("sweep2.csv");
    res = run("sweep --channel nmes --param s --from 0 --to 1 --steps 11 "
              "--metrics avg_fidelity_closed,avg_fidelity_horodecki --out " +
              again);
    expect(res.exit_code == 0, "sweep rerun exit code");
    expect(oracle::read_file(csv_path) == oracle::read_file(again),
           "sweep output is byte-stable");

    // monte carlo with a pinned seed is also byte-stable
    const std::string mc1 = tmp_file("mc1.csv");
    const std::string mc2 = tmp_file("mc2.csv");
    const std::string mc_cmd = "sweep --channel noes --param r --from 0 --to 0.9 --steps 4 "
                               "--metrics avg_fidelity_numeric --method montecarlo "
                               "--n 2000 --seed 99 --out ";
    expect(run(mc_cmd + mc1).exit_code == 0, "mc sweep exit code");
    expect(run(mc_cmd + mc2).exit_code == 0, "mc sweep rerun exit code");
    expect(oracle::read_file(mc1) == oracle::read_file(mc2), "mc sweep is byte-stable");

    // error paths
    res = run("sweep --channel werner --param p --from 0 --to 1 --steps 1 --metrics nu");
    expect(res.exit_code == 2, "steps < 2 is an argument error");
    res = run("sweep --channel werner --param p --from 0 --to 1 --steps 5 --metrics bogus");
    expect(res.exit_code == 2, "unknown metric is an argument error");
    expect_contains(res, "unknown metric: bogus", "unknown metric message");
    res = run("sweep --channel werner --param r --from 0 --to 1 --steps 5 --metrics nu");
    expect(res.exit_code == 2, "wrong parameter is an argument error");
    expect_contains(res, "has no sweep parameter", "wrong parameter message");
    res = run("sweep --channel werner --param p --from 0 --to 1 --steps 5 --metrics nu "
              "--out /nonexistent-dir/x.csv");
    expect(res.exit_code == 3, "unwritable output path is an i/o error");
    res = run("sweep --channel noes --param r --from 0 --to 1 --steps 5 --metrics nu "
              "--emit-gnuplot");
    expect(res.exit_code == 2, "--emit-gnuplot without --out is an argument error");
    res = run("sweep --channel noes --param r --from 0 --to 1 --steps 5 --metrics nu "
              "--format json --out " +
              tmp_file("s.json") + " --emit-gnuplot");
    expect(res.exit_code == 2, "--emit-gnuplot with json is an argument error");

    // json rendering carries the channel and rows
    res = run("sweep --channel werner --param p --from 0 --to 1 --steps 3 --metrics nu "
              "--format json");
    expect(res.exit_code == 0, "sweep json exit code");
    expect_contains(res, "\"param\": \"p\"", "sweep json names the parameter");
    expect_contains(res, "\"columns\"", "sweep json has columns");
}

void test_figure() {
    const std::string path = tmp_file("fig1.csv");
    auto res = run("figure --id 1 --points 101 --out " + path);
    expect(res.exit_code == 0, "figure 1 exit code");
    const std::string content = oracle::read_file(path);
    int lines = 0;
    for (char c : content) lines += (c == '\n');
    expect(lines == 102, "figure 1 has header plus 101 rows");
    expect(content.rfind("t,f_noes,f_werner,f_nmes\n", 0) == 0, "figure 1 header");
    expect(content.find("\n1,0.333333333333,0.5,0.666666666667\n") != std::string::npos,
           "figure 1 endpoint row");

    // byte-stable across runs
    const std::string path2 = tmp_file("fig1b.csv");
    run("figure --id 1 --points 101 --out " + path2);
    expect(oracle::read_file(path) == oracle::read_file(path2), "figure output is byte-stable");

    // eps-dependent figures mark out-of-range rows
    res = run("figure --id 5 --points 11");
    expect(res.exit_code == 0, "figure 5 exit code");
    expect_contains(res, "\n0.8,,0,0.666666666667,0.666666666667\n",
                    "figure 5 omits out-of-range cells");
    res = run("figure --id 4 --points 11 --eps 0.4");
    expect_contains(res, "\n0.8,,0,", "figure 4 honors a custom eps");

    res = run("figure --id 2 --points 51 --format json");
    expect(res.exit_code == 0, "figure json exit code");
    expect_contains(res, "\"figure\": 2", "figure json id");
    expect_contains(res, "\"columns\"", "figure json columns");

    res = run("figure --id 7 --points 40");
    expect(res.exit_code == 2, "figure id out of range");
    res = run("figure --id 1 --points 9");
    expect(res.exit_code == 2, "too few points");
    res = run("figure --id 4 --points 40 --eps -1");
    expect(res.exit_code == 2, "negative eps");
}

void test_verify() {
    auto res = run("verify --mc-samples 20000");
    expect(res.exit_code == 0, "verify passes with default tolerances");
    expect_contains(res, "qtel verify\n", "verify banner");
    expect_contains(res, "seed 12345", "verify default seed");
    expect_contains(res, "summary: 40 checks, 40 passed, 0 failed", "verify summary");
    expect(res.output.find("FAIL") == std::string::npos, "no failing checks");

    auto res2 = run("verify --mc-samples 20000");
    expect(res.output == res2.output, "verify output is byte-stable");

    res = run("verify --tol 1e-15 --mc-samples 20000");
    expect(res.exit_code == 1, "absurd tolerance forces a verification failure");
    expect_contains(res, "FAIL", "failing checks are marked");
    expect_contains(res, "tolerance override 1e-15", "override is reported");
}

void test_args_from() {
    const std::string rsp = tmp_file("metrics.rsp");
    write_text(rsp, "metrics\n--channel\nnoes\n# a comment token\n--r\n0.5\n");
    auto res = run("--args-from " + rsp);
    expect(res.exit_code == 0, "response file exit code");
    expect_contains(res, "concurrence 0.6", "response file produced the metrics output");

    // equals form, mixed with direct flags
    const std::string rsp2 = tmp_file("chan.rsp");
    write_text(rsp2, "--channel\nwerner\n--p\n0\n");
    res = run("metrics --args-from=" + rsp2 + " --format csv");
    expect(res.exit_code == 0, "equals-form response file");
    expect_contains(res, "1,1,3,1", "response file flags merged with direct flags");

    const std::string loop = tmp_file("loop.rsp");
    write_text(loop, "--args-from\n" + loop + "\n");
    res = run("--args-from " + loop);
    expect(res.exit_code == 2, "self-including response file is an argument error");
    expect_contains(res, "expansion too deep", "expansion depth message");

    res = run("metrics --args-from " + tmp_file("missing.rsp"));
    expect(res.exit_code == 2, "missing response file is an argument error");
    expect_contains(res, "cannot read response file", "missing response file message");
}

void test_top_level() {
    auto res = run("--help");
    expect(res.exit_code == 0, "--help exits cleanly");
    expect_contains(res, "quantum teleportation channel laboratory", "help banner");

    res = run("");
    expect(res.exit_code == 2, "missing subcommand is an argument error");

    res = run("frobnicate");
    expect(res.exit_code == 2, "unknown subcommand is an argument error");

    // metrics --out writes the file and keeps stdout quiet
    const std::string path = tmp_file("metrics.txt");
    res = run("metrics --channel nmes --s 0.5 --out " + path);
    expect(res.exit_code == 0, "metrics --out exit code");
    expect(res.output.empty(), "metrics --out leaves stdout empty");
    expect(oracle::read_file(path).find("concurrence 0.661437827766") != std::string::npos,
           "metrics --out file content");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::printf("usage: cli_test <path-to-qtel-binary>\n");
        return 2;
    }
    g_bin = argv[1];
    g_tmp = fs::temp_directory_path() /
            ("qtel_cli_test." + std::to_string(static_cast<long>(getpid())));
    fs::create_directories(g_tmp);

    test_metrics();
    test_teleport();
    test_sweep();
    test_figure();
    test_verify();
    test_args_from();
    test_top_level();

    std::error_code ec;
    fs::remove_all(g_tmp, ec);

    std::printf("%d checks, %d failures\n", checks, failures);
    return failures == 0 ? 0 : 1;
}
