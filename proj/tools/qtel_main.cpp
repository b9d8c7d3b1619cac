// qtel: command-line front end.
//
//   qtel metrics  --channel noes --r 0.5 --theta 0
//   qtel teleport --channel werner --p 0.3 --input-bloch pi/2,0 --format json
//   qtel sweep    --channel noes --param r --from 0 --to 1 --steps 11 \
//                 --metrics avg_fidelity_closed,nu --out sweep.csv
//   qtel figure   --id 4 --points 101 --eps 0.2 --out fig4.csv --emit-gnuplot
//   qtel verify   [--tol 1e-10] [--seed 12345]
//
// Exit codes: 0 success, 1 verification failure, 2 argument error, 3 I/O error.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <qtel/qtel.hpp>

using nlohmann::ordered_json;

namespace {

struct IoError {
    std::string message;
};

// ---------------------------------------------------------------------------
// argument helpers

double to_double_strict(const std::string& text, const std::string& original) {
    try {
        size_t idx = 0;
        const double v = std::stod(text, &idx);
        if (idx != text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid angle: " + original);
    }
}

// Radians, with "pi" (or the Greek letter) accepted as a literal:
// "0.5", "pi", "-pi/4", "2pi", "3pi/4".
double parse_angle(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("invalid angle: " + text);

    size_t pos = t.find("pi");
    if (pos == std::string::npos) pos = t.find("\xcf\x80");  // UTF-8 pi
    if (pos == std::string::npos) return to_double_strict(t, text);

    const std::string pre = t.substr(0, pos);
    const std::string post = t.substr(pos + 2);
    double coef = 1.0;
    if (pre == "-")
        coef = -1.0;
    else if (!pre.empty() && pre != "+")
        coef = to_double_strict(pre.back() == '*' ? pre.substr(0, pre.size() - 1) : pre, text);
    double divisor = 1.0;
    if (!post.empty()) {
        if (post.front() != '/') throw std::invalid_argument("invalid angle: " + text);
        divisor = to_double_strict(post.substr(1), text);
        if (divisor == 0.0) throw std::invalid_argument("invalid angle: " + text);
    }
    return coef * M_PI / divisor;
}

qtel::ChannelKind kind_from_token(std::string token) {
    for (char& c : token) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (c == '-') c = '_';
    }
    if (token == "noes") return qtel::ChannelKind::Noes;
    if (token == "werner") return qtel::ChannelKind::Werner;
    if (token == "nmes") return qtel::ChannelKind::Nmes;
    if (token == "nonorth_mixed") return qtel::ChannelKind::NonorthMixed;
    if (token == "rho_new") return qtel::ChannelKind::RhoNew;
    throw std::invalid_argument("unknown channel: " + token);
}

// Pure flag expansion: any `--args-from <file>` is replaced in place by the
// whitespace-separated tokens of that file ('#' starts a comment line).
std::vector<std::string> expand_args(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    for (int depth = 0; depth < 8; ++depth) {
        bool expanded = false;
        std::vector<std::string> next;
        for (size_t i = 0; i < args.size(); ++i) {
            std::string path;
            if (args[i] == "--args-from") {
                if (i + 1 >= args.size())
                    throw std::invalid_argument("--args-from needs a file path");
                path = args[++i];
            } else if (args[i].rfind("--args-from=", 0) == 0) {
                path = args[i].substr(std::string("--args-from=").size());
            } else {
                next.push_back(args[i]);
                continue;
            }
            std::ifstream in(path);
            if (!in) throw std::invalid_argument("cannot read response file: " + path);
            std::string line;
            while (std::getline(in, line)) {
                std::istringstream ls(line);
                std::string token;
                while (ls >> token) {
                    if (token.front() == '#') break;
                    next.push_back(token);
                }
            }
            expanded = true;
        }
        args = std::move(next);
        if (!expanded) return args;
    }
    throw std::invalid_argument("--args-from expansion too deep");
}

void write_output(const std::string& content, const std::optional<std::string>& path) {
    if (!path) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw IoError{"cannot write " + *path};
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError{"cannot write " + *path};
}

std::string basename_of(const std::string& path) {
    const size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::string gnuplot_path_for(const std::string& out_path) {
    const std::string suffix = ".csv";
    if (out_path.size() > suffix.size() &&
        out_path.compare(out_path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return out_path.substr(0, out_path.size() - suffix.size()) + ".gp";
    return out_path + ".gp";
}

// ---------------------------------------------------------------------------
// shared option blocks

struct ChannelOpts {
    std::string channel;
    double r = 0.0;
    std::string theta = "0";
    double p = 0.0;
    double s = 0.0;
    double g = 0.0;
    double eps = 0.0;
    CLI::Option* g_opt = nullptr;
    CLI::Option* eps_opt = nullptr;
};

void add_channel_flags(CLI::App* cmd, ChannelOpts& o) {
    cmd->add_option("--channel", o.channel,
                    "channel family: noes, werner, nmes, nonorth-mixed, rho-new")
        ->required();
    cmd->add_option("--r", o.r, "non-orthogonality modulus (noes, nonorth-mixed)");
    cmd->add_option("--theta", o.theta, "overlap phase in radians; pi tokens accepted");
    cmd->add_option("--p", o.p, "mixing parameter (werner, rho-new)");
    cmd->add_option("--s", o.s, "rescaled entanglement parameter (nmes)");
    o.g_opt = cmd->add_option("--g", o.g, "pure-state weight (nonorth-mixed)");
    o.eps_opt = cmd->add_option("--eps", o.eps,
                                "usefulness margin above the g threshold (nonorth-mixed)");
}

qtel::ChannelSpec to_spec(const ChannelOpts& o) {
    qtel::ChannelSpec spec;
    spec.kind = kind_from_token(o.channel);
    spec.r = o.r;
    spec.theta = parse_angle(o.theta);
    spec.p = o.p;
    spec.s = o.s;
    if (o.g_opt->count() > 0) spec.g = o.g;
    if (o.eps_opt->count() > 0) spec.eps = o.eps;
    return spec;
}

std::string channel_header(const qtel::Channel& ch) {
    std::string line = "channel " + qtel::channel_kind_name(ch.kind) + " (";
    const auto params = qtel::channel_params(ch);
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) line += ", ";
        line += params[i].first + " " + qtel::format_value(params[i].second);
    }
    return line + ")";
}

ordered_json channel_json(const qtel::Channel& ch) {
    ordered_json params = ordered_json::object();
    for (const auto& [name, value] : qtel::channel_params(ch)) params[name] = value;
    return ordered_json{{"kind", qtel::channel_kind_name(ch.kind)}, {"params", params}};
}

// ---------------------------------------------------------------------------
// subcommands

struct MetricsOpts {
    ChannelOpts channel;
    std::string format = "text";
    std::optional<std::string> out;
};

int do_metrics(const MetricsOpts& o) {
    const qtel::Channel ch = qtel::make_channel(to_spec(o.channel));
    const qtel::EntanglementReport rep = qtel::report(ch);
    std::string content;
    if (o.format == "text") {
        content = channel_header(ch) + "\n";
        content += "concurrence " + qtel::format_value(rep.concurrence) + "\n";
        content += "negativity  " + qtel::format_value(rep.negativity) + "\n";
        content += "nu          " + qtel::format_value(rep.nu) + "\n";
        content += std::string("useful      ") + (rep.useful ? "yes" : "no") + "\n";
    } else if (o.format == "json") {
        ordered_json j{{"channel", channel_json(ch)},
                       {"concurrence", rep.concurrence},
                       {"negativity", rep.negativity},
                       {"nu", rep.nu},
                       {"useful", rep.useful}};
        content = j.dump(2) + "\n";
    } else if (o.format == "csv") {
        content = "concurrence,negativity,nu,useful\n";
        content += qtel::format_value(rep.concurrence) + "," +
                   qtel::format_value(rep.negativity) + "," + qtel::format_value(rep.nu) +
                   "," + (rep.useful ? "1" : "0") + "\n";
    } else {
        throw std::invalid_argument("unknown format: " + o.format);
    }
    write_output(content, o.out);
    return 0;
}

struct TeleportOpts {
    ChannelOpts channel;
    std::string input_bloch = "0,0";
    std::string format = "text";
    std::optional<std::string> out;
};

int do_teleport(const TeleportOpts& o) {
    const qtel::Channel ch = qtel::make_channel(to_spec(o.channel));
    const size_t comma = o.input_bloch.find(',');
    const double theta_b = parse_angle(o.input_bloch.substr(0, comma));
    const double phi =
        comma == std::string::npos ? 0.0 : parse_angle(o.input_bloch.substr(comma + 1));
    const qtel::InputQubit input = qtel::input_state(theta_b, phi);
    const qtel::TeleportResult res =
        ch.pure ? qtel::teleport_pure(input, ch) : qtel::teleport_mixed(input, ch);

    std::string content;
    if (o.format == "text") {
        content = channel_header(ch) + "\n";
        content += "input theta_b " + qtel::format_value(theta_b) + ", phi " +
                   qtel::format_value(phi) + "\n";
        for (const auto& outc : res.outcomes) {
            content += "outcome " + qtel::bell_outcome_name(outc.tag) + "  prob " +
                       qtel::format_value(outc.prob);
            if (outc.state) {
                content += "  state";
                for (int k = 0; k < 2; ++k)
                    content += " (" + qtel::format_value((*outc.state)[k].real()) + "," +
                               qtel::format_value((*outc.state)[k].imag()) + ")";
            } else if (outc.rho) {
                content += "  rho";
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        content += " (" + qtel::format_value((*outc.rho)(i, j).real()) + "," +
                                   qtel::format_value((*outc.rho)(i, j).imag()) + ")";
            }
            content += "\n";
        }
        content += "fidelity " + qtel::format_value(res.fidelity) + "\n";
    } else if (o.format == "json") {
        ordered_json outcomes = ordered_json::array();
        for (const auto& outc : res.outcomes) {
            ordered_json jo{{"tag", qtel::bell_outcome_name(outc.tag)}, {"prob", outc.prob}};
            if (outc.state) {
                ordered_json amps = ordered_json::array();
                for (int k = 0; k < 2; ++k) {
                    amps.push_back((*outc.state)[k].real());
                    amps.push_back((*outc.state)[k].imag());
                }
                jo["state"] = amps;
            } else if (outc.rho) {
                ordered_json entries = ordered_json::array();
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        entries.push_back((*outc.rho)(i, j).real());
                        entries.push_back((*outc.rho)(i, j).imag());
                    }
                jo["rho"] = entries;
            }
            outcomes.push_back(jo);
        }
        ordered_json j{{"outcomes", outcomes}, {"fidelity", res.fidelity}};
        content = j.dump(2) + "\n";
    } else {
        throw std::invalid_argument("teleport supports text or json output, not " + o.format);
    }
    write_output(content, o.out);
    return 0;
}

struct SweepOpts {
    ChannelOpts channel;
    std::string param;
    double from = 0.0;
    double to = 1.0;
    int steps = 11;
    std::vector<std::string> metrics;
    std::string method = "quadrature";
    int n = 64;
    std::uint64_t seed = qtel::kDefaultSeed;
    std::string format = "csv";
    std::optional<std::string> out;
    bool emit_gnuplot = false;
};

void check_gnuplot_request(bool emit, const std::string& format,
                           const std::optional<std::string>& out) {
    if (!emit) return;
    if (!out) throw std::invalid_argument("--emit-gnuplot requires --out");
    if (format != "csv") throw std::invalid_argument("--emit-gnuplot requires csv format");
}

int do_sweep(const SweepOpts& o) {
    check_gnuplot_request(o.emit_gnuplot, o.format, o.out);
    qtel::SweepSpec spec;
    spec.channel = to_spec(o.channel);
    spec.param = o.param;
    spec.from = o.from;
    spec.to = o.to;
    spec.steps = o.steps;
    for (const auto& name : o.metrics) spec.metrics.push_back(qtel::metric_from_name(name));
    if (o.method == "quadrature")
        spec.method = qtel::AvgMethod::Quadrature;
    else if (o.method == "montecarlo")
        spec.method = qtel::AvgMethod::MonteCarlo;
    else
        throw std::invalid_argument("unknown method: " + o.method);
    spec.n = o.n;
    spec.seed = o.seed;

    const qtel::SweepTable table = qtel::run_sweep(spec);
    std::string content;
    if (o.format == "csv") {
        content = qtel::to_csv(table);
    } else if (o.format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& row : table.rows) {
            ordered_json jr = ordered_json::array();
            jr.push_back(row.param);
            for (double v : row.values) jr.push_back(v);
            rows.push_back(jr);
        }
        ordered_json j{{"channel", qtel::channel_kind_name(spec.channel.kind)},
                       {"param", table.param_name},
                       {"columns", table.columns},
                       {"rows", rows}};
        content = j.dump(2) + "\n";
    } else {
        throw std::invalid_argument("sweep supports csv or json output, not " + o.format);
    }
    write_output(content, o.out);
    if (o.emit_gnuplot)
        write_output(qtel::gnuplot_script(table, basename_of(*o.out)),
                     gnuplot_path_for(*o.out));
    return 0;
}

struct FigureOpts {
    int id = 1;
    int points = 101;
    double eps = 0.0;
    CLI::Option* eps_opt = nullptr;
    std::string format = "csv";
    std::optional<std::string> out;
    bool emit_gnuplot = false;
};

int do_figure(const FigureOpts& o) {
    check_gnuplot_request(o.emit_gnuplot, o.format, o.out);
    std::optional<double> eps;
    if (o.eps_opt->count() > 0) eps = o.eps;
    const qtel::FigureTable table = qtel::figure_dataset(o.id, o.points, eps);
    std::string content;
    if (o.format == "csv") {
        content = qtel::to_csv(table);
    } else if (o.format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& row : table.rows) {
            ordered_json jr = ordered_json::array();
            for (const auto& cell : row) {
                if (cell)
                    jr.push_back(*cell);
                else
                    jr.push_back(nullptr);
            }
            rows.push_back(jr);
        }
        ordered_json j{{"figure", table.id}, {"columns", table.columns}, {"rows", rows}};
        content = j.dump(2) + "\n";
    } else {
        throw std::invalid_argument("figure supports csv or json output, not " + o.format);
    }
    write_output(content, o.out);
    if (o.emit_gnuplot)
        write_output(qtel::gnuplot_script(table, basename_of(*o.out)),
                     gnuplot_path_for(*o.out));
    return 0;
}

struct VerifyOpts {
    double tol = 0.0;
    CLI::Option* tol_opt = nullptr;
    std::uint64_t seed = qtel::kDefaultSeed;
    int mc_samples = 1'000'000;
    std::optional<std::string> out;
};

int do_verify(const VerifyOpts& o) {
    qtel::VerifyOptions options;
    if (o.tol_opt->count() > 0) options.tol_override = o.tol;
    options.seed = o.seed;
    options.mc_samples = o.mc_samples;
    const qtel::VerifyReport report = qtel::run_verify(options);
    write_output(qtel::format_verify_report(report), o.out);
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args;
    try {
        args = expand_args(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::vector<const char*> argv2;
    argv2.reserve(args.size());
    for (const auto& a : args) argv2.push_back(a.c_str());

    CLI::App app{"quantum teleportation channel laboratory"};
    app.require_subcommand(1);

    MetricsOpts metrics_opts;
    CLI::App* metrics_cmd =
        app.add_subcommand("metrics", "entanglement and usefulness metrics of a channel");
    add_channel_flags(metrics_cmd, metrics_opts.channel);
    metrics_cmd->add_option("--format", metrics_opts.format, "text, json, or csv");
    metrics_cmd->add_option("--out", metrics_opts.out, "output file (default stdout)");

    TeleportOpts teleport_opts;
    CLI::App* teleport_cmd =
        app.add_subcommand("teleport", "run the protocol on one input state");
    add_channel_flags(teleport_cmd, teleport_opts.channel);
    teleport_cmd
        ->add_option("--input-bloch", teleport_opts.input_bloch,
                     "input qubit as theta_b,phi (radians; pi tokens accepted)")
        ->required();
    teleport_cmd->add_option("--format", teleport_opts.format, "text or json");
    teleport_cmd->add_option("--out", teleport_opts.out, "output file (default stdout)");

    SweepOpts sweep_opts;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "metric table over a parameter grid");
    add_channel_flags(sweep_cmd, sweep_opts.channel);
    sweep_cmd->add_option("--param", sweep_opts.param, "parameter to vary (r, theta, p, s, g, eps)")
        ->required();
    sweep_cmd->add_option("--from", sweep_opts.from, "grid start")->required();
    sweep_cmd->add_option("--to", sweep_opts.to, "grid end")->required();
    sweep_cmd->add_option("--steps", sweep_opts.steps, "grid points including endpoints")
        ->required();
    sweep_cmd
        ->add_option("--metrics", sweep_opts.metrics,
                     "comma-separated: concurrence, concurrence_mixed, negativity, nu, "
                     "avg_fidelity_closed, avg_fidelity_numeric, avg_fidelity_horodecki")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--method", sweep_opts.method,
                          "averaging for avg_fidelity_numeric: quadrature or montecarlo");
    sweep_cmd->add_option("--n", sweep_opts.n, "quadrature order or sample count");
    sweep_cmd->add_option("--seed", sweep_opts.seed, "random seed for montecarlo");
    sweep_cmd->add_option("--format", sweep_opts.format, "csv or json");
    sweep_cmd->add_option("--out", sweep_opts.out, "output file (default stdout)");
    sweep_cmd->add_flag("--emit-gnuplot", sweep_opts.emit_gnuplot,
                        "also write a gnuplot script next to the csv");

    FigureOpts figure_opts;
    CLI::App* figure_cmd = app.add_subcommand("figure", "emit one of the five study datasets");
    figure_cmd->add_option("--id", figure_opts.id, "figure id, 1..5")->required();
    figure_cmd->add_option("--points", figure_opts.points, "grid points (>= 10)");
    figure_opts.eps_opt =
        figure_cmd->add_option("--eps", figure_opts.eps,
                               "usefulness margin for figures 4-5 (defaults 0.2 / 0.4)");
    figure_cmd->add_option("--format", figure_opts.format, "csv or json");
    figure_cmd->add_option("--out", figure_opts.out, "output file (default stdout)");
    figure_cmd->add_flag("--emit-gnuplot", figure_opts.emit_gnuplot,
                         "also write a gnuplot script next to the csv");

    VerifyOpts verify_opts;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the closed-form vs oracle check battery");
    verify_opts.tol_opt = verify_cmd->add_option(
        "--tol", verify_opts.tol, "override the per-check absolute tolerances");
    verify_cmd->add_option("--seed", verify_opts.seed, "random seed");
    verify_cmd->add_option("--mc-samples", verify_opts.mc_samples,
                           "monte carlo sample count (default 1000000)");
    verify_cmd->add_option("--out", verify_opts.out, "report file (default stdout)");

    try {
        app.parse(static_cast<int>(argv2.size()), argv2.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (metrics_cmd->parsed()) return do_metrics(metrics_opts);
        if (teleport_cmd->parsed()) return do_teleport(teleport_opts);
        if (sweep_cmd->parsed()) return do_sweep(sweep_opts);
        if (figure_cmd->parsed()) return do_figure(figure_opts);
        if (verify_cmd->parsed()) return do_verify(verify_opts);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.message << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
