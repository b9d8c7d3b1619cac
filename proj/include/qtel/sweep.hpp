// Parameter sweeps over channel families, the five standard figure
// datasets, threshold/crossing root-finding, and CSV / gnuplot emission.
// Output is plain data tables; rendering is left to gnuplot.

#pragma once

#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "teleport.hpp"

namespace qtel {

// %.12g: 12 significant digits, the fixed float format of every table.
inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

enum class Metric {
    Concurrence,       // pure channels only
    ConcurrenceMixed,  // Wootters, any channel
    Negativity,
    Nu,
    AvgFidelityClosed,
    AvgFidelityNumeric,
    AvgFidelityHorodecki,
};

inline std::string metric_name(Metric m) {
    switch (m) {
        case Metric::Concurrence: return "concurrence";
        case Metric::ConcurrenceMixed: return "concurrence_mixed";
        case Metric::Negativity: return "negativity";
        case Metric::Nu: return "nu";
        case Metric::AvgFidelityClosed: return "avg_fidelity_closed";
        case Metric::AvgFidelityNumeric: return "avg_fidelity_numeric";
        case Metric::AvgFidelityHorodecki: return "avg_fidelity_horodecki";
    }
    throw std::invalid_argument("unknown metric");
}

inline Metric metric_from_name(const std::string& name) {
    for (Metric m : {Metric::Concurrence, Metric::ConcurrenceMixed, Metric::Negativity,
                     Metric::Nu, Metric::AvgFidelityClosed, Metric::AvgFidelityNumeric,
                     Metric::AvgFidelityHorodecki})
        if (metric_name(m) == name) return m;
    throw std::invalid_argument("unknown metric: " + name);
}

struct SweepSpec {
    ChannelSpec channel;        // fixed parameters; the swept one is overwritten per row
    std::string param;          // which parameter varies
    double from = 0.0;
    double to = 1.0;
    int steps = 11;
    std::vector<Metric> metrics;
    // Settings for avg_fidelity_numeric rows.
    AvgMethod method = AvgMethod::Quadrature;
    int n = 64;
    std::uint64_t seed = kDefaultSeed;
};

struct SweepRow {
    double param = 0.0;
    std::vector<double> values;  // one per requested metric, in request order
};

struct SweepTable {
    std::string param_name;
    std::vector<std::string> columns;  // metric names, request order
    std::vector<SweepRow> rows;
};

namespace detail {

inline bool channel_is_pure_family(ChannelKind kind) {
    return kind == ChannelKind::Noes || kind == ChannelKind::Nmes;
}

inline void check_sweep_param(ChannelKind kind, const std::string& param) {
    const auto ok = [&](std::initializer_list<const char*> names) {
        for (const char* n : names)
            if (param == n) return true;
        return false;
    };
    bool valid = false;
    switch (kind) {
        case ChannelKind::Noes: valid = ok({"r", "theta"}); break;
        case ChannelKind::Werner: valid = ok({"p"}); break;
        case ChannelKind::Nmes: valid = ok({"s"}); break;
        case ChannelKind::NonorthMixed: valid = ok({"r", "theta", "g", "eps"}); break;
        case ChannelKind::RhoNew: valid = ok({"p"}); break;
    }
    if (!valid)
        throw std::invalid_argument("channel " + channel_kind_name(kind) +
                                    " has no sweep parameter " + param);
}

inline void set_spec_param(ChannelSpec& spec, const std::string& param, double value) {
    if (param == "r")
        spec.r = value;
    else if (param == "theta")
        spec.theta = value;
    else if (param == "p")
        spec.p = value;
    else if (param == "s")
        spec.s = value;
    else if (param == "g") {
        spec.g = value;
        spec.eps.reset();
    } else if (param == "eps") {
        spec.eps = value;
        spec.g.reset();
    } else
        throw std::invalid_argument("unknown sweep parameter " + param);
}

inline bool metric_needs_channel(Metric m) { return m != Metric::AvgFidelityClosed; }

inline double eval_metric(Metric m, const SweepSpec& sweep, const ChannelSpec& spec,
                          const std::optional<Channel>& ch) {
    switch (m) {
        case Metric::Concurrence: return concurrence_pure(*ch->pure);
        case Metric::ConcurrenceMixed: return concurrence_mixed(ch->rho);
        case Metric::Negativity: return negativity(ch->rho);
        case Metric::Nu: return horodecki_nu(ch->rho);
        case Metric::AvgFidelityClosed: return avg_fidelity_closed(spec).value;
        case Metric::AvgFidelityNumeric:
            return avg_fidelity_numeric(*ch, sweep.method, sweep.n, sweep.seed);
        case Metric::AvgFidelityHorodecki: return avg_fidelity_horodecki(*ch);
    }
    throw std::invalid_argument("unknown metric");
}

}  // namespace detail

inline SweepTable run_sweep(const SweepSpec& sweep) {
    if (sweep.steps < 2) throw std::invalid_argument("steps must be >= 2");
    if (!(sweep.from < sweep.to)) throw std::invalid_argument("from must be less than to");
    if (sweep.metrics.empty()) throw std::invalid_argument("metrics must be non-empty");
    detail::check_sweep_param(sweep.channel.kind, sweep.param);
    bool needs_channel = false;
    for (Metric m : sweep.metrics) {
        if (m == Metric::Concurrence && !detail::channel_is_pure_family(sweep.channel.kind))
            throw std::invalid_argument(
                "metric concurrence requires a pure channel (noes or nmes); channel " +
                channel_kind_name(sweep.channel.kind) + " is mixed - use concurrence_mixed");
        needs_channel = needs_channel || detail::metric_needs_channel(m);
    }

    SweepTable table;
    table.param_name = sweep.param;
    for (Metric m : sweep.metrics) table.columns.push_back(metric_name(m));
    table.rows.resize(static_cast<size_t>(sweep.steps));

    const auto eval_row = [&](int i) {
        const double x = sweep.from + (sweep.to - sweep.from) * i / (sweep.steps - 1);
        ChannelSpec spec = sweep.channel;
        detail::set_spec_param(spec, sweep.param, x);
        std::optional<Channel> ch;
        if (needs_channel) ch = make_channel(spec);
        SweepRow row;
        row.param = x;
        for (Metric m : sweep.metrics) row.values.push_back(detail::eval_metric(m, sweep, spec, ch));
        table.rows[static_cast<size_t>(i)] = std::move(row);
    };

    // Rows are independent; stripe them across threads and keep output
    // ordering by index.  Failures are rethrown after the join.
    const int workers = std::min<int>(
        sweep.steps, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (int i = 0; i < sweep.steps; ++i) eval_row(i);
    } else {
        std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (int i = w; i < sweep.steps; i += workers) eval_row(i);
                } catch (...) {
                    errors[static_cast<size_t>(w)] = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    return table;
}

struct FigureTable {
    int id = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;  // empty cell = omitted value
    std::vector<std::pair<int, int>> plot_pairs;           // 1-based (x,y) column indices
};

// The five standard datasets, all driven by one shared grid parameter t:
//   1  average fidelity of noes/werner/nmes vs their own parameter
//   2  concurrence of the same three families
//   3  (concurrence, avg fidelity) pairs for noes and nmes
//   4  nonorth_mixed fidelity vs r at fixed eps (default 0.2), rho_new
//      fidelity vs p, and the classical 2/3 reference
//   5  same as 4 with eps default 0.4
// In figures 4-5 rows where eps exceeds the admissible bound for that r
// carry an omitted fidelity cell and rho_n_in_range = 0.
inline FigureTable figure_dataset(int fig, int points,
                                  std::optional<double> eps = std::nullopt) {
    if (fig < 1 || fig > 5) throw std::invalid_argument("figure id must be 1..5");
    if (points < 10) throw std::invalid_argument("points must be >= 10");
    FigureTable table;
    table.id = fig;
    const double eps_value = eps.value_or(fig == 5 ? 0.4 : 0.2);
    if ((fig == 4 || fig == 5) && !(eps_value > 0.0))
        throw std::invalid_argument("epsilon must be positive");

    switch (fig) {
        case 1:
            table.columns = {"t", "f_noes", "f_werner", "f_nmes"};
            table.plot_pairs = {{1, 2}, {1, 3}, {1, 4}};
            break;
        case 2:
            table.columns = {"t", "c_noes", "c_werner", "c_nmes"};
            table.plot_pairs = {{1, 2}, {1, 3}, {1, 4}};
            break;
        case 3:
            table.columns = {"c_noes", "f_noes", "c_nmes", "f_nmes"};
            table.plot_pairs = {{1, 2}, {3, 4}};
            break;
        default:
            table.columns = {"t", "f_rho_n", "rho_n_in_range", "f_rho_new", "classical"};
            table.plot_pairs = {{1, 2}, {1, 4}, {1, 5}};
            break;
    }

    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        std::vector<std::optional<double>> row;
        switch (fig) {
            case 1:
                row = {t, avg_fidelity_noes_closed(t).value, avg_fidelity_werner_closed(t).value,
                       avg_fidelity_nmes_closed(t).value};
                break;
            case 2:
                row = {t, concurrence_noes_closed(t), concurrence_werner_closed(t),
                       concurrence_nmes_closed(t)};
                break;
            case 3:
                row = {concurrence_noes_closed(t), avg_fidelity_noes_closed(t).value,
                       concurrence_nmes_closed(t), avg_fidelity_nmes_closed(t).value};
                break;
            default: {
                const bool in_range = nonorth_g_threshold(t) + eps_value <= 1.0 + 1e-12;
                std::optional<double> f_rho_n;
                if (in_range) f_rho_n = avg_fidelity_nonorth_closed(t, eps_value).value;
                row = {t, f_rho_n, in_range ? 1.0 : 0.0, avg_fidelity_rho_new_closed(t).value,
                       2.0 / 3.0};
                break;
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

// Bisect f(x) = target on [lo, hi].  The curve must be monotone (checked
// by a grid scan) and must bracket the target.
inline double find_threshold(const std::function<double(double)>& f, double lo, double hi,
                             double target = 2.0 / 3.0) {
    if (!(lo < hi)) throw std::invalid_argument("from must be less than to");
    constexpr int kScan = 201;
    bool rising = false, falling = false;
    double prev = f(lo);
    for (int i = 1; i < kScan; ++i) {
        const double x = lo + (hi - lo) * i / (kScan - 1);
        const double v = f(x);
        if (v > prev + 1e-13) rising = true;
        if (v < prev - 1e-13) falling = true;
        prev = v;
    }
    if (rising && falling)
        throw std::invalid_argument("curve not monotone on the scan grid");

    double dlo = f(lo) - target;
    double dhi = f(hi) - target;
    if (dlo == 0.0) return lo;
    if (dhi == 0.0) return hi;
    if ((dlo > 0.0) == (dhi > 0.0)) throw std::invalid_argument("threshold not bracketed");
    double a = lo, b = hi;
    for (int iter = 0; iter < 200 && (b - a) > 1e-13; ++iter) {
        const double mid = 0.5 * (a + b);
        const double dm = f(mid) - target;
        if (dm == 0.0) return mid;
        if ((dm > 0.0) == (dlo > 0.0))
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

// Locate the unique parameter where two curves cross.  The difference must
// change sign exactly once on the scan grid; otherwise the error lists the
// brackets found.
inline double find_crossing(const std::function<double(double)>& fa,
                            const std::function<double(double)>& fb, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("from must be less than to");
    constexpr int kScan = 1001;
    std::vector<double> x(kScan), d(kScan);
    for (int i = 0; i < kScan; ++i) {
        x[static_cast<size_t>(i)] = lo + (hi - lo) * i / (kScan - 1);
        d[static_cast<size_t>(i)] = fa(x[static_cast<size_t>(i)]) - fb(x[static_cast<size_t>(i)]);
    }
    std::vector<std::pair<double, double>> brackets;
    for (int i = 0; i + 1 < kScan; ++i)
        if (d[static_cast<size_t>(i)] * d[static_cast<size_t>(i) + 1] < 0.0)
            brackets.emplace_back(x[static_cast<size_t>(i)], x[static_cast<size_t>(i) + 1]);
    if (brackets.size() != 1) {
        std::string msg = "expected exactly one sign change, found " +
                          std::to_string(brackets.size());
        if (!brackets.empty()) {
            msg += ":";
            for (const auto& [a, b] : brackets) {
                char buf[64];
                std::snprintf(buf, sizeof buf, " [%.6g,%.6g]", a, b);
                msg += buf;
            }
        }
        throw std::invalid_argument(msg);
    }

    auto [a, b] = brackets.front();
    double da = fa(a) - fb(a);
    for (int iter = 0; iter < 200 && (b - a) > 1e-13; ++iter) {
        const double mid = 0.5 * (a + b);
        const double dm = fa(mid) - fb(mid);
        if (dm == 0.0) return mid;
        if ((dm > 0.0) == (da > 0.0)) {
            a = mid;
            da = dm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

// --- emission -------------------------------------------------------------
// CSV: header row, %.12g floats, '.' decimal separator, LF line endings,
// byte-deterministic for identical inputs.

inline std::string to_csv(const SweepTable& table) {
    std::string out = "param";
    for (const auto& c : table.columns) out += "," + c;
    out += "\n";
    for (const auto& row : table.rows) {
        out += format_value(row.param);
        for (double v : row.values) out += "," + format_value(v);
        out += "\n";
    }
    return out;
}

inline std::string to_csv(const FigureTable& table) {
    std::string out;
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ",";
        out += table.columns[i];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            if (row[i]) out += format_value(*row[i]);
        }
        out += "\n";
    }
    return out;
}

inline std::string gnuplot_script(const std::vector<std::pair<int, int>>& plot_pairs,
                                  const std::string& csv_name) {
    std::string out;
    out += "# generated plot script; run:  gnuplot " + csv_name + ".gp\n";
    out += "set datafile separator \",\"\n";
    out += "set datafile missing \"\"\n";
    out += "set key autotitle columnhead\n";
    out += "plot ";
    for (size_t i = 0; i < plot_pairs.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + csv_name + "\" using " + std::to_string(plot_pairs[i].first) + ":" +
               std::to_string(plot_pairs[i].second) + " with lines";
    }
    out += "\n";
    return out;
}

inline std::string gnuplot_script(const FigureTable& table, const std::string& csv_name) {
    return gnuplot_script(table.plot_pairs, csv_name);
}

inline std::string gnuplot_script(const SweepTable& table, const std::string& csv_name) {
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < table.columns.size(); ++i)
        pairs.emplace_back(1, static_cast<int>(i) + 2);
    return gnuplot_script(pairs, csv_name);
}

}  // namespace qtel
