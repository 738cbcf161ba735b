// commands.cpp: subcommand implementations and argument parsing

#include "bsl/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "bsl/dissipative.hpp"
#include "bsl/parallel.hpp"
#include "bsl/validation.hpp"

namespace bsl::cli {

namespace {

const std::vector<double> kDefaultTableGrid = {1.0, 3.5, 6.0, 8.5, 11.0, 13.5, 16.0, 18.5, 21.0};

std::string kv(const std::string& key, double value) {
    return key + "=" + format_number(value);
}

std::vector<double> a_grid(const RunConfig& c, const std::vector<double>& fallback) {
    std::vector<double> grid;
    if (c.A_range) {
        grid = c.A_range->values();
    } else if (c.A) {
        grid = {*c.A};
    } else {
        return fallback;
    }
    for (double& a : grid) {
        if (!(a >= 0.0)) throw std::invalid_argument("A values must be non-negative");
        a /= c.omega0;
    }
    return grid;
}

bool selected(const RunConfig& c, ShiftMethod m) {
    return c.methods.empty() || std::find(c.methods.begin(), c.methods.end(), m) != c.methods.end();
}

struct ShiftRow {
    double A = 0.0;
    std::optional<double> shift[5];
    std::string diagnostics;
};

constexpr ShiftMethod kColumns[5] = {ShiftMethod::FloquetNumeric, ShiftMethod::Chrw, ShiftMethod::ShirleyIterative,
                                     ShiftMethod::Asymptotic, ShiftMethod::Perturbative6};

std::vector<ShiftRow> compute_shift_rows(const RunConfig& c, const std::vector<double>& grid) {
    const double j01 = checked_j0_zero();
    return parallel_map(grid.size(), [&](std::size_t i) {
        ShiftRow row;
        row.A = grid[i];
        for (int k = 0; k < 5; ++k) {
            const ShiftMethod m = kColumns[k];
            if (!selected(c, m)) continue;
            if (m == ShiftMethod::Asymptotic && row.A < j01) continue;
            if (row.A == 0.0) {
                row.shift[k] = 0.0;
                continue;
            }
            try {
                row.shift[k] = compute_shift(m, 1.0, row.A).shift;
            } catch (const NumericalError& e) {
                if (!row.diagnostics.empty()) row.diagnostics += "; ";
                row.diagnostics += std::string(method_name(m)) + ": " + e.what();
            }
        }
        return row;
    });
}

double required_A(const RunConfig& c, double fallback) {
    const double A = (c.A ? *c.A : fallback * c.omega0) / c.omega0;
    if (!(A >= 0.0)) throw std::invalid_argument("A must be non-negative");
    return A;
}

ModelParams scaled_params(const RunConfig& c, double A, double omega) {
    ModelParams p{1.0, A, omega, c.kappa / c.omega0};
    p.validate();
    return p;
}

} // namespace

std::vector<double> Range::values() const {
    if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("range needs lo <= hi and step > 0");
    }
    const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count > 10000000) throw std::invalid_argument("range has too many points");
    std::vector<double> v(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) v[static_cast<std::size_t>(k)] = lo + static_cast<double>(k) * step;
    return v;
}

Range parse_range(const std::string& text) {
    std::stringstream ss(text);
    std::string part;
    std::vector<double> parts;
    while (std::getline(ss, part, ':')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed range '" + text + "', expected lo:hi:step");
        }
        if (used != part.size()) throw std::invalid_argument("malformed range '" + text + "', expected lo:hi:step");
        parts.push_back(v);
    }
    if (parts.size() != 3) throw std::invalid_argument("malformed range '" + text + "', expected lo:hi:step");
    Range r{parts[0], parts[1], parts[2]};
    r.values();
    return r;
}

int cmd_shift_table(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const std::vector<double> grid = a_grid(c, kDefaultTableGrid);
    const std::vector<ShiftRow> rows = compute_shift_rows(c, grid);
    TableWriter w(out, c.format);
    w.comment_header("shift-table", {kv("omega0", c.omega0), "points=" + std::to_string(grid.size())});
    w.columns({"A_over_omega0", "numerical", "chrw", "shirley", "asymptotic", "pert6", "diagnostics"});
    bool failed = false;
    for (const ShiftRow& r : rows) {
        std::vector<Cell> cells{r.A};
        for (const auto& s : r.shift) cells.emplace_back(s);
        cells.emplace_back(r.diagnostics);
        w.row(cells);
        if (!r.diagnostics.empty()) {
            failed = true;
            err << "warning: A = " << r.A << ": " << r.diagnostics << '\n';
        }
    }
    return failed ? kExitNumerical : kExitOk;
}

int cmd_shift_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::vector<double> grid = a_grid(c, Range{0.5, 21.0, 0.5}.values());
    RunConfig all = c;
    all.methods.clear();
    const std::vector<ShiftRow> rows = compute_shift_rows(all, grid);
    TableWriter w(out, c.format);
    w.comment_header("shift-sweep", {kv("omega0", c.omega0), "points=" + std::to_string(grid.size())});
    w.columns({"A_over_omega0", "numerical", "chrw", "shirley", "asymptotic", "pert6", "dev_chrw", "dev_shirley",
               "dev_asymptotic", "dev_pert6", "diagnostics"});
    bool failed = false;
    for (const ShiftRow& r : rows) {
        std::vector<Cell> cells{r.A};
        for (const auto& s : r.shift) cells.emplace_back(s);
        const std::optional<double>& num = r.shift[0];
        for (int k = 1; k < 5; ++k) {
            if (num && r.shift[k] && *num != 0.0) {
                cells.emplace_back(std::fabs(*r.shift[k] - *num) / *num);
            } else {
                cells.emplace_back(std::optional<double>{});
            }
        }
        cells.emplace_back(r.diagnostics);
        w.row(cells);
        if (!r.diagnostics.empty()) {
            failed = true;
            err << "warning: A = " << r.A << ": " << r.diagnostics << '\n';
        }
    }
    return failed ? kExitNumerical : kExitOk;
}

int cmd_population(const RunConfig& c, std::ostream& out, std::ostream&) {
    const double A = required_A(c, 0.1);
    std::vector<double> omegas;
    if (c.omega_range) {
        omegas = c.omega_range->values();
    } else if (c.omega) {
        omegas = {*c.omega};
    } else {
        omegas = Range{0.99 * c.omega0, 1.01 * c.omega0, 1e-4 * c.omega0}.values();
    }
    for (double& w : omegas) w /= c.omega0;
    for (double w : omegas) scaled_params(c, A, w);
    if (!(c.kappa > 0.0)) throw std::invalid_argument("--kappa must be positive");

    const std::vector<PopulationPoint> pts = parallel_map(omegas.size(), [&](std::size_t i) {
        return population_point(scaled_params(c, A, omegas[i]), c.mode);
    });
    TableWriter w(out, c.format);
    w.comment_header("population", {kv("A", A), kv("kappa", c.kappa / c.omega0), std::string("mode=") + frame_mode_name(c.mode)});
    w.columns({"omega", "population", "population_approx"});
    std::size_t peak = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        w.row({pts[i].omega, pts[i].population, pts[i].population_approx});
        if (pts[i].population > pts[peak].population) peak = i;
    }
    if (!pts.empty()) {
        w.comment("peak omega=" + format_number(pts[peak].omega) + ", peak population=" + format_number(pts[peak].population));
    }
    return kExitOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const double A = required_A(c, 0.1);
    const double omega = (c.omega ? *c.omega : c.omega0) / c.omega0;
    const ModelParams p = scaled_params(c, A, omega);
    if (!(p.kappa > 0.0)) throw std::invalid_argument("--kappa must be positive");

    std::vector<double> nu;
    if (c.nu_range) {
        nu = c.nu_range->values();
        for (double& v : nu) v /= c.omega0;
    } else {
        const ChrwFrame frame = build_frame(p, c.mode);
        if (!(frame.rabi_tilde > 0.0)) throw std::invalid_argument("effective Rabi frequency vanishes; pass --nu-range");
        nu = symmetric_grid(omega, 2.0 * frame.rabi_tilde, 400);
    }
    std::vector<std::string> warnings;
    const SpectrumTrace trace = spectrum(p, c.mode, nu, 0, c.normalization, &warnings);
    for (const auto& msg : warnings) err << "warning: " << msg << '\n';

    TableWriter w(out, c.format);
    w.comment_header("spectrum", {kv("A", A), kv("omega", omega), kv("kappa", p.kappa),
                                  std::string("mode=") + frame_mode_name(c.mode), "n_max=" + std::to_string(trace.n_max),
                                  c.normalization == Normalization::Raw ? "normalization=raw" : "normalization=peak_unit"});
    w.columns({"nu", "S"});
    for (std::size_t i = 0; i < nu.size(); ++i) w.row({trace.nu_grid[i], trace.values[i]});
    try {
        w.comment("asymmetry_metric=" + format_number(asymmetry_metric(trace, omega)) + ", center=" + format_number(omega) +
                  ", rabi_tilde=" + format_number(trace.rabi_tilde));
    } catch (const std::invalid_argument& e) {
        w.comment(std::string("asymmetry_metric=n/a (") + e.what() + ")");
    }
    return kExitOk;
}

int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream&) {
    ValidationOptions opt;
    opt.quick = c.quick;
    opt.truncation = c.truncation;
    const std::vector<CheckResult> checks = run_validation(opt);
    TableWriter w(out, c.format);
    w.comment_header("validate", {std::string("quick=") + (c.quick ? "true" : "false"),
                                  "truncation=" + (c.truncation > 0 ? std::to_string(c.truncation) : std::string("auto"))});
    w.columns({"check", "status", "value", "threshold", "detail"});
    bool ok = true;
    for (const CheckResult& r : checks) {
        w.row({r.name, r.passed ? "PASS" : "FAIL", r.value, r.threshold, r.detail});
        ok = ok && r.passed;
    }
    return ok ? kExitOk : kExitNumerical;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"bloch-siegert-lab: Bloch-Siegert shift and dissipative observables of the Rabi model"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("bloch-siegert-lab v") + BSL_VERSION);

    RunConfig c;
    std::string A_range, omega_range, nu_range, format = "csv", mode = "chrw";
    std::vector<std::string> methods;
    bool raw = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--omega0", c.omega0, "TLS transition frequency, the unit of all outputs")->check(CLI::PositiveNumber);
        sub->add_option("--out", c.out, "output file (default: stdout)");
        sub->add_option("--format", format, "csv or tsv")->check(CLI::IsMember({"csv", "tsv"}));
    };
    auto drive = [&](CLI::App* sub) {
        CLI::Option* single = sub->add_option("--A", c.A, "driving amplitude");
        sub->add_option("--A-range", A_range, "driving amplitudes lo:hi:step")->excludes(single);
    };
    auto dissipation = [&](CLI::App* sub) {
        sub->add_option("--kappa", c.kappa, "decay rate");
        sub->add_option("--mode", mode, "chrw or rwa")->check(CLI::IsMember({"chrw", "rwa"}));
        sub->add_option("--omega", c.omega, "driving frequency");
    };

    CLI::App* table = app.add_subcommand("shift-table", "Bloch-Siegert shift by every method on an amplitude grid");
    common(table);
    drive(table);
    table->add_option("--method", methods, "chrw|floquet|shirley|pert6|asymptotic|all (comma separated)")->delimiter(',');

    CLI::App* sweep = app.add_subcommand("shift-sweep", "dense shift curves and relative deviations from the numerical shift");
    common(sweep);
    drive(sweep);

    CLI::App* pop = app.add_subcommand("population", "time-averaged excited population against driving frequency");
    common(pop);
    pop->add_option("--A", c.A, "driving amplitude");
    dissipation(pop);
    pop->add_option("--omega-range", omega_range, "driving frequencies lo:hi:step")->excludes("--omega");

    CLI::App* spec = app.add_subcommand("spectrum", "probe-pump absorption spectrum");
    common(spec);
    spec->add_option("--A", c.A, "driving amplitude");
    dissipation(spec);
    spec->add_option("--nu-range", nu_range, "probe frequencies lo:hi:step");
    spec->add_flag("--raw", raw, "skip the peak normalization");

    CLI::App* val = app.add_subcommand("validate", "oracle cross-checks with one pass/fail line each");
    common(val);
    val->add_flag("--quick", c.quick, "reduced grids");
    val->add_option("--truncation", c.truncation, "force the Floquet truncation N")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        c.format = format == "tsv" ? TableFormat::Tsv : TableFormat::Csv;
        c.mode = mode == "rwa" ? FrameMode::Rwa : FrameMode::Chrw;
        c.normalization = raw ? Normalization::Raw : Normalization::PeakUnit;
        if (!A_range.empty()) c.A_range = parse_range(A_range);
        if (!omega_range.empty()) c.omega_range = parse_range(omega_range);
        if (!nu_range.empty()) c.nu_range = parse_range(nu_range);
        for (const auto& m : methods) {
            if (m == "all") {
                c.methods.clear();
                break;
            }
            const auto parsed = parse_method(m);
            if (!parsed) throw std::invalid_argument("unknown method '" + m + "'");
            c.methods.push_back(*parsed);
        }
        if (c.kappa < 0.0) throw std::invalid_argument("--kappa must be non-negative");

        std::ofstream file;
        std::ostream* sink = &out;
        if (!c.out.empty()) {
            file.open(c.out);
            if (!file) throw std::invalid_argument("cannot open output file '" + c.out + "'");
            sink = &file;
        }

        int code = kExitOk;
        if (table->parsed()) {
            c.command = "shift-table";
            code = cmd_shift_table(c, *sink, err);
        } else if (sweep->parsed()) {
            c.command = "shift-sweep";
            code = cmd_shift_sweep(c, *sink, err);
        } else if (pop->parsed()) {
            c.command = "population";
            code = cmd_population(c, *sink, err);
        } else if (spec->parsed()) {
            c.command = "spectrum";
            code = cmd_spectrum(c, *sink, err);
        } else {
            c.command = "validate";
            code = cmd_validate(c, *sink, err);
        }
        sink->flush();
        return code;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace bsl::cli
