#include "borsuk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "borsuk/asymptotic.hpp"
#include "borsuk/bound_engine.hpp"
#include "borsuk/lifting.hpp"
#include "borsuk/oracles.hpp"
#include "borsuk/records.hpp"

namespace borsuk::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fixed(double value, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << value;
    return s.str();
}

Rational parse_lambda(const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--lambda: ") + e.what());
    }
}

// Sends rendered output to the configured file, or to `out`.
void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
    if (config.output_path) {
        write_file_atomically(*config.output_path, text);
    } else {
        out << text;
    }
}

void render_certificate_table(std::ostream& s, const BoundCertificate& cert) {
    s << "certificate for " << cert.params.describe() << '\n'
      << "  d             " << cert.d << '\n'
      << "  t0            " << fixed(cert.t0, 6) << '\n'
      << "  t1            " << cert.t1 << '\n'
      << "  adjusted      "
      << (cert.adjusted_lambda ? format_double(*cert.adjusted_lambda) : std::string("none")) << '\n'
      << "  ratio         " << cert.numerator.str() << " / " << cert.denominator.str() << '\n'
      << "  lower bound   b(l_p^" << cert.d << ") >= " << cert.lower_bound.str() << '\n';
    for (const auto& check : cert.checks) {
        s << "  [" << (check.passed ? "ok" : "FAILED") << "] " << check.name << '\n';
    }
}

const char* kCertificateCsvHeader = "n,k,p,lambda,d,t0,t1,numerator,denominator,lower_bound\n";

void render_certificate_csv_row(std::ostream& s, const BoundCertificate& cert) {
    s << cert.params.n << ',' << cert.params.k << ',' << format_double(cert.params.p) << ','
      << cert.params.lambda.str() << ',' << cert.d << ',' << format_double(cert.t0) << ','
      << cert.t1 << ',' << cert.numerator.str() << ',' << cert.denominator.str() << ','
      << cert.lower_bound.str() << '\n';
}

int run_bound(const RunConfig& config, int n, int k, double p, const std::string& lambda_text,
              std::ostream& out) {
    const Parameters params{n, k, p, parse_lambda(lambda_text)};
    const BoundResult result = theorem1_bound(params);
    std::ostringstream s;
    if (const auto* rejection = std::get_if<Rejection>(&result)) {
        switch (config.format) {
            case OutputFormat::record:
                write_rejection_record(s, *rejection);
                break;
            case OutputFormat::csv:
                s << "status,reason,detail\nrejected," << rejection->reason << ",\""
                  << rejection->detail << "\"\n";
                break;
            case OutputFormat::table:
                s << "rejected " << params.describe() << ": " << rejection->reason << " ("
                  << rejection->detail << ")\n";
                break;
        }
        emit(config, out, s.str());
        return kExitNoResult;
    }
    const auto& cert = std::get<BoundCertificate>(result);
    switch (config.format) {
        case OutputFormat::record:
            write_certificate_record(s, cert);
            break;
        case OutputFormat::csv:
            s << kCertificateCsvHeader;
            render_certificate_csv_row(s, cert);
            break;
        case OutputFormat::table:
            render_certificate_table(s, cert);
            break;
    }
    emit(config, out, s.str());
    return kExitOk;
}

int run_search(const RunConfig& config, std::int64_t d, double p, std::ostream& out) {
    if (d < 3) {
        throw UsageError("search: -d must be at least 3");
    }
    SearchResult result;
    try {
        result = search_best_bound(d, p, LambdaGrid{config.lambda_grid_m}, config.parallelism);
    } catch (const NoValidCertificate& e) {
        std::ostringstream s;
        if (config.format == OutputFormat::record) {
            s << "status = no_valid_certificate\ndetail = " << e.what() << '\n';
        } else {
            s << "no valid certificate: " << e.what() << '\n';
        }
        emit(config, out, s.str());
        return kExitNoResult;
    }
    std::ostringstream s;
    const std::size_t top = std::min<std::size_t>(10, result.ranking.size());
    switch (config.format) {
        case OutputFormat::record:
            write_certificate_record(s, result.best);
            break;
        case OutputFormat::csv:
            s << "rank,n,k,lambda,t1,bound\n";
            for (std::size_t i = 0; i < top; ++i) {
                const auto& c = result.ranking[i];
                s << i + 1 << ',' << c.n << ',' << c.k << ',' << c.lambda.str() << ',' << c.t1
                  << ',' << c.lower_bound.str() << '\n';
            }
            break;
        case OutputFormat::table:
            s << "searched " << result.evaluated << " (k, lambda) points for d = " << d
              << " (n = " << result.best.params.n << ")\n";
            render_certificate_table(s, result.best);
            s << "top candidates\n"
              << "  rank   n   k  lambda        t1  bound\n";
            for (std::size_t i = 0; i < top; ++i) {
                const auto& c = result.ranking[i];
                char line[160];
                std::snprintf(line, sizeof(line), "  %4zu %3d %3d  %-12s %3d  %s\n", i + 1, c.n,
                              c.k, c.lambda.str().c_str(), c.t1, c.lower_bound.str().c_str());
                s << line;
            }
            break;
    }
    emit(config, out, s.str());
    return kExitOk;
}

int run_curve(const RunConfig& config, const std::string& grid_spec, std::ostream& out) {
    std::vector<double> grid;
    try {
        grid = parse_p_grid(grid_spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("curve: ") + e.what());
    }
    const auto rows = emit_curve(grid, config.parallelism);
    const std::string csv = curve_csv(rows);
    if (config.output_path) {
        write_file_atomically(*config.output_path, csv);
    }
    bool any_error = false;
    if (config.format == OutputFormat::csv) {
        out << csv;
    } else {
        out << "     p   -lambda     k/n    t0/n      c(p)\n";
        for (const auto& row : rows) {
            char line[160];
            if (row.optimum) {
                const auto& o = *row.optimum;
                std::snprintf(line, sizeof(line), "%6.2f   %.4f   %.4f   %.4f   %.4f\n", o.p,
                              -o.lambda_star, o.kappa_star, o.tau_star, o.c_value);
            } else {
                any_error = true;
                std::snprintf(line, sizeof(line), "%6.2f   error: %s\n", row.p, row.error.c_str());
            }
            out << line;
        }
    }
    for (const auto& row : rows) {
        any_error = any_error || !row.optimum;
    }
    return any_error ? kExitNoResult : kExitOk;
}

int run_corollary2(const RunConfig& config, double p_min, double p_max, int steps,
                   std::ostream& out) {
    if (!(p_min >= 1.0 && p_min <= p_max) || steps < 0 || (steps == 0 && p_min != p_max)) {
        throw UsageError("corollary2: requires 1 <= p_min <= p_max and steps >= 1");
    }
    constexpr int kN = 29;
    constexpr int kK = 9;
    const Rational lambda(-1, 3);
    std::ostringstream s;
    std::optional<double> threshold;
    if (config.format == OutputFormat::csv) {
        s << "p,t0,t1,lower_bound\n";
    } else if (config.format == OutputFormat::table) {
        s << "n = 29, k = 9, lambda = -1/3, d = 406\n"
          << "       p        t0   t1  lower bound\n";
    }
    for (int i = 0; i <= steps; ++i) {
        const double p = steps == 0 ? p_min : p_min + (p_max - p_min) * i / steps;
        const BoundResult result = theorem1_bound({kN, kK, p, lambda});
        const double t0 = vertex_t0(kN, kK, p, lambda.value());
        const auto* cert = std::get_if<BoundCertificate>(&result);
        if (cert && cert->t1 == 4 && !threshold) {
            threshold = p;
        }
        const std::string t1 = cert ? std::to_string(cert->t1) : "-";
        const std::string bound =
            cert ? cert->lower_bound.str() : "rejected (" + std::get<Rejection>(result).reason + ")";
        if (config.format == OutputFormat::csv) {
            s << fixed(p, 6) << ',' << fixed(t0, 6) << ',' << t1 << ','
              << (cert ? cert->lower_bound.str() : "") << '\n';
        } else if (config.format == OutputFormat::table) {
            char line[160];
            std::snprintf(line, sizeof(line), "  %6.3f  %8.5f  %3s  %s\n", p, t0, t1.c_str(),
                          bound.c_str());
            s << line;
        } else {
            s << "row." << i << " = p=" << format_double(p) << " t0=" << format_double(t0)
              << " t1=" << t1 << " bound=" << (cert ? cert->lower_bound.str() : "none") << '\n';
        }
    }
    if (config.format == OutputFormat::record) {
        s << "threshold_p = " << (threshold ? format_double(*threshold) : "none") << '\n';
    } else if (config.format == OutputFormat::table) {
        s << "smallest grid p with t1 = 4: " << (threshold ? fixed(*threshold, 3) : "none")
          << '\n';
    }
    emit(config, out, s.str());
    return kExitOk;
}

int run_verify(const RunConfig& config, const std::string& scope, const std::string& fault,
               const std::optional<std::string>& write_config,
               const std::optional<std::string>& read_config, int n, int k,
               const std::string& lambda_text, double p, std::ostream& out) {
    if (write_config) {
        const Parameters params{n, k, p, parse_lambda(lambda_text)};
        const auto configuration = LiftedConfiguration::build(params, config.enumeration_cap);
        std::ostringstream s;
        configuration.write(s);
        write_file_atomically(*write_config, s.str());
        out << "wrote " << configuration.size() << " points of dimension " << params.dimension()
            << " to " << *write_config << '\n';
        return kExitOk;
    }
    if (read_config) {
        std::ifstream in(*read_config);
        if (!in) {
            throw std::runtime_error("cannot open '" + *read_config + "'");
        }
        const ConfigurationFile file = read_configuration(in);
        const Parameters params{file.n, file.k, p, file.lambda};
        const auto rebuilt = LiftedConfiguration::build(params, config.enumeration_cap);
        std::vector<OracleReport> reports;
        OracleReport match;
        match.oracle_name = "configuration_match";
        match.instance = params.describe();
        match.status = file.points == rebuilt.points() ? OracleStatus::passed : OracleStatus::failed;
        match.detail = std::to_string(file.points.size()) + " points read, " +
                       std::to_string(rebuilt.size()) + " rebuilt";
        reports.push_back(match);
        reports.push_back(verify_distance_law(params, config.enumeration_cap));
        std::ostringstream s;
        write_oracle_log(s, reports);
        write_oracle_summary(s, reports);
        emit(config, out, s.str());
        return batch_passed(reports) ? kExitOk : kExitVerifyFailed;
    }

    BatchOptions options;
    if (scope == "quick") {
        options.scope = VerifyScope::quick;
    } else if (scope == "full") {
        options.scope = VerifyScope::full;
    } else {
        throw UsageError("verify: --scope must be quick or full");
    }
    if (fault == "flip-b-sign") {
        options.fault = Fault::flip_b_sign;
    } else if (fault != "none") {
        throw UsageError("verify: unknown --inject-fault '" + fault + "'");
    }
    options.seed = config.seed;
    options.enumeration_cap = config.enumeration_cap;
    options.census_trials = config.census_trials;
    options.parallelism = config.parallelism;
    const auto reports = run_oracle_batch(options);
    std::ostringstream s;
    if (config.format != OutputFormat::record) {
        write_oracle_log(s, reports);
    }
    write_oracle_summary(s, reports);
    emit(config, out, s.str());
    return batch_passed(reports) ? kExitOk : kExitVerifyFailed;
}

}  // namespace

std::vector<double> parse_p_grid(const std::string& spec) {
    if (spec == "table2") {
        return table2_p_values();
    }
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream stream(spec);
        std::string item;
        while (std::getline(stream, item, ':')) {
            parts.push_back(parse_double(item));
        }
        if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
            throw std::invalid_argument("grid must be start:stop:step with step > 0, stop >= start");
        }
        const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
        for (long i = 0; i <= count; ++i) {
            values.push_back(parts[0] + parts[2] * static_cast<double>(i));
        }
    } else {
        std::stringstream stream(spec);
        std::string item;
        while (std::getline(stream, item, ',')) {
            if (!item.empty()) {
                values.push_back(parse_double(item));
            }
        }
    }
    if (values.empty()) {
        throw std::invalid_argument("empty p grid");
    }
    return values;
}

const std::vector<double>& table2_p_values() {
    static const std::vector<double> values = {
        1.00, 2.00, 2.25, 2.30, 2.35, 2.40, 2.45, 2.50, 2.75, 3.00, 3.25,
        3.50, 3.75, 4.00, 4.25, 4.50, 4.75, 5.00, 5.25, 5.50, 5.75, 6.00,
        6.25, 6.50, 6.75, 7.00, 7.50, 8.00, 8.50, 9.00, 9.50, 9.99};
    return values;
}

void apply_config_file(const std::string& path, RunConfig& config) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config file '" + path + "'");
    }
    for (const auto& [key, value] : parse_key_values(in)) {
        try {
            if (key == "enumeration_cap") {
                config.enumeration_cap = std::stoll(value);
            } else if (key == "parallelism") {
                config.parallelism = std::stoi(value);
            } else if (key == "seed") {
                config.seed = std::stoull(value);
            } else if (key == "census_trials") {
                config.census_trials = std::stoi(value);
            } else if (key == "lambda_grid_m") {
                config.lambda_grid_m = std::stoi(value);
            } else {
                throw UsageError("config file: unknown key '" + key + "'");
            }
        } catch (const std::logic_error&) {
            throw UsageError("config file: bad value for '" + key + "': '" + value + "'");
        }
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lower bounds on Borsuk numbers of l_p spaces via lifted (0,1)-vectors", "borsuk"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_file;
    std::optional<std::string> output_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> parallelism;
    std::optional<std::int64_t> enumeration_cap;
    bool csv = false;
    bool record = false;
    app.add_option("--config-file", config_file, "key = value settings; flags override them");
    app.add_option("-o,--output", output_path, "write output to this file (atomically)");
    app.add_option("--seed", seed, "seed for randomised oracle trials");
    app.add_option("--parallelism", parallelism, "workers for grids and batches")
        ->check(CLI::PositiveNumber);
    app.add_option("--enumeration-cap", enumeration_cap, "largest |V| to enumerate");
    auto* csv_flag = app.add_flag("--csv", csv, "CSV output");
    app.add_flag("--record", record, "key = value record output")->excludes(csv_flag);

    int n = 0;
    int k = 0;
    double p = 2.0;
    std::string lambda_text = "-1/2";
    auto* bound = app.add_subcommand("bound", "evaluate the bound for one (n, k, p, lambda)");
    bound->add_option("-n", n, "ground set size")->required();
    bound->add_option("-k", k, "subset size")->required();
    bound->add_option("-p", p, "norm exponent")->required();
    bound->add_option("--lambda", lambda_text, "lifting parameter, e.g. --lambda=-1/3")->required();

    std::int64_t d = 0;
    int grid_m = 0;
    auto* search = app.add_subcommand("search", "best bound over k and a lambda grid");
    search->add_option("-d", d, "target dimension")->required();
    search->add_option("-p", p, "norm exponent")->required();
    search->add_option("--grid-m", grid_m, "lambda grid -j/(2m), j = 0..m (default 512)");

    std::string grid_spec;
    auto* curve = app.add_subcommand("curve", "asymptotic constant c(p) over a p grid");
    curve->add_option("--grid", grid_spec, "start:stop:step, a comma list, or table2")->required();

    double p_min = 2.70;
    double p_max = 2.90;
    int steps = 40;
    auto* corollary = app.add_subcommand("corollary2", "sweep p for n = 29, k = 9, lambda = -1/3");
    corollary->add_option("--p-min", p_min, "first p (default 2.70)");
    corollary->add_option("--p-max", p_max, "last p (default 2.90)");
    corollary->add_option("--steps", steps, "number of intervals (default 40)");

    std::string scope = "quick";
    std::string fault = "none";
    std::optional<std::string> write_config;
    std::optional<std::string> read_config;
    auto* verify = app.add_subcommand("verify", "run the brute-force oracle suite");
    verify->add_option("--scope", scope, "quick or full");
    verify->add_option("--inject-fault", fault, "test hook: flip-b-sign");
    verify->add_option("--write-config", write_config, "write the lifted configuration for -n -k --lambda");
    verify->add_option("--read-config", read_config, "check a configuration file at -p");
    verify->add_option("-n", n, "ground set size");
    verify->add_option("-k", k, "subset size");
    verify->add_option("-p", p, "norm exponent (default 2)");
    verify->add_option("--lambda", lambda_text, "lifting parameter");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    try {
        RunConfig config;
        if (config_file) {
            apply_config_file(*config_file, config);
        }
        if (seed) {
            config.seed = *seed;
        }
        if (parallelism) {
            config.parallelism = *parallelism;
        }
        if (enumeration_cap) {
            config.enumeration_cap = *enumeration_cap;
        }
        if (grid_m > 0) {
            config.lambda_grid_m = grid_m;
        }
        config.output_path = output_path;
        config.format = csv ? OutputFormat::csv : record ? OutputFormat::record : OutputFormat::table;
        config.subcommand = app.get_subcommands().front()->get_name();

        if (*bound) {
            return run_bound(config, n, k, p, lambda_text, out);
        }
        if (*search) {
            return run_search(config, d, p, out);
        }
        if (*curve) {
            return run_curve(config, grid_spec, out);
        }
        if (*corollary) {
            return run_corollary2(config, p_min, p_max, steps, out);
        }
        if (*verify) {
            if (write_config && read_config) {
                throw UsageError("verify: --write-config and --read-config are exclusive");
            }
            return run_verify(config, scope, fault, write_config, read_config, n, k, lambda_text,
                              p, out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace borsuk::cli
