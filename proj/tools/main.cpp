// qwsearch: discrete-time quantum walk spatial search on 2D grids under
// phase potentials. Subcommands cover single runs, sigma/lambda sweeps,
// regime-threshold scans with power-law fits, model comparisons, and
// potential-field dumps.
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qws/qws.hpp"

namespace fs = std::filesystem;

namespace {

struct PotentialOpts {
    std::string potential = "gaussian";
    std::optional<double> sigma;
    double lambda_c = 1.0;
    double rho = 0.0;
    std::optional<double> mu_x;
    std::optional<double> mu_y;
    double phi = qws::pi;
};

struct OutputOpts {
    std::string format = "csv";
    std::string out_dir = ".";
};

qws::Window parse_window(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--window", "expected A:B, got '" + text + "'");
    try {
        qws::Window w;
        w.first = static_cast<int>(qws::parse_long(std::string_view(text).substr(0, colon)));
        w.last = static_cast<int>(qws::parse_long(std::string_view(text).substr(colon + 1)));
        return w;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--window", "expected A:B, got '" + text + "'");
    }
}

qws::Vertex parse_target(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--target", "expected X,Y, got '" + text + "'");
    try {
        qws::Vertex v;
        v.x = static_cast<int>(qws::parse_long(std::string_view(text).substr(0, comma)));
        v.y = static_cast<int>(qws::parse_long(std::string_view(text).substr(comma + 1)));
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--target", "expected X,Y, got '" + text + "'");
    }
}

// log-spaced scan list "LO:HI:PER_DECADE"
std::vector<double> parse_log_list(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("--log-sigmas", "expected LO:HI:PER_DECADE");
    const double lo = qws::parse_double(std::string_view(text).substr(0, c1));
    const double hi = qws::parse_double(std::string_view(text).substr(c1 + 1, c2 - c1 - 1));
    const int ppd = static_cast<int>(qws::parse_long(std::string_view(text).substr(c2 + 1)));
    return qws::detail::log_spaced(lo, hi, ppd);
}

qws::PotentialField make_potential(const PotentialOpts& opt, qws::GridGeometry& geometry,
                                   bool grid_explicit, qws::Vertex target) {
    using namespace qws;
    if (opt.potential.rfind("file:", 0) == 0) {
        const fs::path path = opt.potential.substr(5);
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open field file: " + path.string());
        PotentialField field = read_field_text(in);
        if (grid_explicit && field.geometry.side_length != geometry.side_length)
            throw std::runtime_error("field file grid " +
                                     std::to_string(field.geometry.side_length) +
                                     " does not match --grid " +
                                     std::to_string(geometry.side_length));
        geometry = field.geometry;
        return field;
    }
    const double lambda = opt.lambda_c * pi;
    if (opt.potential == "gaussian") {
        if (!opt.sigma)
            throw CLI::RequiredError("--sigma (required for the gaussian potential)");
        GaussianParams params = GaussianParams::symmetric(geometry, *opt.sigma, lambda);
        params.rho = opt.rho;
        if (opt.mu_x) params.mu_x = *opt.mu_x;
        if (opt.mu_y) params.mu_y = *opt.mu_y;
        return bivariate_gaussian_field(geometry, params);
    }
    if (opt.potential == "delta") {
        OracleSpec oracle;
        oracle.marked = {target};
        oracle.phase = lambda;
        return delta_oracle_field(geometry, oracle);
    }
    if (opt.potential == "linear") return linear_field(geometry, opt.phi);
    if (opt.potential == "ackley") return ackley_field(geometry, lambda);
    if (opt.potential == "rastrigin") return rastrigin_field(geometry, lambda);
    throw CLI::ValidationError("--potential", "unknown potential '" + opt.potential + "'");
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path path(dir);
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + path.string());
    return path;
}

void add_potential_options(CLI::App* cmd, PotentialOpts& opt) {
    cmd->add_option("--potential", opt.potential,
                    "gaussian|delta|linear|ackley|rastrigin|file:PATH")
        ->default_val("gaussian");
    cmd->add_option("--sigma", opt.sigma, "gaussian standard deviation (sigma_x = sigma_y)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lambda-c", opt.lambda_c, "peak phase as a multiple of pi (lambda = c*pi)")
        ->check(CLI::NonNegativeNumber)
        ->default_val(1.0);
    cmd->add_option("--rho", opt.rho, "gaussian correlation, |rho| < 1")->default_val(0.0);
    cmd->add_option("--mu-x", opt.mu_x, "gaussian mean x (default: grid center)");
    cmd->add_option("--mu-y", opt.mu_y, "gaussian mean y (default: grid center)");
    cmd->add_option("--phi", opt.phi, "linear field slope in radians per site")
        ->default_val(qws::pi);
}

void add_output_options(CLI::App* cmd, OutputOpts& opt) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");
    cmd->add_option("--out", opt.out_dir, "output directory")->default_val(".");
}

void configure_config_file(CLI::App* cmd, std::string& config_path) {
    cmd->add_option("--config", config_path,
                    "read options from a flat key=value file (flags override it)");
}

std::string trimmed(std::string s) {
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    return s;
}

// Flat key=value config files are expanded into flags directly after the
// --config argument, so explicit flags override file values under the
// take-last policy. CLI11 only honors set_config() on the root app, hence
// the expansion happens before parsing.
std::vector<std::string> expand_config_args(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        out.push_back(args[i]);
        std::string path;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            out.push_back(args[++i]);
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            continue;
        }
        std::ifstream in(path);
        if (!in) throw CLI::FileError("cannot open config file: " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string text = trimmed(line);
            if (text.empty() || text[0] == '#' || text[0] == ';') continue;
            const auto eq = text.find('=');
            if (eq == std::string::npos || eq == 0)
                throw CLI::FileError("config " + path + " line " + std::to_string(lineno) +
                                     ": expected key=value, got '" + text + "'");
            const std::string key = trimmed(text.substr(0, eq));
            std::string value = trimmed(text.substr(eq + 1));
            if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
                value = value.substr(1, value.size() - 2);
            if (key == "config")
                throw CLI::FileError("config " + path + " line " + std::to_string(lineno) +
                                     ": nested config files are not supported");
            out.push_back("--" + key + "=" + value);
        }
    }
    return out;
}

// Attach "(config line N)" to messages that mention a config key.
std::string annotate_config_error(const std::string& config_path, const std::string& message) {
    if (config_path.empty()) return message;
    std::ifstream in(config_path);
    if (!in) return message;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trimmed(line.substr(0, eq));
        if (!key.empty() && message.find(key) != std::string::npos)
            return message + " (config line " + std::to_string(lineno) + ": '" + trimmed(line) +
                   "')";
    }
    return message;
}

void write_series_outputs(const qws::RunRecord& record, const OutputOpts& out,
                          const fs::path& dir) {
    using namespace qws;
    if (out.format == "csv") {
        const fs::path path = dir / "success_series.csv";
        save_text_file(path, [&](std::ostream& os) { write_series_csv(os, record.success_series); });
        std::cout << "wrote " << path.string() << "\n";
    } else {
        const fs::path path = dir / "success_series.json";
        save_text_file(path, [&](std::ostream& os) {
            os << series_to_json(record.success_series).dump(2) << '\n';
        });
        std::cout << "wrote " << path.string() << "\n";
    }
    for (const auto& dist : record.snapshots) {
        const fs::path path = dir / ("distribution_t" + std::to_string(dist.time_step) + ".csv");
        save_text_file(path, [&](std::ostream& os) { write_distribution_csv(os, dist); });
        std::cout << "wrote " << path.string() << "\n";
    }
}

void write_table_outputs(const qws::SweepTable& table, const OutputOpts& out, const fs::path& dir,
                         const std::string& stem) {
    using namespace qws;
    if (out.format == "csv") {
        const fs::path path = dir / (stem + ".csv");
        save_text_file(path, [&](std::ostream& os) { write_table_csv(os, table); });
        std::cout << "wrote " << path.string() << " (" << table.rows.size() << " rows)\n";
    } else {
        const fs::path path = dir / (stem + ".json");
        save_text_file(path,
                       [&](std::ostream& os) { os << table_to_json(table).dump(2) << '\n'; });
        std::cout << "wrote " << path.string() << " (" << table.rows.size() << " rows)\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-time quantum walk spatial search under phase potentials"};
    app.require_subcommand(1);

    // --- run ---------------------------------------------------------------
    struct {
        int grid = 100;
        int model = 1;
        PotentialOpts potential;
        OutputOpts output;
        std::optional<int> steps;
        std::optional<std::string> window;
        std::optional<std::string> target;
        std::vector<int> snapshots;
        std::string config;
    } run_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "single evolution, success series output");
    run_cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    run_cmd->add_option("--grid", run_opts.grid, "grid side length L")
        ->check(CLI::Range(2, 1 << 14))
        ->default_val(100);
    run_cmd->add_option("--model", run_opts.model, "walk model: 1 (Grover/flip-flop/periodic) or 2 (Hadamard/standard/reflective)")
        ->check(CLI::IsMember({1, 2}))
        ->default_val(1);
    run_cmd->add_option("--steps", run_opts.steps, "number of steps (default: window end)");
    run_cmd->add_option("--window", run_opts.window, "peak search window A:B (default 0:3L)");
    run_cmd->add_option("--target", run_opts.target, "target vertex X,Y (default: grid center)");
    run_cmd->add_option("--snapshot", run_opts.snapshots,
                        "record the position distribution at step T (repeatable)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    add_potential_options(run_cmd, run_opts.potential);
    add_output_options(run_cmd, run_opts.output);
    configure_config_file(run_cmd, run_opts.config);

    // --- sigma-sweep ---------------------------------------------------------
    struct {
        std::vector<int> grids = {100};
        std::vector<double> sigmas;
        std::optional<std::string> log_sigmas;
        double lambda_c = 1.0;
        int model = 1;
        std::optional<std::string> window;
        int jobs = 0;
        OutputOpts output;
        std::string config;
    } ss_opts;
    CLI::App* ss_cmd = app.add_subcommand("sigma-sweep", "peak probability vs sigma");
    ss_cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    ss_cmd->add_option("--grids", ss_opts.grids, "grid side lengths")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    ss_cmd->add_option("--sigmas", ss_opts.sigmas, "sigma values")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    ss_cmd->add_option("--log-sigmas", ss_opts.log_sigmas,
                       "log-spaced sigma scan LO:HI:PER_DECADE");
    ss_cmd->add_option("--lambda-c", ss_opts.lambda_c, "lambda = c*pi")
        ->check(CLI::NonNegativeNumber)
        ->default_val(1.0);
    ss_cmd->add_option("--model", ss_opts.model, "walk model")->check(CLI::IsMember({1, 2}))
        ->default_val(1);
    ss_cmd->add_option("--window", ss_opts.window, "peak window A:B (default 0:3L per grid)");
    ss_cmd->add_option("--jobs", ss_opts.jobs, "worker threads (0 = hardware)")->default_val(0);
    add_output_options(ss_cmd, ss_opts.output);
    configure_config_file(ss_cmd, ss_opts.config);

    // --- lambda-sweep ---------------------------------------------------------
    struct {
        int grid = 100;
        std::vector<double> sigmas;
        std::vector<double> c_values;
        std::optional<std::string> window;
        int jobs = 0;
        OutputOpts output;
        std::string config;
    } ls_opts;
    CLI::App* ls_cmd = app.add_subcommand("lambda-sweep", "peak probability vs c (lambda = c*pi)");
    ls_cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    ls_cmd->add_option("--grid", ls_opts.grid, "grid side length")->check(CLI::Range(2, 1 << 14))
        ->default_val(100);
    ls_cmd->add_option("--sigmas", ls_opts.sigmas, "one curve per sigma")->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->required();
    ls_cmd->add_option("--c-values", ls_opts.c_values, "c values")->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->required();
    ls_cmd->add_option("--window", ls_opts.window, "peak window A:B (default 0:3L)");
    ls_cmd->add_option("--jobs", ls_opts.jobs, "worker threads (0 = hardware)")->default_val(0);
    add_output_options(ls_cmd, ls_opts.output);
    configure_config_file(ls_cmd, ls_opts.config);

    // --- thresholds ------------------------------------------------------------
    struct {
        std::vector<int> grids;
        std::vector<double> epsilons;
        std::string criterion = "below-akr";
        std::string scan = "0.01:10000";
        int points_per_decade = 40;
        int jobs = 0;
        bool audit = false;
        OutputOpts output;
        std::string config;
    } th_opts;
    CLI::App* th_cmd =
        app.add_subcommand("thresholds", "regime-threshold sigma* scan and power-law fit");
    th_cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    th_cmd->add_option("--grids", th_opts.grids, "grid side lengths")->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->required();
    th_cmd->add_option("--epsilon", th_opts.epsilons, "threshold epsilon values")->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    th_cmd->add_option("--criterion", th_opts.criterion, "below-akr | near-uniform | both")
        ->check(CLI::IsMember({"below-akr", "near-uniform", "both"}))
        ->default_val("below-akr");
    th_cmd->add_option("--scan", th_opts.scan, "sigma scan range LO:HI")->default_val("0.01:10000");
    th_cmd->add_option("--points-per-decade", th_opts.points_per_decade, "scan density")
        ->check(CLI::PositiveNumber)
        ->default_val(40);
    th_cmd->add_flag("--audit", th_opts.audit, "scan the whole range and flag un-crossings");
    th_cmd->add_option("--jobs", th_opts.jobs, "worker threads (0 = hardware)")->default_val(0);
    add_output_options(th_cmd, th_opts.output);
    configure_config_file(th_cmd, th_opts.config);

    // --- compare-models ----------------------------------------------------------
    struct {
        int grid = 100;
        std::vector<double> sigmas;
        std::vector<double> c_values;
        double sigma_for_c = 1.0;
        double lambda_c = 1.0;
        std::string window = "0:300";
        int jobs = 0;
        OutputOpts output;
        std::string config;
    } cm_opts;
    CLI::App* cm_cmd = app.add_subcommand("compare-models", "Model 1 vs Model 2 paired peaks");
    cm_cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cm_cmd->add_option("--grid", cm_opts.grid, "grid side length")->check(CLI::Range(2, 1 << 14))
        ->default_val(100);
    cm_cmd->add_option("--sigmas", cm_opts.sigmas, "sigma scan at lambda = c*pi")->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    cm_cmd->add_option("--c-values", cm_opts.c_values, "c scan at fixed sigma")->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    cm_cmd->add_option("--sigma", cm_opts.sigma_for_c, "fixed sigma for the c scan")
        ->check(CLI::PositiveNumber)
        ->default_val(1.0);
    cm_cmd->add_option("--lambda-c", cm_opts.lambda_c, "c for the sigma scan")
        ->check(CLI::NonNegativeNumber)
        ->default_val(1.0);
    cm_cmd->add_option("--window", cm_opts.window, "peak window A:B")->default_val("0:300");
    cm_cmd->add_option("--jobs", cm_opts.jobs, "worker threads (0 = hardware)")->default_val(0);
    add_output_options(cm_cmd, cm_opts.output);
    configure_config_file(cm_cmd, cm_opts.config);

    // --- field-dump -----------------------------------------------------------------
    struct {
        int grid = 100;
        PotentialOpts potential;
        std::optional<std::string> target;
        OutputOpts output;
        std::string config;
    } fd_opts;
    CLI::App* fd_cmd = app.add_subcommand("field-dump", "write the potential grid as text");
    fd_cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    fd_cmd->add_option("--grid", fd_opts.grid, "grid side length")->check(CLI::Range(2, 1 << 14))
        ->default_val(100);
    fd_cmd->add_option("--target", fd_opts.target, "marked vertex X,Y for the delta oracle");
    add_potential_options(fd_cmd, fd_opts.potential);
    add_output_options(fd_cmd, fd_opts.output);
    configure_config_file(fd_cmd, fd_opts.config);

    CLI::App* active = nullptr;
    std::vector<std::string> raw_args(argv + 1, argv + argc);
    try {
        std::vector<std::string> args = expand_config_args(raw_args);
        std::reverse(args.begin(), args.end());  // CLI11's vector parse is back-to-front
        app.parse(std::move(args));
        active = app.get_subcommands().at(0);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::string message = e.what();
        for (std::size_t i = 0; i + 1 < raw_args.size(); ++i)
            if (raw_args[i] == "--config")
                message = annotate_config_error(raw_args[i + 1], message);
        for (const std::string& arg : raw_args)
            if (arg.rfind("--config=", 0) == 0)
                message = annotate_config_error(arg.substr(9), message);
        std::cerr << "usage error: " << message << "\n";
        return 1;
    }

    try {
        using namespace qws;
        if (active == run_cmd) {
            GridGeometry geometry(run_opts.grid);
            const bool grid_explicit = run_cmd->count("--grid") > 0;
            Vertex target = run_opts.target ? parse_target(*run_opts.target)
                                            : Vertex{geometry.center(), geometry.center()};
            PotentialField field =
                make_potential(run_opts.potential, geometry, grid_explicit, target);
            if (!run_opts.target) target = {geometry.center(), geometry.center()};

            Window window{0, 0};
            int steps = 0;
            if (run_opts.window) {
                window = parse_window(*run_opts.window);
                steps = run_opts.steps.value_or(window.last);
            } else {
                steps = run_opts.steps.value_or(default_window_last(geometry));
                window = {0, std::min(steps, default_window_last(geometry))};
            }
            if (steps < 0 || window.first < 0 || window.last < window.first ||
                window.last > steps)
                throw CLI::ValidationError(
                    "--window/--steps", "window " + std::to_string(window.first) + ":" +
                                            std::to_string(window.last) +
                                            " must lie within [0, steps=" +
                                            std::to_string(steps) + "]");
            if (!geometry.contains(target.x, target.y))
                throw CLI::ValidationError("--target", "vertex outside the grid");
            for (int t : run_opts.snapshots)
                if (t < 0 || t > steps)
                    throw CLI::ValidationError("--snapshot", "step outside [0, steps]");

            EvolutionConfig config;
            config.geometry = geometry;
            config.model = make_model(run_opts.model == 1 ? ModelLabel::Model1 : ModelLabel::Model2,
                                      geometry);
            config.field = std::move(field);
            config.steps = steps;
            config.target = target;
            config.window = window;
            config.snapshot_steps = run_opts.snapshots;
            const RunRecord record = run(config);

            const fs::path dir = prepare_out_dir(run_opts.output.out_dir);
            write_series_outputs(record, run_opts.output, dir);
            std::cout << "p_max=" << format_double(record.peak_probability)
                      << " at t=" << record.peak_step << " (window " << window.first << ":"
                      << window.last << ", p_uniform="
                      << format_double(1.0 / static_cast<double>(geometry.vertex_count()))
                      << ")\n";
        } else if (active == ss_cmd) {
            SigmaSweepSpec spec;
            spec.grid_sides = ss_opts.grids;
            spec.sigmas = ss_opts.sigmas;
            if (ss_opts.log_sigmas) {
                const auto extra = parse_log_list(*ss_opts.log_sigmas);
                spec.sigmas.insert(spec.sigmas.end(), extra.begin(), extra.end());
            }
            if (spec.sigmas.empty())
                throw CLI::RequiredError("--sigmas or --log-sigmas");
            spec.c = ss_opts.lambda_c;
            spec.model = ss_opts.model == 1 ? ModelLabel::Model1 : ModelLabel::Model2;
            if (ss_opts.window) spec.window = parse_window(*ss_opts.window);
            spec.jobs = ss_opts.jobs;
            write_table_outputs(sigma_sweep(spec), ss_opts.output,
                                prepare_out_dir(ss_opts.output.out_dir), "sigma_sweep");
        } else if (active == ls_cmd) {
            LambdaSweepSpec spec;
            spec.grid_side = ls_opts.grid;
            spec.sigmas = ls_opts.sigmas;
            spec.c_values = ls_opts.c_values;
            if (ls_opts.window) spec.window = parse_window(*ls_opts.window);
            spec.jobs = ls_opts.jobs;
            write_table_outputs(lambda_sweep(spec), ls_opts.output,
                                prepare_out_dir(ls_opts.output.out_dir), "lambda_sweep");
        } else if (active == th_cmd) {
            const auto colon = th_opts.scan.find(':');
            if (colon == std::string::npos)
                throw CLI::ValidationError("--scan", "expected LO:HI");
            ScanSettings scan;
            try {
                scan.scan_lo = parse_double(std::string_view(th_opts.scan).substr(0, colon));
                scan.scan_hi = parse_double(std::string_view(th_opts.scan).substr(colon + 1));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--scan", "expected LO:HI, got '" + th_opts.scan + "'");
            }
            if (!(scan.scan_lo > 0.0) || !(scan.scan_hi > scan.scan_lo))
                throw CLI::ValidationError("--scan", "need 0 < LO < HI");
            scan.points_per_decade = th_opts.points_per_decade;
            scan.audit_full_range = th_opts.audit;

            std::vector<ThresholdCriterion> criteria;
            if (th_opts.criterion == "both")
                criteria = {ThresholdCriterion::BelowFractionOfAkr,
                            ThresholdCriterion::CloseToUniform};
            else
                criteria = {criterion_from_name(th_opts.criterion)};

            std::vector<ThresholdResult> points;
            ordered_json fits = ordered_json::array();
            std::string fit_csv = "criterion,epsilon,exponent,prefactor,rms_residual\n";
            for (ThresholdCriterion criterion : criteria) {
                std::vector<double> epsilons = th_opts.epsilons;
                if (epsilons.empty())
                    epsilons = criterion == ThresholdCriterion::BelowFractionOfAkr
                                   ? std::vector<double>{0.9, 0.5, 0.1}
                                   : std::vector<double>{0.5};
                for (double epsilon : epsilons) {
                    ThresholdScaling scaling;
                    if (th_opts.grids.size() >= 3) {
                        scaling = threshold_scaling(th_opts.grids, epsilon, criterion, scan,
                                                    th_opts.jobs);
                    } else {
                        scaling.points.resize(th_opts.grids.size());
                        parallel_for(th_opts.grids.size(), th_opts.jobs, [&](std::size_t i) {
                            scaling.points[i] = find_sigma_threshold(criterion, th_opts.grids[i],
                                                                     epsilon, scan);
                        });
                    }
                    points.insert(points.end(), scaling.points.begin(), scaling.points.end());
                    if (th_opts.grids.size() >= 3) {
                        std::cout << criterion_name(criterion) << " eps=" << epsilon
                                  << ": sigma* ~ N^" << format_double(scaling.fit.exponent)
                                  << " (prefactor " << format_double(scaling.fit.prefactor)
                                  << ", rms residual " << format_double(scaling.fit.rms_residual)
                                  << ")\n";
                        ordered_json fit;
                        fit["criterion"] = criterion_name(criterion);
                        fit["epsilon"] = epsilon;
                        fit["exponent"] = scaling.fit.exponent;
                        fit["prefactor"] = scaling.fit.prefactor;
                        fit["rms_residual"] = scaling.fit.rms_residual;
                        fits.push_back(std::move(fit));
                        fit_csv += std::string(criterion_name(criterion)) + "," +
                                   format_double(epsilon) + "," +
                                   format_double(scaling.fit.exponent) + "," +
                                   format_double(scaling.fit.prefactor) + "," +
                                   format_double(scaling.fit.rms_residual) + "\n";
                    }
                }
            }

            const fs::path dir = prepare_out_dir(th_opts.output.out_dir);
            if (th_opts.output.format == "csv") {
                const fs::path path = dir / "thresholds.csv";
                save_text_file(path,
                               [&](std::ostream& os) { write_thresholds_csv(os, points); });
                std::cout << "wrote " << path.string() << "\n";
                if (!fits.empty()) {
                    const fs::path fit_path = dir / "scaling_fit.csv";
                    save_text_file(fit_path, [&](std::ostream& os) { os << fit_csv; });
                    std::cout << "wrote " << fit_path.string() << "\n";
                }
            } else {
                ordered_json j;
                ThresholdScaling all{points, {}};
                j = threshold_scaling_to_json(all);
                j.erase("fit");
                j["fits"] = fits;
                const fs::path path = dir / "thresholds.json";
                save_text_file(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
                std::cout << "wrote " << path.string() << "\n";
            }
        } else if (active == cm_cmd) {
            CompareModelsSpec spec;
            spec.grid_side = cm_opts.grid;
            spec.sigmas = cm_opts.sigmas;
            spec.c_values = cm_opts.c_values;
            spec.sigma_for_c = cm_opts.sigma_for_c;
            spec.c = cm_opts.lambda_c;
            spec.window = parse_window(cm_opts.window);
            spec.jobs = cm_opts.jobs;
            write_table_outputs(compare_models(spec), cm_opts.output,
                                prepare_out_dir(cm_opts.output.out_dir), "compare_models");
        } else if (active == fd_cmd) {
            GridGeometry geometry(fd_opts.grid);
            const bool grid_explicit = fd_cmd->count("--grid") > 0;
            const Vertex target = fd_opts.target ? parse_target(*fd_opts.target)
                                                 : Vertex{geometry.center(), geometry.center()};
            const PotentialField field =
                make_potential(fd_opts.potential, geometry, grid_explicit, target);
            const fs::path dir = prepare_out_dir(fd_opts.output.out_dir);
            const fs::path path = dir / "field.txt";
            save_text_file(path, [&](std::ostream& os) { write_field_text(os, field); });
            std::cout << "wrote " << path.string() << "\n";
        }
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
