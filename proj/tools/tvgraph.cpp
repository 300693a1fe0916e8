// tvgraph: streaming time-varying graph learning front end.
//
// Subcommands:
//   synth    — generate a synthetic scenario and run one solver variant
//   run      — stream a CSV file (rows = time, columns = nodes) through the
//              solver
//   diagnose — run the solver alongside per-step offline solves and check the
//              tracking error bounds
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tvgl/csv_io.hpp"
#include "tvgl/errors.hpp"
#include "tvgl/ggm.hpp"
#include "tvgl/metrics.hpp"
#include "tvgl/oracle.hpp"
#include "tvgl/sbm.hpp"
#include "tvgl/sem.hpp"
#include "tvgl/solver.hpp"
#include "tvgl/synth.hpp"

namespace {

using namespace tvgl;

struct RunSpec {
    std::string model;
    std::string variant = "pc";
    int n = 28;
    long horizon = 2000;
    std::string scenario = "piecewise";
    double density = 0.2;
    double sigma_e2 = 0.5;
    double gamma = 0.99;
    double alpha = 0.01;
    double beta = 0.01;
    double lambda = 0.5;     // SEM l1 weight
    double lambda1 = 10.0;   // SBM Frobenius weight
    double lambda2 = 10.0;   // SBM log-barrier weight
    double xi = 1e-3;        // GGM lower eigenvalue bound
    double chi = 1e3;        // GGM upper eigenvalue bound
    int p_steps = -1;        // -1: take the variant's definition
    int c_steps = -1;
    int warmup = -1;         // -1: one warm-up sample per node
    std::uint64_t seed = 1;
    std::string csv;
    bool standardize = false;
    bool population_std = false;
    std::vector<long> snapshots;
    bool oracle = false;
    int jobs = 1;
    std::string out = "out";
    std::string config;
};

void add_common_flags(CLI::App* cmd, RunSpec& spec, bool needs_model) {
    // Presence of --model (or a config-file "model" key) is enforced after
    // parsing, so the config file can satisfy the requirement.
    (void)needs_model;
    cmd->add_option("--model", spec.model, "Graph model: ggm, sem or sbm")
        ->check(CLI::IsMember({"ggm", "sem", "sbm"}));
    cmd->add_option("--variant", spec.variant,
                    "Solver variant: pc, co, cc, sgd, pc1, cc1")
        ->check(CLI::IsMember({"pc", "co", "cc", "sgd", "pc1", "cc1"}));
    cmd->add_option("--gamma", spec.gamma, "Covariance forgetting factor")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--alpha", spec.alpha, "Prediction step size")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--beta", spec.beta, "Correction step size")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", spec.lambda, "SEM sparsity weight")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--lambda1", spec.lambda1, "SBM Frobenius weight")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lambda2", spec.lambda2, "SBM log-barrier weight")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--xi", spec.xi, "GGM smallest admissible eigenvalue")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--chi", spec.chi, "GGM largest admissible eigenvalue")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--p-steps", spec.p_steps,
                    "Prediction iterations per sample (variant default)");
    cmd->add_option("--c-steps", spec.c_steps,
                    "Correction iterations per sample (variant default)");
    cmd->add_option("--warmup", spec.warmup,
                    "Warm-up sample count (default: one per node)");
    cmd->add_option("--seed", spec.seed, "RNG seed");
    cmd->add_option("--snapshot", spec.snapshots,
                    "Step index whose graph estimate is exported (repeatable)");
    cmd->add_flag("--oracle", spec.oracle,
                  "Solve the offline problem at every step for the NSE column");
    cmd->add_option("--jobs", spec.jobs, "Worker threads for linear algebra")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", spec.out, "Output directory");
    cmd->add_option("--config", spec.config,
                    "Key-value configuration file; flags take precedence");
}

/// Applies `key=value` lines from a config file onto the spec's defaults.
/// Called before flag parsing so that explicit flags always win. Lines that
/// are blank or start with '#' are skipped.
void apply_config_file(const std::string& path, RunSpec& spec) {
    std::ifstream is(path);
    if (!is)
        throw std::invalid_argument("cannot open config file: " + path);
    auto trim = [](std::string v) {
        const auto a = v.find_first_not_of(" \t\r");
        const auto b = v.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string()
                                      : v.substr(a, b - a + 1);
    };
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " +
                                        std::to_string(lineno) +
                                        " is not key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "model") spec.model = value;
            else if (key == "variant") spec.variant = value;
            else if (key == "scenario") spec.scenario = value;
            else if (key == "csv") spec.csv = value;
            else if (key == "out") spec.out = value;
            else if (key == "n") spec.n = std::stoi(value);
            else if (key == "t") spec.horizon = std::stol(value);
            else if (key == "warmup") spec.warmup = std::stoi(value);
            else if (key == "p-steps") spec.p_steps = std::stoi(value);
            else if (key == "c-steps") spec.c_steps = std::stoi(value);
            else if (key == "jobs") spec.jobs = std::stoi(value);
            else if (key == "seed") spec.seed = std::stoull(value);
            else if (key == "snapshot") spec.snapshots.push_back(std::stol(value));
            else if (key == "density") spec.density = std::stod(value);
            else if (key == "sigma-e2") spec.sigma_e2 = std::stod(value);
            else if (key == "gamma") spec.gamma = std::stod(value);
            else if (key == "alpha") spec.alpha = std::stod(value);
            else if (key == "beta") spec.beta = std::stod(value);
            else if (key == "lambda") spec.lambda = std::stod(value);
            else if (key == "lambda1") spec.lambda1 = std::stod(value);
            else if (key == "lambda2") spec.lambda2 = std::stod(value);
            else if (key == "xi") spec.xi = std::stod(value);
            else if (key == "chi") spec.chi = std::stod(value);
            else if (key == "standardize") spec.standardize = value == "true" || value == "1";
            else if (key == "population-std") spec.population_std = value == "true" || value == "1";
            else if (key == "oracle") spec.oracle = value == "true" || value == "1";
            else
                throw std::invalid_argument("unknown config key: " + key);
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("bad value for config key '" + key +
                                        "': " + value);
        }
    }
}

/// Finds the --config argument ahead of the full parse so the file can seed
/// the defaults that explicit flags then override.
std::string find_config_arg(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

void add_synth_flags(CLI::App* cmd, RunSpec& spec) {
    cmd->add_option("--n", spec.n, "Number of nodes")->check(CLI::Range(2, 1 << 14));
    cmd->add_option("--t", spec.horizon, "Stream length")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--scenario", spec.scenario,
                    "Temporal pattern of the ground truth")
        ->check(CLI::IsMember({"piecewise", "smooth"}));
    cmd->add_option("--density", spec.density, "Seed graph edge probability")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--sigma-e2", spec.sigma_e2, "Innovation noise variance")
        ->check(CLI::NonNegativeNumber);
}

std::unique_ptr<ModelOracle> make_model(const RunSpec& spec,
                                        const OperatorsPtr& ops) {
    const ModelKind kind = model_from_string(spec.model);
    switch (kind) {
        case ModelKind::Ggm:
            return std::make_unique<GgmOracle>(ops, spec.xi, spec.chi);
        case ModelKind::Sem:
            return std::make_unique<SemOracle>(ops, spec.lambda);
        case ModelKind::Sbm:
            return std::make_unique<SbmOracle>(ops, spec.lambda1,
                                               spec.lambda2);
    }
    throw std::invalid_argument("unknown model: " + spec.model);
}

SolverConfig make_config(const RunSpec& spec) {
    SolverConfig cfg = SolverConfig::for_variant(
        variant_from_string(spec.variant), spec.alpha, spec.beta);
    if (spec.p_steps >= 0) cfg.p_steps = spec.p_steps;
    if (spec.c_steps >= 0) cfg.c_steps = spec.c_steps;
    return cfg;
}

CovarianceTracker make_tracker(const RunSpec& spec,
                               const std::vector<Eigen::VectorXd>& warmup) {
    const auto forced = variant_policy(variant_from_string(spec.variant));
    return CovarianceTracker(warmup,
                             forced.value_or(ForgettingPolicy::Ewma),
                             spec.gamma);
}

struct SyntheticSetup {
    GraphTrajectory traj;
    SyntheticStream stream;
    ModelKind kind;
};

SyntheticSetup build_synthetic(const RunSpec& spec) {
    const ModelKind kind = model_from_string(spec.model);
    const Schedule sched = spec.scenario == "piecewise"
                               ? Schedule::PiecewiseConstant
                               : Schedule::SmoothDecay;
    Eigen::MatrixXd s0 = generate_seed_graph(spec.n, spec.density, spec.seed);
    GraphTrajectory traj(std::move(s0), sched, spec.horizon, spec.seed + 1);
    PrecisionMap prec;
    const PrecisionMap* prec_ptr = nullptr;
    if (kind == ModelKind::Sem) traj.rescale_spectral(0.95);
    if (kind == ModelKind::Ggm) {
        prec = fit_precision_band(traj, spec.xi, spec.chi);
        prec_ptr = &prec;
    }
    const int warmup = spec.warmup >= 0 ? spec.warmup : spec.n;
    SyntheticStream stream = make_stream(traj, kind, warmup, spec.sigma_e2,
                                         spec.seed + 2, prec_ptr);
    return {std::move(traj), std::move(stream), kind};
}

OracleCallback make_oracle_callback(bool enabled) {
    if (!enabled) return nullptr;
    auto warm = std::make_shared<Eigen::VectorXd>();
    return [warm](const ModelOracle& model, long) {
        OracleOptions opts;
        OracleResult res = solve_offline(model, opts, *warm);
        *warm = res.s_star;
        return res.s_star;
    };
}

/// Writes the run artifacts: metrics CSV (wall-clock column zeroed so that
/// identical runs are byte-identical), requested snapshots, and the manifest.
void write_artifacts(const RunSpec& spec, const std::vector<RunRecord>& records,
                     int n, bool hollow, std::vector<std::string> extra_files) {
    namespace fs = std::filesystem;
    fs::create_directories(spec.out);
    std::vector<std::string> files = std::move(extra_files);

    std::vector<RunRecord> stable = records;
    for (auto& r : stable) r.step_seconds = 0.0;
    const std::string metrics_path =
        (fs::path(spec.out) / "metrics.csv").string();
    export_run(stable, metrics_path);
    files.push_back(metrics_path);

    for (long idx : spec.snapshots) {
        if (idx < 1 || idx > static_cast<long>(records.size()))
            throw data_error("snapshot index " + std::to_string(idx) +
                             " outside the run (1.." +
                             std::to_string(records.size()) + ")");
        const std::string path =
            (fs::path(spec.out) / ("snapshot_" + std::to_string(idx) + ".csv"))
                .string();
        export_snapshot(records[idx - 1].s_hat, n, hollow, path);
        files.push_back(path);
    }
    write_manifest(files, (fs::path(spec.out) / "manifest.txt").string());

    double total = 0.0;
    for (const auto& r : records) total += r.step_seconds;
    const double mean =
        records.empty() ? 0.0 : total / static_cast<double>(records.size());
    std::cout << "steps: " << records.size()
              << "  mean step wall clock [s]: " << mean << '\n';
}

int cmd_synth(const RunSpec& spec) {
    SyntheticSetup setup = build_synthetic(spec);
    auto ops = build_operators(spec.n);
    auto model = make_model(spec, ops);
    CovarianceTracker tracker = make_tracker(spec, setup.stream.warmup);
    VectorSource source(setup.stream.signals);
    auto records = run_online(*model, tracker, make_config(spec), source,
                              make_oracle_callback(spec.oracle));

    namespace fs = std::filesystem;
    fs::create_directories(spec.out);
    std::vector<std::string> names(spec.n);
    for (int j = 0; j < spec.n; ++j) names[j] = "node" + std::to_string(j + 1);
    const std::string signals_path =
        (fs::path(spec.out) / "signals.csv").string();
    write_signals_csv(signals_path, names, setup.stream.signals);

    write_artifacts(spec, records, spec.n, setup.kind != ModelKind::Ggm,
                    {signals_path});
    return 0;
}

int cmd_run(const RunSpec& spec) {
    CsvSource source(spec.csv, spec.standardize, spec.population_std);
    const int n = source.columns();
    const int warmup_count = spec.warmup >= 0 ? spec.warmup : n;
    if (source.rows() <= warmup_count)
        throw data_error(spec.csv + ": needs more than " +
                         std::to_string(warmup_count) +
                         " rows (warm-up) to stream");
    std::vector<Eigen::VectorXd> warmup;
    warmup.reserve(warmup_count);
    for (int i = 0; i < warmup_count; ++i) warmup.push_back(*source.next());

    auto ops = build_operators(n);
    auto model = make_model(spec, ops);
    CovarianceTracker tracker = make_tracker(spec, warmup);
    auto records = run_online(*model, tracker, make_config(spec), source,
                              make_oracle_callback(spec.oracle));
    write_artifacts(spec, records, n, spec.model != "ggm", {});
    return 0;
}

int cmd_diagnose(const RunSpec& spec) {
    SyntheticSetup setup = build_synthetic(spec);
    auto ops = build_operators(spec.n);
    auto model = make_model(spec, ops);
    CovarianceTracker tracker = make_tracker(spec, setup.stream.warmup);
    VectorSource source(setup.stream.signals);
    OracleOptions opts;
    std::vector<RunRecord> records;
    auto diags = diagnose_online(*model, tracker, make_config(spec), source,
                                 opts, &records);

    namespace fs = std::filesystem;
    fs::create_directories(spec.out);
    const std::string diag_path =
        (fs::path(spec.out) / "diagnostics.csv").string();
    {
        std::ofstream out(diag_path);
        out << "t,q_t,d_t,phi_t,c0_estimate,tracking_lhs,tracking_rhs,"
               "gap_lhs,gap_rhs,oracle_converged,tracking_violated,"
               "gap_violated\n";
        char buf[512];
        for (const auto& d : diags) {
            std::snprintf(buf, sizeof(buf),
                          "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                          "%.17g,%d,%d,%d\n",
                          d.t, d.q_t, d.d_t, d.phi_t, d.c0_estimate,
                          d.tracking_lhs, d.tracking_rhs, d.gap_lhs, d.gap_rhs,
                          int(d.oracle_converged), int(d.tracking_violated),
                          int(d.gap_violated));
            out << buf;
        }
    }
    write_artifacts(spec, records, spec.n, setup.kind != ModelKind::Ggm,
                    {diag_path});

    long tracking = 0, gap = 0, unconverged = 0;
    double c0 = 0.0;
    for (const auto& d : diags) {
        tracking += d.tracking_violated;
        gap += d.gap_violated;
        unconverged += !d.oracle_converged;
        c0 = std::max(c0, d.c0_estimate);
    }
    std::cout << "tracking-bound violations: " << tracking
              << "  gap-bound violations: " << gap
              << "  unconverged oracle steps: " << unconverged
              << "  C0 estimate (max ||time gradient||): " << c0 << '\n';
    return (tracking || gap) ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming time-varying graph topology learning"};
    app.require_subcommand(1);
    RunSpec spec;

    CLI::App* synth = app.add_subcommand(
        "synth", "Generate a synthetic scenario and run the solver");
    add_common_flags(synth, spec, true);
    add_synth_flags(synth, spec);

    CLI::App* run =
        app.add_subcommand("run", "Stream a CSV file through the solver");
    add_common_flags(run, spec, true);
    run->add_option("--csv", spec.csv, "CSV input (rows = time)");
    run->add_flag("--standardize", spec.standardize,
                  "Center and scale every column over the full file");
    run->add_flag("--population-std", spec.population_std,
                  "Scale by the population (1/n) standard deviation");

    CLI::App* diagnose = app.add_subcommand(
        "diagnose", "Run the solver and verify the tracking error bounds");
    add_common_flags(diagnose, spec, true);
    add_synth_flags(diagnose, spec);

    const std::string config_path = find_config_arg(argc, argv);
    if (!config_path.empty()) {
        try {
            apply_config_file(config_path, spec);
        } catch (const std::invalid_argument& e) {
            std::cerr << "usage error: " << e.what() << '\n';
            return 2;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (spec.model.empty()) {
        std::cerr << "--model is required (flag or config file)\n"
                  << "Run with --help for more information.\n";
        return 2;
    }
    if (run->parsed() && spec.csv.empty()) {
        std::cerr << "--csv is required (flag or config file)\n"
                  << "Run with --help for more information.\n";
        return 2;
    }

    if (const char* env = std::getenv("TVGRAPH_SEED")) {
        try {
            spec.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "TVGRAPH_SEED is not an integer: " << env << '\n';
            return 2;
        }
    }
    Eigen::setNbThreads(spec.jobs);

    try {
        if (synth->parsed()) return cmd_synth(spec);
        if (run->parsed()) return cmd_run(spec);
        return cmd_diagnose(spec);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const tvgl::data_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 4;
    }
}
