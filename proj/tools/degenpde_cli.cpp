#include "degenpde/config.hpp"
#include "degenpde/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace degenpde;

namespace {

struct CliOptions {
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    int jobs = 0;
    bool strict = false;
};

/// Executes one run; returns false when any verdict failed.
bool executeRun(const RunSpec& runIn, const CliOptions& opts, bool classifyOnly,
                bool skipChecks) {
    RunSpec run = runIn;
    if (opts.seed) run.seed = *opts.seed;

    const fs::path dir = fs::path(opts.out_dir) / run.name;
    fs::create_directories(dir);
    std::vector<std::string> artifacts;
    bool ok = true;

    if (run.mode == "harness") {
        if (classifyOnly || skipChecks) return true;
        const SolverConfig cfg;
        const VerificationReport report =
            run_randomized_suite(run.count, run.seed, run.regime, run.dim, run.nodes,
                                 run.time_steps, cfg, run.slack, opts.jobs);
        write_report_json((dir / "report.json").string(), report);
        std::ofstream text(dir / "report.txt");
        text << format_report_text(report);
        text.close();
        artifacts = {"report.json", "report.txt"};
        write_manifest(dir.string(), artifacts);
        std::cout << run.name << ": " << report.passed() << " passed, "
                  << report.failed() << " failed\n";
        return report.all_pass();
    }

    const ParabolicOperator op = build_operator(run.op);
    BoundaryPartition partition;
    try {
        partition = classify_degenerate_boundary(op, run.dom);
    } catch (const Error& ex) {
        if (opts.strict) throw;
        std::cerr << run.name << ": boundary classification failed: " << ex.what()
                  << "\n";
        return false;
    }
    write_partition_csv((dir / "partition.csv").string(), partition);
    artifacts.push_back("partition.csv");

    const SigmaPartition sigma = sigma_partition(op, run.dom);
    write_sigma_csv((dir / "sigma.csv").string(), sigma);
    artifacts.push_back("sigma.csv");

    if (run.op.builtin == "heston") {
        const BetaReport beta = heston_beta(run.op.heston, run.dom);
        write_beta_json((dir / "beta.json").string(), beta);
        artifacts.push_back("beta.json");
    }

    if (!classifyOnly && run.mode != "classify") {
        const Grid grid = build_grid(run.dom, partition, run.nodes, run.time_steps);
        SolverConfig cfg;
        cfg.theta = run.theta;
        if (run.mode == "solve") {
            ProblemData data;
            data.f = field_from_expr(run.f_expr, run.op.dim);
            data.g = field_from_expr(run.g_expr, run.op.dim);
            if (!run.ghost_expr.empty())
                data.ghost = field_from_expr(run.ghost_expr, run.op.dim);
            const SolveResult solved =
                solve_terminal_value_problem(op, grid, data, cfg);
            write_solution_csv((dir / "solution.csv").string(), grid, solved.u);
            artifacts.push_back("solution.csv");
            ok = solved.monotonicity.pass;
        } else {
            ObstacleData data;
            data.f = field_from_expr(run.f_expr, run.op.dim);
            data.g = field_from_expr(run.g_expr, run.op.dim);
            data.psi = field_from_expr(run.psi_expr, run.op.dim);
            const ObstacleResult solved =
                solve_obstacle_problem(op, grid, data, cfg, PsorConfig{});
            write_solution_csv((dir / "solution.csv").string(), grid, solved.u);
            write_exercise_csv((dir / "exercise.csv").string(), grid,
                               solved.exercise);
            artifacts.push_back("solution.csv");
            artifacts.push_back("exercise.csv");
        }
    }

    write_manifest(dir.string(), artifacts);
    std::cout << run.name << ": wrote " << artifacts.size() << " artifacts to "
              << dir.string() << "\n";
    return ok;
}

int executeSuite(const std::string& configPath, const CliOptions& opts,
                 bool classifyOnly, bool skipChecks) {
    const SuiteConfig suite = load_suite_config(configPath);
    CliOptions effective = opts;
    if (effective.jobs == 0) effective.jobs = suite.jobs;

    bool allOk = true;
    for (const auto& run : suite.runs) {
        try {
            allOk = executeRun(run, effective, classifyOnly, skipChecks) && allOk;
        } catch (const std::exception& ex) {
            std::cerr << run.name << ": error: " << ex.what() << "\n";
            allOk = false;
            if (opts.strict) break;
        }
    }
    return allOk ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary-degenerate parabolic solver and verification toolkit"};
    app.require_subcommand(1);

    CliOptions opts;
    app.add_option("--out", opts.out_dir, "Output directory");
    std::uint64_t seedValue = 0;
    auto* seedOpt = app.add_option("--seed", seedValue, "Override run seeds");
    app.add_option("--jobs", opts.jobs, "Parallel instance evaluations");
    app.add_flag("--strict", opts.strict,
                 "Ambiguous boundary classification becomes fatal");

    std::string configPath, builtinName;
    auto* runCmd = app.add_subcommand("run", "Run a suite with all checks");
    runCmd->add_option("config", configPath, "Suite configuration")->required();
    auto* classifyCmd =
        app.add_subcommand("classify", "Boundary and characteristic classification only");
    classifyCmd->add_option("config", configPath, "Suite configuration")->required();
    auto* solveCmd = app.add_subcommand("solve", "Solve runs without checks");
    solveCmd->add_option("config", configPath, "Suite configuration")->required();
    auto* describeCmd = app.add_subcommand("describe", "Describe a builtin operator");
    describeCmd->add_option("builtin", builtinName, "Builtin name")->required();

    CLI11_PARSE(app, argc, argv);
    if (seedOpt->count() > 0) opts.seed = seedValue;

    try {
        if (describeCmd->parsed()) {
            std::cout << describe_builtin(builtinName);
            return 0;
        }
        if (classifyCmd->parsed()) return executeSuite(configPath, opts, true, true);
        if (solveCmd->parsed()) return executeSuite(configPath, opts, false, true);
        return executeSuite(configPath, opts, false, false);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
