// slicesim — batch driver for online slice admission control experiments.
//
// Subcommands:
//   sweep   run the (omega, sigma, zeta) grid across policies and write
//           gain CSVs plus summary.json
//   run     run one scenario under one policy and print its metrics
//   oracle  solve a small request trace offline to optimality

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "slicesim/errors.hpp"
#include "slicesim/metrics.hpp"
#include "slicesim/oracle.hpp"
#include "slicesim/simulator.hpp"
#include "slicesim/sweep.hpp"
#include "slicesim/trace_io.hpp"

namespace {

using namespace slicesim;

constexpr std::int64_t kFullScaleSlots = 50000000;

std::vector<PolicyKind> parse_policies(const std::vector<std::string>& names) {
    std::vector<PolicyKind> policies;
    for (const std::string& name : names) {
        const PolicyKind kind = parse_policy(name);
        bool seen = false;
        for (PolicyKind existing : policies) seen = seen || existing == kind;
        if (!seen) policies.push_back(kind);
    }
    return policies;
}

ResourceVector to_resource_vector(const std::vector<double>& values) {
    ResourceVector v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t j = 0; j < values.size(); ++j)
        v[static_cast<Eigen::Index>(j)] = values[j];
    return v;
}

PolicyParams params_for(PolicyKind kind, const ScenarioConfig& config, LogBase log_base) {
    switch (kind) {
        case PolicyKind::FCFS: return PolicyParams::fcfs(config.m);
        case PolicyKind::LinRP:
            return PolicyParams::linrp(config.theta(), heterogeneity_ratio(config.capacities));
        case PolicyKind::ExpRP:
            return PolicyParams::exprp(config.theta(), heterogeneity_ratio(config.capacities),
                                       log_base);
    }
    throw std::invalid_argument("unknown policy kind");
}

struct SweepCli {
    std::vector<double> omega;
    std::vector<double> sigma;
    std::vector<std::int64_t> zeta;
    double lambda = 2.0;
    std::int64_t slots = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> policies;
    std::string alpha_mode = "uniform-equal";
    std::string log_base = "natural";
    std::vector<double> capacities;
    std::string out_dir;
    bool full_scale = false;
    int threads = 0;
};

int run_sweep_command(const SweepCli& cli) {
    SweepSpec spec = SweepSpec::defaults();
    if (!cli.omega.empty()) spec.omega_values = cli.omega;
    if (!cli.sigma.empty()) spec.sigma_values = cli.sigma;
    if (!cli.zeta.empty()) spec.zeta_values = cli.zeta;
    spec.lambda = cli.lambda;
    if (cli.slots > 0)
        spec.slots_per_run = cli.slots;
    else if (cli.full_scale)
        spec.slots_per_run = kFullScaleSlots;
    if (!cli.seeds.empty()) spec.seeds = cli.seeds;
    if (!cli.policies.empty()) spec.policies = parse_policies(cli.policies);
    spec.alpha_mode = parse_alpha_mode(cli.alpha_mode);
    spec.log_base = parse_log_base(cli.log_base);
    if (!cli.capacities.empty()) {
        spec.capacities = to_resource_vector(cli.capacities);
        spec.m = spec.capacities.size();
    }
    spec.output_dir = cli.out_dir;
    spec.threads = cli.threads;

    const std::size_t cells =
        spec.omega_values.size() * spec.sigma_values.size() * spec.zeta_values.size();
    std::cerr << "sweep: " << cells << " cells x " << spec.seeds.size() << " seeds x "
              << spec.policies.size() << " policies, " << spec.slots_per_run
              << " slots per run\n";
    run_sweep(spec);
    std::cerr << "sweep: outputs written to " << spec.output_dir.string() << "\n";
    return 0;
}

struct RunCli {
    double omega = 1.0;
    double sigma = 10.0;
    std::int64_t zeta = 10;
    double lambda = 2.0;
    std::int64_t slots = 1000;
    std::uint64_t seed = 1;
    std::string policy = "fcfs";
    std::string alpha_mode = "uniform-equal";
    std::string log_base = "natural";
    std::vector<double> capacities = {1.0, 1.0, 1.0};
    std::string requests_path;
    std::string dump_requests_path;
    std::string dump_trace_path;
};

int run_single_command(const RunCli& cli) {
    ScenarioConfig config;
    config.lambda = cli.lambda;
    config.omega = cli.omega;
    config.sigma = cli.sigma;
    config.zeta = cli.zeta;
    config.capacities = to_resource_vector(cli.capacities);
    config.m = config.capacities.size();
    config.total_slots = cli.slots;
    config.seed = cli.seed;
    config.alpha_mode = parse_alpha_mode(cli.alpha_mode);
    config.validate();

    const PolicyParams params =
        params_for(parse_policy(cli.policy), config, parse_log_base(cli.log_base));

    RequestStream stream;
    if (!cli.requests_path.empty()) {
        stream = read_request_csv(std::filesystem::path(cli.requests_path));
        if (stream.size() > 0 && stream.m != config.m)
            throw std::invalid_argument("request trace resource count does not match capacities");
    } else {
        stream = generate_stream(config);
    }
    if (!cli.dump_requests_path.empty())
        write_request_csv(std::filesystem::path(cli.dump_requests_path), stream);

    const DecisionTrace trace = replay(stream, params, config.capacities);
    if (!cli.dump_trace_path.empty())
        write_decision_csv(std::filesystem::path(cli.dump_trace_path), trace);

    const RunMetrics metrics = run_metrics(trace, config.capacities);
    std::cout << "mu=" << format_double(metrics.average_revenue)
              << " eta=" << format_double(metrics.acceptance_ratio)
              << " rho=" << format_double(metrics.average_utilization)
              << " n=" << metrics.accepted << " H=" << metrics.total_requests << "\n";
    return 0;
}

struct OracleCli {
    std::string requests_path;
    std::vector<double> capacities = {1.0, 1.0, 1.0};
    std::int64_t horizon = 0;
};

int run_oracle_command(const OracleCli& cli) {
    const RequestStream stream = read_request_csv(std::filesystem::path(cli.requests_path));
    OfflineInstance instance;
    instance.capacities = to_resource_vector(cli.capacities);
    instance.horizon = cli.horizon > 0 ? cli.horizon : std::max<std::int64_t>(1, stream.horizon);
    for (Eigen::Index i = 0; i < stream.size(); ++i)
        instance.requests.push_back(stream.request(i));

    const OfflineSolution solution = offline_optimal(instance);
    std::cout << "optimal_revenue=" << format_double(solution.revenue) << " decisions=";
    for (Eigen::Index h = 0; h < solution.decisions.size(); ++h)
        std::cout << (solution.decisions[h] ? '1' : '0');
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator for online network-slice admission control"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "key=value config file (keys like sweep.omega or under a [sweep] section); "
                   "flags take precedence");

    SweepCli sweep_cli;
    CLI::App* sweep = app.add_subcommand("sweep", "Run the parameter grid and write CSV outputs");
    sweep->add_option("--omega", sweep_cli.omega, "Economic inequality values")->delimiter(',');
    sweep->add_option("--sigma", sweep_cli.sigma, "Economic scale values")->delimiter(',');
    sweep->add_option("--zeta", sweep_cli.zeta, "Lifetime upper bounds")->delimiter(',');
    sweep->add_option("--lambda", sweep_cli.lambda, "Mean arrivals per slot")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sweep->add_option("--slots", sweep_cli.slots, "Time slots per run (default 100000)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--seeds", sweep_cli.seeds, "Replication seeds")->delimiter(',');
    sweep->add_option("--policy", sweep_cli.policies, "Policy to evaluate (repeatable)")
        ->delimiter(',');
    sweep->add_option("--alpha-mode", sweep_cli.alpha_mode, "uniform-equal or simplex-random")
        ->capture_default_str();
    sweep->add_option("--log-base", sweep_cli.log_base, "natural or two")->capture_default_str();
    sweep->add_option("--capacities", sweep_cli.capacities, "Per-resource capacities")
        ->delimiter(',');
    sweep->add_option("--out", sweep_cli.out_dir, "Output directory")->required();
    sweep->add_flag("--full-scale", sweep_cli.full_scale,
                    "Use 5e7 slots per run unless --slots is given");
    sweep->add_option("--threads", sweep_cli.threads, "Worker threads (0 = hardware)");

    RunCli run_cli;
    CLI::App* run = app.add_subcommand("run", "Run one scenario under one policy");
    run->add_option("--omega", run_cli.omega, "Economic inequality")->capture_default_str();
    run->add_option("--sigma", run_cli.sigma, "Economic scale")->capture_default_str();
    run->add_option("--zeta", run_cli.zeta, "Lifetime upper bound")->capture_default_str();
    run->add_option("--lambda", run_cli.lambda, "Mean arrivals per slot")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    run->add_option("--slots", run_cli.slots, "Time slots")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    run->add_option("--seed", run_cli.seed, "Random seed")->capture_default_str();
    run->add_option("--policy", run_cli.policy, "fcfs, linrp or exprp")->capture_default_str();
    run->add_option("--alpha-mode", run_cli.alpha_mode, "uniform-equal or simplex-random")
        ->capture_default_str();
    run->add_option("--log-base", run_cli.log_base, "natural or two")->capture_default_str();
    run->add_option("--capacities", run_cli.capacities, "Per-resource capacities")
        ->delimiter(',');
    run->add_option("--requests", run_cli.requests_path,
                    "Replay this request-trace CSV instead of generating");
    run->add_option("--dump-requests", run_cli.dump_requests_path,
                    "Write the request stream to this CSV");
    run->add_option("--dump-trace", run_cli.dump_trace_path,
                    "Write the decision trace to this CSV");

    OracleCli oracle_cli;
    CLI::App* oracle = app.add_subcommand("oracle", "Solve a small request trace offline");
    oracle->add_option("--requests", oracle_cli.requests_path, "Request-trace CSV")->required();
    oracle->add_option("--capacities", oracle_cli.capacities, "Per-resource capacities")
        ->delimiter(',');
    oracle->add_option("--horizon", oracle_cli.horizon, "Last slot (default: max timestamp)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return run_sweep_command(sweep_cli);
        if (run->parsed()) return run_single_command(run_cli);
        if (oracle->parsed()) return run_oracle_command(oracle_cli);
    } catch (const UndefinedMetric& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
