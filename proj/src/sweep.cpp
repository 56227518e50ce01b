#include "slicesim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "slicesim/simulator.hpp"
#include "slicesim/trace_io.hpp"

namespace slicesim {

const char* log_base_name(LogBase base) {
    return base == LogBase::Natural ? "natural" : "two";
}

LogBase parse_log_base(const std::string& name) {
    if (name == "natural") return LogBase::Natural;
    if (name == "two") return LogBase::Two;
    throw std::invalid_argument("unknown log base '" + name + "' (expected natural or two)");
}

SweepSpec SweepSpec::defaults() {
    SweepSpec spec;
    for (int i = 1; i <= 20; ++i)
        spec.omega_values.push_back(static_cast<double>(i) / 20.0);
    for (int i = 1; i <= 10; ++i)
        spec.sigma_values.push_back(10.0 * static_cast<double>(i));
    spec.zeta_values = {10, 30, 100};
    for (std::uint64_t s = 1; s <= 10; ++s)
        spec.seeds.push_back(s);
    spec.policies = {PolicyKind::FCFS, PolicyKind::LinRP, PolicyKind::ExpRP};
    spec.capacities = ResourceVector::Ones(3);
    return spec;
}

void SweepSpec::validate() const {
    if (omega_values.empty() || sigma_values.empty() || zeta_values.empty())
        throw std::invalid_argument("omega, sigma and zeta value lists must be non-empty");
    for (double omega : omega_values)
        if (omega <= 0.0) throw std::invalid_argument("omega values must be positive");
    for (double sigma : sigma_values)
        if (sigma < 1.0) throw std::invalid_argument("sigma values must be >= 1");
    for (std::int64_t zeta : zeta_values)
        if (zeta < 1) throw std::invalid_argument("zeta values must be >= 1");
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    if (slots_per_run < 1) throw std::invalid_argument("slots_per_run must be >= 1");
    if (seeds.empty()) throw std::invalid_argument("seeds must be non-empty");
    if (policies.empty()) throw std::invalid_argument("policies must be non-empty");
    if (m < 1 || capacities.size() != m)
        throw std::invalid_argument("capacities must have length m");
    if ((capacities <= 0.0).any())
        throw std::invalid_argument("capacities must be positive");
    for (double sigma : sigma_values)
        for (std::int64_t zeta : zeta_values)
            if (has_policy(PolicyKind::LinRP) || has_policy(PolicyKind::ExpRP))
                if (sigma * static_cast<double>(zeta) <= 1.0)
                    throw std::invalid_argument(
                        "reservation policies require theta = sigma * zeta > 1");
}

bool SweepSpec::has_policy(PolicyKind kind) const {
    return std::find(policies.begin(), policies.end(), kind) != policies.end();
}

namespace {

PolicyParams make_params(const SweepSpec& spec, PolicyKind kind, double theta,
                         const ResourceVector& kappa) {
    switch (kind) {
        case PolicyKind::FCFS: return PolicyParams::fcfs(spec.m);
        case PolicyKind::LinRP: return PolicyParams::linrp(theta, kappa);
        case PolicyKind::ExpRP: return PolicyParams::exprp(theta, kappa, spec.log_base);
    }
    throw std::invalid_argument("unknown policy kind");
}

CellResult compute_cell(const SweepSpec& spec, double omega, double sigma, std::int64_t zeta) {
    CellResult cell;
    cell.omega = omega;
    cell.sigma = sigma;
    cell.zeta = zeta;

    const double theta = sigma * static_cast<double>(zeta);
    const ResourceVector kappa = heterogeneity_ratio(spec.capacities);
    std::vector<PolicyParams> params;
    params.reserve(spec.policies.size());
    for (PolicyKind kind : spec.policies)
        params.push_back(make_params(spec, kind, theta, kappa));

    for (std::uint64_t seed : spec.seeds) {
        ScenarioConfig config;
        config.lambda = spec.lambda;
        config.omega = omega;
        config.sigma = sigma;
        config.zeta = zeta;
        config.m = spec.m;
        config.capacities = spec.capacities;
        config.total_slots = spec.slots_per_run;
        config.seed = seed;
        config.alpha_mode = spec.alpha_mode;

        const RequestStream stream = generate_stream(config);
        SeedOutcome outcome;
        outcome.seed = seed;
        for (const PolicyParams& policy : params) {
            MetricsAccumulator accumulator(spec.capacities);
            const std::uint64_t hash = simulate(stream, policy, spec.capacities, accumulator);
            outcome.runs.push_back(PolicyRunResult{policy.kind, hash, accumulator.finish()});
        }
        cell.seeds.push_back(std::move(outcome));
    }

    if (spec.has_policy(PolicyKind::FCFS)) {
        auto runs_of = [&](PolicyKind kind) {
            std::vector<RunMetrics> runs;
            for (const SeedOutcome& outcome : cell.seeds)
                for (const PolicyRunResult& run : outcome.runs)
                    if (run.policy == kind) runs.push_back(run.metrics);
            return runs;
        };
        const std::vector<RunMetrics> fcfs = runs_of(PolicyKind::FCFS);
        if (spec.has_policy(PolicyKind::LinRP))
            cell.linrp_gains = policy_gains(runs_of(PolicyKind::LinRP), fcfs);
        if (spec.has_policy(PolicyKind::ExpRP))
            cell.exprp_gains = policy_gains(runs_of(PolicyKind::ExpRP), fcfs);
    }
    return cell;
}

struct CellSpec {
    double omega;
    double sigma;
    std::int64_t zeta;
};

} // namespace

SweepResult compute_sweep(const SweepSpec& spec) {
    spec.validate();

    std::vector<CellSpec> grid;
    for (std::int64_t zeta : spec.zeta_values)
        for (double sigma : spec.sigma_values)
            for (double omega : spec.omega_values)
                grid.push_back(CellSpec{omega, sigma, zeta});

    SweepResult result;
    result.cells.resize(grid.size());

    unsigned worker_count = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                             : std::thread::hardware_concurrency();
    worker_count = std::max(1u, std::min<unsigned>(worker_count, grid.size()));

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            const std::size_t index = next.fetch_add(1);
            if (index >= grid.size()) return;
            try {
                result.cells[index] =
                    compute_cell(spec, grid[index].omega, grid[index].sigma, grid[index].zeta);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (unsigned i = 0; i < worker_count; ++i)
            pool.emplace_back(worker);
        for (std::thread& thread : pool)
            thread.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);
    return result;
}

namespace {

std::string gain_or_nan(const std::optional<PolicyGains>& gains, double PolicyGains::*field) {
    return gains ? format_double((*gains).*field) : "nan";
}

void write_gain_file(const std::filesystem::path& path, const std::string& gain_prefix,
                     const std::vector<const CellResult*>& rows,
                     double PolicyGains::*gain_field, double PolicyGains::*err_field) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << "unit_value_beta_params,linrp_" << gain_prefix << "_gain,exprp_" << gain_prefix
        << "_gain,y_error_lin,y_error_exp\n";
    for (const CellResult* cell : rows) {
        out << format_double(cell->omega) << ',' << gain_or_nan(cell->linrp_gains, gain_field)
            << ',' << gain_or_nan(cell->exprp_gains, gain_field) << ','
            << gain_or_nan(cell->linrp_gains, err_field) << ','
            << gain_or_nan(cell->exprp_gains, err_field) << '\n';
    }
}

nlohmann::json gains_json(const PolicyGains& gains) {
    return nlohmann::json{{"revenue_gain", gains.revenue_gain},
                          {"revenue_err", gains.revenue_err},
                          {"acceptance_gain", gains.acceptance_gain},
                          {"acceptance_err", gains.acceptance_err},
                          {"utilization_gain", gains.utilization_gain},
                          {"utilization_err", gains.utilization_err}};
}

std::string hash_hex(std::uint64_t hash) {
    std::ostringstream out;
    out << std::hex << hash;
    return out.str();
}

} // namespace

void write_sweep_outputs(const SweepSpec& spec, const SweepResult& result) {
    std::filesystem::create_directories(spec.output_dir);

    const bool have_gains = spec.has_policy(PolicyKind::FCFS) &&
                            (spec.has_policy(PolicyKind::LinRP) ||
                             spec.has_policy(PolicyKind::ExpRP));
    if (have_gains) {
        for (std::int64_t zeta : spec.zeta_values) {
            for (double sigma : spec.sigma_values) {
                std::vector<const CellResult*> rows;
                for (const CellResult& cell : result.cells)
                    if (cell.zeta == zeta && cell.sigma == sigma)
                        rows.push_back(&cell);
                const std::string suffix =
                    std::to_string(zeta) + "_sigma" + format_double(sigma) + ".csv";
                write_gain_file(spec.output_dir / ("rev" + suffix), "rev", rows,
                                &PolicyGains::revenue_gain, &PolicyGains::revenue_err);
                write_gain_file(spec.output_dir / ("acr" + suffix), "acr", rows,
                                &PolicyGains::acceptance_gain, &PolicyGains::acceptance_err);
                write_gain_file(spec.output_dir / ("util" + suffix), "util", rows,
                                &PolicyGains::utilization_gain, &PolicyGains::utilization_err);
            }
        }
    }

    nlohmann::json summary;
    summary["lambda"] = spec.lambda;
    summary["slots_per_run"] = spec.slots_per_run;
    summary["m"] = spec.m;
    summary["alpha_mode"] = alpha_mode_name(spec.alpha_mode);
    summary["log_base"] = log_base_name(spec.log_base);
    summary["capacities"] = std::vector<double>(spec.capacities.begin(), spec.capacities.end());
    summary["omega_values"] = spec.omega_values;
    summary["sigma_values"] = spec.sigma_values;
    summary["zeta_values"] = spec.zeta_values;
    summary["seeds"] = spec.seeds;
    std::vector<std::string> policy_names;
    for (PolicyKind kind : spec.policies)
        policy_names.emplace_back(policy_name(kind));
    summary["policies"] = policy_names;

    nlohmann::json cells = nlohmann::json::array();
    for (const CellResult& cell : result.cells) {
        nlohmann::json cell_json;
        cell_json["omega"] = cell.omega;
        cell_json["sigma"] = cell.sigma;
        cell_json["zeta"] = cell.zeta;
        nlohmann::json seeds = nlohmann::json::array();
        for (const SeedOutcome& outcome : cell.seeds) {
            nlohmann::json runs = nlohmann::json::array();
            for (const PolicyRunResult& run : outcome.runs) {
                runs.push_back(nlohmann::json{
                    {"policy", policy_name(run.policy)},
                    {"stream_hash", hash_hex(run.stream_hash)},
                    {"total_requests", run.metrics.total_requests},
                    {"accepted", run.metrics.accepted},
                    {"average_revenue", run.metrics.average_revenue},
                    {"acceptance_ratio", run.metrics.acceptance_ratio},
                    {"average_utilization", run.metrics.average_utilization}});
            }
            seeds.push_back(nlohmann::json{{"seed", outcome.seed}, {"runs", runs}});
        }
        cell_json["seeds"] = seeds;
        if (cell.linrp_gains) cell_json["gains"]["linrp"] = gains_json(*cell.linrp_gains);
        if (cell.exprp_gains) cell_json["gains"]["exprp"] = gains_json(*cell.exprp_gains);
        cells.push_back(cell_json);
    }
    summary["cells"] = cells;

    std::ofstream out(spec.output_dir / "summary.json");
    if (!out)
        throw std::runtime_error("cannot open summary.json for writing");
    out << summary.dump(2) << '\n';
}

SweepResult run_sweep(const SweepSpec& spec) {
    SweepResult result = compute_sweep(spec);
    write_sweep_outputs(spec, result);
    return result;
}

} // namespace slicesim
