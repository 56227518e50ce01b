#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "slicesim/metrics.hpp"
#include "slicesim/policy.hpp"
#include "slicesim/workload.hpp"

namespace slicesim {

const char* log_base_name(LogBase base);
LogBase parse_log_base(const std::string& name);

/// Parameter grid and run setup for a batch experiment. Within each
/// (omega, sigma, zeta, seed) combination every policy is evaluated on the
/// identical request stream.
struct SweepSpec {
    std::vector<double> omega_values;
    std::vector<double> sigma_values;
    std::vector<std::int64_t> zeta_values;
    double lambda = 2.0;
    std::int64_t slots_per_run = 100000;
    std::vector<std::uint64_t> seeds;
    std::vector<PolicyKind> policies;
    AlphaMode alpha_mode = AlphaMode::UniformEqual;
    LogBase log_base = LogBase::Natural;
    Eigen::Index m = 3;
    ResourceVector capacities;
    std::filesystem::path output_dir;
    int threads = 0; ///< 0 = hardware concurrency

    /// Grid and replication defaults: omega 0.05..1 step 0.05, sigma
    /// 10..100 step 10, zeta {10,30,100}, seeds 1..10, all three policies.
    static SweepSpec defaults();

    void validate() const;
    bool has_policy(PolicyKind kind) const;
};

struct PolicyRunResult {
    PolicyKind policy = PolicyKind::FCFS;
    std::uint64_t stream_hash = 0;
    RunMetrics metrics;
};

struct SeedOutcome {
    std::uint64_t seed = 0;
    std::vector<PolicyRunResult> runs; ///< ordered as spec.policies
};

struct CellResult {
    double omega = 0.0;
    double sigma = 0.0;
    std::int64_t zeta = 0;
    std::vector<SeedOutcome> seeds;
    std::optional<PolicyGains> linrp_gains; ///< present when FCFS and LinRP ran
    std::optional<PolicyGains> exprp_gains;
};

struct SweepResult {
    std::vector<CellResult> cells; ///< ordered by (zeta, sigma, omega)
};

/// Runs the grid (parallel across cells) without touching the filesystem.
SweepResult compute_sweep(const SweepSpec& spec);

/// Writes per-(zeta, sigma) gain CSVs (rev/acr/util) and summary.json into
/// spec.output_dir.
void write_sweep_outputs(const SweepSpec& spec, const SweepResult& result);

/// compute_sweep followed by write_sweep_outputs.
SweepResult run_sweep(const SweepSpec& spec);

} // namespace slicesim
