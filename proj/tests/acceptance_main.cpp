// Acceptance suite: runs every release criterion end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "slicesim/metrics.hpp"
#include "slicesim/oracle.hpp"
#include "slicesim/simulator.hpp"
#include "slicesim/sweep.hpp"
#include "slicesim/trace_io.hpp"
#include "test_util.hpp"

using namespace slicesim;
using namespace slicesim::test;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s — %s (%s)\n", id, ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string percent(double fraction) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%+.2f%%", 100.0 * fraction);
    return buffer;
}

SweepSpec scaled_cell_spec(double omega, double sigma, std::int64_t zeta) {
    SweepSpec spec = SweepSpec::defaults();
    spec.omega_values = {omega};
    spec.sigma_values = {sigma};
    spec.zeta_values = {zeta};
    spec.threads = 0;
    return spec;
}

// Criteria 1 and 3 share the same three cells (omega=0.05, sigma=10).
std::vector<CellResult> g_directional_cells;

void criterion1_directional_revenue() {
    bool ok = true;
    double min_gain = 1e300;
    double slowest = 0.0;
    g_directional_cells.clear();
    for (std::int64_t zeta : {10, 30, 100}) {
        const auto start = std::chrono::steady_clock::now();
        const SweepResult result = compute_sweep(scaled_cell_spec(0.05, 10.0, zeta));
        const double elapsed = seconds_since(start);
        slowest = std::max(slowest, elapsed);
        const CellResult& cell = result.cells.at(0);
        g_directional_cells.push_back(cell);
        for (double gain : {cell.linrp_gains->revenue_gain, cell.exprp_gains->revenue_gain}) {
            min_gain = std::min(min_gain, gain);
            ok = ok && gain > 0.05;
        }
        ok = ok && elapsed < 60.0;
    }
    std::ostringstream detail;
    detail << "min revenue gain " << percent(min_gain) << " vs +5% floor, slowest cell "
           << std::fixed << std::setprecision(1) << slowest << "s vs 60s budget";
    report(1, "directional revenue gain at high economic inequality", ok, detail.str());
}

void criterion2_abstract_envelope() {
    SweepSpec spec = SweepSpec::defaults();
    spec.threads = 0;
    const auto start = std::chrono::steady_clock::now();
    const SweepResult result = compute_sweep(spec);
    const double elapsed = seconds_since(start);

    double max_rev_gain = -1e300;
    double max_util_magnitude = 0.0;
    std::int64_t util_observations = 0;
    std::int64_t util_nonpositive = 0;
    for (const CellResult& cell : result.cells) {
        for (const auto* gains : {&cell.linrp_gains, &cell.exprp_gains}) {
            if (!gains->has_value()) continue;
            max_rev_gain = std::max(max_rev_gain, (**gains).revenue_gain);
            const double util = (**gains).utilization_gain;
            ++util_observations;
            if (util <= 0.0) ++util_nonpositive;
            max_util_magnitude = std::max(max_util_magnitude, std::abs(util));
        }
    }
    const double nonpositive_fraction =
        static_cast<double>(util_nonpositive) / static_cast<double>(util_observations);

    const bool rev_ok = max_rev_gain >= 0.08 && max_rev_gain <= 0.20;
    const bool util_sign_ok = nonpositive_fraction >= 0.8;
    const bool util_magnitude_ok = max_util_magnitude <= 0.05;
    std::ostringstream detail;
    detail << "max revenue gain " << percent(max_rev_gain) << " vs [8%, 20%]"
           << (rev_ok ? "" : " [out of envelope]") << "; util gain <= 0 in " << std::fixed
           << std::setprecision(1) << 100.0 * nonpositive_fraction
           << "% of cells vs 80% floor; max |util gain| " << percent(max_util_magnitude)
           << " vs 5% cap" << (util_magnitude_ok ? "" : " [out of envelope]") << "; "
           << std::setprecision(0) << elapsed << "s";
    report(2, "abstract-claim envelope over the default sweep",
           rev_ok && util_sign_ok && util_magnitude_ok, detail.str());
}

void criterion3_acceptance_ratio_sign() {
    bool ok = !g_directional_cells.empty();
    double max_gain = -1e300;
    for (const CellResult& cell : g_directional_cells) {
        for (double gain :
             {cell.linrp_gains->acceptance_gain, cell.exprp_gains->acceptance_gain}) {
            max_gain = std::max(max_gain, gain);
            ok = ok && gain <= 0.0;
        }
    }
    report(3, "acceptance-ratio gain non-positive in every scaled cell", ok,
           "max acceptance gain " + percent(max_gain) + " vs 0% cap");
}

// A sink that checks capacity bounds at every trace point.
class SafetySink : public DecisionSink {
public:
    explicit SafetySink(ResourceVector capacities) : capacities_(std::move(capacities)) {}

    void on_decision(const DecisionEvent& event) override {
        ++requests_;
        const auto within = [&](const ResourceVector& u) {
            return (u <= capacities_ + kAccountingTolerance).all() &&
                   (u >= -kAccountingTolerance).all();
        };
        if (!within(event.utilization) || !within(event.utilization_pre_release)) ++violations_;
    }

    std::int64_t requests() const { return requests_; }
    std::int64_t violations() const { return violations_; }

private:
    ResourceVector capacities_;
    std::int64_t requests_ = 0;
    std::int64_t violations_ = 0;
};

void criterion4_capacity_safety() {
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::int64_t requests = 0;
    std::int64_t violations = 0;
    std::uint64_t seed = 1;
    while (requests < 1000000) {
        ScenarioConfig config;
        config.lambda = 0.5 + 3.5 * uniform(rng);
        config.omega = 0.05 + 0.95 * uniform(rng);
        config.sigma = 1.0 + 99.0 * uniform(rng);
        config.zeta = 1 + static_cast<std::int64_t>(rng() % 100);
        config.m = 2 + static_cast<Eigen::Index>(rng() % 3);
        config.capacities = ResourceVector::Zero(config.m);
        for (Eigen::Index j = 0; j < config.m; ++j)
            config.capacities[j] = 0.5 + 1.5 * uniform(rng);
        config.total_slots = 500;
        config.seed = seed++;

        const RequestStream stream = generate_stream(config);
        const ResourceVector kappa = heterogeneity_ratio(config.capacities);
        const std::vector<PolicyParams> policies = {
            PolicyParams::fcfs(config.m),
            PolicyParams::linrp(config.theta(), kappa),
            PolicyParams::exprp(config.theta(), kappa)};
        for (const PolicyParams& params : policies) {
            SafetySink sink(config.capacities);
            simulate(stream, params, config.capacities, sink);
            requests += sink.requests();
            violations += sink.violations();
        }
    }
    std::ostringstream detail;
    detail << violations << " violations across " << requests << " simulated requests";
    report(4, "capacity safety at every trace point", violations == 0, detail.str());
}

void criterion5_oracle_dominance() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(505);
    const ResourceVector capacities = vec({1, 1, 1});
    const ResourceVector kappa = heterogeneity_ratio(capacities);
    int instances = 0;
    int dominance_failures = 0;
    int feasibility_failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::vector<SliceRequest> requests = random_small_requests(rng, 12, 6);
        OfflineInstance instance;
        instance.requests = requests;
        instance.capacities = capacities;
        instance.horizon = 6;
        const OfflineSolution solution = offline_optimal(instance);
        if (!feasibility_check(solution.decisions, instance)) ++feasibility_failures;

        const RequestStream stream =
            RequestStream::pack(std::span<const SliceRequest>(requests), instance.horizon);
        const double theta = 30.0; // generator draws unit values in [1,10], lifetimes in {1..3}
        for (const PolicyParams& params :
             {PolicyParams::fcfs(3), PolicyParams::linrp(theta, kappa),
              PolicyParams::exprp(theta, kappa)}) {
            const DecisionTrace trace = replay(stream, params, capacities);
            double online = 0.0;
            DecisionVector accepted(static_cast<Eigen::Index>(trace.size()));
            for (std::size_t i = 0; i < trace.size(); ++i) {
                accepted[static_cast<Eigen::Index>(i)] = trace.records()[i].accepted;
                if (trace.records()[i].accepted) online += trace.records()[i].revenue;
            }
            if (online > solution.revenue + 1e-9 * (1.0 + solution.revenue))
                ++dominance_failures;
            if (!feasibility_check(accepted, instance)) ++feasibility_failures;
        }
        ++instances;
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << instances << " instances, " << dominance_failures << " dominance and "
           << feasibility_failures << " feasibility failures, " << std::fixed
           << std::setprecision(1) << elapsed << "s vs 60s budget";
    report(5, "offline oracle dominates every online policy",
           dominance_failures == 0 && feasibility_failures == 0 && elapsed < 60.0, detail.str());
}

void criterion6_formula_fidelity() {
    const ResourceVector r = ResourceVector::Constant(3, 0.1);
    const ResourceVector kappa = ResourceVector::Constant(3, 3.0);
    const double lin = lin_admission_cost(levels({8, 3, 0}), r, kappa, 3);
    const double lin_expected = 0.8 * std::sqrt(2.0); // 1.13137...
    const double exp = exp_admission_cost(levels({2, 1, 0}), r);
    const double exp_expected = 0.4;
    const bool ok =
        std::abs(lin - lin_expected) <= 1e-9 && std::abs(exp - exp_expected) <= 1e-9;
    std::ostringstream detail;
    detail << "linear threshold " << format_double(lin) << " vs " << format_double(lin_expected)
           << ", exponential threshold " << format_double(exp) << " vs "
           << format_double(exp_expected) << ", tolerance 1e-9";
    report(6, "hand-computed threshold examples", ok, detail.str());
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void criterion7_determinism() {
    const auto base = std::filesystem::temp_directory_path() / "slicesim_acceptance_determinism";
    std::filesystem::remove_all(base);

    SweepSpec spec = SweepSpec::defaults();
    spec.omega_values = {0.05, 0.5};
    spec.sigma_values = {10.0};
    spec.zeta_values = {10};
    spec.seeds = {1, 2, 3};
    spec.slots_per_run = 2000;
    spec.threads = 2;

    spec.output_dir = base / "a";
    const SweepResult first = run_sweep(spec);
    spec.output_dir = base / "b";
    run_sweep(spec);

    bool identical = true;
    for (const char* name :
         {"rev10_sigma10.csv", "acr10_sigma10.csv", "util10_sigma10.csv", "summary.json"}) {
        const std::string a = slurp(base / "a" / name);
        const std::string b = slurp(base / "b" / name);
        identical = identical && !a.empty() && a == b;
    }

    bool hashes_equal = true;
    for (const CellResult& cell : first.cells)
        for (const SeedOutcome& outcome : cell.seeds)
            for (const PolicyRunResult& run : outcome.runs)
                hashes_equal = hashes_equal && run.stream_hash == outcome.runs[0].stream_hash;

    std::filesystem::remove_all(base);
    std::ostringstream detail;
    detail << (identical ? "byte-identical CSVs" : "CSV mismatch") << ", stream hashes "
           << (hashes_equal ? "equal across policies" : "differ across policies");
    report(7, "repeat sweeps are byte-identical with common random numbers",
           identical && hashes_equal, detail.str());
}

void criterion8_distribution_checks() {
    const int n = 1000000;
    bool ok = true;
    std::ostringstream detail;

    {
        RandomStream stream(8001);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += static_cast<double>(sample_arrival_count(2.0, stream));
        const double mean = sum / n;
        const double se = std::sqrt(2.0 / n);
        ok = ok && std::abs(mean - 2.0) <= 3.0 * se;
        detail << "Poisson mean " << std::fixed << std::setprecision(4) << mean << " vs 2 +- "
               << 3.0 * se << "; ";
    }
    {
        ScenarioConfig config;
        config.lambda = 2.0;
        config.omega = 0.5;
        config.sigma = 10.0;
        config.zeta = 10;
        config.m = 3;
        config.capacities = ResourceVector::Ones(3);
        config.total_slots = 10;
        config.seed = 8002;
        WorkloadStreams streams = WorkloadStreams::from_seed(config.seed);
        std::vector<int> counts(11, 0);
        for (int i = 0; i < n; ++i)
            ++counts[static_cast<std::size_t>(sample_request(config, 1, i + 1, streams).lifetime)];
        const double se = std::sqrt(0.1 * 0.9 / n);
        double worst = 0.0;
        for (int d = 1; d <= 10; ++d)
            worst = std::max(worst, std::abs(static_cast<double>(counts[d]) / n - 0.1));
        ok = ok && worst <= 3.0 * se;
        detail << "lifetime freq max dev " << std::setprecision(5) << worst << " vs "
               << 3.0 * se << "; ";
    }
    {
        double worst_sigmas = 0.0;
        for (double omega : {0.05, 0.5, 1.0, 5.0}) {
            RandomStream stream(8003);
            double sum = 0.0, sum2 = 0.0;
            for (int i = 0; i < n; ++i) {
                const double y = sample_symmetric_beta(omega, stream);
                sum += y;
                sum2 += y * y;
            }
            const double mean = sum / n;
            const double variance = sum2 / n - mean * mean;
            const double mu2 = 1.0 / (8.0 * omega + 4.0);
            const double mu4 = (3.0 - 6.0 / (2.0 * omega + 3.0)) * mu2 * mu2;
            const double se_mean = std::sqrt(mu2 / n);
            const double se_var = std::sqrt((mu4 - mu2 * mu2) / n);
            worst_sigmas = std::max(worst_sigmas, std::abs(mean - 0.5) / se_mean);
            worst_sigmas = std::max(worst_sigmas, std::abs(variance - mu2) / se_var);
        }
        ok = ok && worst_sigmas <= 3.0;
        detail << "Beta moments worst deviation " << std::setprecision(2) << worst_sigmas
               << " standard errors vs 3";
    }
    report(8, "sampler moments match analytic values at 1e6 draws", ok, detail.str());
}

void criterion9_zero_state() {
    std::mt19937 rng(909);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const ResourceVector capacities = vec({1, 1, 1});
    const ResourceVector kappa = heterogeneity_ratio(capacities);
    const double theta = 100.0;
    int rejected = 0;
    int nonzero_threshold = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const ResourceVector demand =
            vec({uniform(rng), uniform(rng), uniform(rng)}); // always fits C = 1
        const std::int64_t lifetime = 1 + static_cast<std::int64_t>(rng() % 10);
        const double unit_value = 1.0 + 9.0 * uniform(rng);
        const SliceRequest request = make_request(1, 1, lifetime, demand, unit_value);
        for (const PolicyParams& params :
             {PolicyParams::fcfs(3), PolicyParams::linrp(theta, kappa),
              PolicyParams::exprp(theta, kappa)}) {
            AdmissionEngine engine(capacities, params);
            const AdmissionDecision decision = engine.process(request, nullptr);
            if (!decision.accepted) ++rejected;
            if (decision.threshold != 0.0) ++nonzero_threshold;
        }
    }
    std::ostringstream detail;
    detail << rejected << " rejections, " << nonzero_threshold
           << " nonzero thresholds over 10000 fitting requests x 3 policies";
    report(9, "empty-system pass-through for every policy",
           rejected == 0 && nonzero_threshold == 0, detail.str());
}

} // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion1_directional_revenue();
    criterion2_abstract_envelope();
    criterion3_acceptance_ratio_sign();
    criterion4_capacity_safety();
    criterion5_oracle_dominance();
    criterion6_formula_fidelity();
    criterion7_determinism();
    criterion8_distribution_checks();
    criterion9_zero_state();
    std::printf("%d of 9 criteria passed in %.0fs\n", 9 - g_failures, seconds_since(start));
    return g_failures == 0 ? 0 : 1;
}
