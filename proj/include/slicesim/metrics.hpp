#pragma once

#include <cstdint>
#include <span>

#include "slicesim/model.hpp"
#include "slicesim/simulator.hpp"

namespace slicesim {

/// Aggregate per-run metrics over all received requests.
struct RunMetrics {
    std::int64_t total_requests = 0;   ///< |H|
    std::int64_t accepted = 0;         ///< n
    double average_revenue = 0.0;      ///< mu: accepted revenue / |H|
    double acceptance_ratio = 0.0;     ///< eta: n / |H|
    double average_utilization = 0.0;  ///< rho: mean of sum_j u_j / C_j
};

/// Which utilization snapshot feeds the average-utilization metric.
enum class UtilizationSampling { PostRelease, PreRelease };

/// Accepted revenue divided by the number of received requests.
double average_revenue(const DecisionTrace& trace);

/// Accepted count divided by the number of received requests.
double acceptance_ratio(const DecisionTrace& trace);

/// Mean over requests of the capacity-normalized utilization sum.
double average_utilization(const DecisionTrace& trace,
                           const Eigen::Ref<const ResourceVector>& capacities);

/// (policy - baseline) / baseline. Throws UndefinedMetric on a zero baseline.
double relative_gain(double policy_value, double baseline_value);

struct ConfidenceInterval {
    double mean = 0.0;
    double half_width = 0.0;
};

/// Normal-approximation confidence interval for the mean of the samples.
/// Supported levels: 0.95, 0.99, 0.999 (default).
ConfidenceInterval confidence_interval(std::span<const double> samples, double level = 0.999);

/// Streams per-decision events into RunMetrics without storing a trace.
class MetricsAccumulator : public DecisionSink {
public:
    explicit MetricsAccumulator(ResourceVector capacities,
                                UtilizationSampling sampling = UtilizationSampling::PostRelease);

    void on_decision(const DecisionEvent& event) override;

    /// Throws UndefinedMetric when no request was observed.
    RunMetrics finish() const;

private:
    ResourceVector capacities_;
    UtilizationSampling sampling_;
    std::int64_t total_ = 0;
    std::int64_t accepted_ = 0;
    double revenue_sum_ = 0.0;
    double utilization_sum_ = 0.0;
};

/// Convenience: all three metrics from a collected trace.
RunMetrics run_metrics(const DecisionTrace& trace,
                       const Eigen::Ref<const ResourceVector>& capacities);

/// Relative gains of one policy versus FCFS with per-metric 99.9% confidence
/// half-widths across replications.
struct PolicyGains {
    double revenue_gain = 0.0;
    double acceptance_gain = 0.0;
    double utilization_gain = 0.0;
    double revenue_err = 0.0;
    double acceptance_err = 0.0;
    double utilization_err = 0.0;
};

/// Computes per-seed gains of a policy against FCFS and aggregates them.
/// Both spans must align seed-by-seed (common random numbers). With a single
/// replication the half-widths are reported as 0.
PolicyGains policy_gains(std::span<const RunMetrics> policy_runs,
                         std::span<const RunMetrics> baseline_runs);

} // namespace slicesim
