#include "slicesim/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace slicesim {

namespace {

void require_nonempty(const DecisionTrace& trace) {
    if (trace.empty())
        throw UndefinedMetric("metric undefined on an empty trace");
}

double z_score(double level) {
    // Two-sided standard-normal quantiles for the supported levels.
    if (level == 0.999) return 3.2905267314919255;
    if (level == 0.99) return 2.5758293035489004;
    if (level == 0.95) return 1.959963984540054;
    throw std::invalid_argument("unsupported confidence level");
}

} // namespace

double average_revenue(const DecisionTrace& trace) {
    require_nonempty(trace);
    double accepted_revenue = 0.0;
    for (const DecisionRecord& record : trace.records())
        if (record.accepted) accepted_revenue += record.revenue;
    return accepted_revenue / static_cast<double>(trace.size());
}

double acceptance_ratio(const DecisionTrace& trace) {
    require_nonempty(trace);
    std::int64_t accepted = 0;
    for (const DecisionRecord& record : trace.records())
        accepted += record.accepted ? 1 : 0;
    return static_cast<double>(accepted) / static_cast<double>(trace.size());
}

double average_utilization(const DecisionTrace& trace,
                           const Eigen::Ref<const ResourceVector>& capacities) {
    require_nonempty(trace);
    double total = 0.0;
    for (const DecisionRecord& record : trace.records()) {
        if (record.utilization.size() != capacities.size())
            throw std::invalid_argument("trace resource count does not match capacities");
        total += (record.utilization / capacities).sum();
    }
    return total / static_cast<double>(trace.size());
}

double relative_gain(double policy_value, double baseline_value) {
    if (baseline_value == 0.0)
        throw UndefinedMetric("relative gain undefined for a zero baseline");
    return (policy_value - baseline_value) / baseline_value;
}

ConfidenceInterval confidence_interval(std::span<const double> samples, double level) {
    if (samples.size() < 2)
        throw UndefinedMetric("confidence interval requires at least two samples");
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double stddev = std::sqrt(ss / (n - 1.0));
    return ConfidenceInterval{mean, z_score(level) * stddev / std::sqrt(n)};
}

MetricsAccumulator::MetricsAccumulator(ResourceVector capacities, UtilizationSampling sampling)
    : capacities_(std::move(capacities)), sampling_(sampling) {}

void MetricsAccumulator::on_decision(const DecisionEvent& event) {
    ++total_;
    if (event.accepted) {
        ++accepted_;
        revenue_sum_ += event.revenue;
    }
    const ResourceVector& u = sampling_ == UtilizationSampling::PostRelease
                                  ? event.utilization
                                  : event.utilization_pre_release;
    utilization_sum_ += (u / capacities_).sum();
}

RunMetrics MetricsAccumulator::finish() const {
    if (total_ == 0)
        throw UndefinedMetric("metrics undefined for a run without requests");
    RunMetrics metrics;
    metrics.total_requests = total_;
    metrics.accepted = accepted_;
    const double n = static_cast<double>(total_);
    metrics.average_revenue = revenue_sum_ / n;
    metrics.acceptance_ratio = static_cast<double>(accepted_) / n;
    metrics.average_utilization = utilization_sum_ / n;
    return metrics;
}

RunMetrics run_metrics(const DecisionTrace& trace,
                       const Eigen::Ref<const ResourceVector>& capacities) {
    require_nonempty(trace);
    RunMetrics metrics;
    metrics.total_requests = static_cast<std::int64_t>(trace.size());
    std::int64_t accepted = 0;
    for (const DecisionRecord& record : trace.records())
        accepted += record.accepted ? 1 : 0;
    metrics.accepted = accepted;
    metrics.average_revenue = average_revenue(trace);
    metrics.acceptance_ratio = acceptance_ratio(trace);
    metrics.average_utilization = average_utilization(trace, capacities);
    return metrics;
}

PolicyGains policy_gains(std::span<const RunMetrics> policy_runs,
                         std::span<const RunMetrics> baseline_runs) {
    if (policy_runs.size() != baseline_runs.size())
        throw std::invalid_argument("policy and baseline replication counts differ");
    if (policy_runs.empty())
        throw UndefinedMetric("gains require at least one replication");

    std::vector<double> rev, acr, util;
    rev.reserve(policy_runs.size());
    acr.reserve(policy_runs.size());
    util.reserve(policy_runs.size());
    for (std::size_t i = 0; i < policy_runs.size(); ++i) {
        rev.push_back(relative_gain(policy_runs[i].average_revenue,
                                    baseline_runs[i].average_revenue));
        acr.push_back(relative_gain(policy_runs[i].acceptance_ratio,
                                    baseline_runs[i].acceptance_ratio));
        util.push_back(relative_gain(policy_runs[i].average_utilization,
                                     baseline_runs[i].average_utilization));
    }

    PolicyGains gains;
    if (policy_runs.size() == 1) {
        gains.revenue_gain = rev[0];
        gains.acceptance_gain = acr[0];
        gains.utilization_gain = util[0];
        return gains;
    }
    const ConfidenceInterval r = confidence_interval(rev);
    const ConfidenceInterval a = confidence_interval(acr);
    const ConfidenceInterval u = confidence_interval(util);
    gains.revenue_gain = r.mean;
    gains.acceptance_gain = a.mean;
    gains.utilization_gain = u.mean;
    gains.revenue_err = r.half_width;
    gains.acceptance_err = a.half_width;
    gains.utilization_err = u.half_width;
    return gains;
}

} // namespace slicesim
