#include "slicesim/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace slicesim {

void TraceCollector::on_decision(const DecisionEvent& event) {
    DecisionRecord record;
    record.request_id = event.request_id;
    record.slot = event.slot;
    record.accepted = event.accepted;
    record.threshold = event.threshold;
    record.revenue = event.revenue;
    record.utilization = event.utilization;
    record.levels = event.levels;
    records_.push_back(std::move(record));
}

AdmissionEngine::AdmissionEngine(ResourceVector capacities, PolicyParams params)
    : params_(std::move(params)), state_(std::move(capacities)) {
    params_.validate();
    if (params_.m != state_.resource_count())
        throw std::invalid_argument("policy resource count does not match capacities");
    const Eigen::Index m = params_.m;
    lin_factors_ = (2.0 * params_.kappa / static_cast<double>(m)).sqrt();
    switch (params_.kind) {
        case PolicyKind::FCFS:
            level_scales_ = ResourceVector::Zero(m);
            break;
        case PolicyKind::LinRP:
            level_scales_ =
                ResourceVector::Constant(m, std::sqrt(params_.theta * static_cast<double>(m)));
            break;
        case PolicyKind::ExpRP:
            level_scales_ = (params_.theta * params_.kappa).log();
            if (params_.log_base == LogBase::Two)
                level_scales_ /= std::log(2.0);
            break;
    }
    levels_ = LevelVector::Zero(m);
    pre_release_utilization_ = ResourceVector::Zero(m);
}

void AdmissionEngine::begin_slot(std::int64_t slot) {
    if (slot < current_slot_)
        throw std::invalid_argument("slots must advance monotonically");
    current_slot_ = slot;
    if (state_.release_expired(slot) > 0)
        levels_dirty_ = true;
}

void AdmissionEngine::refresh_levels() {
    if (params_.kind != PolicyKind::FCFS)
        detail::level_kernel(state_.utilization(), state_.capacities(), level_scales_, levels_);
    levels_dirty_ = false;
}

AdmissionDecision AdmissionEngine::process(const SliceRequest& request, DecisionSink* sink) {
    if (request.timestamp > current_slot_)
        begin_slot(request.timestamp);
    else if (request.timestamp < current_slot_)
        throw std::invalid_argument("request arrives before the current slot");
    return process(request.id, request.lifetime, request.unit_value, request.revenue,
                   request.demand, sink);
}

AdmissionDecision AdmissionEngine::process(std::int64_t id, std::int64_t lifetime,
                                           double unit_value, double revenue,
                                           const Eigen::Ref<const ResourceVector>& demand,
                                           DecisionSink* sink) {
    hash_ = fold_request_hash(hash_, id, current_slot_, lifetime, unit_value, revenue, demand);

    // Threshold from the stored levels (the previous request's update).
    double threshold = 0.0;
    switch (params_.kind) {
        case PolicyKind::FCFS:
            break;
        case PolicyKind::LinRP:
            threshold = detail::linear_cost_kernel(levels_, lin_factors_, demand);
            break;
        case PolicyKind::ExpRP:
            threshold = detail::exponential_cost_kernel(levels_, demand);
            break;
    }

    const bool accepted = revenue >= threshold && state_.fits(demand);
    if (accepted) {
        state_.commit(id, demand, current_slot_ + lifetime);
        levels_dirty_ = true;
    }

    if (sink != nullptr)
        pre_release_utilization_ = state_.utilization();
    if (state_.release_expired(current_slot_) > 0)
        levels_dirty_ = true;
    if (levels_dirty_)
        refresh_levels();

    if (sink != nullptr) {
        sink->on_decision(DecisionEvent{id, current_slot_, accepted, threshold, revenue,
                                        state_.utilization(), pre_release_utilization_,
                                        levels_});
    }
    return AdmissionDecision{id, accepted, threshold};
}

std::uint64_t simulate(const RequestStream& stream, const PolicyParams& params,
                       const Eigen::Ref<const ResourceVector>& capacities, DecisionSink& sink) {
    if (stream.size() == 0)
        return kStreamHashSeed;
    if (stream.m != capacities.size())
        throw std::invalid_argument("stream resource count does not match capacities");
    AdmissionEngine engine(capacities, params);
    const Eigen::Index n = stream.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (stream.timestamps[i] > engine.current_slot())
            engine.begin_slot(stream.timestamps[i]);
        else if (stream.timestamps[i] < engine.current_slot())
            throw std::invalid_argument("request stream timestamps must be non-decreasing");
        engine.process(stream.ids[i], stream.lifetimes[i], stream.unit_values[i],
                       stream.revenues[i], stream.demands.col(i), &sink);
    }
    return engine.stream_hash();
}

DecisionTrace replay(const RequestStream& stream, const PolicyParams& params,
                     const Eigen::Ref<const ResourceVector>& capacities) {
    TraceCollector collector;
    const std::uint64_t hash = simulate(stream, params, capacities, collector);
    return DecisionTrace(params.kind, collector.take(), hash);
}

DecisionTrace run_scenario(const ScenarioConfig& config, const PolicyParams& params) {
    check_consistency(config, params);
    return replay(generate_stream(config), params, config.capacities);
}

void check_consistency(const ScenarioConfig& config, const PolicyParams& params) {
    config.validate();
    params.validate();
    if (params.m != config.m)
        throw std::invalid_argument("policy and scenario disagree on the resource count");
    if (params.kind == PolicyKind::FCFS)
        return;
    if (std::abs(params.theta - config.theta()) > kAccountingTolerance)
        throw std::invalid_argument("policy theta must equal sigma * zeta");
    const ResourceVector expected = heterogeneity_ratio(config.capacities);
    if (((params.kappa - expected).abs() > kAccountingTolerance).any())
        throw std::invalid_argument("policy kappa must be derived from the scenario capacities");
}

} // namespace slicesim
