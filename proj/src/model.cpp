#include "slicesim/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slicesim {

void SliceRequest::validate(Eigen::Index expected_resources) const {
    if (id <= 0)
        throw std::invalid_argument("request id must be positive");
    if (timestamp < 1)
        throw std::invalid_argument("timestamp must be a slot index >= 1");
    if (lifetime < 1)
        throw std::invalid_argument("lifetime must be >= 1");
    if (demand.size() != weights.size())
        throw std::invalid_argument("demand and weights must have equal length");
    if (expected_resources >= 0 && demand.size() != expected_resources)
        throw std::invalid_argument("request has " + std::to_string(demand.size()) +
                                    " resources, expected " + std::to_string(expected_resources));
    if ((demand < 0.0).any())
        throw std::invalid_argument("demand components must be non-negative");
    if ((weights <= 0.0).any() || (weights > 1.0).any())
        throw std::invalid_argument("weights must lie in (0,1]");
    if (std::abs(weights.sum() - 1.0) > kAccountingTolerance)
        throw std::invalid_argument("weights must sum to 1");
    const double expected = compute_revenue(lifetime, unit_value, weights, demand);
    if (std::abs(revenue - expected) > kAccountingTolerance)
        throw std::invalid_argument("revenue does not match lifetime * unit_value * (weights . demand)");
}

double compute_revenue(std::int64_t lifetime, double unit_value,
                       const Eigen::Ref<const ResourceVector>& weights,
                       const Eigen::Ref<const ResourceVector>& demand) {
    if (weights.size() != demand.size())
        throw std::invalid_argument("weights and demand must have equal length");
    if (std::abs(weights.sum() - 1.0) > kAccountingTolerance)
        throw std::invalid_argument("weights must sum to 1");
    return static_cast<double>(lifetime) * unit_value * (weights * demand).sum();
}

namespace {

bool releases_later(const ActiveSlice& a, const ActiveSlice& b) {
    return a.release_slot > b.release_slot; // min-heap
}

} // namespace

SystemState::SystemState(ResourceVector capacities)
    : capacities_(std::move(capacities)),
      utilization_(ResourceVector::Zero(capacities_.size())) {
    if (capacities_.size() == 0)
        throw std::invalid_argument("capacities must be non-empty");
    if ((capacities_ <= 0.0).any())
        throw std::invalid_argument("capacities must be positive");
}

bool SystemState::fits(const Eigen::Ref<const ResourceVector>& demand) const {
    if (demand.size() != capacities_.size())
        throw std::invalid_argument("demand length does not match resource count");
    return (demand <= capacities_ - utilization_).all();
}

void SystemState::commit(std::int64_t id, const Eigen::Ref<const ResourceVector>& demand,
                         std::int64_t release_slot) {
    if (!fits(demand))
        throw CapacityViolation("commit would exceed capacity for request " + std::to_string(id));
    utilization_ += demand;
    active_.push_back(ActiveSlice{release_slot, id, demand});
    std::push_heap(active_.begin(), active_.end(), releases_later);
}

void SystemState::commit(const SliceRequest& request) {
    commit(request.id, request.demand, request.release_slot());
}

std::size_t SystemState::release_expired(std::int64_t current_slot) {
    std::size_t released = 0;
    while (!active_.empty() && active_.front().release_slot <= current_slot) {
        std::pop_heap(active_.begin(), active_.end(), releases_later);
        utilization_ -= active_.back().demand;
        active_.pop_back();
        ++released;
    }
    if (released > 0)
        utilization_ = utilization_.max(0.0); // keep float residue non-negative
    return released;
}

} // namespace slicesim
