#include "slicesim/oracle.hpp"

#include <stdexcept>
#include <string>

namespace slicesim {

void OfflineInstance::validate() const {
    if (capacities.size() == 0)
        throw std::invalid_argument("capacities must be non-empty");
    if ((capacities <= 0.0).any())
        throw std::invalid_argument("capacities must be positive");
    if (horizon < 1)
        throw std::invalid_argument("horizon must be >= 1");
    for (const SliceRequest& request : requests) {
        request.validate(capacities.size());
        if (request.timestamp > horizon)
            throw std::invalid_argument("request " + std::to_string(request.id) +
                                        " arrives after the horizon");
    }
}

namespace {

std::int64_t last_occupied_slot(const OfflineInstance& instance) {
    std::int64_t last = 1;
    for (const SliceRequest& request : instance.requests)
        last = std::max(last, request.release_slot() - 1);
    return last;
}

class ExhaustiveSolver {
public:
    explicit ExhaustiveSolver(const OfflineInstance& instance)
        : instance_(instance),
          occupancy_(Eigen::ArrayXXd::Zero(instance.capacities.size(),
                                           last_occupied_slot(instance))),
          current_(instance.requests.size(), false),
          best_(instance.requests.size(), false),
          suffix_revenue_(instance.requests.size() + 1, 0.0) {
        for (std::size_t h = instance_.requests.size(); h-- > 0;)
            suffix_revenue_[h] = suffix_revenue_[h + 1] + instance_.requests[h].revenue;
    }

    OfflineSolution solve() {
        search(0, 0.0);
        OfflineSolution solution;
        solution.revenue = best_revenue_;
        solution.decisions.resize(static_cast<Eigen::Index>(best_.size()));
        for (std::size_t h = 0; h < best_.size(); ++h)
            solution.decisions[static_cast<Eigen::Index>(h)] = best_[h];
        return solution;
    }

private:
    bool fits(const SliceRequest& request) const {
        for (std::int64_t t = request.timestamp; t < request.release_slot(); ++t)
            for (Eigen::Index j = 0; j < instance_.capacities.size(); ++j)
                if (occupancy_(j, t - 1) + request.demand[j] >
                    instance_.capacities[j] + kAccountingTolerance)
                    return false;
        return true;
    }

    void apply(const SliceRequest& request, double sign) {
        for (std::int64_t t = request.timestamp; t < request.release_slot(); ++t)
            occupancy_.col(t - 1) += sign * request.demand;
    }

    void search(std::size_t h, double revenue) {
        if (revenue + suffix_revenue_[h] <= best_revenue_)
            return; // cannot strictly beat the incumbent
        if (h == instance_.requests.size()) {
            best_revenue_ = revenue;
            best_ = current_;
            return;
        }
        // Reject branch first: leaves are then visited in lexicographic
        // order, so the incumbent is always the smallest among ties.
        current_[h] = false;
        search(h + 1, revenue);
        const SliceRequest& request = instance_.requests[h];
        if (fits(request)) {
            apply(request, 1.0);
            current_[h] = true;
            search(h + 1, revenue + request.revenue);
            current_[h] = false;
            apply(request, -1.0);
        }
    }

    const OfflineInstance& instance_;
    Eigen::ArrayXXd occupancy_; // m x slots
    std::vector<bool> current_;
    std::vector<bool> best_;
    std::vector<double> suffix_revenue_;
    double best_revenue_ = -1.0;
};

} // namespace

OfflineSolution offline_optimal(const OfflineInstance& instance) {
    instance.validate();
    if (instance.requests.size() > kMaxOfflineRequests)
        throw std::length_error("offline solver limited to " +
                                std::to_string(kMaxOfflineRequests) + " requests");
    if (instance.requests.empty())
        return OfflineSolution{DecisionVector(0), 0.0};
    return ExhaustiveSolver(instance).solve();
}

bool feasibility_check(const DecisionVector& decisions, const OfflineInstance& instance) {
    instance.validate();
    if (static_cast<std::size_t>(decisions.size()) != instance.requests.size())
        throw std::invalid_argument("decision vector length does not match the instance");
    Eigen::ArrayXXd occupancy =
        Eigen::ArrayXXd::Zero(instance.capacities.size(), last_occupied_slot(instance));
    for (Eigen::Index h = 0; h < decisions.size(); ++h) {
        if (!decisions[h]) continue;
        const SliceRequest& request = instance.requests[static_cast<std::size_t>(h)];
        for (std::int64_t t = request.timestamp; t < request.release_slot(); ++t)
            occupancy.col(t - 1) += request.demand;
    }
    for (Eigen::Index col = 0; col < occupancy.cols(); ++col)
        if ((occupancy.col(col) > instance.capacities + kAccountingTolerance).any())
            return false;
    return true;
}

} // namespace slicesim
