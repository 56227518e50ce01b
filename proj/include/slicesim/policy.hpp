#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

#include "slicesim/model.hpp"

namespace slicesim {

enum class PolicyKind { FCFS, LinRP, ExpRP };

/// Base of the logarithm in the exponential reservation function.
enum class LogBase { Natural, Two };

const char* policy_name(PolicyKind kind);
PolicyKind parse_policy(const std::string& name);

/// Resource heterogeneity ratios: kappa_j = (sum_z C_z) / C_j.
ResourceVector heterogeneity_ratio(const Eigen::Ref<const ResourceVector>& capacities);

/// Parameters selecting and configuring an admission policy.
struct PolicyParams {
    PolicyKind kind = PolicyKind::FCFS;
    double theta = 1.0;    ///< willingness-to-pay ratio; > 1 for reservation policies
    Eigen::Index m = 0;    ///< resource-type count
    ResourceVector kappa;  ///< heterogeneity ratios, each >= 1
    LogBase log_base = LogBase::Natural;

    static PolicyParams fcfs(Eigen::Index m);
    static PolicyParams linrp(double theta, ResourceVector kappa);
    static PolicyParams exprp(double theta, ResourceVector kappa,
                              LogBase log_base = LogBase::Natural);

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

namespace detail {

/// max_j q_j * factor_j * demand_j with factor_j = sqrt(2 kappa_j / m).
template <class Q, class F, class R>
double linear_cost_kernel(const Q& levels, const F& factors, const R& demand) {
    double cost = 0.0;
    for (Eigen::Index j = 0; j < levels.size(); ++j) {
        const double term = static_cast<double>(levels[j]) * factors[j] * demand[j];
        if (term > cost) cost = term;
    }
    return cost;
}

/// sum_j (2^q_j - 1) * demand_j.
template <class Q, class R>
double exponential_cost_kernel(const Q& levels, const R& demand) {
    double cost = 0.0;
    for (Eigen::Index j = 0; j < levels.size(); ++j)
        cost += (std::ldexp(1.0, levels[j]) - 1.0) * demand[j];
    return cost;
}

/// floor((u_j / C_j) * scale_j), written into a preallocated level vector.
template <class U, class C, class S>
void level_kernel(const U& utilization, const C& capacities, const S& scales,
                  LevelVector& out) {
    for (Eigen::Index j = 0; j < out.size(); ++j)
        out[j] = static_cast<int>(std::floor(utilization[j] / capacities[j] * scales[j]));
}

template <class U, class C>
void check_utilization_bounds(const Eigen::ArrayBase<U>& utilization,
                              const Eigen::ArrayBase<C>& capacities) {
    if (utilization.size() != capacities.size())
        throw std::invalid_argument("utilization and capacities must have equal length");
    if ((capacities <= 0.0).any())
        throw std::invalid_argument("capacities must be positive");
    if ((utilization < -kAccountingTolerance).any() ||
        (utilization > capacities + kAccountingTolerance).any())
        throw std::invalid_argument("utilization must lie in [0, capacity]");
}

} // namespace detail

/// Linear reservation levels: q_j = floor((u_j / C_j) * sqrt(theta * m)).
template <class U, class C>
LevelVector lin_normalized_utilization(const Eigen::ArrayBase<U>& utilization,
                                       const Eigen::ArrayBase<C>& capacities,
                                       double theta, Eigen::Index m) {
    detail::check_utilization_bounds(utilization, capacities);
    if (theta * static_cast<double>(m) < 1.0)
        throw std::invalid_argument("theta * m must be >= 1");
    const double scale = std::sqrt(theta * static_cast<double>(m));
    LevelVector levels(utilization.size());
    detail::level_kernel(utilization, capacities,
                         ResourceVector::Constant(utilization.size(), scale), levels);
    return levels;
}

/// Linear admission cost: max_j q_j * sqrt(2 kappa_j / m) * r_j.
template <class Q, class R, class K>
double lin_admission_cost(const Eigen::ArrayBase<Q>& levels, const Eigen::ArrayBase<R>& demand,
                          const Eigen::ArrayBase<K>& kappa, Eigen::Index m) {
    if (levels.size() != demand.size() || levels.size() != kappa.size() || levels.size() != m)
        throw std::invalid_argument("levels, demand and kappa must all have length m");
    const ResourceVector factors = (2.0 * kappa / static_cast<double>(m)).sqrt();
    return detail::linear_cost_kernel(levels, factors, demand);
}

/// Exponential reservation levels: q_j = floor((u_j / C_j) * log(theta * kappa_j)).
template <class U, class C, class K>
LevelVector exp_normalized_utilization(const Eigen::ArrayBase<U>& utilization,
                                       const Eigen::ArrayBase<C>& capacities,
                                       double theta, const Eigen::ArrayBase<K>& kappa,
                                       LogBase log_base = LogBase::Natural) {
    detail::check_utilization_bounds(utilization, capacities);
    if (kappa.size() != utilization.size())
        throw std::invalid_argument("kappa length does not match resource count");
    if ((theta * kappa <= 1.0).any())
        throw std::invalid_argument("theta * kappa_j must exceed 1 for every resource");
    ResourceVector scales = (theta * kappa).log();
    if (log_base == LogBase::Two)
        scales /= std::log(2.0);
    LevelVector levels(utilization.size());
    detail::level_kernel(utilization, capacities, scales, levels);
    return levels;
}

/// Exponential admission cost: sum_j (2^q_j - 1) * r_j.
template <class Q, class R>
double exp_admission_cost(const Eigen::ArrayBase<Q>& levels, const Eigen::ArrayBase<R>& demand) {
    if (levels.size() != demand.size())
        throw std::invalid_argument("levels and demand must have equal length");
    return detail::exponential_cost_kernel(levels, demand);
}

/// Admission rule: accept iff revenue >= threshold and the demand fits the
/// remaining capacity in every dimension. FCFS callers pass threshold 0.
AdmissionDecision decide(const SliceRequest& request, double threshold, const SystemState& state);

} // namespace slicesim
