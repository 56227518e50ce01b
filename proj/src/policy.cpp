#include "slicesim/policy.hpp"

namespace slicesim {

const char* policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::FCFS: return "fcfs";
        case PolicyKind::LinRP: return "linrp";
        case PolicyKind::ExpRP: return "exprp";
    }
    return "unknown";
}

PolicyKind parse_policy(const std::string& name) {
    if (name == "fcfs" || name == "FCFS") return PolicyKind::FCFS;
    if (name == "linrp" || name == "LinRP") return PolicyKind::LinRP;
    if (name == "exprp" || name == "ExpRP") return PolicyKind::ExpRP;
    throw std::invalid_argument("unknown policy '" + name + "' (expected fcfs, linrp or exprp)");
}

ResourceVector heterogeneity_ratio(const Eigen::Ref<const ResourceVector>& capacities) {
    if (capacities.size() == 0)
        throw std::invalid_argument("capacities must be non-empty");
    if ((capacities <= 0.0).any())
        throw std::invalid_argument("capacities must be positive");
    return capacities.sum() / capacities;
}

PolicyParams PolicyParams::fcfs(Eigen::Index m) {
    PolicyParams params;
    params.kind = PolicyKind::FCFS;
    params.theta = 1.0;
    params.m = m;
    params.kappa = ResourceVector::Ones(m);
    params.validate();
    return params;
}

PolicyParams PolicyParams::linrp(double theta, ResourceVector kappa) {
    PolicyParams params;
    params.kind = PolicyKind::LinRP;
    params.theta = theta;
    params.m = kappa.size();
    params.kappa = std::move(kappa);
    params.validate();
    return params;
}

PolicyParams PolicyParams::exprp(double theta, ResourceVector kappa, LogBase log_base) {
    PolicyParams params;
    params.kind = PolicyKind::ExpRP;
    params.theta = theta;
    params.m = kappa.size();
    params.kappa = std::move(kappa);
    params.log_base = log_base;
    params.validate();
    return params;
}

void PolicyParams::validate() const {
    if (m < 1)
        throw std::invalid_argument("resource-type count m must be >= 1");
    if (kappa.size() != m)
        throw std::invalid_argument("kappa must have length m");
    if ((kappa < 1.0 - kAccountingTolerance).any())
        throw std::invalid_argument("every kappa_j must be >= 1");
    // theta only enters the reservation policies; FCFS ignores it.
    if (kind != PolicyKind::FCFS) {
        if (theta <= 1.0)
            throw std::invalid_argument("theta must exceed 1");
        if (kind == PolicyKind::ExpRP && ((theta * kappa) <= 1.0).any())
            throw std::invalid_argument("theta * kappa_j must exceed 1 for every resource");
    }
}

AdmissionDecision decide(const SliceRequest& request, double threshold, const SystemState& state) {
    if (threshold < 0.0)
        throw std::invalid_argument("threshold must be non-negative");
    const bool accepted = request.revenue >= threshold && state.fits(request.demand);
    return AdmissionDecision{request.id, accepted, threshold};
}

} // namespace slicesim
