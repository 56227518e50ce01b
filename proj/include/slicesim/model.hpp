#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "slicesim/errors.hpp"

namespace slicesim {

/// One entry per resource type, in normalized resource units.
using ResourceVector = Eigen::ArrayXd;

/// Integer scarcity levels (normalized utilization), one per resource type.
using LevelVector = Eigen::ArrayXi;

/// Absolute tolerance for all floating-point resource accounting checks.
inline constexpr double kAccountingTolerance = 1e-9;

/// A network-slice request: demand vector, lifetime in slots, arrival slot,
/// and the revenue its admission grants.
struct SliceRequest {
    std::int64_t id = 0;        ///< monotone request index, 1-based
    std::int64_t timestamp = 0; ///< arrival slot, 1-based
    std::int64_t lifetime = 0;  ///< number of occupied slots
    ResourceVector demand;      ///< requested amount per resource
    double unit_value = 0.0;    ///< price per logical resource unit per slot
    ResourceVector weights;     ///< per-resource coefficients, sum to 1
    double revenue = 0.0;       ///< lifetime * unit_value * (weights . demand)

    /// First slot at which the slice no longer occupies resources. A request
    /// admitted at slot t with lifetime d occupies slots t .. t+d-1.
    std::int64_t release_slot() const { return timestamp + lifetime; }

    /// Throws std::invalid_argument if any field violates its invariant.
    void validate(Eigen::Index expected_resources = -1) const;
};

/// Revenue granted by admitting a request: lifetime * unit_value * (weights . demand).
double compute_revenue(std::int64_t lifetime, double unit_value,
                       const Eigen::Ref<const ResourceVector>& weights,
                       const Eigen::Ref<const ResourceVector>& demand);

/// The outcome of one admission decision.
struct AdmissionDecision {
    std::int64_t request_id = 0;
    bool accepted = false;
    double threshold = 0.0; ///< admission cost applied; 0 under FCFS
};

/// A committed slice still occupying resources.
struct ActiveSlice {
    std::int64_t release_slot = 0;
    std::int64_t id = 0;
    ResourceVector demand;
};

/// Aggregate capacities plus the currently committed utilization and the
/// set of active slices. Owned by a single simulation run.
class SystemState {
public:
    explicit SystemState(ResourceVector capacities);

    const ResourceVector& capacities() const { return capacities_; }
    const ResourceVector& utilization() const { return utilization_; }
    Eigen::Index resource_count() const { return capacities_.size(); }

    /// capacities - utilization, component-wise.
    ResourceVector remaining_capacity() const { return capacities_ - utilization_; }

    /// True iff demand_j <= C_j - u_j for every resource.
    bool fits(const Eigen::Ref<const ResourceVector>& demand) const;

    /// Commits a demand until release_slot. Throws CapacityViolation if the
    /// demand does not fit.
    void commit(std::int64_t id, const Eigen::Ref<const ResourceVector>& demand,
                std::int64_t release_slot);
    void commit(const SliceRequest& request);

    /// Releases every active slice with release_slot <= current_slot and
    /// subtracts its demand. Returns the number of slices released.
    std::size_t release_expired(std::int64_t current_slot);

    /// Active slices in internal heap order (ordered pops by release slot).
    const std::vector<ActiveSlice>& active() const { return active_; }

private:
    ResourceVector capacities_;
    ResourceVector utilization_;
    std::vector<ActiveSlice> active_; // min-heap on release_slot
};

} // namespace slicesim
