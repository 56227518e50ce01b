#pragma once

#include <vector>

#include "slicesim/model.hpp"

namespace slicesim {

using DecisionVector = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// Inputs of the offline admission problem: maximize total revenue of the
/// accepted subset under per-slot, per-resource capacity.
struct OfflineInstance {
    std::vector<SliceRequest> requests;
    ResourceVector capacities;
    std::int64_t horizon = 0; ///< |T|; every timestamp must lie in [1, horizon]

    void validate() const;
};

struct OfflineSolution {
    DecisionVector decisions;
    double revenue = 0.0;
};

/// Exhaustive-search bound: the solver enumerates 2^|H| decision vectors.
inline constexpr std::size_t kMaxOfflineRequests = 24;

/// Exact optimum by pruned exhaustive search. Ties break toward the
/// lexicographically smallest decision vector. Throws std::length_error when
/// the instance exceeds kMaxOfflineRequests.
OfflineSolution offline_optimal(const OfflineInstance& instance);

/// True iff the accepted subset keeps every slot of every resource within
/// capacity (absolute tolerance 1e-9).
bool feasibility_check(const DecisionVector& decisions, const OfflineInstance& instance);

} // namespace slicesim
