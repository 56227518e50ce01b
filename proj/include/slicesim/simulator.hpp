#pragma once

#include <cstdint>
#include <vector>

#include "slicesim/model.hpp"
#include "slicesim/policy.hpp"
#include "slicesim/workload.hpp"

namespace slicesim {

/// One per-request trace record.
struct DecisionRecord {
    std::int64_t request_id = 0;
    std::int64_t slot = 0;
    bool accepted = false;
    double threshold = 0.0;
    double revenue = 0.0;
    ResourceVector utilization; ///< after the decision and the in-loop releases
    LevelVector levels;         ///< stored normalized utilization after the update
};

/// Per-request view passed to sinks while the engine runs. References stay
/// valid only during the callback.
struct DecisionEvent {
    std::int64_t request_id;
    std::int64_t slot;
    bool accepted;
    double threshold;
    double revenue;
    const ResourceVector& utilization;             ///< after in-loop releases
    const ResourceVector& utilization_pre_release; ///< right after the decision
    const LevelVector& levels;
};

class DecisionSink {
public:
    virtual ~DecisionSink() = default;
    virtual void on_decision(const DecisionEvent& event) = 0;
};

/// The decision trace of one policy over one request stream.
class DecisionTrace {
public:
    DecisionTrace() = default;
    DecisionTrace(PolicyKind policy, std::vector<DecisionRecord> records,
                  std::uint64_t stream_hash)
        : policy_(policy), records_(std::move(records)), stream_hash_(stream_hash) {}

    PolicyKind policy() const { return policy_; }
    const std::vector<DecisionRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    std::uint64_t stream_hash() const { return stream_hash_; }

private:
    PolicyKind policy_ = PolicyKind::FCFS;
    std::vector<DecisionRecord> records_;
    std::uint64_t stream_hash_ = kStreamHashSeed;
};

/// Collects full decision records from a run.
class TraceCollector : public DecisionSink {
public:
    void on_decision(const DecisionEvent& event) override;
    std::vector<DecisionRecord> take() { return std::move(records_); }

private:
    std::vector<DecisionRecord> records_;
};

/// Sequential admission engine. Handles each request in arrival order:
/// threshold from the stored scarcity levels, decision, commit on accept,
/// release of expired slices, then the level update. Expired slices are also
/// released at every slot boundary so occupancy spans exactly `lifetime`
/// slots regardless of arrival gaps; the stored levels are refreshed only at
/// the end of request handling.
class AdmissionEngine {
public:
    AdmissionEngine(ResourceVector capacities, PolicyParams params);

    /// Advances to `slot` (must not move backwards) and releases every slice
    /// whose release slot has passed.
    void begin_slot(std::int64_t slot);

    /// Handles one request arriving at the current slot (or later; the engine
    /// advances automatically). Irrevocable.
    AdmissionDecision process(const SliceRequest& request, DecisionSink* sink = nullptr);

    /// Column-oriented variant used for packed streams.
    AdmissionDecision process(std::int64_t id, std::int64_t lifetime, double unit_value,
                              double revenue, const Eigen::Ref<const ResourceVector>& demand,
                              DecisionSink* sink);

    const SystemState& state() const { return state_; }
    SystemState& state() { return state_; }
    const PolicyParams& params() const { return params_; }
    const LevelVector& levels() const { return levels_; }
    std::int64_t current_slot() const { return current_slot_; }

    /// Hash over every request this engine has processed.
    std::uint64_t stream_hash() const { return hash_; }

private:
    void refresh_levels();

    PolicyParams params_;
    SystemState state_;
    ResourceVector lin_factors_;  ///< sqrt(2 kappa_j / m)
    ResourceVector level_scales_; ///< sqrt(theta m) or log(theta kappa_j)
    LevelVector levels_;
    ResourceVector pre_release_utilization_;
    std::int64_t current_slot_ = 0;
    bool levels_dirty_ = false;
    std::uint64_t hash_ = kStreamHashSeed;
};

/// Runs one policy over a packed stream, feeding every decision to `sink`.
/// Returns the stream hash the engine consumed.
std::uint64_t simulate(const RequestStream& stream, const PolicyParams& params,
                       const Eigen::Ref<const ResourceVector>& capacities, DecisionSink& sink);

/// simulate() with full trace collection.
DecisionTrace replay(const RequestStream& stream, const PolicyParams& params,
                     const Eigen::Ref<const ResourceVector>& capacities);

/// Generates the scenario's stream and replays it under `params`.
DecisionTrace run_scenario(const ScenarioConfig& config, const PolicyParams& params);

/// Throws std::invalid_argument unless params match the scenario (equal m;
/// for reservation policies theta = sigma * zeta and kappa derived from the
/// scenario capacities).
void check_consistency(const ScenarioConfig& config, const PolicyParams& params);

} // namespace slicesim
