#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <span>

#include "slicesim/model.hpp"

namespace slicesim {

/// How the revenue weight vector of each request is drawn.
enum class AlphaMode { UniformEqual, SimplexRandom };

const char* alpha_mode_name(AlphaMode mode);
AlphaMode parse_alpha_mode(const std::string& name);

/// Workload and horizon parameters for one simulated scenario.
struct ScenarioConfig {
    double lambda = 2.0;          ///< mean arrivals per slot
    double omega = 1.0;           ///< economic inequality (Beta shape)
    double sigma = 10.0;          ///< economic scale, unit value in [1, sigma]
    std::int64_t zeta = 10;       ///< lifetime upper bound
    Eigen::Index m = 3;           ///< resource-type count
    ResourceVector capacities;    ///< aggregate capacity per resource
    std::int64_t total_slots = 100000;
    std::uint64_t seed = 1;
    AlphaMode alpha_mode = AlphaMode::UniformEqual;

    /// Willingness-to-pay ratio of the scenario: theta = sigma * zeta.
    double theta() const { return sigma * static_cast<double>(zeta); }

    void validate() const;
};

/// A deterministic uniform stream. Draws are identical across platforms for
/// equal seeds (mt19937_64 output mapped to [0,1) through the top 53 bits).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// Independent substreams per distribution, split from one root seed so that
/// changing one distribution's parameters cannot perturb the others' draws.
struct WorkloadStreams {
    RandomStream arrivals;
    RandomStream demands;
    RandomStream lifetimes;
    RandomStream unit_values;
    RandomStream weights;

    static WorkloadStreams from_seed(std::uint64_t root_seed);
};

/// Poisson(lambda) draw by inversion via sequential search.
std::int64_t sample_arrival_count(double lambda, RandomStream& stream);

/// Symmetric Beta(omega, omega) draw in [0, 1]. Uses Joehnk's method for
/// omega < 1 and a gamma-ratio construction otherwise.
double sample_symmetric_beta(double omega, RandomStream& stream);

/// Standard normal draw (Marsaglia polar method).
double sample_standard_normal(RandomStream& stream);

/// Gamma(shape, 1) draw for shape >= 1 (Marsaglia-Tsang).
double sample_gamma(double shape, RandomStream& stream);

/// Draws one request arriving at `slot` with index `id` from the scenario's
/// distributions: demands i.i.d. U([0,1]), lifetime uniform on {1..zeta},
/// unit value 1 + (sigma-1) * Beta(omega,omega).
SliceRequest sample_request(const ScenarioConfig& config, std::int64_t slot,
                            std::int64_t id, WorkloadStreams& streams);

/// A materialized request stream in column form. Requests are ordered by
/// arrival slot, then by generation order within the slot.
struct RequestStream {
    std::int64_t horizon = 0; ///< last slot of the run, |T|
    Eigen::Index m = 0;
    Eigen::ArrayX<std::int64_t> ids;
    Eigen::ArrayX<std::int64_t> timestamps;
    Eigen::ArrayX<std::int64_t> lifetimes;
    Eigen::ArrayXd unit_values;
    Eigen::ArrayXd revenues;
    Eigen::ArrayXXd demands; ///< m x N
    Eigen::ArrayXXd weights; ///< m x N

    Eigen::Index size() const { return ids.size(); }
    SliceRequest request(Eigen::Index i) const;

    static RequestStream pack(std::span<const SliceRequest> requests, std::int64_t horizon);
    void validate() const;
};

/// Generates the full request stream of a scenario. Two calls with equal
/// configs produce bitwise-identical streams.
RequestStream generate_stream(const ScenarioConfig& config);

/// Folds one request into a running 64-bit stream hash. Policies evaluated
/// on common random numbers must report equal final hashes.
std::uint64_t fold_request_hash(std::uint64_t hash, std::int64_t id, std::int64_t timestamp,
                                std::int64_t lifetime, double unit_value, double revenue,
                                const Eigen::Ref<const ResourceVector>& demand);

inline constexpr std::uint64_t kStreamHashSeed = 0x736c69636573696dULL;

} // namespace slicesim
