#include "slicesim/workload.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace slicesim {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

const char* alpha_mode_name(AlphaMode mode) {
    return mode == AlphaMode::UniformEqual ? "uniform-equal" : "simplex-random";
}

AlphaMode parse_alpha_mode(const std::string& name) {
    if (name == "uniform-equal") return AlphaMode::UniformEqual;
    if (name == "simplex-random") return AlphaMode::SimplexRandom;
    throw std::invalid_argument("unknown alpha mode '" + name +
                                "' (expected uniform-equal or simplex-random)");
}

void ScenarioConfig::validate() const {
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    if (omega <= 0.0) throw std::invalid_argument("omega must be positive");
    if (sigma < 1.0) throw std::invalid_argument("sigma must be >= 1");
    if (zeta < 1) throw std::invalid_argument("zeta must be >= 1");
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (capacities.size() != m)
        throw std::invalid_argument("capacities must have length m");
    if ((capacities <= 0.0).any())
        throw std::invalid_argument("capacities must be positive");
    if (total_slots < 1) throw std::invalid_argument("total_slots must be >= 1");
}

WorkloadStreams WorkloadStreams::from_seed(std::uint64_t root_seed) {
    std::uint64_t state = root_seed;
    const std::uint64_t s_arrivals = splitmix64(state);
    const std::uint64_t s_demands = splitmix64(state);
    const std::uint64_t s_lifetimes = splitmix64(state);
    const std::uint64_t s_units = splitmix64(state);
    const std::uint64_t s_weights = splitmix64(state);
    return WorkloadStreams{RandomStream(s_arrivals), RandomStream(s_demands),
                           RandomStream(s_lifetimes), RandomStream(s_units),
                           RandomStream(s_weights)};
}

std::int64_t sample_arrival_count(double lambda, RandomStream& stream) {
    if (lambda <= 0.0)
        throw std::invalid_argument("lambda must be positive");
    const double u = stream.uniform();
    double p = std::exp(-lambda);
    double cumulative = p;
    std::int64_t k = 0;
    while (u > cumulative) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cumulative += p;
        if (p < 1e-300) break; // tail mass exhausted
    }
    return k;
}

double sample_standard_normal(RandomStream& stream) {
    for (;;) {
        const double x = 2.0 * stream.uniform() - 1.0;
        const double y = 2.0 * stream.uniform() - 1.0;
        const double s = x * x + y * y;
        if (s > 0.0 && s < 1.0)
            return x * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double sample_gamma(double shape, RandomStream& stream) {
    if (shape < 1.0)
        throw std::invalid_argument("sample_gamma requires shape >= 1");
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = sample_standard_normal(stream);
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = stream.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_symmetric_beta(double omega, RandomStream& stream) {
    if (omega <= 0.0)
        throw std::invalid_argument("omega must be positive");
    if (omega < 1.0) {
        // Joehnk: accept X/(X+Y) with X = U^(1/omega), Y = V^(1/omega) when X+Y <= 1.
        const double inv = 1.0 / omega;
        for (;;) {
            const double x = std::pow(stream.uniform(), inv);
            const double y = std::pow(stream.uniform(), inv);
            const double sum = x + y;
            if (sum > 0.0 && sum <= 1.0) return x / sum;
        }
    }
    const double g1 = sample_gamma(omega, stream);
    const double g2 = sample_gamma(omega, stream);
    return g1 / (g1 + g2);
}

namespace {

struct RequestFields {
    std::int64_t lifetime = 0;
    double unit_value = 0.0;
    double revenue = 0.0;
};

// Single draw path shared by sample_request and generate_stream so the two
// produce identical values for identical substream states.
RequestFields sample_request_fields(const ScenarioConfig& config, WorkloadStreams& streams,
                                    Eigen::Ref<ResourceVector> demand,
                                    Eigen::Ref<ResourceVector> weights) {
    for (Eigen::Index j = 0; j < config.m; ++j)
        demand[j] = streams.demands.uniform();

    RequestFields fields;
    fields.lifetime = 1 + static_cast<std::int64_t>(
                              std::floor(streams.lifetimes.uniform() *
                                         static_cast<double>(config.zeta)));
    if (fields.lifetime > config.zeta) fields.lifetime = config.zeta;

    const double y = sample_symmetric_beta(config.omega, streams.unit_values);
    fields.unit_value = 1.0 + (config.sigma - 1.0) * y;

    if (config.alpha_mode == AlphaMode::UniformEqual) {
        weights.setConstant(1.0 / static_cast<double>(config.m));
    } else {
        // Uniform on the simplex: normalized exponentials, each kept positive.
        double total = 0.0;
        for (Eigen::Index j = 0; j < config.m; ++j) {
            double e = 0.0;
            while (e == 0.0) e = -std::log(1.0 - streams.weights.uniform());
            weights[j] = e;
            total += e;
        }
        weights /= total;
    }

    fields.revenue = compute_revenue(fields.lifetime, fields.unit_value, weights, demand);
    return fields;
}

} // namespace

SliceRequest sample_request(const ScenarioConfig& config, std::int64_t slot,
                            std::int64_t id, WorkloadStreams& streams) {
    config.validate();
    SliceRequest request;
    request.id = id;
    request.timestamp = slot;
    request.demand.resize(config.m);
    request.weights.resize(config.m);
    const RequestFields fields =
        sample_request_fields(config, streams, request.demand, request.weights);
    request.lifetime = fields.lifetime;
    request.unit_value = fields.unit_value;
    request.revenue = fields.revenue;
    return request;
}

SliceRequest RequestStream::request(Eigen::Index i) const {
    SliceRequest r;
    r.id = ids[i];
    r.timestamp = timestamps[i];
    r.lifetime = lifetimes[i];
    r.demand = demands.col(i);
    r.unit_value = unit_values[i];
    r.weights = weights.col(i);
    r.revenue = revenues[i];
    return r;
}

RequestStream RequestStream::pack(std::span<const SliceRequest> requests, std::int64_t horizon) {
    RequestStream stream;
    stream.horizon = horizon;
    const auto n = static_cast<Eigen::Index>(requests.size());
    stream.m = n > 0 ? requests[0].demand.size() : 0;
    stream.ids.resize(n);
    stream.timestamps.resize(n);
    stream.lifetimes.resize(n);
    stream.unit_values.resize(n);
    stream.revenues.resize(n);
    stream.demands.resize(stream.m, n);
    stream.weights.resize(stream.m, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const SliceRequest& r = requests[static_cast<std::size_t>(i)];
        stream.ids[i] = r.id;
        stream.timestamps[i] = r.timestamp;
        stream.lifetimes[i] = r.lifetime;
        stream.unit_values[i] = r.unit_value;
        stream.revenues[i] = r.revenue;
        stream.demands.col(i) = r.demand;
        stream.weights.col(i) = r.weights;
    }
    stream.validate();
    return stream;
}

void RequestStream::validate() const {
    const Eigen::Index n = size();
    if (timestamps.size() != n || lifetimes.size() != n || unit_values.size() != n ||
        revenues.size() != n || demands.cols() != n || weights.cols() != n)
        throw std::invalid_argument("request stream columns have inconsistent lengths");
    if (demands.rows() != m || weights.rows() != m)
        throw std::invalid_argument("request stream resource dimension mismatch");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (timestamps[i] < 1 || timestamps[i] > horizon)
            throw std::invalid_argument("request timestamps must lie in [1, horizon]");
        if (i > 0 && timestamps[i] < timestamps[i - 1])
            throw std::invalid_argument("request timestamps must be non-decreasing");
        if (lifetimes[i] < 1)
            throw std::invalid_argument("request lifetimes must be >= 1");
    }
}

RequestStream generate_stream(const ScenarioConfig& config) {
    config.validate();
    WorkloadStreams streams = WorkloadStreams::from_seed(config.seed);

    // Pass 1: arrival counts per slot (their substream is independent of the
    // per-request draws, so sizing up front changes nothing downstream).
    std::vector<std::int64_t> arrivals(static_cast<std::size_t>(config.total_slots));
    std::int64_t total = 0;
    for (auto& count : arrivals) {
        count = sample_arrival_count(config.lambda, streams.arrivals);
        total += count;
    }

    RequestStream stream;
    stream.horizon = config.total_slots;
    stream.m = config.m;
    stream.ids.resize(total);
    stream.timestamps.resize(total);
    stream.lifetimes.resize(total);
    stream.unit_values.resize(total);
    stream.revenues.resize(total);
    stream.demands.resize(config.m, total);
    stream.weights.resize(config.m, total);

    Eigen::Index i = 0;
    for (std::int64_t slot = 1; slot <= config.total_slots; ++slot) {
        for (std::int64_t k = 0; k < arrivals[static_cast<std::size_t>(slot - 1)]; ++k, ++i) {
            stream.ids[i] = i + 1;
            stream.timestamps[i] = slot;
            auto demand = stream.demands.col(i);
            auto weights = stream.weights.col(i);
            const RequestFields fields =
                sample_request_fields(config, streams, demand, weights);
            stream.lifetimes[i] = fields.lifetime;
            stream.unit_values[i] = fields.unit_value;
            stream.revenues[i] = fields.revenue;
        }
    }
    return stream;
}

std::uint64_t fold_request_hash(std::uint64_t hash, std::int64_t id, std::int64_t timestamp,
                                std::int64_t lifetime, double unit_value, double revenue,
                                const Eigen::Ref<const ResourceVector>& demand) {
    hash = mix64(hash ^ static_cast<std::uint64_t>(id));
    hash = mix64(hash ^ static_cast<std::uint64_t>(timestamp));
    hash = mix64(hash ^ static_cast<std::uint64_t>(lifetime));
    hash = mix64(hash ^ std::bit_cast<std::uint64_t>(unit_value));
    hash = mix64(hash ^ std::bit_cast<std::uint64_t>(revenue));
    for (Eigen::Index j = 0; j < demand.size(); ++j)
        hash = mix64(hash ^ std::bit_cast<std::uint64_t>(demand[j]));
    return hash;
}

} // namespace slicesim
