#include "slicesim/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "slicesim/errors.hpp"

namespace slicesim {

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text, std::size_t row) {
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size())
        throw ParseError(row, "cannot parse number '" + text + "'");
    return value;
}

std::int64_t parse_int(const std::string& text, std::size_t row) {
    std::int64_t value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size())
        throw ParseError(row, "cannot parse integer '" + text + "'");
    return value;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return out;
}

} // namespace

void write_request_csv(std::ostream& out, const RequestStream& stream) {
    out << "id,timestamp,lifetime";
    for (Eigen::Index j = 1; j <= stream.m; ++j) out << ",demand_" << j;
    out << ",unit_value";
    for (Eigen::Index j = 1; j <= stream.m; ++j) out << ",weight_" << j;
    out << ",revenue\n";
    for (Eigen::Index i = 0; i < stream.size(); ++i) {
        out << stream.ids[i] << ',' << stream.timestamps[i] << ',' << stream.lifetimes[i];
        for (Eigen::Index j = 0; j < stream.m; ++j)
            out << ',' << format_double(stream.demands(j, i));
        out << ',' << format_double(stream.unit_values[i]);
        for (Eigen::Index j = 0; j < stream.m; ++j)
            out << ',' << format_double(stream.weights(j, i));
        out << ',' << format_double(stream.revenues[i]) << '\n';
    }
}

void write_request_csv(const std::filesystem::path& path, const RequestStream& stream) {
    auto out = open_output(path);
    write_request_csv(out, stream);
}

RequestStream read_request_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(1, "missing header");
    const auto header = split_csv_row(line);
    Eigen::Index m = 0;
    for (const auto& name : header)
        if (name.rfind("demand_", 0) == 0) ++m;
    if (m == 0)
        throw ParseError(1, "header has no demand_* columns");
    const std::size_t expected_fields = 5 + 2 * static_cast<std::size_t>(m);
    if (header.size() != expected_fields)
        throw ParseError(1, "header has " + std::to_string(header.size()) + " columns, expected " +
                                std::to_string(expected_fields));

    std::vector<SliceRequest> requests;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != expected_fields)
            throw ParseError(row, "expected " + std::to_string(expected_fields) + " fields, got " +
                                      std::to_string(fields.size()));
        SliceRequest request;
        std::size_t f = 0;
        request.id = parse_int(fields[f++], row);
        request.timestamp = parse_int(fields[f++], row);
        request.lifetime = parse_int(fields[f++], row);
        request.demand.resize(m);
        for (Eigen::Index j = 0; j < m; ++j)
            request.demand[j] = parse_double(fields[f++], row);
        request.unit_value = parse_double(fields[f++], row);
        request.weights.resize(m);
        for (Eigen::Index j = 0; j < m; ++j)
            request.weights[j] = parse_double(fields[f++], row);
        request.revenue = parse_double(fields[f++], row);
        try {
            request.validate(m);
        } catch (const std::invalid_argument& error) {
            throw ParseError(row, error.what());
        }
        if (!requests.empty() && request.timestamp < requests.back().timestamp)
            throw ParseError(row, "timestamps must be non-decreasing");
        requests.push_back(std::move(request));
    }

    std::int64_t horizon = 1;
    for (const auto& request : requests)
        horizon = std::max(horizon, request.timestamp);
    return RequestStream::pack(requests, horizon);
}

RequestStream read_request_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    return read_request_csv(in);
}

void write_decision_csv(std::ostream& out, const DecisionTrace& trace) {
    const Eigen::Index m = trace.empty() ? 0 : trace.records().front().utilization.size();
    out << "id,slot,policy,accepted,phi,revenue";
    for (Eigen::Index j = 1; j <= m; ++j) out << ",u_" << j;
    for (Eigen::Index j = 1; j <= m; ++j) out << ",q_" << j;
    out << '\n';
    for (const DecisionRecord& record : trace.records()) {
        out << record.request_id << ',' << record.slot << ',' << policy_name(trace.policy())
            << ',' << (record.accepted ? 1 : 0) << ',' << format_double(record.threshold) << ','
            << format_double(record.revenue);
        for (Eigen::Index j = 0; j < m; ++j)
            out << ',' << format_double(record.utilization[j]);
        for (Eigen::Index j = 0; j < m; ++j)
            out << ',' << record.levels[j];
        out << '\n';
    }
}

void write_decision_csv(const std::filesystem::path& path, const DecisionTrace& trace) {
    auto out = open_output(path);
    write_decision_csv(out, trace);
}

} // namespace slicesim
