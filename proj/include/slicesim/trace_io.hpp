#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "slicesim/simulator.hpp"
#include "slicesim/workload.hpp"

namespace slicesim {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

/// Columns: id, timestamp, lifetime, demand_1..demand_m, unit_value,
/// weight_1..weight_m, revenue.
void write_request_csv(std::ostream& out, const RequestStream& stream);
void write_request_csv(const std::filesystem::path& path, const RequestStream& stream);

/// Parses a request-trace CSV. The resource count is inferred from the
/// header. Throws ParseError (carrying the 1-based row number) on malformed
/// rows and on rows violating request invariants.
RequestStream read_request_csv(std::istream& in);
RequestStream read_request_csv(const std::filesystem::path& path);

/// Columns: id, slot, policy, accepted, phi, revenue, u_1..u_m, q_1..q_m.
void write_decision_csv(std::ostream& out, const DecisionTrace& trace);
void write_decision_csv(const std::filesystem::path& path, const DecisionTrace& trace);

} // namespace slicesim
