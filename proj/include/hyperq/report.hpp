#pragma once

// JSON records. Field names and order are part of the output format.

#include "hyperq/oracle.hpp"

#include <json.hpp>

#include <string>

namespace hyperq {

using Json = nlohmann::ordered_json;

Json to_json(const SpinState& x);
Json to_json(const RunReport& r);
Json to_json(const EigenPair<double>& e);
Json to_json(const SpectralSolveReport<double>& r);
Json to_json(const CornerCensus& c);
Json to_json(const CutResult& c);
Json to_json(const AuditReport& a);

/// Header and row for batch sweeps; columns mirror the JSON fields.
std::string audit_csv_header();
std::string audit_csv_row(const AuditReport& a);

}  // namespace hyperq
