#pragma once

#include <json.hpp>

#include "dcx/complex.hpp"
#include "dcx/obstruction.hpp"
#include "dcx/transport.hpp"

namespace dcx {

using Json = nlohmann::ordered_json;

// Parse errors carry the offending field path in the message.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "p/q", decimal strings, and integral JSON numbers.
Rational rational_from_json(const Json& j, const std::string& field);
Json rational_to_json(const Rational& value);

Schema schema_from_json(const Json& j);
Json schema_to_json(const Schema& schema);

DataTable table_from_json(const Json& j);
Json table_to_json(const DataTable& table);

AttributeInclusion inclusion_from_json(const Json& j);
Json inclusion_to_json(const AttributeInclusion& inc);

Json coupling_to_json(const Coupling& coupling);
Json fill_result_to_json(const FillResult& fill);
Json filtration_to_json(const FiltrationResult& result);
Json cocycle_report_to_json(const CocycleReport& report);
Json coboundary_to_json(const CoboundaryResult& result);
Json trichotomy_to_json(const TrichotomyVerdict& verdict);
Json persistence_to_json(const PersistenceResult& result);
Json section_to_json(const DataSection& section);

HornProblem horn_from_json(const Json& j);

}  // namespace dcx
