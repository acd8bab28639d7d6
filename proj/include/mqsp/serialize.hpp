#pragma once

#include <nlohmann/json.hpp>

#include "mqsp/counterexample.hpp"

namespace mqsp {

using Json = nlohmann::json;

// Writers.  Exact rationals serialize as "num/den" strings in lowest
// terms, float values as JSON numbers (shortest round-trip form).
Json to_json(const BiLaurent& p);
Json to_json(const PolyPair& pair);
Json to_json(const UnitPhase& phase);
Json to_json(const Protocol& prot);
Json to_json(const ConditionReport& report);
Json to_json(const ForcedZeroTrace& trace);
Json to_json(const DecomposeResult& result);
Json to_json(const InsufficiencyReport& report);

// Readers.  `where` prefixes the field path reported in ParseError.
BiLaurent bilaurent_from_json(const Json& j, const std::string& where = "poly");
PolyPair pair_from_json(const Json& j, const std::string& where = "pair");
UnitPhase phase_from_json(const Json& j, const std::string& where = "phase");
Protocol protocol_from_json(const Json& j, const std::string& where = "protocol");

/// Parses a whole JSON document, mapping syntax errors to ParseError.
Json parse_json_text(const std::string& text, const std::string& where);

}  // namespace mqsp
