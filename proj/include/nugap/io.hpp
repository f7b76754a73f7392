#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "nugap/circle.hpp"
#include "nugap/config.hpp"
#include "nugap/factorization.hpp"
#include "nugap/nu_metric.hpp"
#include "nugap/robust.hpp"
#include "nugap/transfer_matrix.hpp"

namespace nugap {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

// Parsed plant file: {"schema_version": "1", "kind": "siso"|"matrix", ...}
// with ascending coefficient arrays; complex coefficients as [re, im].
struct PlantDocument {
  std::string schema_version;
  std::string kind;
  std::optional<std::string> label;
  TransferMatrix plant = TransferMatrix::zero(1, 1);
};

// Throws ParseError carrying a JSON pointer to the offending node.
PlantDocument parse_plant(const std::string& json_text,
                          const NumericConfig& cfg = {});
PlantDocument parse_plant_file(const std::string& path,
                               const NumericConfig& cfg = {});

Json emit_plant(const TransferMatrix& plant,
                const std::optional<std::string>& label = {});

// FNV-1a hash of the canonical document serialization, hex-encoded.
std::string plant_hash(const TransferMatrix& plant);

Json emit_config(const NumericConfig& cfg);
Json emit_winding(const WindingReport& report);
Json emit_nu_metric(const NuMetricOutcome& outcome);
Json emit_margin(const MarginReport& report);

// ResultDocument wrapper: operation name, input labels + hashes, the
// NumericConfig used, payload, tool version.
Json result_document(const std::string& operation,
                     const std::vector<std::pair<std::string, std::string>>&
                         inputs,  // (label, hash)
                     const NumericConfig& cfg, Json payload);

}  // namespace nugap
