#pragma once

#include <filesystem>

#include <json.hpp>

#include "masstransport/process_spec.hpp"

namespace mtp {

/// Reads a process-spec document. Schema problems raise SpecParseError with
/// the JSON path of the field; semantic problems raise InvalidSpec (or
/// NoStationaryDistribution) from validation.
ProcessSpec parse_spec(const std::filesystem::path& path);

/// Schema-level conversion only; no semantic validation.
ProcessSpec spec_from_json(const nlohmann::json& doc);

nlohmann::json spec_to_json(const ProcessSpec& spec);

}  // namespace mtp
