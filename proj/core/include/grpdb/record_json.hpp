#pragma once

#include <string>

#include <json.hpp>

#include "grpdb/pipeline.hpp"

namespace grpdb {

/// Export schema version of a serialized GroupRecord.
inline constexpr int kRecordSchemaVersion = 1;

nlohmann::json to_json(const GroupRecord& record);
/// Throws ParseError when a required field is missing or mistyped.
GroupRecord record_from_json(const nlohmann::json& j);

/// Compact JSON with sorted keys; identical records give identical bytes.
std::string dump_record(const GroupRecord& record);

nlohmann::json to_json(const SubgroupClassRecord& s);

}  // namespace grpdb
