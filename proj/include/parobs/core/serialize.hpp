#pragma once

#include "parobs/core/field.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace parobs {

nlohmann::json grid_to_json(const Grid& grid);
Grid grid_from_json(const nlohmann::json& j);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

/// Binary container: 8-byte magic "PAROBSF1", little-endian uint64 header
/// length, a JSON header (grid, label, count), then the raw doubles.
std::string encode_field(const ScalarField& field);
ScalarField decode_field(const std::string& bytes);
void write_field_binary(const std::filesystem::path& path, const ScalarField& field);
ScalarField read_field_binary(const std::filesystem::path& path);

/// One row per node and time level: t,x1[,x2],value
std::string field_to_csv(const ScalarField& field);
void write_field_csv(const std::filesystem::path& path, const ScalarField& field);

}  // namespace parobs
