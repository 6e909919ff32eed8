#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qsde::out {

std::string sha1_hex(std::string_view data);

// SHA-1 of "blob <size>\0<content>", the way git names file contents.
std::string git_blob_hash(std::string_view content);

// Write-temp-then-rename; readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Serializes with a trailing newline and a "content_hash" field covering
// everything else; byte-identical for identical inputs.
std::string serialize_summary(nlohmann::ordered_json summary);

void write_summary(const std::filesystem::path& path, nlohmann::ordered_json summary);

// Deterministic CSV: 17 significant digits for doubles.
std::string format_double(double v);

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace qsde::out
