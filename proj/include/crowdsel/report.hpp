#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace crowdsel {

// FNV-1a 64-bit over raw file bytes; the checksum recorded in run
// manifests. Throws DatasetError when the file cannot be read.
std::uint64_t fnv1a64_file(const std::string& path);

std::string to_hex64(std::uint64_t value);

// Canonical serialisation: 2-space indent, keys in sorted order (the
// default nlohmann object), trailing newline. parse + canonical_dump is the
// identity on reports the toolkit writes.
std::string canonical_dump(const nlohmann::json& j);

// Manifest block embedded in every report; `parameters` carries exactly the
// settings needed to reproduce the run.
nlohmann::json make_manifest(const std::string& command, const std::string& dataset_path,
                             const std::string& dataset_name,
                             const nlohmann::json& parameters);

}  // namespace crowdsel
