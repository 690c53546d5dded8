#include "crowdsel/report.hpp"

#include <fstream>

#include "crowdsel/dataset.hpp"
#include "crowdsel/version.hpp"

namespace crowdsel {

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError(path + ": cannot open file");
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001B3ULL;
    }
    if (!in) break;
  }
  return hash;
}

std::string to_hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json make_manifest(const std::string& command, const std::string& dataset_path,
                             const std::string& dataset_name,
                             const nlohmann::json& parameters) {
  return nlohmann::json{
      {"command", command},
      {"dataset", {{"name", dataset_name},
                   {"path", dataset_path},
                   {"fnv1a64", to_hex64(fnv1a64_file(dataset_path))}}},
      {"parameters", parameters},
      {"schema_version", 1},
      {"toolkit_version", kVersion},
  };
}

}  // namespace crowdsel
