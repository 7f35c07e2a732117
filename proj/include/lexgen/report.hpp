#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace lexgen {

// Writes via a temp file in the same directory plus rename, so readers never
// observe a partially written file and failures leave no output behind.
void atomic_write_text(const std::filesystem::path& path, std::string_view content);

// FNV-1a 64-bit content hash, hex-encoded; used for input fingerprints.
std::string fnv1a64_hex(std::string_view data);
std::string fnv1a64_file(const std::filesystem::path& path);

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;   // path, content hash
  std::vector<std::pair<std::string, uint64_t>> outputs;     // path, entry count
  std::map<std::string, uint64_t> warnings;                  // counts by category
  double duration_seconds = 0.0;

  void add_input(const std::filesystem::path& path);
  void add_warning(const std::string& category, uint64_t count);
  nlohmann::json to_json() const;
};

}  // namespace lexgen
