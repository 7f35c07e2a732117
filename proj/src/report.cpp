#include "lexgen/report.hpp"

#include <fstream>
#include <random>
#include <system_error>

namespace lexgen {

void atomic_write_text(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  fs::path tmp = dir / (path.filename().string() + ".tmp." +
                        std::to_string(std::random_device{}()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("rename to " + path.string() + " failed");
  }
}

std::string fnv1a64_hex(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return fnv1a64_hex(data);
}

void RunReport::add_input(const std::filesystem::path& path) {
  inputs.emplace_back(path.string(), fnv1a64_file(path));
}

void RunReport::add_warning(const std::string& category, uint64_t count) {
  if (count > 0) warnings[category] += count;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["inputs"] = nlohmann::json::array();
  for (const auto& [path, hash] : inputs)
    j["inputs"].push_back({{"path", path}, {"hash", hash}});
  j["outputs"] = nlohmann::json::array();
  for (const auto& [path, count] : outputs)
    j["outputs"].push_back({{"path", path}, {"entries", count}});
  j["warnings"] = warnings;
  j["duration_seconds"] = duration_seconds;
  return j;
}

}  // namespace lexgen
