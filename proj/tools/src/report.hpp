#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace hypertest::cli {

using Json = nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

Format parse_format(const std::string& name);

/// One or more flat records. Text prints "key: value" lines, CSV one row per
/// record, JSON an object (single record) or an array.
struct Report {
  std::vector<Json> records;
};

void render(const Report& report, Format format, std::ostream& out);

/// NaN and infinities become null so that the JSON stays valid.
Json number(double x);
Json number(const std::optional<double>& x);

/// Hex FNV-1a digest of a file's bytes. Throws IoError.
std::string file_digest(const std::string& path);

struct RunManifest {
  std::string subcommand;
  Json config = Json::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::vector<std::string> outputs;

  void add_input(const std::string& path) { inputs.emplace_back(path, file_digest(path)); }
  Json to_json() const;
  /// Throws IoError.
  void write(const std::string& path) const;
};

}  // namespace hypertest::cli
