#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "hypertest/error.hpp"
#include "hypertest/simlab.hpp"

namespace hypertest::cli {

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_null()) return "n/a";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (const Json& item : v) {
      if (!s.empty()) s += ';';
      s += scalar_text(item);
    }
    return s;
  }
  return v.dump();
}

std::string csv_field(const Json& v) {
  std::string s = v.is_null() ? std::string() : scalar_text(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  return Format::Text;
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

void render(const Report& report, Format format, std::ostream& out) {
  switch (format) {
    case Format::Text: {
      bool first = true;
      for (const Json& rec : report.records) {
        if (!first) out << '\n';
        first = false;
        for (const auto& [key, value] : rec.items()) out << key << ": " << scalar_text(value) << '\n';
      }
      break;
    }
    case Format::Json:
      if (report.records.size() == 1) {
        out << report.records.front().dump(2) << '\n';
      } else {
        out << Json(report.records).dump(2) << '\n';
      }
      break;
    case Format::Csv: {
      std::vector<std::string> keys;
      for (const Json& rec : report.records) {
        for (const auto& [key, value] : rec.items()) {
          if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
        }
      }
      for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
      out << '\n';
      for (const Json& rec : report.records) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
          if (i) out << ',';
          if (rec.contains(keys[i])) out << csv_field(rec.at(keys[i]));
        }
        out << '\n';
      }
      break;
    }
  }
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream hex;
  hex << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return hex.str();
}

Json RunManifest::to_json() const {
  Json j;
  j["subcommand"] = subcommand;
  j["tool_version"] = HYPERTEST_VERSION;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["config"] = config;
  Json in = Json::array();
  for (const auto& [path, digest] : inputs) in.push_back(Json{{"path", path}, {"digest", digest}});
  j["inputs"] = in;
  j["outputs"] = outputs;
  return j;
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path + "'");
  out << to_json().dump(2) << '\n';
  if (!out) throw Error(Errc::IoError, "write failed for '" + path + "'");
}

}  // namespace hypertest::cli
