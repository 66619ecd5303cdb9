#include <cmath>
#include <cstdio>
#include <fstream>

#include "wigner/cli.hpp"
#include "wigner/error.hpp"

namespace wigner::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

nlohmann::json ResultManifest::to_json() const {
  nlohmann::json j;
  j["version"] = version;
  j["config"] = config;
  j["statistics"] = statistics;
  if (!criteria.empty()) j["criteria"] = criteria;
  j["execution"] = {{"workers", workers}, {"wall_time_seconds", wall_time_seconds}};
  return j;
}

void write_result(const RunResult& result, const std::string& out) {
  for (const auto& t : result.tables) {
    const std::string path = t.suffix.empty() ? out + ".csv" : out + "_" + t.suffix + ".csv";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << t.content;
  }
  const std::string path = out + ".json";
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << result.manifest.to_json().dump(2) << '\n';
}

}  // namespace wigner::cli
