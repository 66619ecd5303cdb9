#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wigner/cli.hpp"
#include "wigner/error.hpp"

namespace wigner::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_set(const std::optional<double>& x) { return x.has_value(); }

}  // namespace

std::map<std::string, std::map<std::string, std::string>> parse_config_text(const std::string& text) {
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    std::replace(key.begin(), key.end(), '_', '-');
    sections[section][key] = value;
  }
  return sections;
}

std::vector<std::string> merge_config_file(const std::vector<std::string>& args,
                                           const std::vector<std::string>& subcommands) {
  std::string path;
  std::string sub;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      ++i;
    } else if (a.rfind("--config=", 0) == 0) {
      path = a.substr(9);
    } else if (sub.empty() && std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end()) {
      sub = a;
    }
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto sections = parse_config_text(ss.str());

  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    for (std::size_t i = 1; i < args.size(); ++i)
      if (args[i] == flag || args[i].rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::map<std::string, std::string> merged;
  for (const char* name : {"", "ensemble"}) {
    auto it = sections.find(name);
    if (it != sections.end())
      for (const auto& [k, v] : it->second) merged[k] = v;
  }
  if (!sub.empty()) {
    auto it = sections.find(sub);
    if (it != sections.end())
      for (const auto& [k, v] : it->second) merged[k] = v;
  }
  std::vector<std::string> out;
  out.reserve(args.size() + 2 * merged.size());
  bool inserted = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    out.push_back(args[i]);
    if (!inserted && !sub.empty() && args[i] == sub) {
      for (const auto& [k, v] : merged) {
        if (given(k)) continue;
        if (v == "true") {
          out.push_back("--" + k);
        } else if (v != "false") {
          out.push_back("--" + k + "=" + v);
        }
      }
      inserted = true;
    }
  }
  return out;
}

void ExperimentConfig::validate() const {
  static const std::vector<std::string> known = {"sample", "dos", "stieltjes", "deloc", "spacing",
                                                 "dbm", "flow", "kernel", "selftest"};
  if (std::find(known.begin(), known.end(), subcommand) == known.end())
    throw ConfigError("unknown subcommand '" + subcommand + "'");
  if (n < 1) throw ConfigError("--n must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("--t must be finite and >= 0");
  if (reps < 1) throw ConfigError("--reps must be >= 1");
  if (workers < 1) throw ConfigError("--workers must be >= 1");
  auto require_nonempty = [](const std::vector<double>& v, const char* flag) {
    if (v.empty()) throw ConfigError(std::string(flag) + " needs at least one value");
  };
  if (subcommand == "dos") {
    require_nonempty(energies, "--e");
    require_nonempty(scales, "--scale");
    if (window_kind != "K" && window_kind != "k" && window_kind != "eta" && window_kind != "eps")
      throw ConfigError("--window must be K, eta or eps");
    for (double s : scales)
      if (!(s > 0.0)) throw ConfigError("--scale values must be positive");
    for (double d : deltas)
      if (!(d >= 0.0)) throw ConfigError("--delta values must be nonnegative");
  }
  if (subcommand == "stieltjes") {
    require_nonempty(energies, "--e");
    require_nonempty(etas, "--eta");
    for (double e : etas)
      if (!(e > 0.0)) throw ConfigError("--eta values must be positive");
  }
  if (subcommand == "deloc") {
    if (p != "inf") {
      double pv;
      try {
        pv = std::stod(p);
      } catch (...) {
        throw ConfigError("--p must be a number > 2 or 'inf'");
      }
      if (!(pv > 2.0)) throw ConfigError("--p must be > 2 or 'inf'");
    }
    if (!(bulk_kappa >= 0.0 && bulk_kappa < 2.0)) throw ConfigError("--bulk-kappa must lie in [0, 2)");
    if (!m_grid.empty() && !(window_k > 0.0)) throw ConfigError("--m-grid needs --window-k > 0");
  }
  if (subcommand == "spacing") {
    if (energies.size() != 1) throw ConfigError("spacing takes exactly one --e");
    if (std::abs(energies[0]) >= 2.0) throw ConfigError("spacing needs |E| < 2");
    if (!(bin_width > 0.0) || !(r_max > 0.0) || !(half_width > r_max / 2.0))
      throw ConfigError("spacing needs --bin > 0, --rmax > 0 and --window > rmax/2");
  }
  if (subcommand == "dbm") {
    if (times.empty() || times.front() != 0.0) throw ConfigError("--times must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
      if (!(times[i] > times[i - 1])) throw ConfigError("--times must be strictly increasing");
  }
  if (subcommand == "flow") {
    require_nonempty(t_values, "--t-values");
    for (double x : t_values)
      if (!(x > 0.0)) throw ConfigError("--t-values must be positive");
    if (grid_file.empty() && !(sigma > 0.0)) throw ConfigError("--sigma must be positive");
    if (grid_points < 16) throw ConfigError("--points must be >= 16");
    if (!(grid_half_width > 0.0)) throw ConfigError("--half-width must be positive");
  }
  if (subcommand == "kernel") {
    if (!(t > 0.0)) throw ConfigError("kernel needs --t > 0");
    if (energies.size() != 1) throw ConfigError("kernel takes exactly one --e");
    if (x2.empty()) throw ConfigError("--x2 needs at least one value");
    if (is_set(kdelta) && !(*kdelta > 0.0)) throw ConfigError("--delta must be positive");
    if (is_set(ks) && !(*ks > 0.0)) throw ConfigError("--S must be positive");
    if (knodes && (*knodes < 64 || *knodes % 16 != 0)) throw ConfigError("--nodes must be a multiple of 16, >= 64");
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["seed"] = seed;
  if (subcommand == "selftest") return j;
  if (subcommand != "flow") {
    j["n"] = n;
    if (subcommand != "kernel") {
      j["law"] = law;
      j["reps"] = reps;
    }
    j["t"] = t;
  }
  if (subcommand == "dos") {
    j["e"] = energies;
    j["window"] = window_kind;
    j["scale"] = scales;
    j["delta"] = deltas;
  } else if (subcommand == "stieltjes") {
    j["e"] = energies;
    j["eta"] = etas;
  } else if (subcommand == "deloc") {
    j["p"] = p;
    j["bulk_kappa"] = bulk_kappa;
    j["window_k"] = window_k;
    j["m_grid"] = m_grid;
  } else if (subcommand == "spacing") {
    j["e"] = energies;
    j["window"] = half_width;
    j["bin"] = bin_width;
    j["rmax"] = r_max;
  } else if (subcommand == "dbm") {
    j["times"] = times;
  } else if (subcommand == "flow") {
    j["order"] = order;
    j["t_values"] = t_values;
    j["sigma"] = sigma;
    j["grid_file"] = grid_file;
    j["half_width"] = grid_half_width;
    j["points"] = grid_points;
  } else if (subcommand == "kernel") {
    j["e"] = energies;
    j["y_source"] = y_source;
    j["x1"] = x1;
    j["x2"] = x2;
    auto opt = [&](const char* key, const std::optional<double>& v) {
      j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    opt("delta", kdelta);
    opt("kappa", kkappa);
    opt("r", kr);
    opt("S", ks);
    opt("tolerance", ktolerance);
    j["nodes"] = knodes ? nlohmann::json(*knodes) : nlohmann::json(nullptr);
  } else if (subcommand == "sample") {
    j["write_matrix"] = write_matrix;
  }
  return j;
}

}  // namespace wigner::cli
