#include "bogolab/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace bogolab {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& where) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto result = std::from_chars(first, last, out);
  if (result.ec != std::errc{} || result.ptr != last) {
    throw ConfigError(where + ": '" + value + "' is not a number");
  }
  return out;
}

long long parse_int(const std::string& value, const std::string& where) {
  long long out = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto result = std::from_chars(first, last, out);
  if (result.ec != std::errc{} || result.ptr != last) {
    throw ConfigError(where + ": '" + value + "' is not an integer");
  }
  return out;
}

std::uint64_t parse_uint64(const std::string& value, const std::string& where) {
  std::uint64_t out = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto result = std::from_chars(first, last, out);
  if (result.ec != std::errc{} || result.ptr != last) {
    throw ConfigError(where + ": '" + value + "' is not a non-negative integer");
  }
  return out;
}

int parse_bounded_int(const std::string& value, const std::string& where, long long minimum) {
  const long long v = parse_int(value, where);
  if (v < minimum) {
    throw ConfigError(where + ": value " + value + " must be at least " +
                      std::to_string(minimum));
  }
  if (v > INT32_MAX) {
    throw ConfigError(where + ": value " + value + " is too large");
  }
  return static_cast<int>(v);
}

void assign(RunConfig& config, const std::string& key, const std::string& value,
            const std::string& where) {
  if (key == "n_particles") {
    config.n_particles = parse_bounded_int(value, where, 0);
  } else if (key == "modes") {
    config.modes = parse_bounded_int(value, where, 1);
  } else if (key == "coupling") {
    config.coupling = parse_double(value, where);
  } else if (key == "coupling_start") {
    config.coupling_start = parse_double(value, where);
  } else if (key == "coupling_stop") {
    config.coupling_stop = parse_double(value, where);
  } else if (key == "coupling_steps") {
    config.coupling_steps = parse_bounded_int(value, where, 0);
  } else if (key == "interaction_weight_convention") {
    if (value != "N" && value != "N-1") {
      throw ConfigError(where + ": interaction_weight_convention must be 'N' or 'N-1'");
    }
    config.interaction_weight_convention = value;
  } else if (key == "quadrature_nodes") {
    config.quadrature_nodes = parse_bounded_int(value, where, 0);
  } else if (key == "gp_tol") {
    config.gp_tol = parse_double(value, where);
    if (config.gp_tol <= 0.0) {
      throw ConfigError(where + ": gp_tol must be positive");
    }
  } else if (key == "gp_max_iter") {
    config.gp_max_iter = parse_bounded_int(value, where, 1);
  } else if (key == "eig_tol") {
    config.eig_tol = parse_double(value, where);
    if (config.eig_tol < 0.0) {
      throw ConfigError(where + ": eig_tol must be non-negative");
    }
  } else if (key == "lowest_k") {
    config.lowest_k = parse_bounded_int(value, where, 1);
  } else if (key == "goldstone_tol") {
    config.goldstone_tol = parse_double(value, where);
    if (config.goldstone_tol <= 0.0) {
      throw ConfigError(where + ": goldstone_tol must be positive");
    }
  } else if (key == "output_format") {
    if (value != "csv" && value != "json") {
      throw ConfigError(where + ": output_format must be 'csv' or 'json'");
    }
    config.output_format = value;
  } else if (key == "output_path") {
    config.output_path = value;
  } else if (key == "seed") {
    config.seed = parse_uint64(value, where);
  } else {
    throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

void apply_assignment(RunConfig& config, const std::string& line, const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    throw ConfigError(where + ": expected 'key = value'");
  }
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  if (key.empty()) {
    throw ConfigError(where + ": empty key");
  }
  if (value.empty()) {
    throw ConfigError(where + ": empty value for key '" + key + "'");
  }
  assign(config, key, value, where);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    apply_assignment(config, line, "line " + std::to_string(line_number));
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot read config file '" + path + "'");
  }
  std::ostringstream content;
  content << file.rdbuf();
  return parse_config(content.str());
}

void apply_override(RunConfig& config, const std::string& assignment) {
  apply_assignment(config, assignment, "override '" + assignment + "'");
}

InteractionWeight weight_convention(const RunConfig& config) {
  if (config.interaction_weight_convention == "N-1") {
    return InteractionWeight::kParticleNumberMinusOne;
  }
  return InteractionWeight::kParticleNumber;
}

}  // namespace bogolab
