#pragma once

// Run configuration read from flat "key = value" text files ('#' starts a
// comment). Command-line flags override file values.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>

#include "symtorus/generator.hpp"

namespace symtorus {

struct RunConfig {
  int n = 1;
  int grid_size = 0;  // 0 selects the per-dimension default
  std::size_t time_steps = 200;
  double closed_tol = 1e-6;
  double path_closed_tol = 1e-2;
  double endpoint_tol = 1e-3;
  double flux_tol = 1e-6;
  double inverse_tol = 1e-10;
  int interp_order = 5;
  std::uint64_t seed = 1;
  std::string out_dir = ".";

  DeltaMode delta_mode = DeltaMode::OuterTime;

  /// N = 64 for n = 1 and N = 16 otherwise unless set explicitly.
  int resolved_grid_size() const { return grid_size > 0 ? grid_size : (n == 1 ? 64 : 16); }

  Grid grid() const { return Grid{n, resolved_grid_size()}; }

  NumericOptions numeric() const {
    NumericOptions o;
    o.interp_order = interp_order;
    o.closed_tol = closed_tol;
    o.path_closed_tol = path_closed_tol;
    o.inverse_tol = inverse_tol;
    o.delta_mode = delta_mode;
    return o;
  }

  void validate() const {
    require(n >= 1 && (grid_size == 0 || grid_size >= 4) && time_steps >= 2, ErrorCode::InvalidArgument,
            "config needs n >= 1, grid_size >= 4 (or 0 for the default) and time_steps >= 2");
    require(closed_tol > 0 && path_closed_tol > 0 && endpoint_tol > 0 && flux_tol > 0 && inverse_tol > 0,
            ErrorCode::InvalidArgument, "tolerances must be positive");
  }

  /// Applies one key; throws Parse on unknown keys or malformed values.
  void set(const std::string& key, const std::string& value) {
    auto parse_double = [&](double& out) {
      std::size_t used = 0;
      try {
        out = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size() || value.empty()) throw Error(ErrorCode::Parse, "bad number for " + key + ": " + value);
    };
    auto parse_int = [&](auto& out) {
      double d = 0.0;
      parse_double(d);
      if (d != static_cast<double>(static_cast<long long>(d)) || d < 0)
        throw Error(ErrorCode::Parse, "expected a nonnegative integer for " + key);
      out = static_cast<std::remove_reference_t<decltype(out)>>(d);
    };
    if (key == "n") parse_int(n);
    else if (key == "grid_size" || key == "N") parse_int(grid_size);
    else if (key == "time_steps" || key == "M") parse_int(time_steps);
    else if (key == "closed_tol") parse_double(closed_tol);
    else if (key == "path_closed_tol") parse_double(path_closed_tol);
    else if (key == "endpoint_tol") parse_double(endpoint_tol);
    else if (key == "flux_tol") parse_double(flux_tol);
    else if (key == "inverse_tol") parse_double(inverse_tol);
    else if (key == "interp_order") parse_int(interp_order);
    else if (key == "seed") parse_int(seed);
    else if (key == "out_dir") out_dir = value;
    else if (key == "delta_mode") {
      if (value == "outer") delta_mode = DeltaMode::OuterTime;
      else if (value == "inner") delta_mode = DeltaMode::InnerTime;
      else throw Error(ErrorCode::Parse, "delta_mode must be 'outer' or 'inner'");
    }
    else throw Error(ErrorCode::Parse, "unknown config key '" + key + "'");
  }
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline void parse_config(std::istream& is, RunConfig& cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::Parse, "config line " + std::to_string(lineno) + ": expected key = value");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::Io, "cannot open config " + path);
  RunConfig cfg;
  parse_config(is, cfg);
  return cfg;
}

}  // namespace symtorus
