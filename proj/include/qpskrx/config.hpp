// SPDX-License-Identifier: Apache-2.0
//
// Run configuration. One flat namespace of keys shared by the JSON config
// file, the CLI flags and the header echoed into result files. Precedence:
// mode defaults < file < individual settings.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qpskrx {

enum class Mode { Bounds, Sweep, DelaySweep, EfficiencySweep, StagesSweep, Enumerate };
enum class Spacing { Linear, Log };

std::string_view to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view name);

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int points = 1;
  Spacing spacing = Spacing::Linear;

  /// Grid values in order; a single point yields {start}.
  std::vector<double> values() const;
};

/// Parses "start:stop:points[:log|:linear]".
Grid parse_grid(std::string_view text);

struct RunConfig {
  Mode mode = Mode::Sweep;
  Grid alpha_sq{0.5, 10.0, 20, Spacing::Linear};
  int m = 10;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 20190101;
  double eta_t = 0.90;
  double eta_spd = 0.73;
  std::optional<double> eta_total;  // overrides eta_t * eta_spd when set
  double xi = 0.996;
  double nu_per_state = 9.1e-3;
  double t_total_us = 200.0;
  double dt_us = 1.1;
  double t_hold_us = 0.37;
  double t_swing_us = 0.63;
  bool truth_delay = false;
  bool discard_loss = true;
  Grid dt_us_grid{0.0, 3.0, 16, Spacing::Linear};
  std::vector<double> eta_spd_list{0.73, 0.80, 0.90, 1.00};
  int m_min = 3;
  int m_max = 30;
  unsigned threads = 0;
  int enum_max_m = 20;
  std::string out;  // empty: stdout
  bool json = false;

  double effective_eta_total() const noexcept { return eta_total.value_or(eta_t * eta_spd); }
};

/// Defaults for a mode (grids differ per mode).
RunConfig default_config(Mode mode);

/// Applies one key, from its text form (what CLI flags supply) or from JSON. Grids
/// also accept the composite keys alpha_sq_grid, dt_us_grid ("a:b:n[:log]") and
/// m_range ("lo:hi"). Throws ConfigError naming the key.
void apply_text_setting(RunConfig& config, std::string_view key, std::string_view value);
void apply_setting(RunConfig& config, std::string_view key, const nlohmann::json& value);

/// Merges a flat JSON object, or the config echoed in a result CSV header.
void merge_config_file(RunConfig& config, const std::string& path);
void merge_config_json(RunConfig& config, const nlohmann::json& object);

/// Range checks; errors name the offending key.
void validate(const RunConfig& config);

/// Everything that affects results (threads and output settings are omitted).
nlohmann::json to_json(const RunConfig& config);

/// FNV-1a 64 of the canonical JSON, as 16 hex digits.
std::string config_digest(const RunConfig& config);

}  // namespace qpskrx
