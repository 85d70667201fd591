// SPDX-License-Identifier: Apache-2.0
//
// qpskrx: command-line driver over the C API.
//
//   qpskrx <mode> [--config FILE] [--alpha-sq-grid a:b:n[:log]] [--m M] ...
//
// Flags override values from --config, which override the mode defaults.
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpskrx.h"

namespace {

struct ConfigDeleter {
  void operator()(qpskrx_config* c) const noexcept { qpskrx_config_destroy(c); }
};
struct TableDeleter {
  void operator()(qpskrx_table* t) const noexcept { qpskrx_table_destroy(t); }
};

int report(qpskrx_status status) {
  std::fprintf(stderr, "qpskrx: %s: %s\n", qpskrx_status_name(status), qpskrx_last_error());
  return static_cast<int>(status);
}

std::string json_mirror_path(const std::string& csv_path) {
  if (csv_path.empty() || csv_path == "-") return "-";
  std::filesystem::path p(csv_path);
  p.replace_extension(".json");
  return p.string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QPSK adaptive displacement receiver: error-probability sweeps, exact enumeration and bounds"};
  app.set_version_flag("--version", std::string(qpskrx_version()));

  std::string mode;
  app.add_option("mode", mode, "bounds | sweep | delay-sweep | efficiency-sweep | stages-sweep | enumerate")
      ->required()
      ->check(CLI::IsMember({"bounds", "sweep", "delay-sweep", "efficiency-sweep", "stages-sweep", "enumerate"}));

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file, or a result CSV whose header echoes a config");

  // flag name -> configuration key, in the order they are applied
  const std::vector<std::pair<std::string, std::string>> flags{
      {"--alpha-sq-grid", "alpha_sq_grid"},
      {"--m", "m"},
      {"--trials", "trials"},
      {"--seed", "seed"},
      {"--eta-t", "eta_t"},
      {"--eta-spd", "eta_spd"},
      {"--eta-total", "eta_total"},
      {"--xi", "xi"},
      {"--nu", "nu_per_state"},
      {"--t-total-us", "t_total_us"},
      {"--dt-us", "dt_us"},
      {"--t-hold-us", "t_hold_us"},
      {"--t-swing-us", "t_swing_us"},
      {"--truth-delay", "truth_delay"},
      {"--discard-loss", "discard_loss"},
      {"--dt-us-grid", "dt_us_grid"},
      {"--eta-spd-list", "eta_spd_list"},
      {"--m-range", "m_range"},
      {"--threads", "threads"},
      {"--enum-max-m", "enum_max_m"},
      {"--out", "out"},
  };
  const std::map<std::string, std::string> help{
      {"--alpha-sq-grid", "signal mean photon numbers, start:stop:points[:log]"},
      {"--m", "number of feedback stages M"},
      {"--trials", "Monte Carlo trials per grid point"},
      {"--seed", "random seed"},
      {"--eta-t", "transmittance before the detector"},
      {"--eta-spd", "detector efficiency"},
      {"--eta-total", "total efficiency (overrides eta-t * eta-spd)"},
      {"--xi", "interference visibility"},
      {"--nu", "dark counts per state"},
      {"--t-total-us", "signal duration T in us"},
      {"--dt-us", "discard window per bin boundary in us"},
      {"--t-hold-us", "feedback hold time in us"},
      {"--t-swing-us", "feedback ramp time in us"},
      {"--truth-delay", "simulate feedback delay in the outcome model (on|off)"},
      {"--discard-loss", "apply the discard window as loss (on|off)"},
      {"--dt-us-grid", "delay-sweep discard times, start:stop:points"},
      {"--eta-spd-list", "efficiency-sweep detector efficiencies, comma separated"},
      {"--m-range", "stages-sweep range lo:hi"},
      {"--threads", "worker threads (0 = all cores)"},
      {"--enum-max-m", "largest M accepted by enumerate"},
      {"--out", "output CSV path (default stdout)"},
  };
  std::vector<std::string> values(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i) {
    app.add_option(flags[i].first, values[i], help.at(flags[i].first));
  }
  bool json_mirror = false;
  app.add_flag("--json", json_mirror, "also write a JSON mirror of the table (FILE.json, or stdout)");

  CLI11_PARSE(app, argc, argv);

  qpskrx_config* raw_config = nullptr;
  if (auto s = qpskrx_config_create(mode.c_str(), &raw_config); s != QPSKRX_OK) return report(s);
  std::unique_ptr<qpskrx_config, ConfigDeleter> config(raw_config);

  if (!config_path.empty()) {
    if (auto s = qpskrx_config_merge_file(config.get(), config_path.c_str()); s != QPSKRX_OK) return report(s);
  }
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (app.count(flags[i].first) == 0) continue;
    if (auto s = qpskrx_config_set(config.get(), flags[i].second.c_str(), values[i].c_str()); s != QPSKRX_OK) {
      return report(s);
    }
  }
  if (json_mirror) {
    if (auto s = qpskrx_config_set(config.get(), "json", "on"); s != QPSKRX_OK) return report(s);
  }

  qpskrx_table* raw_table = nullptr;
  if (auto s = qpskrx_run(config.get(), &raw_table); s != QPSKRX_OK) return report(s);
  std::unique_ptr<qpskrx_table, TableDeleter> table(raw_table);

  const std::string out = qpskrx_config_output_path(config.get());
  if (auto s = qpskrx_table_write_csv(table.get(), out.c_str()); s != QPSKRX_OK) return report(s);
  if (qpskrx_config_json_mirror(config.get()) != 0) {
    const std::string mirror = json_mirror_path(out);
    if (auto s = qpskrx_table_write_json(table.get(), mirror.c_str()); s != QPSKRX_OK) return report(s);
  }
  return 0;
}
