#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "equi/geometry.hpp"
#include "equi/monitor.hpp"

namespace equi::cli {

/// Pipeline configuration: curve and monitor sources plus the discretization
/// parameters of the three steps. Loadable from a JSON config file; every
/// field is overridable by a command-line flag (flags win).
struct PipelineConfig {
  std::string curve_builtin;            // circle | droplet | peakons
  std::vector<double> curve_params;     // droplet: {eps_p}, peakons: {eps_r}
  std::filesystem::path curve_file;     // alternative to builtin

  std::string monitor_name;             // phi0 | phi1 | phi2
  std::filesystem::path monitor_file;   // alternative to preset

  int n1 = 0;
  int n2 = 0;
  int n3 = 0;
  int n_up = 0;   // 0 = kind default
  int k_max = 0;  // 0 = n1/2
  double dt = 1e-4;
  double eps_rel = 1e-15;

  std::filesystem::path out_invariants;
  std::filesystem::path out_spacing;
  std::filesystem::path out_curve;

  void validate() const;  // throws errc::config with a specific message
};

PipelineConfig load_config(const std::filesystem::path& path);

/// Entry point behind the executable: runs one subcommand and reports the
/// outcome through the exit code (0 ok, 2 usage/config, 3 numerical/module
/// failure with a one-line machine-parsable category on stderr).
int dispatch(const std::vector<std::string>& args);
int dispatch(int argc, const char* const* argv);

}  // namespace equi::cli
