#pragma once

#include <filesystem>
#include <string>

#include "equi/evolution.hpp"
#include "equi/geometry.hpp"
#include "equi/invariants.hpp"
#include "equi/monitor.hpp"
#include "equi/validation.hpp"

namespace equi::io {

// Curve files are delimited text: a header line carrying the sample count and
// the periodicity kind, a column header, then one "alpha x y" row per node.
void write_curve(const std::filesystem::path& path, const PlanarCurveSamples& curve);
PlanarCurveSamples read_curve(const std::filesystem::path& path);

// Invariants, spacing, monitor, and config files are JSON documents.
void write_invariants(const std::filesystem::path& path, const ArclengthInvariants& inv);
ArclengthInvariants read_invariants(const std::filesystem::path& path);

void write_spacing(const std::filesystem::path& path, const SpacingState& state);
SpacingState read_spacing(const std::filesystem::path& path);

void write_monitor(const std::filesystem::path& path, const MonitorSpec& spec);
MonitorSpec read_monitor(const std::filesystem::path& path);

// Error tables are delimited text with one row per sweep entry, ready for
// plotting.
void write_error_table(const std::filesystem::path& path, const ErrorTable& table);
std::string format_error_table(const ErrorTable& table);

}  // namespace equi::io
