#include "equi/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace equi::io {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(errc::io, "cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open for reading: " + path.string());
  return in;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(errc::io, path.string() + ": " + e.what());
  }
  return j;
}

json series_to_json(const FourierSeries& f) {
  json arr = json::array();
  for (const cplx& c : f.coeffs()) arr.push_back({c.real(), c.imag()});
  return arr;
}

FourierSeries series_from_json(const json& arr) {
  std::vector<cplx> c;
  c.reserve(arr.size());
  for (const auto& e : arr) c.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return FourierSeries(static_cast<int>(c.size()), std::move(c));
}

const char* kind_name(CurveKind kind) {
  return kind == CurveKind::closed ? "closed" : "hperiodic";
}

CurveKind kind_from(const std::string& name) {
  if (name == "closed") return CurveKind::closed;
  if (name == "hperiodic") return CurveKind::horizontally_periodic;
  fail(errc::io, "unknown curve kind: " + name);
}

}  // namespace

void write_curve(const std::filesystem::path& path, const PlanarCurveSamples& curve) {
  std::ofstream out = open_out(path);
  out << "# curve n=" << curve.grid.n << " kind=" << kind_name(curve.kind) << "\n";
  out << "# alpha x y\n";
  for (int j = 0; j < curve.grid.n; ++j) {
    const size_t i = static_cast<size_t>(j);
    out << format_double(curve.grid.node(j)) << ' ' << format_double(curve.x[i]) << ' '
        << format_double(curve.y[i]) << "\n";
  }
  if (!out) fail(errc::io, "write failed: " + path.string());
}

PlanarCurveSamples read_curve(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string header;
  std::getline(in, header);
  int n = 0;
  char kind_buf[32] = {0};
  if (std::sscanf(header.c_str(), "# curve n=%d kind=%31s", &n, kind_buf) != 2)
    fail(errc::io, path.string() + ": malformed curve header");
  const CurveKind kind = kind_from(kind_buf);

  UniformGrid grid(n);
  PlanarCurveSamples curve{grid, {}, {}, kind};
  curve.x.reserve(static_cast<size_t>(n));
  curve.y.reserve(static_cast<size_t>(n));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    double a = 0, x = 0, y = 0;
    if (!(row >> a >> x >> y)) fail(errc::io, path.string() + ": malformed curve row");
    curve.x.push_back(x);
    curve.y.push_back(y);
  }
  if (curve.x.size() != static_cast<size_t>(n))
    fail(errc::io, path.string() + ": expected " + std::to_string(n) + " rows");
  return curve;
}

void write_invariants(const std::filesystem::path& path, const ArclengthInvariants& inv) {
  json j;
  j["L"] = inv.L;
  j["k_max"] = inv.k_max;
  j["theta0"] = inv.theta0;
  j["base_point"] = {inv.base_x, inv.base_y};
  j["slope_x"] = inv.slope_x;
  j["slope_y"] = inv.slope_y;
  j["kind"] = kind_name(inv.kind);
  j["closure_defect"] = inv.closure_defect;
  j["cx"] = series_to_json(inv.cx);
  j["cy"] = series_to_json(inv.cy);
  std::ofstream out = open_out(path);
  out << j.dump(1) << "\n";
}

ArclengthInvariants read_invariants(const std::filesystem::path& path) {
  const json j = load_json(path);
  ArclengthInvariants inv;
  try {
    inv.L = j.at("L").get<double>();
    inv.k_max = j.at("k_max").get<int>();
    inv.theta0 = j.at("theta0").get<double>();
    inv.base_x = j.at("base_point").at(0).get<double>();
    inv.base_y = j.at("base_point").at(1).get<double>();
    inv.slope_x = j.at("slope_x").get<double>();
    inv.slope_y = j.at("slope_y").get<double>();
    inv.kind = kind_from(j.at("kind").get<std::string>());
    inv.closure_defect = j.value("closure_defect", 0.0);
    inv.cx = series_from_json(j.at("cx"));
    inv.cy = series_from_json(j.at("cy"));
  } catch (const json::exception& e) {
    fail(errc::io, path.string() + ": " + e.what());
  }
  if (inv.cx.modes() != 2 * inv.k_max || inv.cy.modes() != 2 * inv.k_max)
    fail(errc::io, path.string() + ": coefficient count does not match k_max");
  return inv;
}

void write_spacing(const std::filesystem::path& path, const SpacingState& state) {
  json j;
  j["N2"] = state.s_alpha.size();
  j["t"] = state.t;
  j["s_alpha"] = state.s_alpha;
  std::ofstream out = open_out(path);
  out << j.dump(1) << "\n";
}

SpacingState read_spacing(const std::filesystem::path& path) {
  const json j = load_json(path);
  SpacingState state;
  try {
    state.t = j.at("t").get<double>();
    state.s_alpha = j.at("s_alpha").get<std::vector<double>>();
    if (j.at("N2").get<size_t>() != state.s_alpha.size())
      fail(errc::io, path.string() + ": N2 does not match the sample count");
  } catch (const json::exception& e) {
    fail(errc::io, path.string() + ": " + e.what());
  }
  return state;
}

void write_monitor(const std::filesystem::path& path, const MonitorSpec& spec) {
  json j;
  j["constant"] = spec.constant;
  json terms = json::array();
  for (const GaussianTerm& t : spec.terms)
    terms.push_back({{"amplitude", t.amplitude}, {"center", t.center}, {"width", t.width}});
  j["gaussians"] = terms;
  std::ofstream out = open_out(path);
  out << j.dump(1) << "\n";
}

MonitorSpec read_monitor(const std::filesystem::path& path) {
  const json j = load_json(path);
  MonitorSpec spec;
  try {
    spec.constant = j.at("constant").get<double>();
    for (const auto& t : j.at("gaussians"))
      spec.terms.push_back({t.at("amplitude").get<double>(), t.at("center").get<double>(),
                            t.at("width").get<double>()});
  } catch (const json::exception& e) {
    fail(errc::io, path.string() + ": " + e.what());
  }
  spec.validate();
  return spec;
}

std::string format_error_table(const ErrorTable& table) {
  std::ostringstream out;
  out << "# study " << table.kind << " example=" << table.example << "\n";
  out << "# N err_arc_linf err_ref_l2 err_ref_linf\n";
  for (const auto& row : table.rows)
    out << row.n << ' ' << format_double(row.err_arc_linf) << ' '
        << format_double(row.err_ref_l2) << ' ' << format_double(row.err_ref_linf) << "\n";
  return out.str();
}

void write_error_table(const std::filesystem::path& path, const ErrorTable& table) {
  std::ofstream out = open_out(path);
  out << format_error_table(table);
  if (!out) fail(errc::io, "write failed: " + path.string());
}

}  // namespace equi::io
