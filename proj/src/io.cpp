#include "scatter1d/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace scatter1d {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw config_error("write_csv: cannot open " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << fmt17(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
}

std::vector<std::pair<double, double>> load_two_column_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open sample file " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double x, v;
    if (ss >> x >> v) rows.emplace_back(x, v);
  }
  if (rows.size() < 2) throw config_error("sample file too short: " + path);
  std::sort(rows.begin(), rows.end());
  return rows;
}

PotentialConfig load_potential_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open potential spec " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw config_error(std::string("potential spec parse error: ") + e.what());
  }
  PotentialConfig cfg;
  const std::string family = j.value("family", "");
  const auto params = j.value("params", nlohmann::json::object());
  if (family == "zero") {
    cfg.spec = zero_potential();
  } else if (family == "square_well") {
    cfg.spec = square_well(params.value("v0", 1.0), params.value("a", 1.0));
  } else if (family == "poschl_teller") {
    cfg.spec = poschl_teller(params.value("s", 1.0));
  } else if (family == "gaussian") {
    cfg.spec = gaussian_potential(params.value("amp", -1.0), params.value("w", 1.0));
  } else if (family == "samples") {
    const std::string file = params.value("file", "");
    auto rows = load_two_column_csv(file);
    std::vector<double> xs, vs;
    for (auto& [x, v] : rows) {
      xs.push_back(x);
      vs.push_back(v);
    }
    cfg.spec = samples_potential(std::move(xs), std::move(vs));
  } else {
    throw config_error("unknown potential family: '" + family + "'");
  }
  if (j.contains("grid")) {
    cfg.x_max = j["grid"].value("x_max", cfg.x_max);
    cfg.n = j["grid"].value("n", cfg.n);
  }
  return cfg;
}

PotentialSpec build_from_config(const PotentialConfig& cfg) {
  SpatialGrid g = cfg.spec.family == Family::square_well
                      ? make_aligned_grid(cfg.spec.a, cfg.x_max, cfg.n)
                      : SpatialGrid::symmetric(cfg.x_max, cfg.n);
  return build_potential(cfg.spec, g);
}

}  // namespace scatter1d
