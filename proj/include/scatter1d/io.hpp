#pragma once

#include <string>
#include <vector>

#include "scatter1d/potential.hpp"

namespace scatter1d {

// 17 significant digits: doubles round-trip losslessly and outputs are
// byte-stable across runs.
std::string fmt17(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Potential spec JSON:
//   {"family": "...", "params": {...}, "grid": {"x_max": .., "n": ..}}
// families: zero | square_well(v0, a) | poschl_teller(s) | gaussian(amp, w)
//         | samples(file: two-column CSV x,V)
struct PotentialConfig {
  PotentialSpec spec;     // un-sampled
  double x_max = 40.0;
  int n = 2048;
};

PotentialConfig load_potential_json(const std::string& path);
std::vector<std::pair<double, double>> load_two_column_csv(const std::string& path);

// Builds the grid (aligned automatically for square wells) and samples.
PotentialSpec build_from_config(const PotentialConfig& cfg);

}  // namespace scatter1d
