#pragma once

#include <array>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ccfour/dziobek.hpp"
#include "ccfour/solver.hpp"
#include "ccfour/tetra.hpp"

namespace ccfour {

struct RegionSample {
  Direction direction;
  ConfigurationType pattern;
  double u = 0.0;
  double v = 0.0;
};

/// classify(weighted_areas(tetra, dir)) with the 1e-14 C degeneracy threshold.
ConfigurationType sign_pattern(const Tetrahedron& tetra, const Direction& dir);

/// Azimuthal equidistant projection of the upper hemisphere: (theta cos phi, theta sin phi).
std::pair<double, double> project(const Direction& dir);

/// Circle i is the set of directions orthogonal to vertex i, i.e. where A_i = 0
/// and the other three particles are collinear. Clipped to cos(theta) >= 0.
std::array<std::vector<Direction>, 4> great_circles(const Tetrahedron& tetra, int resolution);

/// Row-major grid: theta_i = i (pi/2) / (n_theta - 1), phi_j = j 2 pi / n_phi.
std::vector<RegionSample> sample_hemisphere(const Tetrahedron& tetra, int n_theta, int n_phi);

/// Pattern label -> sample count.
std::map<std::string, int> pattern_census(const std::vector<RegionSample>& samples);

/// CSV with header theta,phi,u,v,pattern_label.
void write_region_csv(std::ostream& out, const std::vector<RegionSample>& samples);

/// Regions colored by pattern, circles stroked, solutions as dots.
void write_region_svg(std::ostream& out, const Tetrahedron& tetra,
                      const std::vector<RegionSample>& samples,
                      const std::array<std::vector<Direction>, 4>& circles,
                      const std::vector<CentralConfiguration>& solutions);

}  // namespace ccfour
