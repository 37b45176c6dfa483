#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gameqd/env/environment.hpp"
#include "gameqd/env/trajectory.hpp"

namespace gameqd {

// One-frame plot: a marker per timestep per entity. Ball markers change
// colour after every point, so each rally reads as its own trail.
std::string render_trajectory_svg(const Trajectory& t, const EnvSpec& spec, std::string_view title);

struct CurveSeries {
  std::string label;
  std::vector<double> values;  // one per generation, starting at generation 1
};

std::string render_curves_svg(const std::vector<CurveSeries>& series, std::string_view title,
                              std::string_view y_label);

}  // namespace gameqd
