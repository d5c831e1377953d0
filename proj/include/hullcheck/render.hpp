#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hullcheck/dataset.hpp"

namespace hullcheck {

enum class Projection { Xy, Iso };

struct RenderOptions {
  Projection projection = Projection::Iso;
  double icon_size = 10.0;
  bool grid = true;
};

/// SVG of one configuration: X for a Case, O for a Non-Case, a crossed
/// circle where both responses share a point. Throws DimensionUnsupported
/// above three dimensions.
std::string render_svg(const Dataset& data, const RenderOptions& opts = {});

/// Labelled panels laid out in rows of up to six.
std::string render_gallery(const std::vector<std::pair<std::string, Dataset>>& panels,
                           const RenderOptions& opts = {});

}  // namespace hullcheck
