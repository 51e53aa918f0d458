#pragma once

#include <string>
#include <vector>

#include "hypercover/cover.hpp"
#include "hypercover/geometry.hpp"

namespace hypercover {

/// 2D cover rendering: one rect per leaf keyed by class, optional
/// training points as circles. Throws for covers that are not 2D.
std::string cover_to_svg(const Cover& cover,
                         const std::vector<LabeledPoint>& points = {});

}  // namespace hypercover
