#pragma once

#include <cstddef>
#include <string>

#include "rough/path.hpp"
#include "rough/rde.hpp"
#include "rough/rough_path.hpp"

namespace rough::presets {

/// Named paths on the dyadic grid of 2^m + 1 points:
///   linear   — scalar x_t = t
///   circle   — (cos 2πt - 1, sin 2πt)
///   parabola — (t, t^2)
///   tcubed   — (t, t^3)
///   zigzag   — scalar 0 -> 1 -> 0 (grid {0, 1/2, 1}; m ignored)
SampledPath path(const std::string& name, int m);

/// Named coefficient families:
///   identity   — sigma = Id_n, no drift (n = dim)
///   geometric  — scalar sigma(y) = y
///   geom_decay — scalar sigma(y) = y, b(y) = -y
///   area       — n=d=2: dy1 = dx1, dy2 = y1 dx2
///   rotation   — n=d=2 bounded: sigma = [[sin y2, cos y2],[cos y1, -sin y1]]
VectorFieldFamily vector_field(const std::string& name, std::size_t dim = 1);

/// One-forms on R^2 for integration tests:
///   exact — f = dg for g(x) = |x|^2/2 (n=1)
///   swirl — non-exact bounded C^3 form (n=2)
OneForm one_form(const std::string& name);

}  // namespace rough::presets
