#pragma once

#include <vector>

#include "bergspec/types.hpp"

namespace bergspec {

/// Deterministic quasi-random points in {|z| <= radius}: Halton (2, 3) mapped with
/// area-preserving polar coordinates.
std::vector<cplx> halton_disk(int count, double radius);

/// Points on the circle |z| = radius, uniformly spaced, starting at angle 0.
std::vector<cplx> circle_points(int count, double radius);

}  // namespace bergspec
