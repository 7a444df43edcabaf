#pragma once

#include <string>

#include "bergspec/classifier.hpp"

namespace bergspec {

/// A rectangle of the complex plane mapped onto a width x height SVG canvas.
struct Viewport {
    double re_min = -2.0, re_max = 2.0;
    double im_min = -1.5, im_max = 1.5;
    int width = 800;
    int height = 600;
};

/// Real range padded around the finite strip and line parameters, aspect-matched.
Viewport generator_viewport(SpectralRegion const& region, int width = 800, int height = 600);
/// Square-aspect box around the largest radius.
Viewport operator_viewport(SpectralRegion const& region, int width = 800, int height = 600);

/// SVG 1.1 text. Strips are clipped rectangles, lines 1-px rules, disks and annuli even-odd
/// paths. Fill opacity encodes certainty: 0.8 certified, 0.4 boundary-unresolved, hatched
/// for the open question on the operator side.
std::string render_svg(SpectralRegion const& region, Viewport const& view, std::string const& title = "");

}  // namespace bergspec
